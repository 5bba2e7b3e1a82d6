/** Wire types mirroring docs/protocol.md. One JSON object per frame. */

export interface Metrics {
  loss: number;
  accuracy?: number;
  val_loss?: number;
  val_accuracy?: number;
}

export interface EpochStart {
  type: "EPOCH_START";
  seq: number;
  epoch: number;
}

export interface ForwardPulse {
  type: "FORWARD_PULSE";
  seq: number;
  epoch: number;
  from_layer: number;
  to_layer: number;
  edge_weights: number[][];
}

export interface ActivationsComputed {
  type: "ACTIVATIONS_COMPUTED";
  seq: number;
  epoch: number;
  layer: number;
  values: number[];
}

export interface OutputProduced {
  type: "OUTPUT_PRODUCED";
  seq: number;
  epoch: number;
  values: number[];
}

export interface LossComputed {
  type: "LOSS_COMPUTED";
  seq: number;
  epoch: number;
  loss: number;
}

export interface BackwardPulse {
  type: "BACKWARD_PULSE";
  seq: number;
  epoch: number;
  into_layer: number;
  deltas: number[];
}

export interface WeightsUpdated {
  type: "WEIGHTS_UPDATED";
  seq: number;
  epoch: number;
  layer: number;
  w_pre: number[][];
  w_post: number[][];
  b_pre: number[];
  b_post: number[];
  d_w: number[][];
  d_b: number[];
  lr: number;
}

export interface EpochEnd {
  type: "EPOCH_END";
  seq: number;
  epoch: number;
  metrics: Metrics;
}

export type TrainingEvent =
  | EpochStart
  | ForwardPulse
  | ActivationsComputed
  | OutputProduced
  | LossComputed
  | BackwardPulse
  | WeightsUpdated
  | EpochEnd;

export interface Snapshot {
  type: "SNAPSHOT";
  last_seq: number;
  status: string;
  current_epoch: number;
  params: { weights: number[][][]; biases: number[][] };
  metrics_history: ({ epoch: number } & Metrics)[];
}

export interface StreamEnd {
  type: "STREAM_END";
}

export type Frame = TrainingEvent | Snapshot | StreamEnd;

const EVENT_TYPES = new Set([
  "EPOCH_START",
  "FORWARD_PULSE",
  "ACTIVATIONS_COMPUTED",
  "OUTPUT_PRODUCED",
  "LOSS_COMPUTED",
  "BACKWARD_PULSE",
  "WEIGHTS_UPDATED",
  "EPOCH_END",
]);

export function parseFrame(line: string): Frame {
  const obj = JSON.parse(line);
  if (typeof obj !== "object" || obj === null || typeof obj.type !== "string") {
    throw new Error(`not a protocol frame: ${line.slice(0, 80)}`);
  }
  return obj as Frame;
}

export function isEvent(frame: Frame): frame is TrainingEvent {
  return EVENT_TYPES.has(frame.type);
}
