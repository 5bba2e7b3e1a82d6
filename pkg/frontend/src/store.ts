/**
 * Playback state: the single source of truth for what the UI shows.
 *
 * Events apply strictly in seq order; anything arriving early is buffered
 * until its predecessor has been applied, so the rendered state is always
 * derivable from a contiguous event prefix. All numbers come from server
 * payloads; nothing is recomputed here.
 *
 * Displayed weights per layer flip from pre- to post-update values only
 * when that layer's WEIGHTS_UPDATED event applies, which the stream orders
 * strictly after the BACKWARD_PULSE into the same layer.
 */

import {
  Frame,
  Metrics,
  Snapshot,
  TrainingEvent,
  isEvent,
} from "./protocol.js";

export interface PulseRequest {
  kind: "forward" | "backward";
  layer: number; // weight layer the pulse travels across / into
  seq: number;
}

export interface LayerDisplay {
  weights: number[][] | null;
  biases: number[] | null;
  /** true once this epoch's error signal reached the layer */
  signalArrived: boolean;
  /** true once this epoch's update applied (labels show post values) */
  updated: boolean;
}

export class PlaybackStore {
  /** next seq this store will apply */
  expectedSeq = 0;
  status = "idle";
  currentEpoch = 0;
  connected = false;
  ended = false;

  /** displayed per-layer state, keyed by 1-based weight layer */
  layers = new Map<number, LayerDisplay>();
  activations = new Map<number, number[]>();
  deltas = new Map<number, number[]>();
  output: number[] | null = null;
  loss: number | null = null;
  history: ({ epoch: number } & Metrics)[] = [];

  /** animation requests in application order; the renderer drains this */
  pulseQueue: PulseRequest[] = [];

  private buffered = new Map<number, TrainingEvent>();

  private layer(l: number): LayerDisplay {
    let d = this.layers.get(l);
    if (d === undefined) {
      d = { weights: null, biases: null, signalArrived: false, updated: false };
      this.layers.set(l, d);
    }
    return d;
  }

  /** Feed any frame from the stream (or a parsed fixture line). */
  ingest(frame: Frame): void {
    if (frame.type === "SNAPSHOT") {
      this.reset(frame);
      return;
    }
    if (frame.type === "STREAM_END") {
      this.ended = true;
      return;
    }
    if (!isEvent(frame)) return;
    if (frame.seq < this.expectedSeq) return; // already applied (replay overlap)
    if (frame.seq > this.expectedSeq) {
      this.buffered.set(frame.seq, frame); // early: hold until predecessor
      return;
    }
    this.apply(frame);
    let next: TrainingEvent | undefined;
    while ((next = this.buffered.get(this.expectedSeq)) !== undefined) {
      this.buffered.delete(this.expectedSeq);
      this.apply(next);
    }
  }

  /** Rebuild display state from a server snapshot (connect or reconnect). */
  private reset(snap: Snapshot): void {
    this.layers.clear();
    this.activations.clear();
    this.deltas.clear();
    this.buffered.clear();
    this.pulseQueue.length = 0;
    this.output = null;
    this.loss = null;
    this.ended = false;
    this.status = snap.status;
    this.currentEpoch = snap.current_epoch;
    this.history = snap.metrics_history.slice();
    this.expectedSeq = snap.last_seq + 1;
    snap.params.weights.forEach((w, i) => {
      const d = this.layer(i + 1);
      d.weights = w;
      d.biases = snap.params.biases[i];
      d.signalArrived = false;
      d.updated = false;
    });
    if (this.history.length > 0) {
      this.loss = this.history[this.history.length - 1].loss;
    }
    this.connected = true;
  }

  private apply(ev: TrainingEvent): void {
    this.expectedSeq = ev.seq + 1;
    switch (ev.type) {
      case "EPOCH_START":
        this.currentEpoch = ev.epoch;
        this.status = "running";
        for (const d of this.layers.values()) {
          d.signalArrived = false;
          d.updated = false;
        }
        break;
      case "FORWARD_PULSE": {
        const d = this.layer(ev.to_layer);
        // first sight of a layer's weights (fresh session, no snapshot yet)
        if (d.weights === null) d.weights = ev.edge_weights;
        this.pulseQueue.push({ kind: "forward", layer: ev.to_layer, seq: ev.seq });
        break;
      }
      case "ACTIVATIONS_COMPUTED":
        this.activations.set(ev.layer, ev.values);
        break;
      case "OUTPUT_PRODUCED":
        this.output = ev.values;
        break;
      case "LOSS_COMPUTED":
        this.loss = ev.loss;
        break;
      case "BACKWARD_PULSE": {
        this.layer(ev.into_layer).signalArrived = true;
        this.deltas.set(ev.into_layer, ev.deltas);
        this.pulseQueue.push({ kind: "backward", layer: ev.into_layer, seq: ev.seq });
        break;
      }
      case "WEIGHTS_UPDATED": {
        const d = this.layer(ev.layer);
        d.weights = ev.w_post;
        d.biases = ev.b_post;
        d.updated = true;
        break;
      }
      case "EPOCH_END":
        this.history.push({ epoch: ev.epoch, ...ev.metrics });
        this.currentEpoch = ev.epoch + 1;
        break;
    }
  }

  /** Displayed weight of one edge (row = destination neuron). */
  weight(layer: number, to: number, from: number): number | null {
    const d = this.layers.get(layer);
    if (!d || d.weights === null) return null;
    return d.weights[to][from];
  }

  /** max |w| across all displayed layers; 0 when everything is zero/unknown */
  globalWeightScale(): number {
    let best = 0;
    for (const d of this.layers.values()) {
      if (d.weights === null) continue;
      for (const row of d.weights) {
        for (const w of row) best = Math.max(best, Math.abs(w));
      }
    }
    return best;
  }
}
