/** Thin REST client; all endpoints are documented in docs/protocol.md. */

import { EquationsPayload } from "./equations.js";
import { Metrics } from "./protocol.js";

export interface DatasetSummary {
  id: string;
  name: string;
  samples: number;
  feature_names: string[];
  target_name: string;
  task: "classification" | "regression";
  class_labels?: string[];
}

export interface SessionConfig {
  hidden_layers: number[];
  activation: "sigmoid" | "relu";
  learning_rate: number;
  epochs: number;
  seed: number;
}

export interface SessionDescriptor {
  id: string;
  dataset_id: string;
  status: string;
  current_epoch: number;
  config: {
    layer_sizes: number[];
    activation: string;
    learning_rate: number;
    epochs: number;
    task: string;
    seed: number;
  };
}

export interface SessionDetail extends SessionDescriptor {
  network_info: {
    dataset: DatasetSummary;
    architecture: { layer_sizes: number[]; hidden_layers: number; activation: string };
    training: { status: string; current_epoch: number; total_epochs: number };
    hyperparameters: { learning_rate: number; epochs: number; task: string; seed: number };
    model: { parameter_count: number; latest_metrics: Metrics | null };
  };
  metrics_history: ({ epoch: number } & Metrics)[];
}

export interface ApiError {
  code: string;
  message: string;
  detail?: unknown;
}

export class ApiFailure extends Error {
  constructor(public error: ApiError, public status: number) {
    super(error.message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, init);
  const body = await response.json();
  if (!response.ok) throw new ApiFailure(body as ApiError, response.status);
  return body as T;
}

export function listDatasets(): Promise<DatasetSummary[]> {
  return request("/datasets");
}

export function uploadDataset(file: File, target?: string): Promise<DatasetSummary> {
  const form = new FormData();
  form.append("file", file);
  const query = target ? `?target=${encodeURIComponent(target)}` : "";
  return request(`/datasets${query}`, { method: "POST", body: form });
}

export function createSession(
  datasetId: string,
  config: SessionConfig,
  valFraction: number,
): Promise<SessionDescriptor> {
  return request("/sessions", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({
      dataset_id: datasetId,
      config,
      val_fraction: valFraction,
      split_seed: config.seed,
    }),
  });
}

export function getSession(id: string): Promise<SessionDetail> {
  return request(`/sessions/${id}`);
}

export function control(
  id: string,
  command: "play" | "pause" | "stop",
): Promise<{ status: string }> {
  return request(`/sessions/${id}/control`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ command }),
  });
}

export function predict(
  id: string,
  inputs: number[],
): Promise<{ probabilities?: Record<string, number>; label?: string; value?: number }> {
  return request(`/sessions/${id}/predict`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ inputs }),
  });
}

export function getEquations(id: string): Promise<EquationsPayload> {
  return request(`/sessions/${id}/equations`);
}

export function eventsSocket(id: string, lastSeq?: number): WebSocket {
  const protocol = location.protocol === "https:" ? "wss" : "ws";
  const suffix = lastSeq !== undefined ? `?last_seq=${lastSeq}` : "";
  return new WebSocket(`${protocol}://${location.host}/sessions/${id}/events${suffix}`);
}
