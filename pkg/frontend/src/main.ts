/**
 * App bootstrap: wires the stream to the playback store, paces event
 * application at animation speed (a layer's labels flip only after its
 * pulse lands), and keeps the panels, chart, and transport in sync.
 */

import {
  DatasetSummary,
  control,
  createSession,
  eventsSocket,
  getEquations,
  getSession,
  listDatasets,
  uploadDataset,
} from "./api.js";
import { ProgressChart } from "./chart.js";
import { ConfigPanel, bindTransport, populateDatasetSelect } from "./controls.js";
import { EquationsPayload } from "./equations.js";
import { GraphView } from "./graph.js";
import { Tooltip, buildPredictForm, renderEquationStrip, renderNetworkInfo } from "./panels.js";
import { Frame, isEvent, parseFrame } from "./protocol.js";
import { PlaybackStore } from "./store.js";

const $ = (id: string): HTMLElement => document.getElementById(id)!;

const store = new PlaybackStore();
const graph = new GraphView(document.querySelector("#graph") as SVGSVGElement, store);
const chart = new ProgressChart(
  document.getElementById("chart") as HTMLCanvasElement,
  $("chart-legend"),
);
const tooltip = new Tooltip($("tooltip"));
const panel = new ConfigPanel($("config"));

let datasets: DatasetSummary[] = [];
let currentDataset: DatasetSummary | null = null;
let sessionId: string | null = null;
let totalEpochs = 1;
let equations: EquationsPayload | null = null;
let socket: WebSocket | null = null;
let lastStatus = "idle";

const arrivals: Frame[] = [];
let pumping = false;

function speed(): number {
  return Number(($("speed") as HTMLInputElement).value);
}

/** Apply frames at animation pace; pulses animate before their state lands. */
async function pump(): Promise<void> {
  if (pumping) return;
  pumping = true;
  while (arrivals.length > 0) {
    const frame = arrivals.shift()!;
    graph.speed = speed();
    if (isEvent(frame)) {
      if (frame.type === "FORWARD_PULSE") await graph.pulse("forward", frame.to_layer);
      if (frame.type === "BACKWARD_PULSE") await graph.pulse("backward", frame.into_layer);
    }
    store.ingest(frame);
    store.pulseQueue.length = 0; // renderer animates directly
    graph.refresh();
    if (isEvent(frame) && frame.type === "EPOCH_END") {
      chart.render(store.history, totalEpochs);
      void refreshPanels();
    }
    if (frame.type === "SNAPSHOT") {
      chart.render(store.history, totalEpochs);
      graph.refresh();
    }
    if (frame.type === "STREAM_END") void refreshPanels();
  }
  pumping = false;
}

function connect(id: string, lastSeq?: number): void {
  socket?.close();
  socket = eventsSocket(id, lastSeq);
  socket.onmessage = (msg) => {
    arrivals.push(parseFrame(String(msg.data)));
    void pump();
  };
  socket.onclose = () => {
    // dropped mid-run: resubscribe from the last applied event
    if (sessionId === id && !store.ended && lastStatus === "running") {
      setTimeout(() => connect(id, store.expectedSeq - 1), 250);
    }
  };
}

const transport = bindTransport({
  play: () => void command("play"),
  pause: () => void command("pause"),
  stop: () => void command("stop"),
});

async function command(cmd: "play" | "pause" | "stop"): Promise<void> {
  if (!sessionId) {
    if (cmd !== "play") return;
    await startSession();
    if (!sessionId) return;
  }
  try {
    const { status } = await control(sessionId, cmd);
    lastStatus = status;
    transport.setStatus(status);
    panel.setEnabled(status === "stopped" || status === "completed");
    void refreshPanels();
  } catch (err) {
    showError(err);
  }
}

async function startSession(): Promise<void> {
  const select = $("dataset") as HTMLSelectElement;
  currentDataset = datasets.find((d) => d.id === select.value) ?? null;
  if (!currentDataset) return;
  try {
    const descriptor = await createSession(currentDataset.id, panel.config, panel.valFraction);
    sessionId = descriptor.id;
    totalEpochs = descriptor.config.epochs;
    lastStatus = descriptor.status;
    graph.build(descriptor.config.layer_sizes, currentDataset.feature_names);
    buildPredictForm($("predict"), currentDataset, () => sessionId);
    connect(sessionId);
    transport.setStatus(descriptor.status);
    panel.setEnabled(false);
    clearError();
    void refreshPanels();
  } catch (err) {
    showError(err);
  }
}

async function refreshPanels(): Promise<void> {
  if (!sessionId) return;
  try {
    const detail = await getSession(sessionId);
    lastStatus = detail.status;
    renderNetworkInfo($("info"), detail);
    transport.setStatus(detail.status);
    equations = await getEquations(sessionId);
    renderEquationStrip($("equations"), equations);
  } catch {
    /* transient; next epoch refresh retries */
  }
}

graph.onHover = (layer, index, at) => tooltip.show(equations, layer, index, at);
graph.onHoverEnd = () => tooltip.hide();

($("thickness-mode") as HTMLInputElement).addEventListener("change", (e) => {
  graph.weightBasedThickness = (e.target as HTMLInputElement).checked;
  graph.refresh();
});

$("upload").addEventListener("change", async (e) => {
  const file = (e.target as HTMLInputElement).files?.[0];
  if (!file) return;
  try {
    const summary = await uploadDataset(file);
    datasets = await listDatasets();
    populateDatasetSelect($("dataset") as HTMLSelectElement, datasets, summary.id);
    clearError();
  } catch (err) {
    showError(err);
  }
});

$("dataset").addEventListener("change", () => {
  sessionId = null;
  currentDataset = datasets.find((d) => d.id === ($("dataset") as HTMLSelectElement).value) ?? null;
  if (currentDataset) buildPredictForm($("predict"), currentDataset, () => sessionId);
});

function showError(err: unknown): void {
  const box = $("error");
  const failure = err as { error?: { message?: string; detail?: { violations?: string[] } } };
  const violations = failure.error?.detail?.violations;
  box.textContent = violations ? violations.join("; ") : failure.error?.message ?? String(err);
  box.style.display = "block";
}

function clearError(): void {
  $("error").style.display = "none";
}

async function init(): Promise<void> {
  datasets = await listDatasets();
  populateDatasetSelect($("dataset") as HTMLSelectElement, datasets);
  panel.renderLayers();
  panel.onChange = () => undefined;
  currentDataset = datasets[0] ?? null;
  if (currentDataset) buildPredictForm($("predict"), currentDataset, () => sessionId);
  transport.setStatus("idle");
  chart.render([], 1);
}

void init();
