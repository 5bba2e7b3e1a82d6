/**
 * Side panels: network information, the per-neuron equation strip, the
 * hover tooltip, and the predict form. All strings and numbers come from
 * server responses.
 */

import { DatasetSummary, SessionDetail, predict } from "./api.js";
import { EquationsPayload, outputEquations, tooltipFor } from "./equations.js";

export function renderNetworkInfo(el: HTMLElement, detail: SessionDetail): void {
  const info = detail.network_info;
  const ds = info.dataset;
  const metrics = info.model.latest_metrics;
  const rows: [string, string][] = [
    ["Dataset", `${ds.name} (${ds.samples} samples)`],
    ["Features", ds.feature_names.join(", ")],
    ["Target", `${ds.target_name} (${ds.task})`],
    ["Architecture", info.architecture.layer_sizes.join(" - ")],
    ["Activation", info.architecture.activation],
    ["Status", info.training.status],
    ["Epoch", `${info.training.current_epoch} / ${info.training.total_epochs}`],
    ["Learning rate", String(info.hyperparameters.learning_rate)],
    ["Seed", String(info.hyperparameters.seed)],
    ["Parameters", String(info.model.parameter_count)],
  ];
  if (metrics) {
    rows.push(["Loss", metrics.loss.toFixed(4)]);
    if (metrics.accuracy !== undefined && metrics.accuracy !== null) {
      rows.push(["Accuracy", metrics.accuracy.toFixed(4)]);
    }
    if (metrics.val_loss !== undefined && metrics.val_loss !== null) {
      rows.push(["Val loss", metrics.val_loss.toFixed(4)]);
      rows.push(["Val accuracy", metrics.val_accuracy?.toFixed(4) ?? "-"]);
    }
  }
  el.innerHTML = rows
    .map(([k, v]) => `<div class="info-row"><span>${k}</span><b>${v}</b></div>`)
    .join("");
}

export function renderEquationStrip(el: HTMLElement, equations: EquationsPayload | null): void {
  if (!equations) {
    el.textContent = "";
    return;
  }
  el.innerHTML = outputEquations(equations)
    .map((text) => `<code>${text}</code>`)
    .join("");
}

export class Tooltip {
  constructor(private el: HTMLElement) {}

  show(equations: EquationsPayload | null, layer: number, index: number, at: DOMRect): void {
    const text = equations ? tooltipFor(equations, layer, index) : null;
    if (!text) return;
    this.el.textContent = text;
    this.el.style.display = "block";
    this.el.style.left = `${at.right + 8 + window.scrollX}px`;
    this.el.style.top = `${at.top + window.scrollY}px`;
  }

  hide(): void {
    this.el.style.display = "none";
  }
}

export function buildPredictForm(
  el: HTMLElement,
  dataset: DatasetSummary,
  sessionId: () => string | null,
): void {
  el.innerHTML = "";
  const inputs: HTMLInputElement[] = [];
  for (const name of dataset.feature_names) {
    const wrap = document.createElement("label");
    wrap.className = "predict-field";
    wrap.textContent = name;
    const input = document.createElement("input");
    input.type = "number";
    input.step = "any";
    input.value = "0";
    wrap.appendChild(input);
    el.appendChild(wrap);
    inputs.push(input);
  }
  const button = document.createElement("button");
  button.textContent = "Predict";
  const out = document.createElement("div");
  out.className = "predict-result";
  button.addEventListener("click", async () => {
    const id = sessionId();
    if (!id) {
      out.textContent = "create a session first";
      return;
    }
    try {
      const result = await predict(id, inputs.map((i) => Number(i.value)));
      if (result.probabilities) {
        const parts = Object.entries(result.probabilities)
          .map(([label, p]) => `${label}: ${(p * 100).toFixed(1)}%`)
          .join("  ");
        out.textContent = `${result.label}  (${parts})`;
      } else {
        out.textContent = `value: ${result.value?.toFixed(4)}`;
      }
    } catch (err) {
      out.textContent = String((err as Error).message);
    }
  });
  el.appendChild(button);
  el.appendChild(out);
}
