/**
 * Configuration panel (dataset pick/upload, hidden layers with add/remove
 * and per-layer +/- neuron steppers, activation, learning rate, epochs,
 * seed, validation split) and the Play/Pause/Stop transport.
 */

import { DatasetSummary, SessionConfig } from "./api.js";

const MAX_HIDDEN_LAYERS = 6;
const MAX_NEURONS = 32;

export class ConfigPanel {
  hidden: number[] = [8];
  onChange: (() => void) | null = null;

  constructor(private root: HTMLElement) {}

  get config(): SessionConfig {
    return {
      hidden_layers: this.hidden.slice(),
      activation: (document.getElementById("cfg-activation") as HTMLSelectElement)
        .value as SessionConfig["activation"],
      learning_rate: Number((document.getElementById("cfg-lr") as HTMLInputElement).value),
      epochs: Number((document.getElementById("cfg-epochs") as HTMLInputElement).value),
      seed: Number((document.getElementById("cfg-seed") as HTMLInputElement).value),
    };
  }

  get valFraction(): number {
    return Number((document.getElementById("cfg-val") as HTMLInputElement).value);
  }

  renderLayers(): void {
    const host = this.root.querySelector("#cfg-layers") as HTMLElement;
    host.innerHTML = "";
    this.hidden.forEach((size, i) => {
      const row = document.createElement("div");
      row.className = "layer-row";
      const label = document.createElement("span");
      label.textContent = `hidden ${i + 1}: ${size}`;
      const dec = document.createElement("button");
      dec.textContent = "−";
      dec.title = "remove a neuron";
      dec.addEventListener("click", () => {
        if (this.hidden[i] > 1) this.hidden[i] -= 1;
        this.renderLayers();
        this.onChange?.();
      });
      const inc = document.createElement("button");
      inc.textContent = "+";
      inc.title = "add a neuron";
      inc.addEventListener("click", () => {
        if (this.hidden[i] < MAX_NEURONS) this.hidden[i] += 1;
        this.renderLayers();
        this.onChange?.();
      });
      const drop = document.createElement("button");
      drop.textContent = "×";
      drop.title = "remove this layer";
      drop.addEventListener("click", () => {
        this.hidden.splice(i, 1);
        this.renderLayers();
        this.onChange?.();
      });
      row.append(label, dec, inc, drop);
      host.appendChild(row);
    });
    const add = document.createElement("button");
    add.textContent = "Add Layer";
    add.disabled = this.hidden.length >= MAX_HIDDEN_LAYERS;
    add.addEventListener("click", () => {
      this.hidden.push(4);
      this.renderLayers();
      this.onChange?.();
    });
    host.appendChild(add);
  }

  setEnabled(enabled: boolean): void {
    this.root
      .querySelectorAll("button, input, select")
      .forEach((el) => ((el as HTMLButtonElement).disabled = !enabled));
    if (enabled) this.renderLayers(); // restore add-layer bound state
  }
}

export function populateDatasetSelect(
  select: HTMLSelectElement,
  datasets: DatasetSummary[],
  keep?: string,
): void {
  select.innerHTML = "";
  for (const ds of datasets) {
    const option = document.createElement("option");
    option.value = ds.id;
    option.textContent = `${ds.name} (${ds.task}, ${ds.samples} rows)`;
    select.appendChild(option);
  }
  if (keep && datasets.some((d) => d.id === keep)) select.value = keep;
}

export interface TransportHandlers {
  play: () => void;
  pause: () => void;
  stop: () => void;
}

export function bindTransport(handlers: TransportHandlers): {
  setStatus: (status: string) => void;
} {
  const play = document.getElementById("btn-play") as HTMLButtonElement;
  const pause = document.getElementById("btn-pause") as HTMLButtonElement;
  const stop = document.getElementById("btn-stop") as HTMLButtonElement;
  play.addEventListener("click", handlers.play);
  pause.addEventListener("click", handlers.pause);
  stop.addEventListener("click", handlers.stop);
  return {
    // disable whatever is illegal in the current status so the UI can
    // never submit a transition the server would 409
    setStatus(status: string): void {
      play.disabled = !(status === "idle" || status === "paused");
      pause.disabled = status !== "running";
      stop.disabled = !(status === "running" || status === "paused");
    },
  };
}
