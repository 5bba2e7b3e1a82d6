/** Canvas chart of loss and accuracy (plus validation curves) over epochs. */

import { Metrics } from "./protocol.js";

type Point = { epoch: number } & Metrics;

const SERIES: { key: keyof Metrics; color: string; axis: "loss" | "acc"; label: string }[] = [
  { key: "loss", color: "#d9822b", axis: "loss", label: "loss" },
  { key: "val_loss", color: "#e8b84d", axis: "loss", label: "val loss" },
  { key: "accuracy", color: "#2b7bd9", axis: "acc", label: "accuracy" },
  { key: "val_accuracy", color: "#63a8ec", axis: "acc", label: "val accuracy" },
];

export class ProgressChart {
  constructor(private canvas: HTMLCanvasElement, private legend: HTMLElement) {}

  render(history: Point[], totalEpochs: number): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    const pad = { left: 42, right: 42, top: 12, bottom: 24 };
    const plotW = width - pad.left - pad.right;
    const plotH = height - pad.top - pad.bottom;

    ctx.strokeStyle = "#3a3f4b";
    ctx.strokeRect(pad.left, pad.top, plotW, plotH);
    if (history.length === 0) return;

    const xMax = Math.max(totalEpochs - 1, history[history.length - 1].epoch, 1);
    const lossMax = Math.max(
      ...history.map((p) => Math.max(p.loss, p.val_loss ?? 0)),
      1e-9,
    );
    const x = (epoch: number): number => pad.left + (epoch / xMax) * plotW;
    const yLoss = (v: number): number => pad.top + (1 - v / lossMax) * plotH;
    const yAcc = (v: number): number => pad.top + (1 - v) * plotH;

    const legendParts: string[] = [];
    for (const series of SERIES) {
      const points = history.filter((p) => p[series.key] !== undefined && p[series.key] !== null);
      if (points.length === 0) continue;
      ctx.strokeStyle = series.color;
      ctx.lineWidth = 1.6;
      ctx.beginPath();
      points.forEach((p, i) => {
        const value = p[series.key] as number;
        const px = x(p.epoch);
        const py = series.axis === "loss" ? yLoss(value) : yAcc(value);
        if (i === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      });
      ctx.stroke();
      legendParts.push(`<span style="color:${series.color}">● ${series.label}</span>`);
    }

    ctx.fillStyle = "#9aa2b1";
    ctx.font = "10px sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(lossMax.toPrecision(3), 2, pad.top + 10);
    ctx.fillText("0", 2, pad.top + plotH);
    ctx.textAlign = "right";
    ctx.fillText("1.0", width - 2, pad.top + 10);
    ctx.textAlign = "center";
    ctx.fillText(String(xMax), pad.left + plotW, height - 8);
    ctx.fillText("0", pad.left, height - 8);
    this.legend.innerHTML = legendParts.join(" ");
  }
}
