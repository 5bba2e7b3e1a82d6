/**
 * SVG network view: layered nodes with labels and activation values,
 * weight-labelled edges whose thickness can track magnitude, and animated
 * pulses (green forward, red backward) drained from the store's queue.
 */

import { GraphLayout, computeLayout, edgeThickness } from "./layout.js";
import { PlaybackStore, PulseRequest } from "./store.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export class GraphView {
  private layout: GraphLayout | null = null;
  private edgeEls = new Map<string, SVGLineElement>();
  private edgeLabelEls = new Map<string, SVGTextElement>();
  private nodeValueEls = new Map<string, SVGTextElement>();
  private pulseLayer: SVGGElement | null = null;
  private animating = false;

  weightBasedThickness = true;
  speed = 1.0; // 0.25x .. 4x
  onHover: ((layer: number, index: number, at: DOMRect) => void) | null = null;
  onHoverEnd: (() => void) | null = null;

  constructor(private root: SVGSVGElement, private store: PlaybackStore) {}

  build(layerSizes: number[], featureNames: string[]): void {
    this.layout = computeLayout(layerSizes, featureNames);
    this.root.setAttribute("viewBox", `0 0 ${this.layout.width} ${this.layout.height}`);
    this.root.innerHTML = "";
    this.edgeEls.clear();
    this.edgeLabelEls.clear();
    this.nodeValueEls.clear();

    const edgeGroup = document.createElementNS(SVG_NS, "g");
    for (const edge of this.layout.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(edge.x1));
      line.setAttribute("y1", String(edge.y1));
      line.setAttribute("x2", String(edge.x2));
      line.setAttribute("y2", String(edge.y2));
      line.classList.add("edge");
      edgeGroup.appendChild(line);
      this.edgeEls.set(`${edge.layer}:${edge.to}:${edge.from}`, line);

      const label = document.createElementNS(SVG_NS, "text");
      label.classList.add("edge-label");
      label.setAttribute("x", String((edge.x1 + 2 * edge.x2) / 3));
      label.setAttribute("y", String((edge.y1 + 2 * edge.y2) / 3 - 3));
      edgeGroup.appendChild(label);
      this.edgeLabelEls.set(`${edge.layer}:${edge.to}:${edge.from}`, label);
    }
    this.root.appendChild(edgeGroup);

    this.pulseLayer = document.createElementNS(SVG_NS, "g");
    this.root.appendChild(this.pulseLayer);

    const nodeGroup = document.createElementNS(SVG_NS, "g");
    for (const node of this.layout.nodes) {
      const g = document.createElementNS(SVG_NS, "g");
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(node.x));
      circle.setAttribute("cy", String(node.y));
      circle.setAttribute("r", "16");
      circle.classList.add("node", node.layer === 0 ? "node-input" : "node-unit");
      g.appendChild(circle);

      const name = document.createElementNS(SVG_NS, "text");
      name.classList.add("node-label");
      name.setAttribute("x", String(node.x));
      name.setAttribute("y", String(node.y - 22));
      name.textContent = node.label;
      g.appendChild(name);

      const value = document.createElementNS(SVG_NS, "text");
      value.classList.add("node-value");
      value.setAttribute("x", String(node.x));
      value.setAttribute("y", String(node.y + 4));
      g.appendChild(value);
      this.nodeValueEls.set(`${node.layer}:${node.index}`, value);

      if (node.layer > 0 && this.onHover) {
        g.addEventListener("mousemove", () => {
          this.onHover?.(node.layer, node.index, circle.getBoundingClientRect());
        });
        g.addEventListener("mouseleave", () => this.onHoverEnd?.());
      }
      nodeGroup.appendChild(g);
    }
    this.root.appendChild(nodeGroup);
    this.refresh();
  }

  /** Repaint weights, labels, thickness, and node values from the store. */
  refresh(): void {
    if (!this.layout) return;
    const scale = this.store.globalWeightScale();
    for (const edge of this.layout.edges) {
      const key = `${edge.layer}:${edge.to}:${edge.from}`;
      const weight = this.store.weight(edge.layer, edge.to, edge.from);
      const line = this.edgeEls.get(key)!;
      line.setAttribute(
        "stroke-width",
        String(edgeThickness(weight, scale, this.weightBasedThickness)),
      );
      line.classList.toggle("edge-negative", weight !== null && weight < 0);
      const label = this.edgeLabelEls.get(key)!;
      label.textContent = weight === null ? "" : weight.toFixed(2);
    }
    for (const [layer, values] of this.store.activations) {
      values.forEach((v, index) => {
        const el = this.nodeValueEls.get(`${layer}:${index}`);
        if (el) el.textContent = v.toFixed(2);
      });
    }
  }

  /** Animate one pulse; resolves when the dots reach the far column. */
  pulse(kind: PulseRequest["kind"], layer: number): Promise<void> {
    if (this.animating) return Promise.resolve();
    this.animating = true;
    return new Promise((resolve) => {
      this.animatePulse({ kind, layer, seq: -1 }, () => {
        this.animating = false;
        resolve();
      });
    });
  }

  private animatePulse(pulse: PulseRequest, done: () => void): void {
    if (!this.layout || !this.pulseLayer) return done();
    const edges = this.layout.edges.filter((e) => e.layer === pulse.layer);
    const duration = 420 / this.speed;
    const dots: { el: SVGCircleElement; e: (typeof edges)[number] }[] = [];
    for (const e of edges) {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("r", "4");
      dot.classList.add(pulse.kind === "forward" ? "pulse-forward" : "pulse-backward");
      this.pulseLayer.appendChild(dot);
      dots.push({ el: dot, e });
    }
    const start = performance.now();
    const step = (now: number): void => {
      const t = Math.min((now - start) / duration, 1);
      for (const { el, e } of dots) {
        // forward pulses travel source->destination, backward the reverse
        const from = pulse.kind === "forward" ? { x: e.x1, y: e.y1 } : { x: e.x2, y: e.y2 };
        const to = pulse.kind === "forward" ? { x: e.x2, y: e.y2 } : { x: e.x1, y: e.y1 };
        el.setAttribute("cx", String(from.x + (to.x - from.x) * t));
        el.setAttribute("cy", String(from.y + (to.y - from.y) * t));
      }
      if (t < 1) {
        requestAnimationFrame(step);
      } else {
        for (const { el } of dots) el.remove();
        done();
      }
    };
    requestAnimationFrame(step);
  }
}
