/**
 * Per-neuron equations come rendered from the server; the UI never
 * recomputes them, it only looks them up for the strip and tooltips.
 */

export interface EquationTerm {
  coefficient: number;
  source: string;
}

export interface NeuronEquation {
  neuron_label: string;
  terms: EquationTerm[];
  bias: number;
  wrapper: string | null;
  rendered: string;
}

export interface EquationsPayload {
  layers: { layer: number; neurons: NeuronEquation[] }[];
}

/** Tooltip text for one neuron: the server's rendering, verbatim. */
export function tooltipFor(
  payload: EquationsPayload,
  layer: number,
  index: number,
): string | null {
  const group = payload.layers.find((l) => l.layer === layer);
  const neuron = group?.neurons[index];
  return neuron ? neuron.rendered : null;
}

/** The output layer's equations, for the strip beneath the graph. */
export function outputEquations(payload: EquationsPayload): string[] {
  if (payload.layers.length === 0) return [];
  const last = payload.layers[payload.layers.length - 1];
  return last.neurons.map((n) => n.rendered);
}
