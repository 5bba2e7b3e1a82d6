/**
 * Layered left-to-right graph layout: input column first (nodes labelled by
 * feature name), hidden columns h1, h2, ..., output column o1, o2, ...
 */

export interface NodePosition {
  layer: number; // 0 = inputs
  index: number;
  label: string;
  x: number;
  y: number;
}

export interface EdgePath {
  layer: number; // 1-based weight layer (destination column)
  from: number;
  to: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface GraphLayout {
  width: number;
  height: number;
  nodes: NodePosition[];
  edges: EdgePath[];
}

export function nodeLabel(layer: number, index: number, nLayers: number, featureNames: string[]): string {
  if (layer === 0) return featureNames[index] ?? `x${index + 1}`;
  if (layer === nLayers - 1) return `o${index + 1}`;
  return `h${index + 1}`;
}

export function computeLayout(
  layerSizes: number[],
  featureNames: string[],
  opts: { width?: number; height?: number; padX?: number; padY?: number } = {},
): GraphLayout {
  const width = opts.width ?? 920;
  const height = opts.height ?? 480;
  const padX = opts.padX ?? 90;
  const padY = opts.padY ?? 40;
  const nLayers = layerSizes.length;
  const colGap = nLayers > 1 ? (width - 2 * padX) / (nLayers - 1) : 0;

  const nodes: NodePosition[] = [];
  const columns: NodePosition[][] = [];
  layerSizes.forEach((size, layer) => {
    const column: NodePosition[] = [];
    const rowGap = (height - 2 * padY) / Math.max(size - 1, 1);
    for (let index = 0; index < size; index++) {
      const y = size === 1 ? height / 2 : padY + index * rowGap;
      const node: NodePosition = {
        layer,
        index,
        label: nodeLabel(layer, index, nLayers, featureNames),
        x: padX + layer * colGap,
        y,
      };
      column.push(node);
      nodes.push(node);
    }
    columns.push(column);
  });

  const edges: EdgePath[] = [];
  for (let layer = 1; layer < nLayers; layer++) {
    for (const dst of columns[layer]) {
      for (const src of columns[layer - 1]) {
        edges.push({
          layer,
          from: src.index,
          to: dst.index,
          x1: src.x,
          y1: src.y,
          x2: dst.x,
          y2: dst.y,
        });
      }
    }
  }
  return { width, height, nodes, edges };
}

/** Edge stroke width; thickness tracks |w| / max|w| when enabled. */
export function edgeThickness(
  weight: number | null,
  globalScale: number,
  weightBased: boolean,
  min = 0.75,
  max = 6,
): number {
  if (!weightBased || weight === null || globalScale === 0) return min;
  return min + (Math.abs(weight) / globalScale) * (max - min);
}
