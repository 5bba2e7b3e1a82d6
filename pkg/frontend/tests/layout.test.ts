import assert from "node:assert/strict";
import test from "node:test";

import { computeLayout, edgeThickness, nodeLabel } from "../src/layout.js";

const FEATURES = ["sepal_length", "sepal_width", "petal_length", "petal_width"];

test("4-8-3 layout has 3 columns and 15 nodes", () => {
  const layout = computeLayout([4, 8, 3], FEATURES);
  assert.equal(layout.nodes.length, 15);
  const columns = new Set(layout.nodes.map((n) => n.x));
  assert.equal(columns.size, 3);
  assert.equal(layout.edges.length, 4 * 8 + 8 * 3);
});

test("columns are ordered input to output, left to right", () => {
  const layout = computeLayout([4, 8, 3], FEATURES);
  const xs = [0, 1, 2].map(
    (layer) => layout.nodes.find((n) => n.layer === layer)!.x,
  );
  assert.ok(xs[0] < xs[1] && xs[1] < xs[2]);
});

test("labels follow the naming scheme", () => {
  assert.equal(nodeLabel(0, 2, 3, FEATURES), "petal_length");
  assert.equal(nodeLabel(1, 0, 3, FEATURES), "h1");
  assert.equal(nodeLabel(1, 7, 3, FEATURES), "h8");
  assert.equal(nodeLabel(2, 2, 3, FEATURES), "o3");
  const layout = computeLayout([4, 8, 3], FEATURES);
  const outs = layout.nodes.filter((n) => n.layer === 2).map((n) => n.label);
  assert.deepEqual(outs, ["o1", "o2", "o3"]);
});

test("edges connect existing node positions", () => {
  const layout = computeLayout([2, 3, 1], ["a", "b"]);
  const at = (layer: number, index: number) =>
    layout.nodes.find((n) => n.layer === layer && n.index === index)!;
  for (const edge of layout.edges) {
    const src = at(edge.layer - 1, edge.from);
    const dst = at(edge.layer, edge.to);
    assert.equal(edge.x1, src.x);
    assert.equal(edge.y1, src.y);
    assert.equal(edge.x2, dst.x);
    assert.equal(edge.y2, dst.y);
  }
});

test("weight-based thickness scales with |w| and toggles off to uniform", () => {
  assert.equal(edgeThickness(4, 4, true, 1, 5), 5);
  assert.equal(edgeThickness(-2, 4, true, 1, 5), 3);
  assert.equal(edgeThickness(0, 4, true, 1, 5), 1);
  // toggle off: uniform minimum regardless of weight
  assert.equal(edgeThickness(4, 4, false, 1, 5), 1);
  // all-zero net: uniform minimum
  assert.equal(edgeThickness(0, 0, true, 1, 5), 1);
  assert.equal(edgeThickness(null, 4, true, 1, 5), 1);
});

test("single-node layers are vertically centered", () => {
  const layout = computeLayout([1, 1], ["only"], { height: 400 });
  for (const node of layout.nodes) assert.equal(node.y, 200);
});
