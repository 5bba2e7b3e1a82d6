import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import test from "node:test";

import { isEvent, parseFrame } from "../src/protocol.js";

test("every fixture line parses as an event frame", () => {
  const lines = readFileSync(
    new URL("../../fixtures/trace_1epoch.jsonl", import.meta.url),
    "utf-8",
  )
    .trim()
    .split("\n");
  assert.equal(lines.length, 12);
  const seqs: number[] = [];
  for (const line of lines) {
    const frame = parseFrame(line);
    assert.ok(isEvent(frame));
    if (isEvent(frame)) seqs.push(frame.seq);
  }
  assert.deepEqual(
    seqs,
    Array.from({ length: 12 }, (_, i) => i),
  );
});

test("snapshot and stream-end frames are not events", () => {
  const snap = parseFrame(
    '{"type":"SNAPSHOT","last_seq":-1,"status":"idle","current_epoch":0,"params":{"weights":[],"biases":[]},"metrics_history":[]}',
  );
  assert.equal(isEvent(snap), false);
  assert.equal(isEvent(parseFrame('{"type":"STREAM_END"}')), false);
});

test("garbage lines raise", () => {
  assert.throws(() => parseFrame("not json"));
  assert.throws(() => parseFrame("[1,2]"));
});
