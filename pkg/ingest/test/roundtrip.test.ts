/**
 * Round-trip conformance: every emitted CoNLL-U file must load cleanly in the
 * extraction engine's Python loader, and the parsed quadruples must carry the
 * exact word-level feature tuples downstream code expects.
 */

import assert from "node:assert/strict";
import { execFileSync, spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { test } from "node:test";

import { convertDataset } from "../src/convert";
import { parseDocument } from "../src/parse";

function pythonLoaderAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import keyness"], { encoding: "utf-8" });
  return probe.status === 0;
}

const HAVE_LOADER = pythonLoaderAvailable();

test("emitted corpus loads cleanly in the engine loader",
     { skip: !HAVE_LOADER }, () => {
  const raw = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-rt-raw-"));
  fs.mkdirSync(path.join(raw, "docs"));
  fs.mkdirSync(path.join(raw, "keys"));
  const texts = [
    "The Atlantic hurricane season began early. Forecasters raised the storm count.",
    "We describe a method for anomaly detection. The method improves the baseline.",
    "John Smith discussed the quarterly briefing. The committee met in Geneva on Friday.",
    "Prices rose after the announcement; markets recovered quickly.",
    "Solar farms grew across the region. The solar farm supplied the grid.",
  ];
  texts.forEach((text, i) => {
    fs.writeFileSync(path.join(raw, "docs", `doc${i}.txt`), text);
    fs.writeFileSync(path.join(raw, "keys", `doc${i}.key`), "placeholder\n");
  });
  const out = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-rt-out-"));
  convertDataset(raw, out, { sublanguage: "misc-news", seed: 1 });

  const script = `
import sys, json
from keyness.corpus import load_dataset
total = 0
for manifest in sys.argv[1:]:
    ds = load_dataset(manifest)
    for doc in ds.documents:
        assert doc.sentence_count >= 1 and doc.word_count >= 1
        total += 1
print(json.dumps({"loaded": total}))
`;
  const result = execFileSync("python3", [
    "-c", script,
    path.join(out, "train.manifest.json"),
    path.join(out, "test.manifest.json"),
  ], { encoding: "utf-8" });
  assert.deepEqual(JSON.parse(result.trim()), { loaded: 5 });
});

test("quadruple fixture matches through the engine",
     { skip: !HAVE_LOADER }, () => {
  const conllu = parseDocument(
    "The Atlantic hurricane season began early.", "fixture", "misc-news");
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-quad-"));
  const file = path.join(dir, "fixture.conllu");
  fs.writeFileSync(file, conllu);
  const script = `
import json, sys
from keyness.corpus import load_parsed_document
from keyness.candidates import generate_ngrams, quadruples
doc = load_parsed_document(sys.argv[1])
term = {t.key: t for t in generate_ngrams(doc)}["atlantic hurricane season"]
print(json.dumps([list(q) for q in quadruples(term, doc)]))
`;
  const result = execFileSync("python3", ["-c", script, file], { encoding: "utf-8" });
  assert.deepEqual(JSON.parse(result.trim()), [
    ["NNP", "UPPER-CASE", "NOT-STOP", "amod"],
    ["NN", "LOWER-CASE", "NOT-STOP", "compound"],
    ["NN", "LOWER-CASE", "NOT-STOP", "nsubj"],
    ["UNK", "UNK", "UNK", "UNK"],
  ]);
});
