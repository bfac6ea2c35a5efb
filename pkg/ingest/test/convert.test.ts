import assert from "node:assert/strict";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { test } from "node:test";

import { convertDataset, seededShuffle } from "../src/convert";

function makeRawDataset(docs: number): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-raw-"));
  fs.mkdirSync(path.join(dir, "docs"));
  fs.mkdirSync(path.join(dir, "keys"));
  for (let i = 0; i < docs; i += 1) {
    fs.writeFileSync(path.join(dir, "docs", `doc${i}.txt`),
                     `The annual budget grew in Geneva. Officials praised the tax reform. ` +
                     `The tax reform returned later.`);
    fs.writeFileSync(path.join(dir, "keys", `doc${i}.key`),
                     "tax reform\n  annual budget  \n");
  }
  return dir;
}

test("ten documents split eight to two", () => {
  const raw = makeRawDataset(10);
  const out = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-out-"));
  const report = convertDataset(raw, out, { sublanguage: "misc-news", seed: 3 });
  assert.equal(report.converted.length, 10);
  const train = JSON.parse(fs.readFileSync(report.trainManifest, "utf-8"));
  const testm = JSON.parse(fs.readFileSync(report.testManifest, "utf-8"));
  assert.equal(train.documents.length, 8);
  assert.equal(testm.documents.length, 2);
  assert.equal(train.split, "train");
  assert.equal(train.sublanguage, "misc-news");
});

test("same seed reproduces the split, different seed changes it", () => {
  const raw = makeRawDataset(10);
  const ids = (outDir: string) => {
    const m = JSON.parse(fs.readFileSync(path.join(outDir, "test.manifest.json"), "utf-8"));
    return m.documents.map((d: { id: string }) => d.id);
  };
  const out1 = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-out-"));
  const out2 = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-out-"));
  convertDataset(raw, out1, { sublanguage: "misc-news", seed: 3 });
  convertDataset(raw, out2, { sublanguage: "misc-news", seed: 3 });
  assert.deepEqual(ids(out1), ids(out2));
  const outs = new Set<string>();
  for (let seed = 0; seed < 12; seed += 1) {
    const out = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-out-"));
    convertDataset(raw, out, { sublanguage: "misc-news", seed });
    outs.add(JSON.stringify(ids(out)));
  }
  assert.ok(outs.size > 1);
});

test("gold keywords preserved verbatim modulo trimming", () => {
  const raw = makeRawDataset(3);
  const out = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-out-"));
  const report = convertDataset(raw, out, { sublanguage: "misc-news" });
  const train = JSON.parse(fs.readFileSync(report.trainManifest, "utf-8"));
  assert.deepEqual(train.documents[0].gold_keywords,
                   ["tax reform", "annual budget"]);
});

test("missing keyword files are reported", () => {
  const raw = makeRawDataset(4);
  fs.rmSync(path.join(raw, "keys", "doc2.key"));
  const out = fs.mkdtempSync(path.join(os.tmpdir(), "ingest-out-"));
  const report = convertDataset(raw, out, { sublanguage: "misc-news" });
  assert.deepEqual(report.missingGold, ["doc2"]);
  assert.ok(fs.existsSync(path.join(out, "missing-gold.json")));
});

test("seeded shuffle is deterministic", () => {
  const a = seededShuffle([1, 2, 3, 4, 5, 6, 7, 8], 42);
  const b = seededShuffle([1, 2, 3, 4, 5, 6, 7, 8], 42);
  assert.deepEqual(a, b);
  assert.notDeepEqual(a, [1, 2, 3, 4, 5, 6, 7, 8]);
});
