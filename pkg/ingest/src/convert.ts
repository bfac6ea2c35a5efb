/**
 * Dataset conversion: a directory of raw documents plus keyword files becomes
 * parsed CoNLL-U documents and train/test manifests (8:2, seeded split).
 *
 * Recognized layouts: `docs/*.txt` + `keys/*.key`, or flat `*.txt` + `*.key`.
 * A document with no keyword file is converted but reported; a parser failure
 * skips the document with a log entry.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { ParseOptions, parseDocument } from "./parse";

export interface ConvertReport {
  converted: string[];
  missingGold: string[];
  failed: Array<{ id: string; error: string }>;
  trainManifest: string;
  testManifest: string;
}

export interface ConvertOptions extends ParseOptions {
  sublanguage: string;
  seed?: number;
  trainFraction?: number;
  datasetName?: string;
}

/** Deterministic 32-bit PRNG so the split is reproducible across runs. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function seededShuffle<T>(items: T[], seed: number): T[] {
  const shuffled = [...items];
  const rand = mulberry32(seed);
  for (let i = shuffled.length - 1; i > 0; i -= 1) {
    const j = Math.floor(rand() * (i + 1));
    [shuffled[i], shuffled[j]] = [shuffled[j], shuffled[i]];
  }
  return shuffled;
}

function findSources(rawDir: string): Array<{ id: string; text: string; key: string | null }> {
  const docsDir = fs.existsSync(path.join(rawDir, "docs"))
    ? path.join(rawDir, "docs") : rawDir;
  const keysDir = fs.existsSync(path.join(rawDir, "keys"))
    ? path.join(rawDir, "keys") : rawDir;
  const sources = [];
  for (const entry of fs.readdirSync(docsDir).sort()) {
    if (!entry.endsWith(".txt")) {
      continue;
    }
    const id = entry.slice(0, -4);
    const keyPath = path.join(keysDir, `${id}.key`);
    sources.push({
      id,
      text: path.join(docsDir, entry),
      key: fs.existsSync(keyPath) ? keyPath : null,
    });
  }
  return sources;
}

function readGold(keyPath: string | null): string[] {
  if (keyPath === null) {
    return [];
  }
  return fs.readFileSync(keyPath, "utf-8")
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
}

export function convertDataset(rawDir: string, outDir: string,
                               options: ConvertOptions): ConvertReport {
  const sources = findSources(rawDir);
  if (sources.length === 0) {
    throw new Error(`no .txt documents found under ${rawDir}`);
  }
  const docsOut = path.join(outDir, "docs");
  fs.mkdirSync(docsOut, { recursive: true });

  const report: ConvertReport = {
    converted: [], missingGold: [], failed: [],
    trainManifest: path.join(outDir, "train.manifest.json"),
    testManifest: path.join(outDir, "test.manifest.json"),
  };
  const entries: Array<{ id: string; path: string; gold_keywords: string[] }> = [];
  for (const source of sources) {
    const raw = fs.readFileSync(source.text, "utf-8");
    let conllu: string;
    try {
      conllu = parseDocument(raw, source.id, options.sublanguage, options);
    } catch (error) {
      report.failed.push({ id: source.id, error: String(error) });
      console.error(`[ingest] skipping ${source.id}: ${error}`);
      continue;
    }
    fs.writeFileSync(path.join(docsOut, `${source.id}.conllu`), conllu);
    if (source.key === null) {
      report.missingGold.push(source.id);
    }
    entries.push({
      id: source.id,
      path: `docs/${source.id}.conllu`,
      gold_keywords: readGold(source.key),
    });
    report.converted.push(source.id);
  }
  if (entries.length === 0) {
    throw new Error("every document failed to parse");
  }

  const trainFraction = options.trainFraction ?? 0.8;
  const order = seededShuffle(entries.map((_e, i) => i), options.seed ?? 0);
  const cut = Math.round(entries.length * trainFraction);
  const trainIds = order.slice(0, cut).sort((a, b) => a - b);
  const testIds = order.slice(cut).sort((a, b) => a - b);
  const name = options.datasetName ?? path.basename(rawDir);
  for (const [split, ids, file] of [
    ["train", trainIds, report.trainManifest],
    ["test", testIds, report.testManifest],
  ] as const) {
    const manifest = {
      name: `${name}-${split}`,
      sublanguage: options.sublanguage,
      split,
      documents: ids.map((i) => entries[i]),
    };
    fs.writeFileSync(file, JSON.stringify(manifest, null, 1));
  }
  if (report.missingGold.length > 0) {
    fs.writeFileSync(path.join(outDir, "missing-gold.json"),
                     JSON.stringify(report.missingGold, null, 1));
  }
  return report;
}
