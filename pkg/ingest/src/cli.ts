#!/usr/bin/env node
/**
 * keyness-ingest <command>
 *
 *   normalize  --in raw.txt [--out normalized.txt]
 *   parse      --in raw.txt --doc-id ID --sublanguage LABEL [--out doc.conllu]
 *              [--parser-cmd "cmd arg1 arg2"]
 *   convert-dataset --raw DIR --out DIR --sublanguage LABEL [--seed N]
 *              [--train-fraction 0.8] [--name NAME] [--parser-cmd "..."]
 */

import * as fs from "node:fs";

import { convertDataset } from "./convert";
import { normalizeText } from "./normalize";
import { parseDocument } from "./parse";

function parseFlags(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`bad flag usage near ${key}`);
    }
    flags.set(key.slice(2), argv[i + 1]);
  }
  return flags;
}

function required(flags: Map<string, string>, name: string): string {
  const value = flags.get(name);
  if (value === undefined) {
    throw new Error(`missing required flag --${name}`);
  }
  return value;
}

function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (!command) {
    console.error("usage: keyness-ingest normalize|parse|convert-dataset ...");
    return 2;
  }
  let flags: Map<string, string>;
  try {
    flags = parseFlags(rest);
  } catch (error) {
    console.error(String(error));
    return 2;
  }
  const parserCmd = flags.get("parser-cmd")?.split(/\s+/);
  try {
    if (command === "normalize") {
      const text = normalizeText(fs.readFileSync(required(flags, "in"), "utf-8"));
      if (flags.has("out")) {
        fs.writeFileSync(flags.get("out")!, text + "\n");
      } else {
        process.stdout.write(text + "\n");
      }
      return 0;
    }
    if (command === "parse") {
      const conllu = parseDocument(
        fs.readFileSync(required(flags, "in"), "utf-8"),
        required(flags, "doc-id"),
        required(flags, "sublanguage"),
        { parserCmd });
      if (flags.has("out")) {
        fs.writeFileSync(flags.get("out")!, conllu);
      } else {
        process.stdout.write(conllu);
      }
      return 0;
    }
    if (command === "convert-dataset") {
      const report = convertDataset(required(flags, "raw"), required(flags, "out"), {
        sublanguage: required(flags, "sublanguage"),
        seed: flags.has("seed") ? Number(flags.get("seed")) : 0,
        trainFraction: flags.has("train-fraction")
          ? Number(flags.get("train-fraction")) : 0.8,
        datasetName: flags.get("name"),
        parserCmd,
      });
      process.stdout.write(JSON.stringify({
        converted: report.converted.length,
        failed: report.failed.length,
        missing_gold: report.missingGold.length,
        train_manifest: report.trainManifest,
        test_manifest: report.testManifest,
      }) + "\n");
      return report.failed.length > 0 ? 1 : 0;
    }
  } catch (error) {
    console.error(JSON.stringify({ error: String(error) }));
    return 1;
  }
  console.error(`unknown command: ${command}`);
  return 2;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
