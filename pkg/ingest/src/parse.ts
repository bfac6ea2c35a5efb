/**
 * Document parsing: normalize, then either the built-in rule parser or an
 * external parser command that reads normalized text on stdin and writes
 * CoNLL-U token lines on stdout.
 */

import { execFileSync } from "node:child_process";

import { toConllu } from "./conllu";
import { normalizeText } from "./normalize";
import { ParsedToken, parseSentence } from "./parser";
import { splitSentences, tagSentence, tokenize } from "./tagger";

export interface ParseOptions {
  parserCmd?: string[]; // external command; default is the built-in parser
}

export function parseDocument(raw: string, docId: string, sublanguage: string,
                              options: ParseOptions = {}): string {
  const normalized = normalizeText(raw);
  if (!normalized) {
    throw new Error(`document ${docId} is empty after normalization`);
  }
  if (options.parserCmd && options.parserCmd.length > 0) {
    const [cmd, ...args] = options.parserCmd;
    const body = execFileSync(cmd, args, { input: normalized, encoding: "utf-8" });
    return `# doc_id = ${docId}\n# sublanguage = ${sublanguage}\n${body.trimEnd()}\n`;
  }
  const sentences: ParsedToken[][] = [];
  for (const sentence of splitSentences(normalized)) {
    const words = tokenize(sentence);
    if (words.length === 0) {
      continue;
    }
    sentences.push(parseSentence(tagSentence(words)));
  }
  if (sentences.length === 0) {
    throw new Error(`document ${docId} has no sentences`);
  }
  return toConllu(docId, sublanguage, sentences);
}
