/**
 * Rule-based dependency assignment over tagged sentences.
 *
 * Head-final noun phrases (determiners, adjectives and nominal modifiers
 * attach to the last noun of a chain), first finite verb as root, positional
 * subject/object attachment, prepositions as case markers of the following
 * noun phrase.  Capitalized proper modifiers that look adjectival (Atlantic,
 * European, ...) attach as amod rather than compound.
 */

import { looksProperAdjective } from "./lexicon";
import { TaggedToken } from "./tagger";

export interface ParsedToken extends TaggedToken {
  head: number; // 1-based, 0 = root
  deprel: string;
}

const NOUN_TAGS = new Set(["NN", "NNS", "NNP", "NNPS"]);
const FINITE_VERB_TAGS = new Set(["VBD", "VBZ", "VBP", "MD"]);
const VERB_TAGS = new Set(["VBD", "VBZ", "VBP", "VB", "VBG", "VBN", "MD"]);

interface NounPhrase {
  start: number; // indices into the token array (0-based)
  head: number;
}

function nounPhrases(tokens: TaggedToken[]): NounPhrase[] {
  const phrases: NounPhrase[] = [];
  let i = 0;
  while (i < tokens.length) {
    if (NOUN_TAGS.has(tokens[i].xpos)) {
      let j = i;
      while (j + 1 < tokens.length && NOUN_TAGS.has(tokens[j + 1].xpos)) {
        j += 1;
      }
      phrases.push({ start: i, head: j });
      i = j + 1;
    } else {
      i += 1;
    }
  }
  return phrases;
}

export function parseSentence(tokens: TaggedToken[]): ParsedToken[] {
  const n = tokens.length;
  const head = new Array<number>(n).fill(-1);
  const deprel = new Array<string>(n).fill("dep");

  let root = tokens.findIndex((t) => FINITE_VERB_TAGS.has(t.xpos));
  if (root < 0) {
    root = tokens.findIndex((t) => VERB_TAGS.has(t.xpos));
  }
  const phrases = nounPhrases(tokens);
  if (root < 0) {
    root = phrases.length ? phrases[phrases.length - 1].head
      : tokens.findIndex((t) => /[\p{L}\p{N}]/u.test(t.form));
    if (root < 0) {
      root = 0;
    }
  }
  head[root] = 0;
  deprel[root] = "root";

  // noun-phrase internals: everything leans on the phrase head
  for (const phrase of phrases) {
    for (let i = phrase.start; i < phrase.head; i += 1) {
      head[i] = phrase.head + 1;
      const lower = tokens[i].form.toLowerCase();
      deprel[i] = tokens[i].xpos === "NNP" && looksProperAdjective(lower)
        ? "amod" : "compound";
    }
    // leading determiners / adjectives / possessives
    let k = phrase.start - 1;
    while (k >= 0) {
      const tag = tokens[k].xpos;
      if (tag === "DT" || tag === "PRP$") {
        head[k] = phrase.head + 1;
        deprel[k] = tag === "DT" ? "det" : "nmod:poss";
      } else if (tag === "JJ" || tag === "CD") {
        head[k] = phrase.head + 1;
        deprel[k] = tag === "JJ" ? "amod" : "nummod";
      } else {
        break;
      }
      k -= 1;
    }
  }

  // attach noun-phrase heads: subject before root, object/oblique after
  let sawSubject = false;
  for (const phrase of phrases) {
    if (phrase.head === root) {
      continue;
    }
    if (head[phrase.head] >= 0) {
      continue;
    }
    const preposition = findPreposition(tokens, head, phrase.start);
    if (phrase.head < root && !sawSubject && preposition < 0) {
      head[phrase.head] = root + 1;
      deprel[phrase.head] = "nsubj";
      sawSubject = true;
    } else if (preposition >= 0) {
      head[phrase.head] = root + 1;
      deprel[phrase.head] = "obl";
      head[preposition] = phrase.head + 1;
      deprel[preposition] = "case";
    } else if (phrase.head > root) {
      head[phrase.head] = root + 1;
      deprel[phrase.head] = firstFreeObject(deprel, phrases, root) ? "obj" : "obl";
    } else {
      head[phrase.head] = root + 1;
      deprel[phrase.head] = "obl";
    }
  }

  // everything still unattached leans on the root
  for (let i = 0; i < n; i += 1) {
    if (head[i] >= 0) {
      continue;
    }
    const tag = tokens[i].xpos;
    if (!/[\p{L}\p{N}]/u.test(tokens[i].form)) {
      deprel[i] = "punct";
    } else if (tag === "RB") {
      deprel[i] = "advmod";
    } else if (tag === "MD" || (VERB_TAGS.has(tag) && i !== root
               && tokens[i].lemma === "be")) {
      deprel[i] = "aux";
    } else if (VERB_TAGS.has(tag)) {
      deprel[i] = "xcomp";
    } else if (tag === "CC") {
      deprel[i] = "cc";
    } else if (tag === "IN" || tag === "TO") {
      deprel[i] = "mark";
    } else if (tag === "PRP") {
      deprel[i] = i < root ? "nsubj" : "obj";
    } else if (tag === "DT") {
      deprel[i] = "det";
    } else if (tag === "JJ") {
      deprel[i] = "amod";
    }
    head[i] = root + 1;
  }
  head[root] = 0;

  return tokens.map((token, i) => ({ ...token, head: head[i], deprel: deprel[i] }));
}

function findPreposition(tokens: TaggedToken[], head: number[], start: number): number {
  let k = start - 1;
  while (k >= 0 && (tokens[k].xpos === "DT" || tokens[k].xpos === "JJ"
                    || tokens[k].xpos === "CD" || tokens[k].xpos === "PRP$")) {
    k -= 1;
  }
  if (k >= 0 && tokens[k].xpos === "IN" && head[k] < 0) {
    return k;
  }
  return -1;
}

function firstFreeObject(deprel: string[], phrases: NounPhrase[], root: number): boolean {
  return !phrases.some((p) => p.head > root && deprel[p.head] === "obj");
}
