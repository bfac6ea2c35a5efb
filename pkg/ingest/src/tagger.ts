/**
 * Deterministic rule-based tokenizer, POS tagger and lemmatizer.
 *
 * A small cascade of closed-class lookups, irregular tables and suffix rules.
 * It is not a statistical parser; it is the built-in fallback "external
 * parser" so the pipeline runs with no model downloads, and it can be swapped
 * for a real one via the --parser-cmd hook.
 */

import {
  ABBREVIATIONS, ADJECTIVE_SUFFIXES, BE_LEMMAS, FUNCTION_POS,
  IRREGULAR_VERBS, STOPWORDS, looksProperAdjective,
} from "./lexicon";

export interface TaggedToken {
  form: string;
  lemma: string;
  xpos: string;
  upper: boolean;
  stop: boolean;
}

const TOKEN_RE = /[\p{L}\p{N}][\p{L}\p{N}'’-]*|[^\s\p{L}\p{N}]/gu;

export function splitSentences(text: string): string[] {
  const sentences: string[] = [];
  for (const paragraph of text.split(/\n+/)) {
    let current = "";
    const pieces = paragraph.split(/([.!?]+[\s]+)/);
    for (let i = 0; i < pieces.length; i += 2) {
      const body = pieces[i];
      const closer = pieces[i + 1] ?? "";
      current += body + closer;
      if (closer) {
        const lastWord = body.trim().split(/\s+/).pop()?.toLowerCase() ?? "";
        if (ABBREVIATIONS.has(lastWord.replace(/\.$/, ""))) {
          continue; // abbreviation, keep accumulating
        }
        if (current.trim()) {
          sentences.push(current.trim());
        }
        current = "";
      }
    }
    if (current.trim()) {
      sentences.push(current.trim());
    }
  }
  return sentences;
}

export function tokenize(sentence: string): string[] {
  return sentence.match(TOKEN_RE) ?? [];
}

function isPunct(form: string): boolean {
  return !/[\p{L}\p{N}]/u.test(form);
}

function lemmatizePlural(lower: string): string {
  if (lower.endsWith("ies") && lower.length > 4) {
    return lower.slice(0, -3) + "y";
  }
  if (/(ses|xes|zes|ches|shes)$/.test(lower) && lower.length > 4) {
    return lower.slice(0, -2);
  }
  if (lower.endsWith("ss") || lower.length <= 3) {
    return lower;
  }
  if (lower.endsWith("s")) {
    return lower.slice(0, -1);
  }
  return lower;
}

function lemmatizePast(lower: string): string {
  if (lower.endsWith("ied") && lower.length > 4) {
    return lower.slice(0, -3) + "y";
  }
  if (lower.endsWith("ed") && lower.length > 3) {
    const stem = lower.slice(0, -2);
    // doubled final consonant: planned -> plan
    if (stem.length > 2 && stem[stem.length - 1] === stem[stem.length - 2]
        && !/[aeiou]/.test(stem[stem.length - 1])) {
      return stem.slice(0, -1);
    }
    // verbs ending in -e: raised -> raise
    if (/[^aeiou][bcdfgklmnprstvz]$/.test(stem) && /[aeiou]/.test(stem)) {
      return stem + "e";
    }
    return stem;
  }
  return lower;
}

function lemmatizeGerund(lower: string): string {
  if (lower.endsWith("ing") && lower.length > 5) {
    const stem = lower.slice(0, -3);
    if (stem.length > 2 && stem[stem.length - 1] === stem[stem.length - 2]
        && !/[aeiou]/.test(stem[stem.length - 1])) {
      return stem.slice(0, -1);
    }
    return stem;
  }
  return lower;
}

export function tagSentence(words: string[]): TaggedToken[] {
  const tagged: TaggedToken[] = [];
  words.forEach((form, index) => {
    const lower = form.toLowerCase();
    let xpos: string;
    let lemma = lower;

    if (isPunct(form)) {
      xpos = /^[.!?]+$/.test(form) ? "." : form === "," ? "," : ":";
      lemma = form;
    } else if (/^\d[\d.,]*$/.test(form)) {
      xpos = "CD";
    } else if (FUNCTION_POS[lower] !== undefined) {
      xpos = FUNCTION_POS[lower];
      lemma = BE_LEMMAS[lower] ?? lower;
    } else if (IRREGULAR_VERBS[lower] !== undefined) {
      [lemma, xpos] = IRREGULAR_VERBS[lower];
    } else if (/[A-Z]/.test(form[0]) && index > 0) {
      xpos = "NNP";
    } else if (lower.endsWith("ed") && lower.length > 3) {
      xpos = "VBD";
      lemma = lemmatizePast(lower);
    } else if (lower.endsWith("ing") && lower.length > 5) {
      // gerunds used nominally stay nouns; after a verb treat as VBG
      const prev = tagged[tagged.length - 1];
      xpos = prev && prev.xpos.startsWith("VB") ? "VBG" : "NN";
      if (xpos === "VBG") {
        lemma = lemmatizeGerund(lower);
      }
    } else if (lower.endsWith("ly") && lower.length > 3) {
      xpos = "RB";
    } else if (ADJECTIVE_SUFFIXES.some((s) => lower.endsWith(s) && lower.length > s.length + 2)
               && index + 1 < words.length && !isPunct(words[index + 1])) {
      xpos = "JJ";
    } else if (lower.endsWith("s") && !lower.endsWith("ss") && lower.length > 3) {
      xpos = "NNS";
      lemma = lemmatizePlural(lower);
    } else if (index === 0 && /[A-Z]/.test(form[0]) && looksProperAdjective(lower)) {
      xpos = "NNP";
    } else {
      xpos = "NN";
    }

    tagged.push({
      form,
      lemma,
      xpos,
      upper: /[A-Z]/.test(form[0] ?? ""),
      stop: STOPWORDS.has(lower),
    });
  });
  return tagged;
}
