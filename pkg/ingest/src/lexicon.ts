/**
 * Pinned lexical resources for the built-in tagger/parser: stopwords,
 * function-word POS assignments, irregular verb forms and proper-adjective
 * detection.  Versioned in versions.lock.json so parses stay reproducible.
 */

export const LEXICON_VERSION = 1;

export const STOPWORDS = new Set([
  "a", "an", "the", "this", "that", "these", "those", "some", "any", "each",
  "and", "or", "but", "nor", "so", "yet",
  "of", "in", "on", "at", "to", "from", "by", "with", "about", "against",
  "between", "into", "through", "during", "before", "after", "above", "below",
  "under", "over", "for", "as",
  "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
  "them", "my", "your", "his", "its", "our", "their",
  "is", "are", "was", "were", "be", "been", "being", "am",
  "do", "does", "did", "have", "has", "had",
  "will", "would", "can", "could", "shall", "should", "may", "might", "must",
  "not", "no", "than", "then", "there", "here", "when", "where", "which",
  "who", "whom", "whose", "what", "how", "why", "if", "because", "while",
  "both", "all", "very", "such", "own", "same", "too", "also",
]);

// closed-class POS assignments (PTB tags)
export const FUNCTION_POS: Record<string, string> = {
  the: "DT", a: "DT", an: "DT", this: "DT", that: "DT", these: "DT",
  those: "DT", some: "DT", any: "DT", each: "DT", all: "DT", both: "DT",
  and: "CC", or: "CC", but: "CC", nor: "CC",
  of: "IN", in: "IN", on: "IN", at: "IN", to: "TO", from: "IN", by: "IN",
  with: "IN", about: "IN", against: "IN", between: "IN", into: "IN",
  through: "IN", during: "IN", before: "IN", after: "IN", above: "IN",
  below: "IN", under: "IN", over: "IN", for: "IN", as: "IN", if: "IN",
  because: "IN", while: "IN",
  i: "PRP", you: "PRP", he: "PRP", she: "PRP", it: "PRP", we: "PRP",
  they: "PRP", me: "PRP", him: "PRP", her: "PRP", us: "PRP", them: "PRP",
  my: "PRP$", your: "PRP$", his: "PRP$", its: "PRP$", our: "PRP$",
  their: "PRP$",
  is: "VBZ", are: "VBP", was: "VBD", were: "VBD", be: "VB", been: "VBN",
  being: "VBG", am: "VBP",
  do: "VBP", does: "VBZ", did: "VBD", have: "VBP", has: "VBZ", had: "VBD",
  will: "MD", would: "MD", can: "MD", could: "MD", shall: "MD", should: "MD",
  may: "MD", might: "MD", must: "MD",
  not: "RB", very: "RB", too: "RB", also: "RB", then: "RB", there: "EX",
  here: "RB", when: "WRB", where: "WRB", how: "WRB", why: "WRB",
  which: "WDT", who: "WP", whom: "WP", whose: "WP$", what: "WP",
  no: "DT", than: "IN", such: "JJ", own: "JJ", same: "JJ",
};

export const BE_LEMMAS: Record<string, string> = {
  is: "be", are: "be", was: "be", were: "be", been: "be", being: "be",
  am: "be", be: "be",
};

// common irregular verbs: surface -> [lemma, tag]
export const IRREGULAR_VERBS: Record<string, [string, string]> = {
  said: ["say", "VBD"], says: ["say", "VBZ"],
  began: ["begin", "VBD"], begun: ["begin", "VBN"],
  went: ["go", "VBD"], gone: ["go", "VBN"],
  made: ["make", "VBD"], took: ["take", "VBD"], taken: ["take", "VBN"],
  came: ["come", "VBD"], saw: ["see", "VBD"], seen: ["see", "VBN"],
  grew: ["grow", "VBD"], grown: ["grow", "VBN"],
  fell: ["fall", "VBD"], fallen: ["fall", "VBN"],
  rose: ["rise", "VBD"], risen: ["rise", "VBN"],
  hit: ["hit", "VBD"], led: ["lead", "VBD"], met: ["meet", "VBD"],
  held: ["hold", "VBD"], kept: ["keep", "VBD"], left: ["leave", "VBD"],
  lost: ["lose", "VBD"], found: ["find", "VBD"], brought: ["bring", "VBD"],
  thought: ["think", "VBD"], bought: ["buy", "VBD"], caught: ["catch", "VBD"],
  sent: ["send", "VBD"], spent: ["spend", "VBD"], built: ["build", "VBD"],
  told: ["tell", "VBD"], sold: ["sell", "VBD"], paid: ["pay", "VBD"],
  wrote: ["write", "VBD"], written: ["write", "VBN"],
  broke: ["break", "VBD"], broken: ["break", "VBN"],
  spoke: ["speak", "VBD"], struck: ["strike", "VBD"], won: ["win", "VBD"],
  ran: ["run", "VBD"], cut: ["cut", "VBD"], put: ["put", "VBD"],
  set: ["set", "VBD"], shook: ["shake", "VBD"],
};

// capitalized modifiers that attach adjectivally rather than as compounds
const PROPER_ADJECTIVE_SUFFIXES = ["ic", "an", "ese", "ish", "ch"];
export const PROPER_ADJECTIVES = new Set([
  "atlantic", "pacific", "arctic", "european", "american", "african",
  "asian", "australian", "canadian", "mexican", "german", "french",
  "british", "spanish", "italian", "russian", "chinese", "japanese",
  "indian", "korean", "dutch", "irish", "turkish", "polish",
]);

export function looksProperAdjective(lower: string): boolean {
  if (PROPER_ADJECTIVES.has(lower)) {
    return true;
  }
  return PROPER_ADJECTIVE_SUFFIXES.some(
    (suffix) => lower.length > suffix.length + 2 && lower.endsWith(suffix),
  );
}

export const ADJECTIVE_SUFFIXES = ["al", "ous", "ive", "ful", "less", "able",
  "ible", "ary", "ic", "ish"];

export const ABBREVIATIONS = new Set([
  "mr", "mrs", "ms", "dr", "prof", "st", "jr", "sr", "inc", "ltd", "co",
  "corp", "vs", "etc", "e.g", "i.e", "u.s", "u.k", "fig", "eq", "no",
]);
