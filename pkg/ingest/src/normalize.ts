/**
 * Text normalization applied before parsing.
 *
 * Replaces web noise (URLs, hashtags, bullet markers) with stable tags,
 * converts fancy quotation marks to ASCII, strips redundant hyphens and
 * collapses whitespace.  Idempotent: normalizeText(normalizeText(x)) ===
 * normalizeText(x), and alphanumeric characters inside tokens are never
 * altered.
 */

const URL_RE = /\b(?:https?:\/\/|www\.)[^\s<>"']+/gi;
const HASHTAG_RE = /(^|[\s(])#[\p{L}\p{N}_]+/gu;
const BULLET_LINE_RE = /^[ \t]*(?:[-*•◦▪‣·]+)[ \t]+/gm;
const FANCY_QUOTES: Array<[RegExp, string]> = [
  [/[“”„«»]/g, '"'],
  [/[‘’‚‹›]/g, "'"],
];
// two or more hyphens, or a hyphen not joining two alphanumerics
const HYPHEN_RUN_RE = /--+/g;
const DANGLING_HYPHEN_RE = /(^|[^\p{L}\p{N}])-+|-+(?=[^\p{L}\p{N}]|$)/gu;

function normalizeOnce(raw: string): string {
  let text = raw.replace(/\r\n?/g, "\n");
  text = text.replace(URL_RE, "_URL_");
  text = text.replace(HASHTAG_RE, "$1_TAG_");
  text = text.replace(BULLET_LINE_RE, "_BULLET_ ");
  for (const [pattern, ascii] of FANCY_QUOTES) {
    text = text.replace(pattern, ascii);
  }
  text = text.replace(/[–—]/g, "-"); // en/em dash to plain hyphen
  text = text.replace(HYPHEN_RUN_RE, " ");
  text = text.replace(DANGLING_HYPHEN_RE, "$1");
  text = text.replace(/[ \t]+/g, " ");
  text = text.replace(/ ?\n ?/g, "\n");
  text = text.replace(/\n{3,}/g, "\n\n");
  return text.trim();
}

export function normalizeText(raw: string): string {
  // iterate to a fixpoint: one rule's cleanup can expose another rule's
  // target (a stripped hyphen uncovering a hashtag, for instance)
  let text = raw;
  for (let i = 0; i < 5; i += 1) {
    const next = normalizeOnce(text);
    if (next === text) {
      return text;
    }
    text = next;
  }
  return text;
}
