/** CoNLL-U serialization matching the extraction engine's loader contract. */

import { ParsedToken } from "./parser";

const XPOS_TO_UPOS: Record<string, string> = {
  NN: "NOUN", NNS: "NOUN", NNP: "PROPN", NNPS: "PROPN",
  JJ: "ADJ", JJR: "ADJ", JJS: "ADJ",
  VB: "VERB", VBD: "VERB", VBG: "VERB", VBN: "VERB", VBP: "VERB", VBZ: "VERB",
  MD: "AUX", DT: "DET", IN: "ADP", TO: "PART", CC: "CCONJ",
  RB: "ADV", WRB: "ADV", CD: "NUM", PRP: "PRON", "PRP$": "PRON",
  WP: "PRON", "WP$": "PRON", WDT: "PRON", EX: "PRON",
  ".": "PUNCT", ",": "PUNCT", ":": "PUNCT",
};

function clean(field: string): string {
  return field.replace(/[\t\n]/g, " ").trim() || "_";
}

export function toConllu(docId: string, sublanguage: string,
                         sentences: ParsedToken[][]): string {
  const lines: string[] = [`# doc_id = ${docId}`, `# sublanguage = ${sublanguage}`];
  for (const sentence of sentences) {
    sentence.forEach((token, index) => {
      const upos = XPOS_TO_UPOS[token.xpos] ?? "X";
      const misc = `Case=${token.upper ? "Upper" : "Lower"}|Stop=${token.stop ? "Yes" : "No"}`;
      lines.push([
        String(index + 1),
        clean(token.form),
        clean(token.lemma),
        upos,
        token.xpos,
        "_",
        String(token.head),
        token.deprel,
        "_",
        misc,
      ].join("\t"));
    });
    lines.push("");
  }
  return lines.join("\n") + "\n";
}
