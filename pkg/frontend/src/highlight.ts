// Per-W-type color coding of mention spans inside a sentence.
// Palette is Okabe-Ito (colorblind-safe); classifier finds are faded in
// proportion to their confidence. Mentions never overlap, so a sentence
// decomposes into plain and colored segments.

import { ByteIndex } from "./bytes";
import { MentionDto, SentenceDto, WTypeName } from "./types";

export const W_CLASS: Record<WTypeName, string> = {
  WHO: "w-who",
  WHAT: "w-what",
  WHEN: "w-when",
  WHERE: "w-where",
};

export interface Segment {
  text: string;
  cls: string | null;
  // background alpha; grammar/lexicon mentions are solid, classifier
  // mentions fade with confidence
  alpha: number;
  mention: MentionDto | null;
}

export function sentenceSegments(
  sentence: SentenceDto,
  mentions: MentionDto[],
  index: ByteIndex,
): Segment[] {
  const inSentence = mentions
    .filter((m) => m.sentence_index === sentence.index)
    .sort((a, b) => a.span[0] - b.span[0]);
  const segments: Segment[] = [];
  let cursor = sentence.span[0];
  for (const m of inSentence) {
    if (m.span[0] > cursor) {
      segments.push({
        text: index.slice([cursor, m.span[0]]),
        cls: null,
        alpha: 0,
        mention: null,
      });
    }
    segments.push({
      text: index.slice(m.span),
      cls: W_CLASS[m.w_type],
      alpha: m.provenance === "CLASSIFIER" ? 0.45 * m.confidence : 1.0,
      mention: m,
    });
    cursor = m.span[1];
  }
  if (cursor < sentence.span[1]) {
    segments.push({
      text: index.slice([cursor, sentence.span[1]]),
      cls: null,
      alpha: 0,
      mention: null,
    });
  }
  return segments;
}
