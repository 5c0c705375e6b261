import { ByteIndex } from "../bytes";
import { sentenceSegments } from "../highlight";
import { CoupledDocumentDto } from "../types";

export interface TextPanelHandlers {
  onHover(index: number): void;
  onClick(index: number): void;
}

/** The narrative column: one span per sentence, mention sub-spans color
 *  coded by W type. Whitespace between sentences is plain text, so
 *  clicking it does nothing. */
export class TextPanel {
  private sentenceEls = new Map<number, HTMLElement>();

  constructor(
    private root: HTMLElement,
    coupled: CoupledDocumentDto,
    handlers: TextPanelHandlers,
  ) {
    const doc = coupled.document;
    const index = new ByteIndex(doc.raw_text);
    this.root.classList.add("text-panel");

    const title = document.createElement("h2");
    title.textContent = doc.title;
    this.root.appendChild(title);

    const body = document.createElement("p");
    body.className = "narrative";
    let cursor = 0;
    for (const sentence of doc.sentences) {
      if (sentence.span[0] > cursor) {
        body.appendChild(
          document.createTextNode(index.slice([cursor, sentence.span[0]])),
        );
      }
      const el = document.createElement("span");
      el.className = "sentence";
      el.dataset.index = String(sentence.index);
      for (const seg of sentenceSegments(sentence, coupled.mentions, index)) {
        if (seg.cls === null) {
          el.appendChild(document.createTextNode(seg.text));
        } else {
          const w = document.createElement("span");
          w.className = `w-mention ${seg.cls}`;
          w.style.setProperty("--w-alpha", seg.alpha.toFixed(3));
          if (seg.mention) {
            w.title = describeMention(seg.mention);
          }
          w.textContent = seg.text;
          el.appendChild(w);
        }
      }
      el.addEventListener("mouseenter", () => handlers.onHover(sentence.index));
      el.addEventListener("click", () => handlers.onClick(sentence.index));
      body.appendChild(el);
      this.sentenceEls.set(sentence.index, el);
      cursor = sentence.span[1];
    }
    this.root.appendChild(body);
  }

  update(highlighted: number[], active: number | null): void {
    const on = new Set(highlighted);
    for (const [index, el] of this.sentenceEls) {
      el.classList.toggle("highlighted", on.has(index));
      el.classList.toggle("active", index === active);
    }
  }
}

function describeMention(m: {
  w_type: string;
  provenance: string;
  confidence: number;
}): string {
  if (m.provenance === "CLASSIFIER") {
    return `${m.w_type} (classifier, ${(m.confidence * 100).toFixed(0)}%)`;
  }
  return m.w_type;
}
