"""End-to-end extraction: segment, tokenize, and run all three extractors."""

from __future__ import annotations

import json
from collections import Counter
from typing import Optional

from .classifier import StatClassifierModel, scan_for_missed_stats
from .domain import (
    NarrativeDocument, WMention, document_from_dict, document_to_dict,
    dumps_canonical, mention_from_dict, mention_to_dict, SCHEMA_VERSION,
)
from .grammar import Grammar, match_grammar
from .lexicon import EntityLexicon, match_who
from .segmenter import segment_and_tokenize


def extract_mentions(doc: NarrativeDocument, lex: EntityLexicon, g: Grammar,
                     model: Optional[StatClassifierModel] = None,
                     threshold: float = 0.8) -> list[WMention]:
    """All 4W mentions of a tokenized document, in sentence/span order.

    Classifier finds are dropped when they overlap a lexicon or grammar
    mention, so the document-wide mention set stays overlap-free and the
    text panel never double-highlights a span.
    """
    mentions: list[WMention] = []
    for sentence in doc.sentences:
        fixed = match_who(sentence, lex, doc.raw_text)
        fixed += match_grammar(sentence, g, doc.raw_text)
        mentions.extend(fixed)
        if model is not None:
            taken = [m.span for m in fixed]
            for found in scan_for_missed_stats(sentence, g, model, threshold,
                                               doc.raw_text):
                if not any(found.span[0] < b and a < found.span[1]
                           for a, b in taken):
                    mentions.append(found)
    mentions.sort(key=lambda m: (m.sentence_index, m.span,
                                 m.w_type.value, m.provenance.value))
    return mentions


def extract_from_text(doc_id: str, title: str, source: str, raw_text: str,
                      lex: EntityLexicon, g: Grammar,
                      model: Optional[StatClassifierModel] = None,
                      threshold: float = 0.8):
    doc = segment_and_tokenize(doc_id, title, source, raw_text)
    return doc, extract_mentions(doc, lex, g, model, threshold)


def extraction_report(mentions: list[WMention]) -> dict:
    by_type = Counter(m.w_type.value for m in mentions)
    by_provenance = Counter(m.provenance.value for m in mentions)
    return {"total": len(mentions),
            "by_w_type": dict(sorted(by_type.items())),
            "by_provenance": dict(sorted(by_provenance.items()))}


def encode_extraction(doc: NarrativeDocument,
                      mentions: list[WMention]) -> str:
    return dumps_canonical({
        "schema_version": SCHEMA_VERSION,
        "document": document_to_dict(doc),
        "mentions": [mention_to_dict(m) for m in mentions],
        "report": extraction_report(mentions),
    })


def decode_extraction(text: str) -> tuple[NarrativeDocument, list[WMention]]:
    payload = json.loads(text)
    doc = document_from_dict(payload["document"])
    mentions = [mention_from_dict(m) for m in payload["mentions"]]
    return doc, mentions
