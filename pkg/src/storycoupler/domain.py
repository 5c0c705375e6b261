"""Core data model shared by every pipeline stage.

Documents, sentences, tokens, 4W mentions, normalized W values, and the
coupled-document artifact. All values are immutable after construction
and safe to share across threads.

Character spans are UTF-8 *byte* offsets into the document's raw text,
half-open ``(start, end)``. Use :func:`byte_substring` to slice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

SCHEMA_VERSION = "1.0"

Span = tuple[int, int]


class TokenKind(str, Enum):
    WORD = "WORD"
    NUMBER = "NUMBER"
    NUMBER_WORD = "NUMBER_WORD"
    CLOCK = "CLOCK"
    ORDINAL = "ORDINAL"
    PUNCT = "PUNCT"


class WType(str, Enum):
    WHO = "WHO"
    WHAT = "WHAT"
    WHEN = "WHEN"
    WHERE = "WHERE"


class Provenance(str, Enum):
    LEXICON = "LEXICON"
    GRAMMAR = "GRAMMAR"
    CLASSIFIER = "CLASSIFIER"


class WhoKind(str, Enum):
    PLAYER = "PLAYER"
    TEAM = "TEAM"
    COACH = "COACH"
    REFEREE = "REFEREE"


class StatKey(str, Enum):
    POINTS = "POINTS"
    REBOUNDS = "REBOUNDS"
    ASSISTS = "ASSISTS"
    STEALS = "STEALS"
    BLOCKS = "BLOCKS"
    TURNOVERS = "TURNOVERS"
    FOULS = "FOULS"
    MINUTES = "MINUTES"
    FGM = "FGM"
    FGA = "FGA"
    TPM = "TPM"
    TPA = "TPA"
    FTM = "FTM"
    FTA = "FTA"
    TOUCHES = "TOUCHES"
    UNKNOWN_STAT = "UNKNOWN_STAT"


class Region(str, Enum):
    RESTRICTED_AREA = "RESTRICTED_AREA"
    PAINT = "PAINT"
    MIDRANGE = "MIDRANGE"
    THREE_POINT = "THREE_POINT"
    FREE_THROW_LINE = "FREE_THROW_LINE"
    CORNER = "CORNER"
    BASELINE = "BASELINE"


def byte_substring(raw_text: str, span: Span) -> str:
    """Slice ``raw_text`` by a UTF-8 byte-offset span."""
    return raw_text.encode("utf-8")[span[0]:span[1]].decode("utf-8")


@dataclass(frozen=True)
class Token:
    text: str
    span: Span
    norm: str
    kind: TokenKind


@dataclass(frozen=True)
class Sentence:
    index: int
    span: Span
    tokens: tuple[Token, ...] = ()


@dataclass(frozen=True)
class NarrativeDocument:
    doc_id: str
    title: str
    source: str
    raw_text: str
    sentences: tuple[Sentence, ...] = ()


@dataclass(frozen=True)
class WhoValue:
    entity_id: str
    kind: WhoKind


@dataclass(frozen=True)
class WhatValue:
    stat_key: StatKey
    quantity: Optional[Fraction] = None


@dataclass(frozen=True)
class WhenValue:
    """A game time reference: quarter and/or clock-seconds remaining.

    ``seconds_remaining_in_quarter`` counts down from 720 (the NBA
    quarter length). At least one of quarter / seconds must be set.
    """

    quarter: Optional[int] = None
    seconds_remaining_in_quarter: Optional[float] = None
    is_interval: bool = False
    interval_end_seconds: Optional[float] = None


@dataclass(frozen=True)
class WhereValue:
    region: Region


WValue = WhoValue | WhatValue | WhenValue | WhereValue


@dataclass(frozen=True)
class WMention:
    sentence_index: int
    w_type: WType
    span: Span
    surface: str
    value: WValue
    provenance: Provenance
    confidence: float = 1.0


@dataclass(frozen=True)
class VizState:
    players: frozenset[str] = frozenset()
    teams: frozenset[str] = frozenset()
    stat_keys: frozenset[StatKey] = frozenset()
    time_marks: tuple[WhenValue, ...] = ()
    regions: frozenset[Region] = frozenset()


@dataclass(frozen=True)
class InverseIndex:
    by_entity: dict[str, tuple[int, ...]] = field(default_factory=dict)
    by_stat: dict[StatKey, tuple[int, ...]] = field(default_factory=dict)
    by_quarter: dict[int, tuple[int, ...]] = field(default_factory=dict)
    by_region: dict[Region, tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class CoupledDocument:
    document: NarrativeDocument
    mentions: tuple[WMention, ...]
    viz_states: dict[int, VizState]
    inverse_index: InverseIndex


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


ValidationReport = list[Violation]


def validate_coupled_document(doc: CoupledDocument) -> ValidationReport:
    """Check every coupled-document invariant; empty report means valid.

    Violations are data, not errors: the input is never mutated and no
    exception is raised for a malformed document.
    """
    report: ValidationReport = []
    n_sentences = len(doc.document.sentences)

    for i, m in enumerate(doc.mentions):
        if not 0 <= m.sentence_index < n_sentences:
            report.append(Violation(
                "SENTENCE_RANGE",
                f"mention {i} references sentence {m.sentence_index} "
                f"in a {n_sentences}-sentence document"))
            continue
        sent = doc.document.sentences[m.sentence_index]
        if not (sent.span[0] <= m.span[0] and m.span[1] <= sent.span[1]):
            report.append(Violation(
                "SPAN_OUTSIDE_SENTENCE",
                f"mention {i} span {m.span} outside sentence span {sent.span}"))
        if byte_substring(doc.document.raw_text, m.span) != m.surface:
            report.append(Violation(
                "SURFACE_MISMATCH",
                f"mention {i} surface does not match raw text at {m.span}"))
        if m.provenance is Provenance.LEXICON and m.w_type is not WType.WHO:
            report.append(Violation(
                "PROVENANCE_WTYPE",
                f"mention {i} has LEXICON provenance but w_type {m.w_type.value}"))
        if m.provenance is Provenance.CLASSIFIER and m.w_type is not WType.WHAT:
            report.append(Violation(
                "PROVENANCE_WTYPE",
                f"mention {i} has CLASSIFIER provenance but w_type {m.w_type.value}"))
        if m.provenance in (Provenance.LEXICON, Provenance.GRAMMAR) and m.confidence != 1.0:
            report.append(Violation(
                "CONFIDENCE",
                f"mention {i} has {m.provenance.value} provenance "
                f"but confidence {m.confidence}"))
        if m.sentence_index not in doc.viz_states:
            report.append(Violation(
                "VIZ_STATE_MISSING",
                f"sentence {m.sentence_index} has a mention but no viz state"))
        if not _in_inverse_index(doc.inverse_index, m):
            report.append(Violation(
                "ROUND_TRIP",
                f"mention {i} ({m.w_type.value} at sentence {m.sentence_index}) "
                f"is absent from the inverse index"))

    for mapping in (doc.inverse_index.by_entity, doc.inverse_index.by_stat,
                    doc.inverse_index.by_quarter, doc.inverse_index.by_region):
        for key, indexes in mapping.items():
            if len(set(indexes)) != len(indexes):
                report.append(Violation(
                    "INDEX_DUPLICATES", f"inverse index entry {key!r} has duplicates"))
            for si in indexes:
                if not 0 <= si < n_sentences:
                    report.append(Violation(
                        "SENTENCE_RANGE",
                        f"inverse index entry {key!r} references sentence {si}"))

    return report


def _in_inverse_index(index: InverseIndex, m: WMention) -> bool:
    v = m.value
    si = m.sentence_index
    if isinstance(v, WhoValue):
        return si in index.by_entity.get(v.entity_id, ())
    if isinstance(v, WhatValue):
        return si in index.by_stat.get(v.stat_key, ())
    if isinstance(v, WhenValue):
        if v.quarter is None:
            # clock-only mentions are not quarter-indexed; nothing to check
            return True
        return si in index.by_quarter.get(v.quarter, ())
    if isinstance(v, WhereValue):
        return si in index.by_region.get(v.region, ())
    return False


# --- canonical JSON ---------------------------------------------------------
#
# Keys are emitted sorted so re-encoding a decoded document is byte-identical,
# which golden-file tests rely on. Quantities (rationals) serialize as
# "14" / "47/2" strings; spans as [start, end] arrays.


def dumps_canonical(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"))


def _quantity_to_json(q: Optional[Fraction]) -> Optional[str]:
    return None if q is None else str(q)


def _quantity_from_json(raw: Optional[str]) -> Optional[Fraction]:
    return None if raw is None else Fraction(raw)


def token_to_dict(t: Token) -> dict:
    return {"text": t.text, "span": list(t.span), "norm": t.norm,
            "kind": t.kind.value}


def token_from_dict(d: dict) -> Token:
    return Token(d["text"], (d["span"][0], d["span"][1]), d["norm"],
                 TokenKind(d["kind"]))


def sentence_to_dict(s: Sentence) -> dict:
    return {"index": s.index, "span": list(s.span),
            "tokens": [token_to_dict(t) for t in s.tokens]}


def sentence_from_dict(d: dict) -> Sentence:
    return Sentence(d["index"], (d["span"][0], d["span"][1]),
                    tuple(token_from_dict(t) for t in d["tokens"]))


def document_to_dict(doc: NarrativeDocument) -> dict:
    return {"doc_id": doc.doc_id, "title": doc.title, "source": doc.source,
            "raw_text": doc.raw_text,
            "sentences": [sentence_to_dict(s) for s in doc.sentences]}


def document_from_dict(d: dict) -> NarrativeDocument:
    return NarrativeDocument(d["doc_id"], d["title"], d["source"],
                             d["raw_text"],
                             tuple(sentence_from_dict(s) for s in d["sentences"]))


def wvalue_to_dict(v: WValue) -> dict:
    if isinstance(v, WhoValue):
        return {"w": "who", "entity_id": v.entity_id, "kind": v.kind.value}
    if isinstance(v, WhatValue):
        return {"w": "what", "stat_key": v.stat_key.value,
                "quantity": _quantity_to_json(v.quantity)}
    if isinstance(v, WhenValue):
        return {"w": "when", "quarter": v.quarter,
                "seconds_remaining_in_quarter": v.seconds_remaining_in_quarter,
                "is_interval": v.is_interval,
                "interval_end_seconds": v.interval_end_seconds}
    if isinstance(v, WhereValue):
        return {"w": "where", "region": v.region.value}
    raise TypeError(f"not a WValue: {v!r}")


def wvalue_from_dict(d: dict) -> WValue:
    w = d["w"]
    if w == "who":
        return WhoValue(d["entity_id"], WhoKind(d["kind"]))
    if w == "what":
        return WhatValue(StatKey(d["stat_key"]),
                         _quantity_from_json(d.get("quantity")))
    if w == "when":
        return WhenValue(d.get("quarter"),
                         d.get("seconds_remaining_in_quarter"),
                         d.get("is_interval", False),
                         d.get("interval_end_seconds"))
    if w == "where":
        return WhereValue(Region(d["region"]))
    raise ValueError(f"unknown W tag: {w!r}")


def mention_to_dict(m: WMention) -> dict:
    return {"sentence_index": m.sentence_index, "w_type": m.w_type.value,
            "span": list(m.span), "surface": m.surface,
            "value": wvalue_to_dict(m.value),
            "provenance": m.provenance.value, "confidence": m.confidence}


def mention_from_dict(d: dict) -> WMention:
    return WMention(d["sentence_index"], WType(d["w_type"]),
                    (d["span"][0], d["span"][1]), d["surface"],
                    wvalue_from_dict(d["value"]),
                    Provenance(d["provenance"]), d["confidence"])


def viz_state_to_dict(v: VizState) -> dict:
    return {"players": sorted(v.players), "teams": sorted(v.teams),
            "stat_keys": sorted(k.value for k in v.stat_keys),
            "time_marks": [wvalue_to_dict(t) for t in v.time_marks],
            "regions": sorted(r.value for r in v.regions)}


def viz_state_from_dict(d: dict) -> VizState:
    marks = tuple(wvalue_from_dict(t) for t in d["time_marks"])
    if not all(isinstance(t, WhenValue) for t in marks):
        raise ValueError("time_marks must be when values")
    return VizState(frozenset(d["players"]), frozenset(d["teams"]),
                    frozenset(StatKey(k) for k in d["stat_keys"]),
                    marks,  # type: ignore[arg-type]
                    frozenset(Region(r) for r in d["regions"]))


def inverse_index_to_dict(ix: InverseIndex) -> dict:
    return {
        "by_entity": {k: list(v) for k, v in sorted(ix.by_entity.items())},
        "by_stat": {k.value: list(v) for k, v in sorted(ix.by_stat.items())},
        "by_quarter": {str(k): list(v) for k, v in sorted(ix.by_quarter.items())},
        "by_region": {k.value: list(v) for k, v in sorted(ix.by_region.items())},
    }


def inverse_index_from_dict(d: dict) -> InverseIndex:
    return InverseIndex(
        {k: tuple(v) for k, v in d["by_entity"].items()},
        {StatKey(k): tuple(v) for k, v in d["by_stat"].items()},
        {int(k): tuple(v) for k, v in d["by_quarter"].items()},
        {Region(k): tuple(v) for k, v in d["by_region"].items()},
    )


def coupled_document_to_dict(cd: CoupledDocument) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "document": document_to_dict(cd.document),
        "mentions": [mention_to_dict(m) for m in cd.mentions],
        "viz_states": {str(i): viz_state_to_dict(v)
                       for i, v in sorted(cd.viz_states.items())},
        "inverse_index": inverse_index_to_dict(cd.inverse_index),
    }


def coupled_document_from_dict(d: dict) -> CoupledDocument:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version: {d.get('schema_version')!r}")
    return CoupledDocument(
        document_from_dict(d["document"]),
        tuple(mention_from_dict(m) for m in d["mentions"]),
        {int(i): viz_state_from_dict(v) for i, v in d["viz_states"].items()},
        inverse_index_from_dict(d["inverse_index"]),
    )


def encode_coupled_document(cd: CoupledDocument) -> str:
    return dumps_canonical(coupled_document_to_dict(cd))


def decode_coupled_document(text: str) -> CoupledDocument:
    return coupled_document_from_dict(json.loads(text))
