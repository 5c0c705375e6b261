"""Deterministic sentence segmentation and tokenization for recap text.

Both passes are pure functions over the input string; identical bytes in,
identical spans out, on every platform. Spans are UTF-8 byte offsets.
"""

from __future__ import annotations

import re

from .domain import Sentence, Span, Token, TokenKind

# Terminators never split after these (tokens like "Mr." / "vs."), nor after
# a single capital letter + "." (initials: "J.R. Smith").
ABBREVIATIONS = {"Mr.", "Dr.", "Jr.", "Sr.", "St.", "vs.", "No."}

NUMBER_WORD_VALUES = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11,
    "twelve": 12, "thirteen": 13, "fourteen": 14, "fifteen": 15,
    "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19,
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60,
    "seventy": 70, "eighty": 80, "ninety": 90,
}

ORDINAL_WORD_VALUES = {
    "first": 1, "second": 2, "third": 3, "fourth": 4, "fifth": 5,
    "sixth": 6, "seventh": 7, "eighth": 8, "ninth": 9, "tenth": 10,
}

_ORDINAL_SUFFIX_RE = re.compile(r"^\d+(st|nd|rd|th)$")
_CLOCK_RE = re.compile(r"^\d{1,2}:\d{2}$")
_NUMBER_RE = re.compile(r"^\d+(\.\d+)?$")

# Longest-match alternatives, in priority order. Hyphenated compounds stay
# single tokens so grammar literals like "3-pointers" match one atom.
_TOKEN_RE = re.compile(r"""
    \d{1,2}:\d{2}
  | [A-Za-z0-9]+(?:['’][A-Za-z0-9]+)*(?:-[A-Za-z0-9]+(?:['’][A-Za-z0-9]+)*)+
  | \d+\.\d+
  | \d+[A-Za-z]+
  | \d+
  | [A-Za-z]+(?:['’][A-Za-z]+)*
  | \S
""", re.VERBOSE)

_TERMINATOR_RE = re.compile(r"[.!?]+")
_QUOTE_CHARS = "\"'’”‘“"


def _byte_offsets(text: str) -> list[int]:
    """Cumulative UTF-8 byte offset for each char position (len+1 entries)."""
    offsets = [0]
    total = 0
    for ch in text:
        total += len(ch.encode("utf-8"))
        offsets.append(total)
    return offsets


def _is_abbreviation(text: str, dot_pos: int) -> bool:
    """True if the '.' at dot_pos closes a known abbreviation or initial."""
    start = dot_pos
    while start > 0 and text[start - 1].isalpha():
        start -= 1
    word = text[start:dot_pos]
    if not word:
        return False
    if word + "." in ABBREVIATIONS:
        return True
    return len(word) == 1 and word.isupper()


def segment(raw_text: str) -> list[Sentence]:
    """Split text into sentences with byte-offset spans and empty token lists.

    Boundaries sit at {., !, ?} runs followed by whitespace plus a capital
    letter (opening quotes are transparent) or end of text, except after
    known abbreviations. Empty or whitespace-only input yields [].
    """
    if not raw_text.strip():
        return []

    boundaries: list[int] = []  # char index just past each sentence end
    for m in _TERMINATOR_RE.finditer(raw_text):
        end = m.end()
        if m.group() == "." and _is_abbreviation(raw_text, m.start()):
            continue
        # absorb closing quotes into the sentence
        while end < len(raw_text) and raw_text[end] in _QUOTE_CHARS:
            end += 1
        if end >= len(raw_text):
            boundaries.append(end)
            continue
        if not raw_text[end].isspace():
            continue
        follow = end
        while follow < len(raw_text) and raw_text[follow].isspace():
            follow += 1
        while follow < len(raw_text) and raw_text[follow] in _QUOTE_CHARS:
            follow += 1
        if follow < len(raw_text) and raw_text[follow].isupper():
            boundaries.append(end)
    if not boundaries or boundaries[-1] < len(raw_text):
        boundaries.append(len(raw_text))

    offsets = _byte_offsets(raw_text)
    sentences: list[Sentence] = []
    seg_start = 0
    for boundary in boundaries:
        chunk = raw_text[seg_start:boundary]
        stripped = chunk.strip()
        if stripped:
            lead = len(chunk) - len(chunk.lstrip())
            start = seg_start + lead
            end = start + len(stripped)
            sentences.append(Sentence(
                index=len(sentences),
                span=(offsets[start], offsets[end])))
        seg_start = boundary
    return sentences


def _classify(text: str, norm: str) -> TokenKind:
    if _CLOCK_RE.match(text):
        return TokenKind.CLOCK
    if _NUMBER_RE.match(text):
        return TokenKind.NUMBER
    if norm in NUMBER_WORD_VALUES:
        return TokenKind.NUMBER_WORD
    if norm in ORDINAL_WORD_VALUES or _ORDINAL_SUFFIX_RE.match(norm):
        return TokenKind.ORDINAL
    if len(text) == 1 and not text.isalnum():
        return TokenKind.PUNCT
    return TokenKind.WORD


def _make_token(text: str, byte_start: int, byte_end: int) -> Token:
    norm = text.lower().replace("’", "'")
    kind = _classify(text, norm)
    return Token(text=text, span=(byte_start, byte_end), norm=norm, kind=kind)


def tokenize(sentence_text: str, base_offset: int) -> list[Token]:
    """Tokenize one sentence; ``base_offset`` is its byte offset in the doc.

    Splits on whitespace and punctuation, keeping decimals ("23.5"),
    clock strings ("3:09"), and hyphenated compounds ("3-pointers") whole.
    Possessive "'s" is split off as its own token so roster names match.
    """
    offsets = _byte_offsets(sentence_text)
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(sentence_text):
        text = m.group()
        start, end = m.start(), m.end()
        lowered = text.lower()
        if len(text) > 2 and (lowered.endswith("'s") or lowered.endswith("’s")):
            stem, clitic = text[:-2], text[-2:]
            split = start + len(stem)
            tokens.append(_make_token(
                stem, base_offset + offsets[start], base_offset + offsets[split]))
            clitic_tok = _make_token(
                clitic, base_offset + offsets[split], base_offset + offsets[end])
            tokens.append(Token(clitic_tok.text, clitic_tok.span,
                                clitic_tok.norm, TokenKind.PUNCT))
        else:
            tokens.append(_make_token(
                text, base_offset + offsets[start], base_offset + offsets[end]))
    return tokens


def segment_and_tokenize(doc_id: str, title: str, source: str, raw_text: str):
    """Build a fully tokenized NarrativeDocument from raw recap text."""
    from .domain import NarrativeDocument, byte_substring

    shells = segment(raw_text)
    sentences = []
    for s in shells:
        text = byte_substring(raw_text, s.span)
        sentences.append(Sentence(
            index=s.index, span=s.span,
            tokens=tuple(tokenize(text, s.span[0]))))
    return NarrativeDocument(doc_id=doc_id, title=title, source=source,
                             raw_text=raw_text, sentences=tuple(sentences))
