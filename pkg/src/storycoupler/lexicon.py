"""Closed-world entity matching from a league lexicon.

Players, teams, coaches, and referees come from a complete roster file,
so entity extraction is a dictionary lookup instead of statistical NER.
Aliases are tokenized and compiled into a token-sequence trie; matching
is case-insensitive longest-match, resolved leftmost-first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .domain import Provenance, Sentence, WhoKind, WMention, WType, WhoValue
from .segmenter import tokenize


class LexiconError(Exception):
    """Raised on lexicon load problems; ``code`` names the failure class."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Entity:
    entity_id: str
    canonical_name: str
    kind: WhoKind
    aliases: tuple[str, ...]
    team_id: Optional[str] = None


class _TrieNode:
    __slots__ = ("children", "entity_id")

    def __init__(self):
        self.children: dict[str, _TrieNode] = {}
        self.entity_id: Optional[str] = None


@dataclass
class EntityLexicon:
    entries: list[Entity]
    _root: _TrieNode = field(default_factory=_TrieNode, repr=False)
    _by_id: dict[str, Entity] = field(default_factory=dict, repr=False)

    def entity(self, entity_id: str) -> Entity:
        return self._by_id[entity_id]

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self._by_id


def _alias_norms(alias: str) -> tuple[str, ...]:
    return tuple(t.norm for t in tokenize(alias, 0))


def build_lexicon(entries: list[Entity]) -> EntityLexicon:
    """Validate entries and compile the alias trie."""
    lex = EntityLexicon(entries=entries)
    for e in entries:
        if e.entity_id in lex._by_id:
            raise LexiconError("DUPLICATE_ID", f"entity id {e.entity_id!r} repeated")
        if e.kind is WhoKind.PLAYER and not e.team_id:
            raise LexiconError("MISSING_FIELD",
                               f"player {e.entity_id!r} has no team")
        lex._by_id[e.entity_id] = e
        for alias in e.aliases:
            if not alias.strip():
                raise LexiconError("MISSING_FIELD",
                                   f"entity {e.entity_id!r} has an empty alias")
            norms = _alias_norms(alias)
            node = lex._root
            for norm in norms:
                node = node.children.setdefault(norm, _TrieNode())
            if node.entity_id is not None and node.entity_id != e.entity_id:
                raise LexiconError(
                    "DUPLICATE_ALIAS",
                    f"alias {alias!r} of {e.entity_id!r} already names "
                    f"{node.entity_id!r}")
            node.entity_id = e.entity_id
    return lex


def load_lexicon(path: str) -> EntityLexicon:
    """Load and validate the documented lexicon JSON file.

    Format: {"entities": [{"id", "name", "kind", "aliases": [...], "team"}]}
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise LexiconError("UNREADABLE_FILE", f"{path}: {exc}") from exc

    entries = []
    for i, item in enumerate(raw.get("entities", [])):
        for key in ("id", "name", "kind", "aliases"):
            if key not in item:
                raise LexiconError("MISSING_FIELD",
                                   f"entity #{i} is missing {key!r}")
        try:
            kind = WhoKind(item["kind"])
        except ValueError as exc:
            raise LexiconError("MISSING_FIELD",
                               f"entity {item['id']!r} has unknown kind "
                               f"{item['kind']!r}") from exc
        entries.append(Entity(
            entity_id=item["id"],
            canonical_name=item["name"],
            kind=kind,
            aliases=tuple(item["aliases"]),
            team_id=item.get("team")))
    return build_lexicon(entries)


def match_who(sentence: Sentence, lex: EntityLexicon,
              raw_text: Optional[str] = None) -> list[WMention]:
    """Emit WHO mentions for every lexicon alias found in the sentence.

    Longest match wins at each position; matched tokens are consumed so
    mentions never overlap. Pass ``raw_text`` for byte-exact surfaces;
    without it multi-token surfaces are joined with single spaces.
    """
    tokens = sentence.tokens
    mentions: list[WMention] = []
    i = 0
    while i < len(tokens):
        node = lex._root
        best_end = None
        best_entity = None
        j = i
        while j < len(tokens):
            child = node.children.get(tokens[j].norm)
            if child is None:
                break
            node = child
            j += 1
            if node.entity_id is not None:
                best_end = j
                best_entity = node.entity_id
        if best_end is None:
            i += 1
            continue
        first, last = tokens[i], tokens[best_end - 1]
        span = (first.span[0], last.span[1])
        if raw_text is not None:
            from .domain import byte_substring
            surface = byte_substring(raw_text, span)
        else:
            surface = " ".join(t.text for t in tokens[i:best_end])
        entity = lex.entity(best_entity)
        mentions.append(WMention(
            sentence_index=sentence.index,
            w_type=WType.WHO,
            span=span,
            surface=surface,
            value=WhoValue(entity_id=entity.entity_id, kind=entity.kind),
            provenance=Provenance.LEXICON,
            confidence=1.0))
        i = best_end
    return mentions
