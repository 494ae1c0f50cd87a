"""Inverted lexical index linking two ontologies through shared label words.

Keys are canonical (sorted) tuples of stemmed words; values collect the
entities of each ontology whose labels contain those words.  Entries that
touch only one ontology, or that fan out to more than ``alpha`` entities,
are dropped.  Retained entries are the source of candidate mappings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import combinations
from typing import Iterable, Mapping as MappingT

from .ontology import EntityRef, Ontology, entity_labels
from .stemming import porter_stem

LexKey = tuple[str, ...]

EQUIVALENCE = "="
SUBSUMED_BY = "<"
SUBSUMES = ">"
RELATIONS = (EQUIVALENCE, SUBSUMED_BY, SUBSUMES)

_TOKEN_SPLIT = re.compile(r"[^0-9A-Za-z]+")


def load_default_stopwords() -> frozenset[str]:
    text = resources.files("ontodivide.data").joinpath("stopwords.txt") \
        .read_text(encoding="utf-8")
    return frozenset(line.strip() for line in text.splitlines()
                     if line.strip() and not line.startswith("#"))


def normalize_label(label: str,
                    stopwords: frozenset[str]) -> frozenset[str]:
    """Split on non-alphanumerics, lower-case, drop stop-words, stem."""
    tokens = {t.lower() for t in _TOKEN_SPLIT.split(label) if t}
    return frozenset(porter_stem(t) for t in tokens if t not in stopwords)


def word_subsets(words: Iterable[str], max_subsets: int) -> list[LexKey]:
    """Subset keys of a label's word set.

    Emits subsets of size |words| down to max(1, |words| - 2), each size in
    lexicographic order, truncated to ``max_subsets`` keys.
    """
    ordered = sorted(set(words))
    if not ordered:
        raise ValueError("word set must be non-empty")
    if max_subsets < 1:
        raise ValueError("max_subsets must be >= 1")
    n = len(ordered)
    keys: list[LexKey] = []
    for size in range(n, max(1, n - 2) - 1, -1):
        for combo in combinations(ordered, size):
            keys.append(combo)
            if len(keys) == max_subsets:
                return keys
    return keys


@dataclass(frozen=True)
class LexValue:
    entities1: frozenset[EntityRef]
    entities2: frozenset[EntityRef]

    def all_entities(self) -> tuple[EntityRef, ...]:
        return tuple(sorted(self.entities1)) + tuple(sorted(self.entities2))

    def __len__(self) -> int:
        return len(self.entities1) + len(self.entities2)


@dataclass(frozen=True)
class IndexStats:
    raw_entries: int
    kept_entries: int
    dropped_single_side: int
    dropped_over_alpha: int


@dataclass(frozen=True)
class LexConfig:
    alpha: int = 60
    max_subsets: int = 50
    stopwords: frozenset[str] = field(default_factory=load_default_stopwords)


@dataclass(frozen=True)
class LexIndex:
    entries: MappingT[LexKey, LexValue]
    alpha: int
    stats: IndexStats

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def sorted_entries(self) -> tuple[tuple[LexKey, LexValue], ...]:
        return tuple(sorted(self.entries.items()))

    @cached_property
    def value_entity_multiset(self) -> tuple[EntityRef, ...]:
        """Value entities with one occurrence per containing entry."""
        out: list[EntityRef] = []
        for _, value in self.sorted_entries:
            out.extend(value.all_entities())
        return tuple(out)


def build_lexi(o1: Ontology, o2: Ontology,
               cfg: LexConfig | None = None) -> LexIndex:
    """Index both ontologies and keep entries that span the two of them."""
    if cfg is None:
        cfg = LexConfig()
    accum: dict[LexKey, tuple[set[EntityRef], set[EntityRef]]] = {}
    for side, onto in ((0, o1), (1, o2)):
        for ent in sorted(onto.signature):
            for label in entity_labels(onto, ent):
                words = normalize_label(label, cfg.stopwords)
                if not words:
                    continue
                for key in word_subsets(words, cfg.max_subsets):
                    accum.setdefault(key, (set(), set()))[side].add(ent)

    entries: dict[LexKey, LexValue] = {}
    dropped_single = dropped_alpha = 0
    for key in sorted(accum):
        s1, s2 = accum[key]
        if not s1 or not s2:
            dropped_single += 1
            continue
        if len(s1) + len(s2) > cfg.alpha:
            dropped_alpha += 1
            continue
        entries[key] = LexValue(frozenset(s1), frozenset(s2))
    stats = IndexStats(raw_entries=len(accum), kept_entries=len(entries),
                       dropped_single_side=dropped_single,
                       dropped_over_alpha=dropped_alpha)
    return LexIndex(entries, cfg.alpha, stats)


@dataclass(frozen=True, eq=False)
class Mapping:
    """Candidate or asserted correspondence between two entities.

    Identity (equality/hashing) is the (e1 IRI, e2 IRI, relation) triple;
    confidence never participates in set semantics.
    """

    e1: EntityRef
    e2: EntityRef
    relation: str = EQUIVALENCE
    confidence: float = 1.0

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}")
        if not 0.0 < self.confidence <= 1.0:
            raise ValueError("confidence must be in (0, 1]")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.e1.iri, self.e2.iri, self.relation)

    def __eq__(self, other):
        return isinstance(other, Mapping) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def mappings_of(entries: Iterable[tuple[LexKey, LexValue]]
                ) -> frozenset[Mapping]:
    """Candidate mappings suggested by a subset of index entries."""
    out: set[Mapping] = set()
    for _, value in entries:
        for e1 in value.entities1:
            for e2 in value.entities2:
                out.add(Mapping(e1, e2))
    return frozenset(out)


def all_candidate_mappings(lexi: LexIndex) -> frozenset[Mapping]:
    return mappings_of(lexi.sorted_entries)


def write_index_tsv(lexi: LexIndex, path) -> None:
    """`key-words \\t o1-entities \\t o2-entities`, sorted by key."""
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in lexi.sorted_entries:
            e1 = ",".join(e.iri for e in sorted(value.entities1))
            e2 = ",".join(e.iri for e in sorted(value.entities2))
            fh.write(f"{'|'.join(key)}\t{e1}\t{e2}\n")
