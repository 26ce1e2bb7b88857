"""Balanced two-letter monoid presentations: the indexed family M_n and
user-supplied systems.

The n-th member of the family has generators a, b, c, d, A_1..A_n, B_1..B_n,
C_1..C_n, D_1..D_n and 2n+1 relations, each pairing two two-letter words.
Every algorithm downstream consumes the derived structure computed here:
the first-letter class P, the second-letter class Q, the left/right relation
word sets L and R, and the rewrite map sending each R word to its L partner.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

__all__ = [
    "AmbiguousRewrite",
    "ForeignLetter",
    "IndexOutOfRange",
    "LROverlap",
    "Letter",
    "NotBalanced",
    "PQOverlap",
    "Presentation",
    "PresentationError",
    "Relation",
    "UnknownToken",
    "UnstructuredPresentation",
    "Word",
    "build_presentation",
    "check_letters",
    "format_word",
    "letter_from_token",
    "load_presentation",
    "parse_relations",
    "parse_word",
    "validate_generic",
]


class PresentationError(ValueError):
    """Structural problem with a presentation, word or token."""


class UnknownToken(PresentationError):
    """A token does not name a generator."""


class IndexOutOfRange(PresentationError):
    """An indexed generator token lies outside 1..n."""


class NotBalanced(PresentationError):
    """A relation side does not have length 2."""


class PQOverlap(PresentationError):
    """Some letter occurs both first and second in relation words."""


class LROverlap(PresentationError):
    """Some two-letter word occurs on both sides of relations."""


class AmbiguousRewrite(PresentationError):
    """A right-hand side word has two distinct left partners."""


class ForeignLetter(PresentationError):
    """A word uses letters outside the presentation's generators."""


class UnstructuredPresentation(PresentationError):
    """The operation needs a presentation produced by build_presentation or
    validate_generic."""


BASE_KINDS = ("a", "b", "c", "d")
INDEXED_KINDS = ("A", "B", "C", "D")

_TOKEN_RE = re.compile(r"([A-Za-z]+?)(\d+)?")


class Letter(NamedTuple):
    """A generator symbol: a bare kind ("a") or an indexed family member ("A2")."""

    kind: str
    index: Optional[int] = None

    @property
    def token(self) -> str:
        return self.kind if self.index is None else f"{self.kind}{self.index}"

    def __repr__(self) -> str:
        return f"Letter({self.token!r})"


Word = tuple  # tuple of Letter; the empty tuple is the identity


class Relation(NamedTuple):
    left: Word
    right: Word


def letter_from_token(token: str) -> Letter:
    """Parse one token: alphabetic kind plus optional decimal index suffix."""
    m = _TOKEN_RE.fullmatch(token)
    if m is None:
        raise UnknownToken(f"malformed token {token!r}")
    kind, index = m.group(1), m.group(2)
    return Letter(kind, int(index) if index is not None else None)


@dataclass(frozen=True, eq=False)
class Presentation:
    """A balanced two-letter presentation together with its derived structure.

    Instances built by :func:`build_presentation` or :func:`validate_generic`
    are fully validated ("structured"): P and Q are disjoint, L and R are
    disjoint, and the rewrite map is functional.  Hand-assembled instances
    are accepted by the congruence search only.
    """

    n: Optional[int]
    generators: tuple
    relations: tuple
    p_set: frozenset
    q_set: frozenset
    l_words: frozenset
    r_words: frozenset
    rewrite_map: dict
    structured: bool = True

    def __post_init__(self):
        object.__setattr__(self, "generator_set", frozenset(self.generators))
        object.__setattr__(self, "by_token", {g.token: g for g in self.generators})

    def __repr__(self) -> str:
        return (
            f"Presentation(n={self.n}, {len(self.generators)} generators, "
            f"{len(self.relations)} relations)"
        )


def _derive(n: Optional[int], generators: tuple, relations: tuple) -> Presentation:
    for rel in relations:
        if len(rel.left) != 2 or len(rel.right) != 2:
            raise NotBalanced(
                f"relation sides must have length 2: "
                f"{format_word(rel.left)} = {format_word(rel.right)}"
            )
    p_set = frozenset(side[0] for rel in relations for side in rel)
    q_set = frozenset(side[1] for rel in relations for side in rel)
    overlap = p_set & q_set
    if overlap:
        raise PQOverlap(
            "letters occur in both positions: "
            + " ".join(sorted(x.token for x in overlap))
        )
    l_words = frozenset(rel.left for rel in relations)
    r_words = frozenset(rel.right for rel in relations)
    if l_words & r_words:
        raise LROverlap(
            "words occur on both sides: "
            + ", ".join(sorted(format_word(w) for w in l_words & r_words))
        )
    rewrite_map = {}
    for rel in relations:
        if rewrite_map.get(rel.right, rel.left) != rel.left:
            raise AmbiguousRewrite(
                f"{format_word(rel.right)} has two distinct left partners"
            )
        rewrite_map[rel.right] = rel.left
    return Presentation(
        n, generators, relations, p_set, q_set, l_words, r_words, rewrite_map
    )


def build_presentation(n: int) -> Presentation:
    """Construct the n-th presentation of the family (4+4n generators,
    2n+1 relations)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise PresentationError(f"n must be a positive integer, got {n!r}")
    a, b, c, d = (Letter(k) for k in BASE_KINDS)
    A = {i: Letter("A", i) for i in range(1, n + 1)}
    B = {i: Letter("B", i) for i in range(1, n + 1)}
    C = {i: Letter("C", i) for i in range(1, n + 1)}
    D = {i: Letter("D", i) for i in range(1, n + 1)}
    generators = (
        a,
        b,
        c,
        d,
        *(A[i] for i in range(1, n + 1)),
        *(B[i] for i in range(1, n + 1)),
        *(C[i] for i in range(1, n + 1)),
        *(D[i] for i in range(1, n + 1)),
    )
    relations = [Relation((d, a), (A[1], C[1]))]
    relations += [
        Relation((A[i], D[i]), (A[i + 1], C[i + 1])) for i in range(1, n)
    ]
    relations.append(Relation((A[n], D[n]), (d, b)))
    relations.append(Relation((c, b), (B[n], D[n])))
    relations += [
        Relation((B[i + 1], C[i + 1]), (B[i], D[i])) for i in range(n - 1, 0, -1)
    ]
    return _derive(n, generators, tuple(relations))


def validate_generic(relations) -> Presentation:
    """Validate a user-supplied list of relations as a structured presentation.

    Accepts any iterable of (left, right) word pairs.  The generator set is
    the letters occurring in the relations, in order of first appearance.
    """
    rels = tuple(Relation(tuple(left), tuple(right)) for left, right in relations)
    seen = set()
    generators = []
    for rel in rels:
        for side in rel:
            for letter in side:
                if letter not in seen:
                    seen.add(letter)
                    generators.append(letter)
    return _derive(None, tuple(generators), rels)


def check_letters(w: Word, pres: Presentation) -> None:
    for letter in w:
        if letter not in pres.generator_set:
            raise ForeignLetter(f"{letter.token!r} is not a generator of {pres!r}")


def parse_word(text: str, pres: Presentation) -> Word:
    """Tokenize whitespace-separated generator tokens; the single token "1"
    denotes the identity."""
    tokens = text.split()
    if not tokens:
        raise PresentationError("empty word text; write 1 for the identity")
    if tokens == ["1"]:
        return ()
    letters = []
    for token in tokens:
        letter = pres.by_token.get(token)
        if letter is None:
            try:
                parsed = letter_from_token(token)
            except UnknownToken:
                raise UnknownToken(f"{token!r} is not a generator") from None
            if (
                pres.n is not None
                and parsed.kind in INDEXED_KINDS
                and parsed.index is not None
                and not 1 <= parsed.index <= pres.n
            ):
                raise IndexOutOfRange(f"{token!r}: index outside 1..{pres.n}")
            raise UnknownToken(f"{token!r} is not a generator")
        letters.append(letter)
    return tuple(letters)


def format_word(w: Word) -> str:
    """Inverse of parse_word; the empty word renders as "1"."""
    if not w:
        return "1"
    return " ".join(letter.token for letter in w)


def parse_relations(text: str):
    """Parse the relation file format: one "w1 = w2" per line, tokens
    whitespace-separated, lines starting with '#' ignored."""
    relations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.count("=") != 1:
            raise PresentationError(f"line {lineno}: expected one '=' separator")
        lhs, rhs = line.split("=")
        left = tuple(letter_from_token(t) for t in lhs.split())
        right = tuple(letter_from_token(t) for t in rhs.split())
        if not left or not right:
            raise PresentationError(f"line {lineno}: empty relation side")
        relations.append(Relation(left, right))
    return relations


def load_presentation(text: str) -> Presentation:
    """Parse and validate a relation file."""
    return validate_generic(parse_relations(text))
