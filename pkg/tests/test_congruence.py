from itertools import product

import pytest

from malcev.congruence import (
    CapExceeded,
    equality_class,
    left_divides,
    partition_agreement,
    transitions,
)
from malcev.presentation import (
    ForeignLetter,
    Presentation,
    format_word,
    letter_from_token,
    parse_word,
)
from malcev.rewriting import equal


def w(text, pres):
    return parse_word(text, pres)


def words_set(texts, pres):
    return {w(t, pres) for t in texts}


def test_class_of_relation_side(m1):
    cls = equality_class(w("d a", m1), m1)
    assert cls.representative == w("d a", m1)
    assert cls.members[0] == cls.representative
    assert cls.member_set == words_set(["d a", "A1 C1"], m1)
    assert len(cls) == 2
    assert w("A1 C1", m1) in cls
    assert w("c b", m1) not in cls


def test_class_of_identity_and_irreducibles(m1):
    assert equality_class((), m1).member_set == {()}
    assert equality_class(w("c a", m1), m1).member_set == {w("c a", m1)}
    assert equality_class(w("d", m1), m1).member_set == {w("d", m1)}


def test_class_chains_through_relations(m1):
    # d b ~ A1 D1 and c b ~ B1 D1, each a two-step orbit
    assert equality_class(w("d b", m1), m1).member_set == words_set(
        ["d b", "A1 D1"], m1
    )
    assert equality_class(w("c b", m1), m1).member_set == words_set(
        ["c b", "B1 D1"], m1
    )


def test_members_preserve_length_and_position_classes(m2):
    start = w("a b a C2 d b c A1 B1 D1", m2)
    cls = equality_class(start, m2)
    pattern = tuple(x in m2.p_set for x in start)
    for member in cls:
        assert len(member) == len(start)
        assert tuple(x in m2.p_set for x in member) == pattern


def test_class_rejects_foreign_letters(m1, m2):
    with pytest.raises(ForeignLetter):
        equality_class(w("A2 D2", m2), m1)


def test_cap_exceeded(m1):
    with pytest.raises(CapExceeded):
        equality_class(w("d a", m1), m1, cap=1)


def test_transitions_order_and_content(m1):
    # relations scan in presentation order, positions left to right
    out = list(transitions(w("d a d b", m1), m1.relations))
    assert out == [
        w("A1 C1 d b", m1),  # (d a, A1 C1) applied at 0
        w("d a A1 D1", m1),  # (A1 D1, d b) applied backwards at 2
    ]


def test_left_divides_witness(m1):
    assert left_divides(w("d", m1), w("A1 C1", m1), m1) == w("a", m1)
    assert left_divides(w("A1", m1), w("d a", m1), m1) == w("C1", m1)
    assert left_divides(w("c", m1), w("B1 D1", m1), m1) == w("b", m1)


def test_left_divides_identity_and_self(m1):
    q = w("d b", m1)
    assert left_divides((), q, m1) == q
    assert left_divides(q, q, m1) == ()


def test_left_divides_negative(m1):
    assert left_divides(w("a", m1), w("b a", m1), m1) is None
    assert left_divides(w("d a", m1), w("d", m1), m1) is None
    assert left_divides(w("c", m1), w("d a", m1), m1) is None


def all_words(pres, max_len):
    out = []
    for length in range(max_len + 1):
        out.extend(product(pres.generators, repeat=length))
    return out


def test_left_divides_matches_exhaustive_search(m1):
    # relations preserve length, so p w = q forces |w| = |q| - |p|
    words = all_words(m1, 2)
    by_len = {}
    for s in words:
        by_len.setdefault(len(s), []).append(s)
    for p in words:
        for q in words:
            witness = left_divides(p, q, m1)
            if witness is None:
                gap = len(q) - len(p)
                assert gap < 0 or not any(
                    equal(p + s, q, m1) for s in by_len[gap]
                ), f"{format_word(p)} divides {format_word(q)}"
            else:
                assert len(p) + len(witness) == len(q)
                assert equal(p + witness, q, m1)


def test_left_divisibility_is_transitive(m1):
    words = [v for v in all_words(m1, 2)]
    divisors = {
        q: frozenset(p for p in words if left_divides(p, q, m1) is not None)
        for q in words
    }
    for r in words:
        for q in divisors[r]:
            assert divisors[q] <= divisors[r]


def test_partitions_agree_small(m1, m2):
    assert partition_agreement(m1, 3) == []
    assert partition_agreement(m2, 2) == []


def test_bfs_handles_unstructured_presentation():
    # the congruence search needs no P/Q structure at all
    def tok(text):
        return tuple(letter_from_token(t) for t in text.split())

    swap = Presentation(
        n=None,
        generators=tok("a b"),
        relations=((tok("a b"), tok("b a")),),
        p_set=frozenset(),
        q_set=frozenset(),
        l_words=frozenset(),
        r_words=frozenset(),
        rewrite_map={},
        structured=False,
    )
    cls = equality_class(tok("a a b"), swap)
    assert cls.member_set == {tok("a a b"), tok("a b a"), tok("b a a")}
    assert left_divides(tok("b"), tok("a b"), swap) == tok("a")
