import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlposets import (
    FISHBURN,
    P_12_34,
    P_43_12,
    P_ANCHORED_3_12,
    BicolouredPermutation,
    BijectionError,
    DecoratedPoset,
    FamilyId,
    LabelledBinaryWord,
    PatternParseError,
    Permutation,
    Poset,
    StanleyGraph,
    VincularPattern,
    bicoloured_to_word,
    contains_pattern,
    count_family,
    decode_word,
    decorated_decode,
    decorated_encode,
    encode_word,
    enumerate_bicoloured,
    enumerate_family,
    lambda_full_inverse,
    lambda_map,
    poset_from_stanley,
    psi_map,
    stanley_from_poset,
    word_to_bicoloured,
)

WORKED_PERM = Permutation.from_text("947863152")


# -- vincular patterns ---------------------------------------------------------

def test_parse_shapes():
    assert VincularPattern.parse("12-34").blocks == ((1, 2), (3, 4))
    assert VincularPattern.parse("3-12").blocks == ((3,), (1, 2))
    p = VincularPattern.parse("[3-12")
    assert p.anchored and p.blocks == ((3,), (1, 2))
    # double dash is an allowed spelling of the same separator
    assert VincularPattern.parse("43--12") == VincularPattern.parse("43-12")
    assert VincularPattern.parse("fishburn") is FISHBURN
    assert VincularPattern.parse("[3-12").to_text() == "[3-12"


@pytest.mark.parametrize("text,pos", [
    ("1---2", 4),
    ("12-", 4),
    ("", 1),
    ("1x2", 2),
    ("-12", 1),
    ("[", 2),
    ("102", 2),
    ("13-2-", 6),
])
def test_parse_errors_name_position(text, pos):
    with pytest.raises(PatternParseError) as e:
        VincularPattern.parse(text)
    assert e.value.position == pos


def test_worked_perm_occurrences():
    occ = contains_pattern(WORKED_PERM, P_43_12, occurrences=True)
    assert occ == [(4, 5, 7, 8)]
    assert tuple(WORKED_PERM[i - 1] for i in occ[0]) == (8, 6, 1, 5)


def test_worked_perm_anchored_occurrences():
    occ = contains_pattern(WORKED_PERM, P_ANCHORED_3_12, occurrences=True)
    assert occ == [(1, 2, 3), (1, 3, 4), (1, 7, 8)]
    vals = [tuple(WORKED_PERM[i - 1] for i in o) for o in occ]
    assert vals == [(9, 4, 7), (9, 7, 8), (9, 1, 5)]


def test_pattern_edge_cases():
    assert not contains_pattern(Permutation((4, 3, 2, 1)), P_12_34)
    # blocks may touch: an empty gap is a gap
    assert contains_pattern(Permutation((1, 2, 3, 4)), P_12_34)
    assert not contains_pattern(Permutation(()), P_12_34)
    assert contains_pattern(Permutation(()), P_12_34, occurrences=True) == []


def test_anchored_vs_free():
    # 3-12 occurs in 1423 (at 4..23) but not anchored at position 1
    s = Permutation((1, 4, 2, 3))
    assert contains_pattern(s, VincularPattern.parse("3-12"))
    assert not contains_pattern(s, P_ANCHORED_3_12)


def test_fishburn_counts_match_interval_orders():
    for n, want in enumerate([1, 1, 2, 5, 15, 53]):
        got = sum(1 for q in itertools.permutations(range(1, n + 1))
                  if not contains_pattern(Permutation(q), FISHBURN))
        assert got == want


def test_permutation_text_forms():
    assert Permutation.from_text("3 1 2") == Permutation((3, 1, 2))
    assert Permutation.from_text("312") == Permutation((3, 1, 2))
    assert Permutation((3, 1, 2)).to_text() == "3 1 2"
    with pytest.raises(ValueError):
        Permutation((1, 1))
    with pytest.raises(ValueError):
        Permutation.from_text("31x")


@settings(max_examples=80, deadline=None)
@given(st.permutations(list(range(1, 8))))
def test_generic_matcher_agrees_with_quadruple_scan(vals):
    "Independent definitional scan for 12-34 vs the generic matcher."
    s = list(vals)
    n = len(s)
    truth = any(
        s[i] < s[i + 1] < s[j] < s[j + 1]
        for i in range(n - 1) for j in range(i + 2, n - 1))
    assert contains_pattern(Permutation(vals), P_12_34) == truth


# -- words and bicoloured permutations ----------------------------------------

FIG4_LINE = "9; 2<4,2<8,5<8,1<8,2<7,5<7,1<7,6<7,2<9,5<9,1<9,6<9"


def test_worked_word_chain():
    p = Poset.from_text(FIG4_LINE)
    w = encode_word(p)
    assert w.to_text() == "0:2 1:4 0:5 0:1 1:8 0:6 1:7 1:9 0:3"
    assert decode_word(w) == p
    b = word_to_bicoloured(w)
    assert b.to_text() == "2b 4r 5b 1b 8r 6b 7r 9r 3b"
    assert bicoloured_to_word(b) == w


def test_word_trivia():
    assert encode_word(Poset(1)).to_text() == "0:1"
    assert encode_word(Poset(2)).to_text() == "0:2 0:1"
    w = LabelledBinaryWord.from_text("0:2 0:1 1:3")
    assert word_to_bicoloured(w).to_text() == "2b 1b 3r"
    assert LabelledBinaryWord.from_text(w.to_text()) == w


def test_encode_rejects_other_families():
    chain = Poset(3, [(1, 2), (2, 3)])
    with pytest.raises(BijectionError):
        encode_word(chain)


@pytest.mark.parametrize("text,cond", [
    ("1:1", 1),           # must start with 0
    ("0:1 0:2", 2),       # adjacent 0 labels must decrease
    ("0:3 1:2 1:1", 3),   # adjacent 1 labels must increase... and 4
    ("0:2 1:1", 4),       # 1 label below an earlier 0 label
])
def test_decode_rejects_invalid_words(text, cond):
    w = LabelledBinaryWord.from_text(text)
    with pytest.raises(BijectionError) as e:
        decode_word(w)
    assert e.value.witness[0] in (cond, 4)


def test_bicoloured_membership_witnesses():
    assert BicolouredPermutation.from_text("1r").validate()[0] == 1
    assert BicolouredPermutation.from_text("1b 2b").validate()[0] == 2
    assert BicolouredPermutation.from_text("1b 3r 2r").validate()[0] == 3
    v = BicolouredPermutation.from_text("3b 1b 2r").validate()
    assert v == (4, (1, 3))
    assert BicolouredPermutation.from_text("2b 1b 3r").validate() is None


@pytest.mark.parametrize("n", range(7))
def test_word_and_colour_round_trips_exhaustive(n):
    ps = list(enumerate_family(FamilyId.NL_3_22FREE, n))
    words = [encode_word(p) for p in ps]
    assert all(w.is_valid() for w in words)
    assert [decode_word(w) for w in words] == ps
    bics = [word_to_bicoloured(w) for w in words]
    assert all(b.is_valid() for b in bics)
    assert [bicoloured_to_word(b) for b in bics] == words
    members = enumerate_bicoloured(n)
    assert sorted(b.pairs() for b in bics) == sorted(b.pairs() for b in members)
    assert len(members) == count_family(FamilyId.NL_3_22FREE, n)


# -- lambda / psi --------------------------------------------------------------

def test_lambda_examples():
    assert lambda_map(BicolouredPermutation.from_text("2b 1b")).values == (2, 1)
    assert lambda_map(BicolouredPermutation.from_text("1b 2r 3b")).values == (3, 1, 2)


def test_lambda_rejects_nonmembers():
    with pytest.raises(BijectionError):
        lambda_map(BicolouredPermutation.from_text("1r 2r"))


def test_psi_examples():
    assert psi_map(Permutation((3, 1, 2))).to_text() == "1b 2r 3b"
    with pytest.raises(BijectionError):
        psi_map(Permutation((2, 1, 3)))
    with pytest.raises(BijectionError):
        # contains 43-12
        psi_map(Permutation((6, 5, 3, 1, 2, 4)))


def test_full_inverse_examples():
    assert lambda_full_inverse(Permutation((1,))).to_text() == "1b"
    assert lambda_full_inverse(Permutation((2, 1))).to_text() == "2b 1b"
    assert lambda_full_inverse(Permutation((3, 1, 2))).to_text() == "1b 2r 3b"
    with pytest.raises(BijectionError):
        lambda_full_inverse(Permutation((6, 5, 3, 1, 2, 4)))


def test_size_19_worked_example():
    left = BicolouredPermutation(
        [3, 1, 4, 10, 19, 2, 5, 11, 9, 6, 15, 7, 12, 13, 14, 16, 18, 17, 8],
        list("bbrrrbrbbbrbrrbrbbb"))
    assert left.is_valid()
    right = Permutation(
        (6, 9, 11, 14, 17, 18, 3, 1, 4, 10, 19, 2, 5, 15, 7, 12, 13, 16, 8))
    assert lambda_map(left) == right
    assert psi_map(right) == left
    assert lambda_full_inverse(right) == left


@pytest.mark.parametrize("n", range(8))
def test_lambda_is_bijection_exhaustive(n):
    members = enumerate_bicoloured(n)
    imgs = [lambda_map(b) for b in members]
    assert len(set(imgs)) == len(imgs)
    av = sorted(q for q in itertools.permutations(range(1, n + 1))
                if not contains_pattern(Permutation(q), P_43_12))
    assert sorted(i.values for i in imgs) == av
    for b, s in zip(members, imgs):
        assert not contains_pattern(s, P_43_12)
        has_rb = any(
            b.colours[i] == "r" and b.colours[i + 1] == "b"
            and b.perm[i] < b.perm[i + 1] for i in range(n - 1))
        assert contains_pattern(s, P_ANCHORED_3_12) == has_rb
        assert lambda_full_inverse(s) == b
        if has_rb:
            assert psi_map(s) == b


@pytest.mark.parametrize("n", range(8))
def test_marked_points_form_initial_run(n):
    "Moved points sit as the strictly ascending prefix of the image."
    for b in enumerate_bicoloured(n):
        s = lambda_map(b).values
        vals, cols = b.perm.values, b.colours
        marked = set()
        for i in range(n - 1):
            if cols[i] == "r" and cols[i + 1] == "b" and vals[i] < vals[i + 1]:
                j = i + 1
                run = [j]
                while j + 1 < n and vals[j + 1] < vals[j]:
                    j += 1
                    run.append(j)
                marked |= {t for t in run if vals[t] > vals[i]}
        k = len(marked)
        assert list(s[:k]) == sorted(vals[t] for t in marked)
        if k:
            assert all(s[t] < s[t + 1] for t in range(k - 1))


# -- stanley graphs ------------------------------------------------------------

def test_worked_stanley_example():
    p = Poset(9, [(1, 2), (1, 4), (3, 4), (1, 7), (3, 7), (5, 7), (6, 7),
                  (3, 9), (6, 9)])
    g = stanley_from_poset(p)
    assert g.edges == frozenset(
        {(1, 2), (1, 4), (1, 7), (3, 4), (3, 7), (3, 9), (5, 7), (6, 7),
         (6, 9)})
    assert poset_from_stanley(g) == p
    assert g.to_text() == "9; 1-2,1-4,1-7,3-4,3-7,3-9,5-7,6-7,6-9"
    assert StanleyGraph.from_text(g.to_text()) == g


def test_stanley_trivia():
    assert poset_from_stanley(StanleyGraph(4, [])) == Poset(4)
    star = poset_from_stanley(StanleyGraph(4, [(1, 4), (2, 4), (3, 4)]))
    assert star.downset(4) == (1, 2, 3)
    with pytest.raises(BijectionError) as e:
        poset_from_stanley(StanleyGraph(3, [(1, 2), (2, 3)]))
    assert e.value.witness == 2
    with pytest.raises(BijectionError):
        stanley_from_poset(Poset(3, [(1, 2), (2, 3)]))


@pytest.mark.parametrize("n", range(7))
def test_stanley_round_trip_exhaustive(n):
    ps = list(enumerate_family(FamilyId.NL_3FREE, n))
    gs = [stanley_from_poset(p) for p in ps]
    assert all(g.is_valid() for g in gs)
    assert [poset_from_stanley(g) for g in gs] == ps
    assert list(enumerate_family(FamilyId.STANLEY_GRAPH, n)) == gs


# -- decorated posets ----------------------------------------------------------

def test_worked_decorated_example():
    p = Poset(9, [(2, 9), (5, 9), (5, 6), (5, 7)])
    d = decorated_encode(p)
    assert d.base == Poset(5, [(1, 5), (2, 5), (2, 3), (2, 4)])
    assert d.rings == (1, 2, 0, 0, 1, 0)
    assert decorated_decode(d) == p
    assert d.to_text() == "5; 2<3,2<4,1<5,2<5 | 0:1,1:2,4:1"
    assert DecoratedPoset.from_text(d.to_text()) == d


def test_decorated_trivia():
    d = decorated_encode(Poset(4))
    assert d.base.n == 0 and d.rings == (4,)
    assert decorated_decode(d) == Poset(4)
    fix = Poset(3, [(1, 3), (2, 3)])
    dfix = decorated_encode(fix)
    assert dfix.base == fix and sum(dfix.rings) == 0
    with pytest.raises(ValueError):
        DecoratedPoset(Poset(1), (0, 0))   # base has an isolated element
    with pytest.raises(BijectionError):
        decorated_encode(Poset(3, [(1, 2), (2, 3)]))


@pytest.mark.parametrize("n", range(7))
def test_decorated_round_trip_exhaustive(n):
    for p in enumerate_family(FamilyId.NL_3FREE, n):
        d = decorated_encode(p)
        assert d.size == p.n
        assert decorated_decode(d) == p
        assert DecoratedPoset.from_text(d.to_text()) == d


def test_decorated_base_is_always_in_noiso_family():
    from nlposets import is_in_family
    for n in range(6):
        for p in enumerate_family(FamilyId.NL_3FREE, n):
            d = decorated_encode(p)
            assert is_in_family(d.base, FamilyId.NL_3FREE_NOISO)
            assert d.base.n != 1


# -- property tests ------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.data())
def test_random_member_round_trip(n, data):
    members = enumerate_bicoloured(n)
    b = data.draw(st.sampled_from(members)) if members else None
    if b is None:
        return
    w = bicoloured_to_word(b)
    assert word_to_bicoloured(w) == b
    p = decode_word(w)
    assert encode_word(p) == w
    assert lambda_full_inverse(lambda_map(b)) == b
