import pytest

from weylreduce.coxeter import type_a, type_c2, type_g2
from weylreduce.geck_pfeiffer import (
    ArrowStep,
    arrow_targets,
    check_min_full_support_elliptic,
    check_min_length_reached,
    check_terminal_elliptic,
    cyclic_shift_class,
    min_class_length,
    reduce_to_min,
)

GROUPS = [type_a(n) for n in range(1, 6)] + [type_c2(), type_g2()]


def transposition_15():
    return type_a(4).from_permutation([5, 2, 3, 4, 1])


def test_arrows_from_identity():
    W = type_a(3)
    steps = arrow_targets(W.identity())
    assert [a.generator for a in steps] == [1, 2, 3]
    assert all(a.target.is_identity() for a in steps)


def test_arrows_from_simple_reflection_brute_force():
    W = type_a(2)
    s1 = W.s(1)
    expected = [s for s in W.generators if (W.s(s) * s1 * W.s(s)).length() <= 1]
    assert [a.generator for a in arrow_targets(s1)] == expected == [1]


def test_arrow_from_long_transposition():
    t = transposition_15()
    assert t.length() == 7
    a = next(a for a in arrow_targets(t) if a.generator == 4)
    assert a.target == type_a(4).from_permutation([4, 2, 3, 1, 5])
    assert a.target.length() == 5


def test_arrow_step_validates():
    W = type_a(2)
    with pytest.raises(ValueError):
        ArrowStep(W.s(1), 2, W.from_word([2, 1, 2]))
    with pytest.raises(ValueError):
        ArrowStep(W.s(1), 2, W.s(1))


def test_reduce_to_min_examples():
    W = type_a(4)
    c = W.from_word([1, 2, 3, 4])
    assert reduce_to_min(c) == (c, [])
    assert reduce_to_min(W.identity()) == (W.identity(), [])
    w_min, chain = reduce_to_min(transposition_15())
    assert w_min.length() == 1
    assert chain and all(a.target.length() <= a.source.length() for a in chain)


def test_cyclic_shift_examples():
    W = type_a(2)
    cyc = cyclic_shift_class(W.from_word([1, 2]))
    assert cyc.members == {W.from_word([1, 2]), W.from_word([2, 1])}
    assert cyc.terminal
    e = cyclic_shift_class(W.identity())
    assert e.members == {W.identity()} and e.terminal
    assert not cyclic_shift_class(transposition_15()).terminal


@pytest.mark.parametrize("W", GROUPS, ids=lambda W: W.name)
def test_arrows_preserve_class_and_split_by_length(W):
    for w in W.elements():
        cyc = cyclic_shift_class(w)
        for a in arrow_targets(w):
            assert a.target in W.class_of(w)
            assert a.target in cyc.members or a.target.length() < w.length()


@pytest.mark.parametrize("W", GROUPS, ids=lambda W: W.name)
def test_cyclic_shift_class_invariants(W):
    for w in W.elements():
        cyc = cyclic_shift_class(w)
        assert w in cyc.members
        assert all(u.length() == w.length() for u in cyc.members)
        escapes = any(a.target not in cyc.members for u in cyc.members for a in arrow_targets(u))
        assert cyc.terminal == (not escapes)
        for u in cyc.members:
            assert w in cyclic_shift_class(u).members


@pytest.mark.parametrize("W", GROUPS, ids=lambda W: W.name)
def test_reduce_to_min_reaches_class_minimum(W):
    for w in W.elements():
        w_min, chain = reduce_to_min(w)
        assert w_min.length() == min_class_length(w)
        cur = w
        for a in chain:
            assert a.source == cur
            cur = a.target
        assert cur == w_min


@pytest.mark.parametrize("W", GROUPS, ids=lambda W: W.name)
def test_reports_are_clean(W):
    for check in (check_min_length_reached, check_min_full_support_elliptic, check_terminal_elliptic):
        rep = check(W)
        assert rep.passed, rep.to_json()
        assert rep.checked > 0


def test_reports_counts_s4():
    assert check_min_length_reached(type_a(3)).checked == 24
    # only the 4-cycles of minimal length 3 have full support there
    assert check_min_full_support_elliptic(type_a(3)).checked == 4
