import dataclasses
import json
from pathlib import Path

import pytest

from weylreduce.affine import (
    AffineElement,
    KottwitzPoint,
    PreconditionError,
    group_mode,
    is_additive,
    is_reuman_type,
    kottwitz_point,
)
from weylreduce.geck_pfeiffer import cyclic_shift_class
from weylreduce.reduction import (
    Case,
    ReductionCertificate,
    apply_case,
    candidate_set,
    classify_case,
    nonemptiness,
    reduce,
    verify_certificate,
)
from weylreduce.sweeps import default_mus

FIXTURE = Path(__file__).parent / "fixtures" / "example_chain.json"
MU5 = (2, 1, 0, -1, -2)
SL5 = group_mode("SL", 5)


def w5(word):
    return SL5.system.from_word(word)


def example_x(mode=SL5):
    return AffineElement.make(mode, MU5, mode.system.from_word([4, 3, 2, 1, 2, 3, 4]))


def additive_reuman(mode, mu):
    W = mode.system
    for v in W.elements():
        for w in W.elements():
            if not w.has_full_support():
                continue
            x = AffineElement.from_parts(mode, v, mu, w)
            if is_additive(x):
                yield x


def load_fixture():
    return ReductionCertificate.from_json(json.loads(FIXTURE.read_text()))


def test_case_labels():
    assert {c.value for c in Case} == {"1", "2a", "2b", "3a", "3b"}
    assert [c for c in Case if c.equivalence] == [Case.CASE2A, Case.CASE3A]
    assert Case.CASE1.implication == "forward"
    assert Case.CASE3A.implication == "equivalence"
    assert Case.CASE1.successor == "sx" and Case.CASE3B.successor == "xs"


def test_first_example_step_is_case_one():
    step = apply_case(example_x(), 4)
    assert step.case is Case.CASE1
    assert step.after == AffineElement.make(SL5, (2, 1, 0, -2, -1), w5([3, 2, 1, 2, 3, 4]))
    assert step.lengths == (27, 26, 26, 25)


def test_example_equivalence_step():
    W = SL5.system
    x2 = AffineElement.from_parts(SL5, w5([1, 4]), MU5, w5([3, 2, 3, 4, 1]))
    x3 = AffineElement.from_parts(SL5, w5([3, 1, 4]), MU5, w5([2, 3, 4, 1, 3]))
    step = apply_case(x2, 3)
    assert step.case.equivalence
    assert step.after == x3
    assert W.from_word([3, 1, 4]).act(MU5) == x3.translation


def test_candidate_set_examples():
    W = SL5.system
    t = AffineElement.make(SL5, MU5, W.from_permutation([5, 2, 3, 4, 1]))
    assert {1, 4} <= candidate_set(t)
    gl3 = group_mode("GL", 3)
    x = AffineElement.make(gl3, (2, 1, 0), gl3.system.from_word([1, 2]))
    assert candidate_set(x) == {1, 2}


def test_case_one_shortens_finite_part_by_one_step():
    # l(sws) = l(w) - 2 forces case 1, whose successor sx has finite part sw
    mode = group_mode("GL", 4)
    seen = 0
    for mu in default_mus(mode):
        for x in additive_reuman(mode, mu):
            w = x.finite
            for s in candidate_set(x):
                step = apply_case(x, s)
                if w.conjugate(s).length() == w.length() - 2:
                    seen += 1
                    assert step.case is Case.CASE1
                    assert step.after.finite == w.left_mul(s)
                    assert step.after.finite.length() == w.length() - 1
                else:
                    assert step.case is not Case.CASE1
    assert seen > 0


def test_every_candidate_dispatches_to_one_case():
    mode = group_mode("GL", 4)
    counts = {c: 0 for c in Case}
    for x in additive_reuman(mode, (3, 2, 1, 0)):
        for s in candidate_set(x):
            step = apply_case(x, s)
            counts[step.case] += 1
            assert classify_case(x, s) is step.case
            assert is_additive(step.after)
    assert all(counts.values()), counts


def test_example_reduction():
    cert = reduce(example_x())
    assert 1 <= len(cert.steps) <= 6
    assert cert.terminal_elliptic
    assert cert.terminal.finite.cycle_type() == (5,)
    assert cert.terminal.finite.length() == 4
    assert verify_certificate(cert)


def test_coxeter_start_gives_empty_certificate():
    x = AffineElement.make(SL5, MU5, w5([1, 2, 3, 4]))
    cert = reduce(x)
    assert cert.steps == ()
    assert cert.terminal == x
    assert verify_certificate(cert)


def test_hand_encoded_chain_verifies():
    cert = load_fixture()
    check = verify_certificate(cert)
    assert check, check
    assert [st.generator for st in cert.steps] == [4, 1, 3, 4]
    assert cert.terminal.finite.cycle_type() == (5,)
    assert cert.terminal.finite == w5([2, 3, 1, 4])
    assert cert.terminal.v == w5([4, 3, 1, 4])


@pytest.mark.parametrize("k", range(4))
def test_fault_injection_fails_at_the_step(k):
    cert = load_fixture()
    steps = list(cert.steps)
    bumped = list(steps[k].lengths)
    bumped[k % 4] += 1
    steps[k] = dataclasses.replace(steps[k], lengths=tuple(bumped))
    check = verify_certificate(dataclasses.replace(cert, steps=tuple(steps)))
    assert not check
    assert check.failed_step == k


def test_wrong_case_and_wrong_terminal_are_caught():
    cert = load_fixture()
    steps = list(cert.steps)
    steps[2] = dataclasses.replace(steps[2], case=Case.CASE2B)
    check = verify_certificate(dataclasses.replace(cert, steps=tuple(steps)))
    assert not check and check.failed_step == 2
    short = dataclasses.replace(cert, steps=cert.steps[:3], terminal=cert.steps[2].after)
    check = verify_certificate(short)
    assert not check and check.failed_step == 3


def test_certificate_json_round_trip_is_byte_stable():
    cert = reduce(example_x())
    text = cert.dumps()
    again = ReductionCertificate.from_json(json.loads(text))
    assert again == cert
    assert again.dumps() == text
    data = json.loads(text)
    assert set(data) == {"group", "lambda", "word", "steps", "terminal", "elliptic", "kappa"}
    assert set(data["steps"][0]) == {"gen", "case", "lengths", "after"}


def test_reduce_is_deterministic():
    for mu in default_mus(group_mode("GL", 4)):
        for x in additive_reuman(group_mode("GL", 4), mu):
            assert reduce(x).dumps() == reduce(x).dumps()


def test_preconditions():
    with pytest.raises(PreconditionError):
        reduce(AffineElement.make(SL5, MU5, w5([1])))
    with pytest.raises(PreconditionError):
        reduce(AffineElement.make(SL5, (1, 1, 0, -1, -1), w5([1, 2, 3, 4])))
    s1 = w5([1])
    with pytest.raises(PreconditionError):
        reduce(AffineElement.from_parts(SL5, s1, MU5, w5([1, 2, 3, 4])))


def test_nonemptiness_verdicts():
    ok, cert = nonemptiness(example_x(), 0)
    assert ok and verify_certificate(cert)
    gl5 = group_mode("GL", 5)
    x = example_x(gl5)
    assert kottwitz_point(x).value == sum(MU5) == 0
    ok, _ = nonemptiness(x, 3)
    assert not ok
    ok, _ = nonemptiness(x, KottwitzPoint.of(gl5, 0))
    assert ok


def test_c2_nonemptiness_with_mu_21():
    c2 = group_mode("C2")
    n = 0
    for x in additive_reuman(c2, (2, 1)):
        k = kottwitz_point(x)
        ok, cert = nonemptiness(x, k)
        assert ok and verify_certificate(cert)
        other = KottwitzPoint((k.value + 1) % 2, 2)
        assert not cert.verdict(other)
        n += 1
    assert n > 0


def _certificates(mode):
    for mu in default_mus(mode):
        for x in additive_reuman(mode, mu):
            yield reduce(x)


@pytest.mark.parametrize("mode", [group_mode("GL", 4), group_mode("C2"), group_mode("G2")], ids=lambda m: m.label)
def test_invariants_along_certificates(mode):
    for cert in _certificates(mode):
        kappa = kottwitz_point(cert.start)
        cur = cert.start
        for st in cert.steps:
            assert st.before == cur
            after = st.after
            assert is_additive(after) and is_reuman_type(after)
            assert kottwitz_point(after) == kappa
            if st.case.equivalence:
                assert after.finite.length() == cur.finite.length()
            else:
                assert after.finite.length() < cur.finite.length()
            cur = after
        assert cert.terminal == cur
        assert cert.terminal_elliptic


def test_plateau_safety():
    # GL_4 never needs an equal-length run; SL_5 does
    runs = 0
    for mode in (group_mode("GL", 4), group_mode("SL", 5)):
        mu = default_mus(mode)[0]
        for x in additive_reuman(mode, mu):
            cert = reduce(x)
            steps = list(cert.steps)
            k = 0
            while k < len(steps):
                if not steps[k].case.equivalence:
                    k += 1
                    continue
                j = k
                while j < len(steps) and steps[j].case.equivalence:
                    j += 1
                visited = [steps[k].before] + [st.after for st in steps[k:j]]
                assert len(set(visited)) == len(visited)
                cyc = cyclic_shift_class(steps[k].before.finite).members
                assert all(y.finite in cyc for y in visited)
                # the run ends in a strict drop or at the elliptic terminal
                assert j < len(steps) or cert.terminal.finite.is_elliptic()
                runs += 1
                k = j
    assert runs > 0
