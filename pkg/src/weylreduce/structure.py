"""Full-support elements that lose support under their descents.

Predicates and exhaustive checks describing when multiplying a full-support
element by a descent drops a generator from its support, and why in type A
such elements are Coxeter.  Checks whose statements only hold in type A
refuse other types: in B_n the longest element has every generator as a
commuting descent, for instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from weylreduce.coxeter import LEFT, RIGHT, CoxeterSystem, FiniteElement
from weylreduce.reports import VerificationReport


@dataclass(frozen=True)
class WformDecomposition:
    """``w = w_ell * w_1 * ... * w_k`` with ``w_ell`` the product of D_L(w)."""

    w_ell: FiniteElement
    factors: tuple[tuple[frozenset[int], FiniteElement], ...]

    def product(self) -> FiniteElement:
        out = self.w_ell
        for _, wi in self.factors:
            out = out * wi
        return out


def loses_support(w: FiniteElement, s: int, side: str = LEFT) -> bool:
    if s not in w.descents(side):
        raise ValueError(f"s_{s} is not a {side} descent of {w!r}")
    u = w.left_mul(s) if side == LEFT else w.right_mul(s)
    return not u.has_full_support()


def commuting_descents(w: FiniteElement) -> frozenset[int]:
    return frozenset(s for s in w.all_descents() if w.left_mul(s) == w.right_mul(s))


def _components(system: CoxeterSystem, gens: set[int]) -> list[frozenset[int]]:
    """Connected pieces of the Coxeter graph restricted to ``gens``."""
    left = set(gens)
    out = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in list(left):
                if j not in comp and not system.commute(i, j):
                    comp.add(j)
                    stack.append(j)
        left -= comp
        out.append(frozenset(comp))
    return sorted(out, key=min)


def wform_decompose(w: FiniteElement) -> WformDecomposition | None:
    """Split off the left descents; None when some left descent keeps full support."""
    system = w.system
    if not w.has_full_support():
        raise ValueError(f"{w!r} does not have full support")
    desc = w.left_descents()
    if any(not loses_support(w, s, LEFT) for s in desc):
        return None
    order = sorted(desc)
    w_ell = system.from_word(order)
    rest = w_ell.inverse() * w
    word = rest.reduced_word()
    factors = []
    for block in _components(system, set(system.generators) - desc):
        factors.append((block, system.from_word(i for i in word if i in block)))
    return WformDecomposition(w_ell, tuple(factors))


def wform_invariants_hold(w: FiniteElement, d: WformDecomposition) -> bool:
    system = w.system
    desc = w.left_descents()
    commuting = all(system.commute(a, b) for a in desc for b in desc)
    blocks = [b for b, _ in d.factors]
    covered = set(desc).union(*blocks) if blocks else set(desc)
    disjoint = sum(len(b) for b in blocks) + len(desc) == len(covered)
    in_block = all(wi.support() <= b for b, wi in d.factors)
    additive = d.w_ell.length() + sum(wi.length() for _, wi in d.factors) == w.length()
    return (
        commuting
        and covered == set(system.generators)
        and disjoint
        and in_block
        and additive
        and d.w_ell.length() == len(desc)
        and d.product() == w
    )


def descending_ascending_coxeter(system: CoxeterSystem, j: int) -> FiniteElement:
    """``s_j s_{j-1} ... s_1 s_{j+1} ... s_n``."""
    return system.from_word(list(range(j, 0, -1)) + list(range(j + 1, system.rank + 1)))


def ascending_descending_coxeter(system: CoxeterSystem, k: int) -> FiniteElement:
    """``s_1 ... s_{k-1} s_n ... s_{k+1} s_k``."""
    return system.from_word(list(range(1, k)) + list(range(system.rank, k - 1, -1)))


def _type_a_only(system: CoxeterSystem, lemma: str) -> VerificationReport | None:
    if system.type_tag != "A":
        return VerificationReport(lemma, system.name, skipped=f"stated for type A only, not {system.name}")
    return None


def check_unique_descent_coxeter(system: CoxeterSystem) -> VerificationReport:
    """A unique descent that loses support forces the explicit Coxeter form."""
    if system.type_tag != "A":
        raise ValueError(f"the unique-descent characterisation is type A only, not {system.name}")
    rep = VerificationReport("unique-descent-coxeter", system.name)
    for w in system.elements():
        if not w.has_full_support():
            continue
        dl, dr = w.left_descents(), w.right_descents()
        if len(dl) == 1:
            (j,) = dl
            if loses_support(w, j, LEFT):
                rep.checked += 1
                if w != descending_ascending_coxeter(system, j):
                    rep.counterexamples.append({"side": LEFT, "word": list(w.reduced_word())})
        if len(dr) == 1:
            (k,) = dr
            if loses_support(w, k, RIGHT):
                rep.checked += 1
                if w != ascending_descending_coxeter(system, k):
                    rep.counterexamples.append({"side": RIGHT, "word": list(w.reduced_word())})
    return rep


def check_wform(system: CoxeterSystem) -> VerificationReport:
    """Every full-support element whose left descents all lose support decomposes."""
    rep = VerificationReport("wform", system.name)
    for w in system.elements():
        if not w.has_full_support():
            continue
        d = wform_decompose(w)
        if d is None:
            continue
        rep.checked += 1
        if not wform_invariants_hold(w, d):
            rep.counterexamples.append(list(w.reduced_word()))
    return rep


def check_all_descents_lose_support_coxeter(system: CoxeterSystem) -> VerificationReport:
    """Every left and right descent losing support forces Coxeter."""
    skip = _type_a_only(system, "descents-lose-support-coxeter")
    if skip:
        return skip
    rep = VerificationReport("descents-lose-support-coxeter", system.name)
    for w in system.elements():
        if not w.has_full_support():
            continue
        if not all(loses_support(w, s, LEFT) for s in w.left_descents()):
            continue
        if not all(loses_support(w, s, RIGHT) for s in w.right_descents()):
            continue
        rep.checked += 1
        if not w.is_coxeter():
            rep.counterexamples.append(list(w.reduced_word()))
    return rep


def _rank_one(system: CoxeterSystem, lemma: str) -> VerificationReport | None:
    # with a single generator s_1 is central, so it is a commuting descent of itself
    if system.rank < 2:
        return VerificationReport(lemma, system.name, skipped="rank one: the generator is central")
    return None


def check_commuting_descent_keeps_support(system: CoxeterSystem) -> VerificationReport:
    """Removing a commuting descent from a full-support element keeps full support."""
    skip = _rank_one(system, "commuting-descent-keeps-support")
    if skip:
        return skip
    rep = VerificationReport("commuting-descent-keeps-support", system.name)
    for w in system.elements():
        if not w.has_full_support():
            continue
        for s in sorted(commuting_descents(w)):
            rep.checked += 1
            if not w.left_mul(s).has_full_support():
                rep.counterexamples.append({"word": list(w.reduced_word()), "s": s})
    return rep


def commuting_descents_commute(w: FiniteElement) -> bool:
    cd = commuting_descents(w)
    return all(w.system.commute(a, b) for a in cd for b in cd)


def check_commuting_descents_commute(system: CoxeterSystem) -> VerificationReport:
    """Commuting descents of a full-support element commute with each other."""
    skip = _type_a_only(system, "commuting-descents-commute")
    if skip:
        return skip
    rep = VerificationReport("commuting-descents-commute", system.name)
    for w in system.elements():
        if not w.has_full_support():
            continue
        rep.checked += 1
        if not commuting_descents_commute(w):
            rep.counterexamples.append(list(w.reduced_word()))
    return rep


def check_coxeter_no_commuting_descents(system: CoxeterSystem) -> VerificationReport:
    skip = _rank_one(system, "coxeter-no-commuting-descents")
    if skip:
        return skip
    rep = VerificationReport("coxeter-no-commuting-descents", system.name)
    for w in system.coxeter_elements():
        rep.checked += 1
        if commuting_descents(w):
            rep.counterexamples.append(list(w.reduced_word()))
    return rep


def _loses_or_commutes(w: FiniteElement, s: int, side: str) -> bool:
    u = w.left_mul(s) if side == LEFT else w.right_mul(s)
    return s not in u.support() or w.left_mul(s) == w.right_mul(s)


def check_w0_or_coxeter(system: CoxeterSystem) -> VerificationReport:
    """Each descent either loses support or commutes with w, forcing Coxeter."""
    skip = _type_a_only(system, "lose-or-commute-coxeter")
    if skip:
        return skip
    rep = VerificationReport("lose-or-commute-coxeter", system.name)
    for w in system.elements():
        if not w.has_full_support():
            continue
        if not all(_loses_or_commutes(w, s, LEFT) for s in w.left_descents()):
            continue
        if not all(_loses_or_commutes(w, s, RIGHT) for s in w.right_descents()):
            continue
        rep.checked += 1
        if not w.is_coxeter():
            rep.counterexamples.append(list(w.reduced_word()))
    return rep


def structure_suite(system: CoxeterSystem) -> list[VerificationReport]:
    reps = []
    if system.type_tag == "A":
        reps.append(check_unique_descent_coxeter(system))
    else:
        reps.append(VerificationReport(
            "unique-descent-coxeter", system.name,
            skipped=f"stated for type A only, not {system.name}",
        ))
    reps += [
        check_wform(system),
        check_all_descents_lose_support_coxeter(system),
        check_commuting_descent_keeps_support(system),
        check_commuting_descents_commute(system),
        check_coxeter_no_commuting_descents(system),
        check_w0_or_coxeter(system),
    ]
    return reps
