"""Length-non-increasing conjugation by simple reflections.

``w ->_s w'`` means ``w' = s w s`` with ``l(w') <= l(w)``.  Chains of such
arrows reach the minimal length elements of every conjugacy class, and the
equal-length part of the arrow graph splits into cyclic shift classes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from weylreduce.coxeter import CoxeterSystem, FiniteElement
from weylreduce.reports import VerificationReport


@dataclass(frozen=True)
class ArrowStep:
    source: FiniteElement
    generator: int
    target: FiniteElement

    def __post_init__(self):
        if self.target != self.source.conjugate(self.generator):
            raise ValueError("arrow target is not the conjugate of its source")
        if self.target.length() > self.source.length():
            raise ValueError("arrow increases length")

    def to_json(self) -> dict:
        return {
            "source": list(self.source.reduced_word()),
            "generator": self.generator,
            "target": list(self.target.reduced_word()),
        }


@dataclass(frozen=True)
class CyclicShiftClass:
    base: FiniteElement
    members: frozenset[FiniteElement]
    terminal: bool


def arrow_targets(w: FiniteElement) -> list[ArrowStep]:
    n = w.length()
    out = []
    for i in w.system.generators:
        c = w.conjugate(i)
        if c.length() <= n:
            out.append(ArrowStep(w, i, c))
    return out


def _plateau_search(w: FiniteElement) -> tuple[list[ArrowStep], ArrowStep | None, set[FiniteElement]]:
    """BFS over equal-length arrows from ``w``.

    Returns the path to the first node with a strictly shortening arrow,
    that arrow (smallest generator), and the visited set.  The arrow is
    None when the plateau has no exit.
    """
    n = w.length()
    parent: dict[FiniteElement, ArrowStep | None] = {w: None}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        steps = arrow_targets(u)
        drop = next((a for a in steps if a.target.length() < n), None)
        if drop is not None:
            path = []
            node = u
            while parent[node] is not None:
                path.append(parent[node])
                node = parent[node].source
            return path[::-1], drop, set(parent)
        for a in steps:
            if a.target not in parent:
                parent[a.target] = a
                queue.append(a.target)
    return [], None, set(parent)


def reduce_to_min(w: FiniteElement) -> tuple[FiniteElement, list[ArrowStep]]:
    """Follow arrows from ``w`` down to a minimal length conjugate."""
    chain: list[ArrowStep] = []
    cur = w
    while True:
        path, drop, _ = _plateau_search(cur)
        if drop is None:
            return cur, chain
        chain.extend(path)
        chain.append(drop)
        cur = drop.target


def cyclic_shift_class(w: FiniteElement) -> CyclicShiftClass:
    """Equal-length arrows are symmetric, so the class is a plain BFS closure."""
    n = w.length()
    members = {w}
    queue = deque([w])
    terminal = True
    while queue:
        u = queue.popleft()
        for a in arrow_targets(u):
            if a.target.length() < n:
                terminal = False
            elif a.target not in members:
                members.add(a.target)
                queue.append(a.target)
    return CyclicShiftClass(w, frozenset(members), terminal)


def min_class_length(w: FiniteElement) -> int:
    return min(u.length() for u in w.system.class_of(w))


def check_min_length_reached(system: CoxeterSystem) -> VerificationReport:
    """reduce_to_min lands on a minimal length element of the class, for all w."""
    rep = VerificationReport("geck-pfeiffer-min", system.name)
    for w in system.elements():
        rep.checked += 1
        w_min, chain = reduce_to_min(w)
        ok = w_min.length() == min_class_length(w) and w_min in system.class_of(w)
        cur = w
        for a in chain:
            ok = ok and a.source == cur
            cur = a.target
        ok = ok and cur == w_min
        if not ok:
            rep.counterexamples.append(list(w.reduced_word()))
    return rep


def check_min_full_support_elliptic(system: CoxeterSystem) -> VerificationReport:
    """Full support and minimal length in the class imply elliptic."""
    rep = VerificationReport("min-full-support-elliptic", system.name)
    for w in system.elements():
        if not w.has_full_support() or w.length() != min_class_length(w):
            continue
        rep.checked += 1
        if not w.is_elliptic():
            rep.counterexamples.append(list(w.reduced_word()))
    return rep


def check_terminal_elliptic(system: CoxeterSystem) -> VerificationReport:
    """Full support and a terminal cyclic shift class imply elliptic."""
    rep = VerificationReport("terminal-elliptic", system.name)
    for w in system.elements():
        if not w.has_full_support() or not cyclic_shift_class(w).terminal:
            continue
        rep.checked += 1
        if not w.is_elliptic():
            rep.counterexamples.append(list(w.reduced_word()))
    return rep
