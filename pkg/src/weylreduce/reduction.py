"""Reduction certificates for non-emptiness of X_x(b).

Starting from an additive, full-support ``x = pi^(v(mu)) w`` with ``mu``
regular dominant, each step replaces ``x`` by ``sx``, ``xs`` or ``sxs`` for a
simple reflection ``s``, chosen so that non-emptiness of the new variety
implies (or is equivalent to) non-emptiness of the old one.  The chain stops
at an element with elliptic finite part, where non-emptiness is decided by
the Kottwitz point alone.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum

from weylreduce.affine import (
    AffineElement,
    GroupMode,
    KottwitzPoint,
    PreconditionError,
    affine_length,
    affine_length_oracle,
    group_mode,
    is_additive,
    is_regular,
    is_reuman_type,
    kottwitz_point,
)
from weylreduce.coxeter import is_elliptic_by_parabolics


class ReductionError(RuntimeError):
    pass


class InternalContradiction(ReductionError):
    """No admissible step exists for a non-elliptic type A element."""


class Case(Enum):
    CASE1 = "1"
    CASE2A = "2a"
    CASE2B = "2b"
    CASE3A = "3a"
    CASE3B = "3b"

    @property
    def equivalence(self) -> bool:
        """True for the steps where non-emptiness transfers both ways."""
        return self in (Case.CASE2A, Case.CASE3A)

    @property
    def implication(self) -> str:
        return "equivalence" if self.equivalence else "forward"

    @property
    def successor(self) -> str:
        return {
            Case.CASE1: "sx",
            Case.CASE2A: "sxs",
            Case.CASE2B: "sx",
            Case.CASE3A: "sxs",
            Case.CASE3B: "xs",
        }[self]


def successor(x: AffineElement, s: int, kind: str) -> AffineElement:
    if kind == "sx":
        return x.left_mul(s)
    if kind == "xs":
        return x.right_mul(s)
    return x.conjugate(s)


def length_pattern_holds(case: Case, lengths) -> bool:
    """The chain of inequalities on (l(x), l(sx), l(xs), l(sxs)) each case needs."""
    lx, lsx, lxs, lsxs = lengths
    if case is Case.CASE2A:
        return lxs > lx == lsxs > lsx
    if case is Case.CASE3A:
        return lsx > lx == lsxs > lxs
    return lx > lsx == lxs > lsxs


@dataclass(frozen=True)
class ReductionStep:
    before: AffineElement
    generator: int
    after: AffineElement
    case: Case
    lengths: tuple[int, int, int, int]

    def to_json(self) -> dict:
        return {
            "gen": self.generator,
            "case": self.case.value,
            "lengths": list(self.lengths),
            "after": self.after.to_json(),
        }


@dataclass(frozen=True)
class ReductionCertificate:
    start: AffineElement
    steps: tuple[ReductionStep, ...]
    terminal: AffineElement
    terminal_elliptic: bool
    finding: str | None = None

    @property
    def mode(self) -> GroupMode:
        return self.start.mode

    @property
    def kappa(self) -> KottwitzPoint:
        return kottwitz_point(self.start)

    def verdict(self, b_kappa: KottwitzPoint | int) -> bool:
        if not self.terminal_elliptic:
            raise ReductionError("certificate does not end at an elliptic element")
        return self.kappa == _as_kappa(self.mode, b_kappa)

    def to_json(self) -> dict:
        return {
            "group": self.mode.label,
            "lambda": list(self.start.translation),
            "word": list(self.start.finite.reduced_word()),
            "steps": [s.to_json() for s in self.steps],
            "terminal": self.terminal.to_json(),
            "elliptic": self.terminal_elliptic,
            "kappa": self.kappa.value,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> ReductionCertificate:
        """Rebuild a certificate; raises ValueError/KeyError/TypeError on bad input."""
        mode = parse_group_label(data["group"])
        start = AffineElement.make(mode, data["lambda"], data["word"])
        steps = []
        cur = start
        for raw in data["steps"]:
            after = AffineElement.from_json(mode, raw["after"])
            lengths = tuple(int(v) for v in raw["lengths"])
            if len(lengths) != 4:
                raise ValueError("a step needs four lengths")
            steps.append(ReductionStep(cur, int(raw["gen"]), after, Case(raw["case"]), lengths))
            cur = after
        terminal = AffineElement.from_json(mode, data["terminal"])
        return cls(start, tuple(steps), terminal, bool(data["elliptic"]))


def parse_group_label(label: str) -> GroupMode:
    m = re.fullmatch(r"(GL|SL)_?(\d+)", label.strip())
    if m:
        return group_mode(m.group(1), int(m.group(2)))
    return group_mode(label.strip())


def _as_kappa(mode: GroupMode, k: KottwitzPoint | int) -> KottwitzPoint:
    return k if isinstance(k, KottwitzPoint) else KottwitzPoint.of(mode, int(k))


# -- the engine -----------------------------------------------------------


def check_hypotheses(x: AffineElement, *, reuman: bool = True) -> None:
    if not is_regular(x.system, x.mu):
        raise PreconditionError(f"dominant part {list(x.mu)} is not regular")
    if not is_additive(x):
        raise PreconditionError(f"{x!r} is not additive")
    if reuman and not is_reuman_type(x):
        raise PreconditionError(f"{x!r} is not Reuman type")


def candidate_set(x: AffineElement) -> frozenset[int]:
    """Descents ``s`` of ``w`` with ``l(sws) <= l(w)`` and ``sws != w``."""
    check_hypotheses(x, reuman=False)
    w = x.finite
    n = w.length()
    out = set()
    for s in w.all_descents():
        c = w.conjugate(s)
        if c.length() <= n and c != w:
            out.add(s)
    return frozenset(out)


def classify_case(x: AffineElement, s: int) -> Case:
    """Pick the case from the finite data alone."""
    w = x.finite
    c = w.conjugate(s)
    if c.length() > w.length() or c == w:
        raise ValueError(f"s_{s} does not shorten or preserve {w!r} under conjugation")
    if c.length() < w.length():
        return Case.CASE1
    vinv = x.v.inverse()
    if s in w.left_descents():
        grows = (vinv * w.right_mul(s)).length() == (vinv * w).length() + 1
        return Case.CASE2A if grows else Case.CASE2B
    if s in w.right_descents():
        shrinks = vinv.right_mul(s).length() == vinv.length() - 1
        return Case.CASE3A if shrinks else Case.CASE3B
    raise ValueError(f"s_{s} is not a descent of {w!r}")


def apply_case(x: AffineElement, s: int) -> ReductionStep:
    case = classify_case(x, s)
    lengths = (
        affine_length(x),
        affine_length(x.left_mul(s)),
        affine_length(x.right_mul(s)),
        affine_length(x.conjugate(s)),
    )
    if not length_pattern_holds(case, lengths):
        raise AssertionError(f"case {case.value} at s_{s} for {x!r} has lengths {lengths}")
    after = successor(x, s, case.successor)
    if not is_additive(after):
        raise AssertionError(f"case {case.value} successor {after!r} is not additive")
    return ReductionStep(x, s, after, case, lengths)


def _best_exit(x: AffineElement) -> tuple[ReductionStep | None, list[ReductionStep]]:
    """The preferred shortening step at ``x`` and the equal-length steps."""
    shortening: list[ReductionStep] = []
    level: list[ReductionStep] = []
    for s in sorted(candidate_set(x)):
        step = apply_case(x, s)
        if step.case.equivalence:
            level.append(step)
        elif step.case is Case.CASE1 or is_reuman_type(step.after):
            shortening.append(step)
    # Case 1 first, then 2b/3b with a full-support successor; smallest s wins
    shortening.sort(key=lambda st: (st.case is not Case.CASE1, st.generator))
    return (shortening[0] if shortening else None), level


def _next_drop(x: AffineElement) -> list[ReductionStep] | None:
    """Breadth-first through equal-length steps until a shortening step appears."""
    parent: dict[AffineElement, ReductionStep | None] = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        drop, level = _best_exit(u)
        if drop is not None:
            path = [drop]
            node = u
            while parent[node] is not None:
                path.append(parent[node])
                node = parent[node].before
            return path[::-1]
        for step in level:
            if step.after not in parent:
                parent[step.after] = step
                queue.append(step.after)
    return None


def reduce(x: AffineElement) -> ReductionCertificate:
    """Build the certificate for ``x``; a pure function of ``x``."""
    check_hypotheses(x)
    steps: list[ReductionStep] = []
    cur = x
    while not cur.finite.is_elliptic():
        path = _next_drop(cur)
        if path is None:
            msg = f"no admissible step from non-elliptic {cur!r}"
            if x.system.type_tag == "A":
                raise InternalContradiction(msg)
            return ReductionCertificate(x, tuple(steps), cur, False, finding=msg)
        steps.extend(path)
        cur = path[-1].after
    return ReductionCertificate(x, tuple(steps), cur, True)


def nonemptiness(x: AffineElement, b_kappa: KottwitzPoint | int) -> tuple[bool, ReductionCertificate]:
    cert = reduce(x)
    if not cert.terminal_elliptic:
        raise ReductionError(cert.finding or "reduction did not reach an elliptic element")
    return cert.verdict(b_kappa), cert


# -- independent re-verification -------------------------------------------


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _expected_case(x: AffineElement, s: int, lengths) -> Case | None:
    w = x.finite
    c = w.conjugate(s)
    if s not in w.all_descents() or c == w or c.length() > w.length():
        return None
    if c.length() < w.length():
        return Case.CASE1
    lx, lsx, lxs, _ = lengths
    if s in w.left_descents():
        return Case.CASE2A if lxs > lx else Case.CASE2B
    return Case.CASE3A if lsx > lx else Case.CASE3B


def verify_certificate(cert: ReductionCertificate) -> CertificateCheck:
    """Recheck every step from scratch with the hyperplane-count length.

    ``failed_step`` is the index of the first bad step, ``len(steps)`` for a
    bad terminal, and -1 for a bad starting element.
    """
    start = cert.start
    if not is_regular(start.system, start.mu):
        return CertificateCheck(False, -1, "dominant part is not regular")
    if not is_additive(start):
        return CertificateCheck(False, -1, "start is not additive")
    if not is_reuman_type(start):
        return CertificateCheck(False, -1, "start is not Reuman type")
    kappa = kottwitz_point(start)
    cur = start
    for k, step in enumerate(cert.steps):
        s = step.generator
        if step.before != cur:
            return CertificateCheck(False, k, "step does not start where the previous ended")
        if s not in cur.system.generators:
            return CertificateCheck(False, k, f"no generator s_{s}")
        lengths = (
            affine_length_oracle(cur),
            affine_length_oracle(cur.left_mul(s)),
            affine_length_oracle(cur.right_mul(s)),
            affine_length_oracle(cur.conjugate(s)),
        )
        if tuple(step.lengths) != lengths:
            return CertificateCheck(False, k, f"lengths {list(step.lengths)} != recomputed {list(lengths)}")
        case = _expected_case(cur, s, lengths)
        if case is None:
            return CertificateCheck(False, k, f"s_{s} is not admissible")
        if case is not step.case:
            return CertificateCheck(False, k, f"case {step.case.value} should be {case.value}")
        if not length_pattern_holds(case, lengths):
            return CertificateCheck(False, k, f"lengths do not fit case {case.value}")
        if step.after != successor(cur, s, case.successor):
            return CertificateCheck(False, k, f"successor is not {case.successor}")
        after = step.after
        if not is_additive(after):
            return CertificateCheck(False, k, "successor is not additive")
        if not is_reuman_type(after):
            return CertificateCheck(False, k, "successor is not Reuman type")
        if after.finite.length() > cur.finite.length():
            return CertificateCheck(False, k, "finite part got longer")
        if kottwitz_point(after) != kappa:
            return CertificateCheck(False, k, "Kottwitz point changed")
        cur = after
    n = len(cert.steps)
    if cert.terminal != cur:
        return CertificateCheck(False, n, "terminal is not the last successor")
    elliptic = is_elliptic_by_parabolics(cur.finite)
    if cert.terminal_elliptic != elliptic:
        return CertificateCheck(False, n, "elliptic flag is wrong")
    if not elliptic:
        return CertificateCheck(False, n, "terminal is not elliptic")
    return CertificateCheck(True)
