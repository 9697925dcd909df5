"""Extended affine Weyl group elements ``pi^lam w`` and their lengths.

An element is stored as the raw pair (translation ``lam``, finite part
``w``); the product rule is ``(pi^a u)(pi^b w) = pi^(a + u(b)) uw``.  The
view ``lam = v(mu)`` with ``mu`` dominant is derived on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from weylreduce.coxeter import (
    CoxeterSystem,
    FiniteElement,
    Vector,
    parse_element,
    type_a,
    type_c2,
    type_g2,
)

Cocharacter = Vector

GROUP_MODES = ("GL", "SL", "C2", "G2")


class PreconditionError(ValueError):
    """An input lies outside the setting an operation is defined for."""


@dataclass(frozen=True)
class GroupMode:
    """Which reductive group the cocharacters belong to.

    ``n`` is the matrix size for GL_n/SL_n and 2 otherwise.  The mode only
    matters for the lattice constraint and for Lambda_G.
    """

    name: str
    n: int

    def __post_init__(self):
        if self.name not in GROUP_MODES:
            raise ValueError(f"unknown group mode {self.name!r}")
        if self.name in ("GL", "SL") and self.n < 2:
            raise ValueError(f"{self.name}_n needs n >= 2")

    @property
    def system(self) -> CoxeterSystem:
        if self.name in ("GL", "SL"):
            return type_a(self.n - 1)
        return type_c2() if self.name == "C2" else type_g2()

    @property
    def label(self) -> str:
        return f"{self.name}_{self.n}" if self.name in ("GL", "SL") else self.name

    @property
    def kottwitz_modulus(self) -> int | None:
        """0 for Z, 1 for the trivial group, c for Z/c."""
        return {"GL": 0, "SL": 1, "C2": 2, "G2": 1}[self.name]

    def check_cocharacter(self, lam: Sequence[int]) -> Cocharacter:
        lam = tuple(int(c) for c in lam)
        if len(lam) != self.system.dim:
            raise PreconditionError(
                f"{self.label} cocharacters have {self.system.dim} coordinates, got {len(lam)}"
            )
        if self.name == "SL" and sum(lam) != 0:
            raise PreconditionError(f"SL cocharacter {list(lam)} does not sum to 0")
        return lam

    def kottwitz(self, lam: Sequence[int]) -> int:
        """Class of ``lam`` in X_* / (coroot lattice)."""
        if self.name == "GL":
            return sum(lam)
        if self.name == "C2":
            return sum(lam) % 2
        return 0


def group_mode(name: str, n: int | None = None) -> GroupMode:
    name = name.upper().replace("_", "")
    if name in ("C2", "G2"):
        return GroupMode(name, 2)
    if n is None:
        raise ValueError(f"{name} needs a rank")
    return GroupMode(name, n)


@dataclass(frozen=True)
class KottwitzPoint:
    """A point of Lambda_G: an integer, reduced mod ``modulus`` when > 0."""

    value: int
    modulus: int

    @classmethod
    def of(cls, mode: GroupMode, value: int) -> KottwitzPoint:
        m = mode.kottwitz_modulus
        return cls(value % m if m else value, m)

    def __add__(self, other: KottwitzPoint) -> KottwitzPoint:
        if self.modulus != other.modulus:
            raise ValueError("Kottwitz points of different groups")
        v = self.value + other.value
        return KottwitzPoint(v % self.modulus if self.modulus else v, self.modulus)


# -- cocharacters -------------------------------------------------------


def pairings(system: CoxeterSystem, lam: Sequence[int]) -> list[int]:
    return [system.pairing(a, lam) for a in system.positive_roots]


def is_dominant(system: CoxeterSystem, lam: Sequence[int]) -> bool:
    return all(p >= 0 for p in pairings(system, lam))


def is_regular(system: CoxeterSystem, lam: Sequence[int]) -> bool:
    """Regular dominant: strictly positive on every positive root."""
    return all(p > 0 for p in pairings(system, lam))


def decompose(system: CoxeterSystem, lam: Sequence[int]) -> tuple[FiniteElement, Cocharacter]:
    """Return ``(v, mu)`` with ``mu`` dominant and ``v(mu) = lam``, ``v`` minimal.

    Reflect in a simple wall with negative pairing until dominant; each
    reflection lengthens the accumulated element by one, which is what makes
    the resulting ``v`` the shortest choice.
    """
    mu = tuple(lam)
    u = system.identity()
    while True:
        bad = [
            i for i in system.generators
            if system.pairing(system.simple_roots[i - 1], mu) < 0
        ]
        if not bad:
            return u.inverse(), mu
        i = bad[0]
        mu = system.s(i).act(mu)
        u = u.left_mul(i)


def translation_length(system: CoxeterSystem, mu: Sequence[int]) -> int:
    """``l(pi^mu) = <2 rho, mu>`` for dominant ``mu``."""
    if not is_dominant(system, mu):
        raise PreconditionError(f"{list(mu)} is not dominant")
    return sum(pairings(system, mu))


# -- affine elements -------------------------------------------------------


@dataclass(frozen=True)
class AffineElement:
    """``pi^translation * finite`` in the extended affine Weyl group."""

    mode: GroupMode
    translation: Cocharacter
    finite: FiniteElement

    def __post_init__(self):
        object.__setattr__(self, "translation", tuple(int(c) for c in self.translation))
        if self.finite.system != self.mode.system:
            raise ValueError("finite part belongs to a different Weyl group")

    @classmethod
    def make(cls, mode: GroupMode, lam: Sequence[int], w: FiniteElement | Sequence[int]) -> AffineElement:
        """Build from a cocharacter and a finite element or reduced word."""
        if not isinstance(w, FiniteElement):
            w = mode.system.from_word(w)
        return cls(mode, mode.check_cocharacter(lam), w)

    @classmethod
    def from_parts(cls, mode: GroupMode, v: FiniteElement, mu: Sequence[int], w: FiniteElement) -> AffineElement:
        """``pi^(v(mu)) w``."""
        return cls(mode, mode.check_cocharacter(v.act(mu)), w)

    @property
    def system(self) -> CoxeterSystem:
        return self.mode.system

    @cached_property
    def _decomposition(self) -> tuple[FiniteElement, Cocharacter]:
        return decompose(self.system, self.translation)

    @property
    def v(self) -> FiniteElement:
        return self._decomposition[0]

    @property
    def mu(self) -> Cocharacter:
        return self._decomposition[1]

    @property
    def w(self) -> FiniteElement:
        return self.finite

    def __mul__(self, other: AffineElement) -> AffineElement:
        if not isinstance(other, AffineElement):
            return NotImplemented
        if self.mode != other.mode:
            raise ValueError("elements of different groups")
        moved = self.finite.act(other.translation)
        lam = tuple(a + b for a, b in zip(self.translation, moved))
        return AffineElement(self.mode, lam, self.finite * other.finite)

    def left_mul(self, i: int) -> AffineElement:
        """``s_i * x = pi^(s_i lam) s_i w``."""
        s = self.system.s(i)
        return AffineElement(self.mode, s.act(self.translation), self.finite.left_mul(i))

    def right_mul(self, i: int) -> AffineElement:
        """``x * s_i = pi^lam w s_i``."""
        return AffineElement(self.mode, self.translation, self.finite.right_mul(i))

    def conjugate(self, i: int) -> AffineElement:
        return self.left_mul(i).right_mul(i)

    def __repr__(self) -> str:
        return f"pi^{list(self.translation)} {self.finite!r}"

    def to_json(self) -> dict:
        return {"lambda": list(self.translation), "word": list(self.finite.reduced_word())}

    @classmethod
    def from_json(cls, mode: GroupMode, data: dict) -> AffineElement:
        return cls.make(mode, data["lambda"], data["word"])


def affine_length(x: AffineElement) -> int:
    """``l(x) = l(pi^mu) + l(v^-1 w) - l(v^-1)`` for ``x = pi^(v(mu)) w``.

    Only valid for regular ``mu``.
    """
    v, mu = x.v, x.mu
    if not is_regular(x.system, mu):
        raise PreconditionError(f"dominant part {list(mu)} is not regular")
    vinv = v.inverse()
    return translation_length(x.system, mu) + (vinv * x.finite).length() - vinv.length()


def affine_length_oracle(x: AffineElement) -> int:
    """Hyperplane count for arbitrary ``lam``.

    Sum over positive roots ``a`` of ``|<a, lam>|`` when ``w^-1 a > 0`` and
    ``|<a, lam> + 1|`` when ``w^-1 a < 0``.  The +1 (rather than -1) is the
    variant matching the regular dominant closed formula.
    """
    system = x.system
    winv = x.finite.inverse()
    positive = set(system.positive_roots)
    total = 0
    for a in system.positive_roots:
        p = system.pairing(a, x.translation)
        flipped = winv.act_on_root(a) not in positive
        total += abs(p + 1) if flipped else abs(p)
    return total


def is_additive(x: AffineElement) -> bool:
    vinv = x.v.inverse()
    return (vinv * x.finite).length() == vinv.length() + x.finite.length()


def is_reuman_type(x: AffineElement) -> bool:
    return x.finite.has_full_support()


def eta1(x: AffineElement) -> FiniteElement:
    return x.finite


def eta2(x: AffineElement) -> FiniteElement:
    """The Weyl chamber containing the alcove of ``x``; needs regular ``lam``."""
    if not is_regular(x.system, x.mu):
        raise PreconditionError(f"{list(x.translation)} lies on a wall")
    return x.v


def reuman_criterion(x: AffineElement) -> bool:
    """Whether ``eta2^-1 eta1 eta2`` has full support."""
    c = eta2(x)
    return (c.inverse() * eta1(x) * c).has_full_support()


def kottwitz_point(x: AffineElement) -> KottwitzPoint:
    return KottwitzPoint.of(x.mode, x.mode.kottwitz(x.translation))


def parse_cocharacter(text: str) -> Cocharacter:
    """``"2,1,0,-1,-2"`` (brackets optional)."""
    t = text.strip().strip("[]()")
    try:
        return tuple(int(p) for p in re.split(r"[\s,]+", t.strip()) if p)
    except ValueError:
        raise ValueError(f"cannot parse cocharacter {text!r}") from None


def parse_affine(mode: GroupMode, text: str) -> AffineElement:
    """``"t[2,1,0,-1,-2] * w[4321234]"``; either factor may be omitted."""
    lam: Cocharacter | None = None
    w = mode.system.identity()
    for factor in text.split("*"):
        f = factor.strip()
        m = re.fullmatch(r"t\[(.*)\]", f)
        if m:
            lam = parse_cocharacter(m.group(1))
        elif f.startswith("w["):
            w = parse_element(mode.system, f)
        else:
            raise ValueError(f"cannot parse factor {f!r} of {text!r}")
    if lam is None:
        lam = (0,) * mode.system.dim
    return AffineElement.make(mode, lam, w)
