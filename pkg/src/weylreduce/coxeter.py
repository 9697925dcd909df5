"""Finite Weyl groups of type A_n, C_2 and G_2.

Type A elements are stored as permutations of ``1..n+1`` in one-line
notation, with ``s_i`` the transposition ``(i, i+1)``.  Elements of C_2 and
G_2 are stored as their ShortLex-minimal reduced word; the whole group is
tabulated once from its integer action on the cocharacter lattice.

Generators are numbered from 1, as in ``s_1, ..., s_n``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

LEFT = "left"
RIGHT = "right"


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


def _matvec(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(_dot(row, v) for row in m)


def _identity_matrix(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


class CoxeterSystem:
    """A finite Weyl group together with its root datum.

    Roots are integer vectors in the character lattice and coroots integer
    vectors in the cocharacter lattice; the pairing between the two is the
    ordinary dot product.  ``positive_coroots[k]`` is the coroot of
    ``positive_roots[k]``.
    """

    def __init__(
        self,
        type_tag: str,
        rank: int,
        coxeter_matrix: Sequence[Sequence[int]],
        positive_roots: Sequence[Vector],
        positive_coroots: Sequence[Vector],
        simple_indices: Sequence[int],
    ):
        self.type_tag = type_tag
        self.rank = rank
        self.coxeter_matrix = tuple(tuple(row) for row in coxeter_matrix)
        self.positive_roots = tuple(tuple(r) for r in positive_roots)
        self.positive_coroots = tuple(tuple(c) for c in positive_coroots)
        self.simple_roots = tuple(self.positive_roots[k] for k in simple_indices)
        self.simple_coroots = tuple(self.positive_coroots[k] for k in simple_indices)
        self.dim = len(self.positive_roots[0])
        self.rho_vector = tuple(sum(col) for col in zip(*self.positive_roots))
        self._check()

    def _check(self) -> None:
        m = self.coxeter_matrix
        n = self.rank
        assert len(m) == n and all(len(row) == n for row in m)
        for i in range(n):
            assert m[i][i] == 1
            for j in range(n):
                assert m[i][j] == m[j][i]
                if i != j:
                    assert m[i][j] in (2, 3, 4, 6)
        for a, c in zip(self.positive_roots, self.positive_coroots):
            assert _dot(a, c) == 2
        assert len(self.simple_roots) == n

    @property
    def name(self) -> str:
        return f"{self.type_tag}{self.rank}"

    @property
    def generators(self) -> range:
        return range(1, self.rank + 1)

    @property
    def full_support(self) -> frozenset[int]:
        return frozenset(self.generators)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoxeterSystem):
            return NotImplemented
        return (self.type_tag, self.rank) == (other.type_tag, other.rank)

    def __hash__(self) -> int:
        return hash((self.type_tag, self.rank))

    def __reduce__(self):
        return (coxeter_system, (self.name,))

    # -- linear algebra on the cocharacter lattice ------------------------

    def pairing(self, root: Sequence[int], coweight: Sequence[int]) -> int:
        return _dot(root, coweight)

    def simple_matrix(self, i: int) -> Matrix:
        """Matrix of ``s_i`` acting on cocharacters: lam - <a_i, lam> a_i^v."""
        a = self.simple_roots[i - 1]
        c = self.simple_coroots[i - 1]
        d = self.dim
        return tuple(
            tuple(int(r == k) - c[r] * a[k] for k in range(d)) for r in range(d)
        )

    def commute(self, i: int, j: int) -> bool:
        return self.coxeter_matrix[i - 1][j - 1] <= 2

    # -- element tables -----------------------------------------------------

    @cached_property
    def _word_table(self) -> dict[Matrix, Vector]:
        """ShortLex-minimal reduced word of every element, keyed by matrix.

        Breadth-first by length; candidates at each level are compared in
        lexicographic order, which is enough because ShortLex-minimal words
        are prefix closed.
        """
        ident = _identity_matrix(self.dim)
        table: dict[Matrix, Vector] = {ident: ()}
        frontier = [ident]
        gens = [self.simple_matrix(i) for i in self.generators]
        while frontier:
            best: dict[Matrix, Vector] = {}
            for m in frontier:
                word = table[m]
                for i, g in enumerate(gens, start=1):
                    nxt = _matmul(m, g)
                    if nxt in table:
                        continue
                    cand = word + (i,)
                    if nxt not in best or cand < best[nxt]:
                        best[nxt] = cand
            table.update(best)
            frontier = sorted(best, key=best.get)
        return table

    @cached_property
    def _matrix_of_word(self) -> dict[Vector, Matrix]:
        return {w: m for m, w in self._word_table.items()}

    def _matrix_for_word(self, word: Iterable[int]) -> Matrix:
        m = _identity_matrix(self.dim)
        for i in word:
            m = _matmul(m, self.simple_matrix(i))
        return m

    @cached_property
    def order(self) -> int:
        if self.type_tag == "A":
            return math.factorial(self.rank + 1)
        return len(self._word_table)

    # -- element constructors -------------------------------------------

    def identity(self) -> FiniteElement:
        if self.type_tag == "A":
            return FiniteElement(self, tuple(range(1, self.rank + 2)))
        return FiniteElement(self, ())

    def s(self, i: int) -> FiniteElement:
        if i not in self.generators:
            raise ValueError(f"no generator s_{i} in {self.name}")
        return self.from_word((i,))

    def from_word(self, word: Iterable[int]) -> FiniteElement:
        word = tuple(word)
        for i in word:
            if i not in self.generators:
                raise ValueError(f"no generator s_{i} in {self.name}")
        if self.type_tag == "A":
            perm = list(range(1, self.rank + 2))
            for i in word:
                perm[i - 1], perm[i] = perm[i], perm[i - 1]
            return FiniteElement(self, tuple(perm))
        return FiniteElement(self, self._word_table[self._matrix_for_word(word)])

    def from_permutation(self, perm: Sequence[int]) -> FiniteElement:
        if self.type_tag != "A":
            raise ValueError(f"{self.name} elements are not permutations")
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(1, self.rank + 2)):
            raise ValueError(f"{list(perm)} is not a permutation of 1..{self.rank + 1}")
        return FiniteElement(self, perm)

    def elements(self) -> list[FiniteElement]:
        """All elements, ordered by length and then by representation."""
        if self.type_tag == "A":
            elts = [
                FiniteElement(self, p)
                for p in itertools.permutations(range(1, self.rank + 2))
            ]
        else:
            elts = [FiniteElement(self, w) for w in self._word_table.values()]
        return sorted(elts, key=lambda w: (w.length(), w.rep))

    def longest_element(self) -> FiniteElement:
        return max(self.elements(), key=FiniteElement.length)

    def coxeter_elements(self) -> list[FiniteElement]:
        """Products of all simple reflections, one of each, in every order."""
        seen = {self.from_word(p) for p in itertools.permutations(self.generators)}
        return sorted(seen, key=lambda w: w.rep)

    @cached_property
    def conjugacy_classes(self) -> list[frozenset[FiniteElement]]:
        remaining = set(self.elements())
        classes = []
        for w in self.elements():
            if w in remaining:
                cls = conjugacy_class(w)
                remaining -= cls
                classes.append(cls)
        return classes

    @cached_property
    def _class_index(self) -> dict[FiniteElement, int]:
        return {w: k for k, cls in enumerate(self.conjugacy_classes) for w in cls}

    def class_of(self, w: FiniteElement) -> frozenset[FiniteElement]:
        return self.conjugacy_classes[self._class_index[w]]


class FiniteElement:
    """An element of a finite Weyl group; immutable and hashable."""

    __slots__ = ("system", "rep")

    def __init__(self, system: CoxeterSystem, rep: Vector):
        self.system = system
        self.rep = rep

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteElement):
            return NotImplemented
        return self.rep == other.rep and self.system == other.system

    def __hash__(self) -> int:
        return hash(self.rep)

    def __repr__(self) -> str:
        word = self.reduced_word()
        if not word:
            return "e"
        if self.system.rank < 10:
            return "s_" + "".join(map(str, word))
        return "s_" + ".".join(map(str, word))

    def __reduce__(self):
        return (FiniteElement, (self.system, self.rep))

    # -- group operations -----------------------------------------------

    def _same_system(self, other: FiniteElement) -> None:
        if self.system != other.system:
            raise ValueError(
                f"elements of {self.system.name} and {other.system.name} do not multiply"
            )

    def __mul__(self, other: FiniteElement) -> FiniteElement:
        if not isinstance(other, FiniteElement):
            return NotImplemented
        self._same_system(other)
        if self.system.type_tag == "A":
            a = self.rep
            return FiniteElement(self.system, tuple(a[j - 1] for j in other.rep))
        table = self.system._word_table
        m = _matmul(self.matrix, other.matrix)
        return FiniteElement(self.system, table[m])

    def inverse(self) -> FiniteElement:
        if self.system.type_tag == "A":
            inv = [0] * len(self.rep)
            for pos, val in enumerate(self.rep, start=1):
                inv[val - 1] = pos
            return FiniteElement(self.system, tuple(inv))
        return self.system.from_word(reversed(self.rep))

    def left_mul(self, i: int) -> FiniteElement:
        """``s_i * self``."""
        if self.system.type_tag == "A":
            return FiniteElement(
                self.system, tuple(i + 1 if p == i else i if p == i + 1 else p for p in self.rep)
            )
        return self.system.s(i) * self

    def right_mul(self, i: int) -> FiniteElement:
        """``self * s_i``."""
        if self.system.type_tag == "A":
            p = list(self.rep)
            p[i - 1], p[i] = p[i], p[i - 1]
            return FiniteElement(self.system, tuple(p))
        return self * self.system.s(i)

    def conjugate(self, i: int) -> FiniteElement:
        """``s_i * self * s_i``."""
        return self.left_mul(i).right_mul(i)

    def is_identity(self) -> bool:
        return self == self.system.identity()

    @property
    def permutation(self) -> Vector:
        if self.system.type_tag != "A":
            raise ValueError(f"{self.system.name} elements are not permutations")
        return self.rep

    @property
    def matrix(self) -> Matrix:
        """Action on the cocharacter lattice."""
        sys_ = self.system
        if sys_.type_tag == "A":
            d = len(self.rep)
            # e_j -> e_{w(j)}
            return tuple(
                tuple(int(self.rep[j] == r + 1) for j in range(d)) for r in range(d)
            )
        return sys_._matrix_of_word[self.rep]

    # -- combinatorics ---------------------------------------------------

    def length(self) -> int:
        if self.system.type_tag == "A":
            p = self.rep
            return sum(1 for a, b in itertools.combinations(p, 2) if a > b)
        return len(self.rep)

    def descents(self, side: str = RIGHT) -> frozenset[int]:
        if side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        if self.system.type_tag == "A":
            p = self.rep if side == RIGHT else self.inverse().rep
            return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])
        n = self.length()
        mul = self.left_mul if side == LEFT else self.right_mul
        return frozenset(i for i in self.system.generators if mul(i).length() < n)

    def left_descents(self) -> frozenset[int]:
        return self.descents(LEFT)

    def right_descents(self) -> frozenset[int]:
        return self.descents(RIGHT)

    def all_descents(self) -> frozenset[int]:
        return self.descents(LEFT) | self.descents(RIGHT)

    def reduced_word(self) -> Vector:
        """The ShortLex-minimal reduced word."""
        if self.system.type_tag != "A":
            return self.rep
        word = []
        w = self
        while True:
            d = w.descents(LEFT)
            if not d:
                return tuple(word)
            i = min(d)
            word.append(i)
            w = w.left_mul(i)

    def support(self) -> frozenset[int]:
        if self.system.type_tag == "A":
            # s_i is needed iff w does not preserve {1..i}
            out = set()
            hi = 0
            for i, v in enumerate(self.rep[:-1], start=1):
                hi = max(hi, v)
                if hi != i:
                    out.add(i)
            return frozenset(out)
        return frozenset(self.rep)

    def has_full_support(self) -> bool:
        return self.support() == self.system.full_support

    def is_coxeter(self) -> bool:
        return self.length() == self.system.rank and self.has_full_support()

    def cycle_type(self) -> tuple[int, ...]:
        p = self.permutation
        seen = set()
        sizes = []
        for start in range(1, len(p) + 1):
            if start in seen:
                continue
            k, size = start, 0
            while k not in seen:
                seen.add(k)
                k = p[k - 1]
                size += 1
            sizes.append(size)
        return tuple(sorted(sizes, reverse=True))

    def is_elliptic(self) -> bool:
        if self.system.type_tag == "A":
            return is_elliptic_by_cycle_type(self)
        return is_elliptic_by_parabolics(self)

    # -- actions on the lattices ------------------------------------------

    def act(self, coweight: Sequence[int]) -> Vector:
        """Image of a cocharacter under this element."""
        if self.system.type_tag == "A":
            out = [0] * len(self.rep)
            for i, v in enumerate(self.rep):
                out[v - 1] = coweight[i]
            return tuple(out)
        return _matvec(self.matrix, coweight)

    def act_on_root(self, root: Sequence[int]) -> Vector:
        """Image of a character: ``(w.b)(lam) = b(w^-1 lam)``."""
        if self.system.type_tag == "A":
            # permutation matrices are orthogonal, so characters move like cocharacters
            return self.act(root)
        m = self.inverse().matrix
        return tuple(_dot(col, root) for col in zip(*m))


def is_elliptic_by_cycle_type(w: FiniteElement) -> bool:
    return w.cycle_type() == (w.system.rank + 1,)


def is_elliptic_by_parabolics(w: FiniteElement) -> bool:
    """True iff ``u^-1 w u`` has full support for every ``u``.

    ``w`` lies in ``u W_T u^-1`` exactly when ``u^-1 w u`` lies in ``W_T``,
    i.e. has support inside ``T``; the loop exhausts the group.
    """
    full = w.system.full_support
    return all((u.inverse() * w * u).support() == full for u in w.system.elements())


def conjugacy_class(w: FiniteElement) -> frozenset[FiniteElement]:
    """Orbit of ``w`` under conjugation by the simple reflections."""
    seen = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        for i in w.system.generators:
            c = u.conjugate(i)
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return frozenset(seen)


def multiply(a: FiniteElement, b: FiniteElement) -> FiniteElement:
    return a * b


def length(w: FiniteElement) -> int:
    return w.length()


def descents(w: FiniteElement, side: str = RIGHT) -> frozenset[int]:
    return w.descents(side)


def support(w: FiniteElement) -> frozenset[int]:
    return w.support()


def reduced_word(w: FiniteElement) -> Vector:
    return w.reduced_word()


def is_coxeter(w: FiniteElement) -> bool:
    return w.is_coxeter()


def is_elliptic(w: FiniteElement) -> bool:
    return w.is_elliptic()


def all_reduced_words(w: FiniteElement) -> Iterator[Vector]:
    """Every reduced word of ``w`` (exponential; for small groups only)."""
    if w.is_identity():
        yield ()
        return
    for i in sorted(w.descents(LEFT)):
        for rest in all_reduced_words(w.left_mul(i)):
            yield (i,) + rest


# -- the supported systems -------------------------------------------------


@lru_cache(maxsize=None)
def type_a(n: int) -> CoxeterSystem:
    """Type A_n: the symmetric group S_{n+1} acting on Z^{n+1}."""
    if n < 1:
        raise ValueError("type A_n needs n >= 1")
    d = n + 1
    roots = []
    simple = []
    for i in range(d):
        for j in range(i + 1, d):
            r = [0] * d
            r[i], r[j] = 1, -1
            if j == i + 1:
                simple.append(len(roots))
            roots.append(tuple(r))
    m = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
    return CoxeterSystem("A", n, m, roots, roots, simple)


@lru_cache(maxsize=None)
def type_c2() -> CoxeterSystem:
    """Adjoint C_2 (PSp_4 = SO_5) on X_* = Z^2.

    Roots +-e1+-e2, +-e_i; s_1 = reflection in e1-e2, s_2 in e2, so that
    (s_1 s_2)^4 = 1.  The coroot lattice {a+b even} has index 2.
    """
    roots = [(1, -1), (0, 1), (1, 0), (1, 1)]
    coroots = [(1, -1), (0, 2), (2, 0), (1, 1)]
    return CoxeterSystem("C", 2, [[1, 4], [4, 1]], roots, coroots, [0, 1])


@lru_cache(maxsize=None)
def type_g2() -> CoxeterSystem:
    """G_2 in the fundamental coweight basis; s_1 short, (s_1 s_2)^6 = 1.

    Roots are written in simple-root coordinates, which is the dual basis.
    """
    roots = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    coroots = [(2, -3), (-1, 2), (-1, 3), (1, 0), (1, -1), (0, 1)]
    return CoxeterSystem("G", 2, [[1, 6], [6, 1]], roots, coroots, [0, 1])


def coxeter_system(name: str) -> CoxeterSystem:
    """Look up a system by name: ``"A4"``, ``"C2"``, ``"G2"``."""
    name = name.strip().upper().replace("_", "")
    if name == "C2" or name == "B2":
        return type_c2()
    if name == "G2":
        return type_g2()
    m = re.fullmatch(r"A(\d+)", name)
    if m:
        return type_a(int(m.group(1)))
    raise ValueError(f"unsupported Coxeter type {name!r}")


# -- element grammar --------------------------------------------------------


def parse_element(system: CoxeterSystem, text: str) -> FiniteElement:
    """Parse ``"4 3 2 1 2 3 4"``, ``"4321234"``, ``"[5,2,3,4,1]"`` or ``"e"``.

    A ``w[...]`` wrapper is accepted around any of the word forms.
    """
    t = text.strip()
    m = re.fullmatch(r"w\[(.*)\]", t)
    if m:
        t = m.group(1).strip()
    if t in ("", "e"):
        return system.identity()
    if t.startswith("["):
        if not t.endswith("]"):
            raise ValueError(f"unterminated permutation {text!r}")
        body = t[1:-1].strip()
        try:
            perm = [int(p) for p in body.split(",")] if body else []
        except ValueError:
            raise ValueError(f"bad permutation {text!r}") from None
        return system.from_permutation(perm)
    if re.fullmatch(r"\d+", t):
        if system.rank >= 10:
            raise ValueError("compact words are ambiguous above rank 9; separate letters")
        word = [int(c) for c in t]
    else:
        parts = re.split(r"[\s,]+", t)
        if not all(re.fullmatch(r"\d+", p) for p in parts):
            raise ValueError(f"cannot parse element {text!r}")
        word = [int(p) for p in parts]
    return system.from_word(word)
