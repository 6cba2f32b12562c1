"""Integer lattices attached to central subgroups of a split torus.

A central subgroup ``C`` of ``G_m^r`` is described by one-parameter
subgroups (its connected part) and by torsion points
``(zeta_m^{e_1}, ..., zeta_m^{e_r})``.  Its character lattice is the set of
integer vectors ``k`` with ``<k, lam> = 0`` for every one-parameter
subgroup ``lam`` and ``sum_i k_i e_i = 0 (mod m)`` for every torsion point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from .errors import EnumerationCapExceeded, UsageError

DEFAULT_ENUMERATION_CAP = 1_000_000

Vector = tuple[int, ...]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(diag, U, V)`` with ``U * A * V`` diagonal, ``diag`` its
    ``min(rows, cols)`` diagonal entries (nonnegative, each dividing the
    next), and ``U``, ``V`` unimodular.

    >>> smith_normal_form([[2, 0], [0, 3]])[0]
    [1, 6]
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise UsageError("ragged matrix")
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return [a[i][i] for i in range(min(m, n))], u, v
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return [a[i][i] for i in range(min(m, n))], u, v


def hermite_rows(rows: Iterable[Sequence[int]]) -> list[Vector]:
    """Canonical row basis (Hermite normal form) of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, and
    zero rows are dropped.
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    n = len(a[0])
    out: list[list[int]] = []
    col = 0
    while a and col < n:
        live = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            head = live[0]
            nxt = [head]
            for r in live[1:]:
                q = r[col] // head[col]
                r = [x - q * y for x, y in zip(r, head)]
                (nxt if r[col] else rest).append(r)
            live = nxt
        if live:
            head = live[0]
            if head[col] < 0:
                head = [-x for x in head]
            for prev in out:
                q = prev[col] // head[col]
                prev[:] = [x - q * y for x, y in zip(prev, head)]
            out.append(head)
        a = [r for r in rest if any(r)]
        col += 1
    return [tuple(r) for r in out]


def lattice_index(rows: Sequence[Sequence[int]], rank: int) -> int:
    """Index of a full-rank sublattice of ``Z^rank``; 0 if it is not full rank."""
    if not rows:
        return 1 if rank == 0 else 0
    diag, _, _ = smith_normal_form(rows)
    if len([d for d in diag if d]) < rank:
        return 0
    return prod(diag)


@dataclass(frozen=True)
class CentralSubgroupSpec:
    """Generators of a subgroup ``C`` of the torus ``G_m^rank``.

    ``torsion_generators`` holds ``(m, e)`` pairs standing for the point
    ``(zeta_m^{e_1}, ..., zeta_m^{e_r})``; exponents are reduced mod ``m``.
    """

    rank: int
    cocharacter_generators: tuple[Vector, ...] = ()
    torsion_generators: tuple[tuple[int, Vector], ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise UsageError(f"rank must be positive, got {self.rank}")
        cochars = tuple(tuple(int(x) for x in g) for g in self.cocharacter_generators)
        torsion = []
        for m, e in self.torsion_generators:
            m = int(m)
            if m < 2:
                raise UsageError(f"torsion modulus must be at least 2, got {m}")
            torsion.append((m, tuple(int(x) % m for x in e)))
        for g in cochars + tuple(e for _, e in torsion):
            if len(g) != self.rank:
                raise UsageError(f"vector {g} has length {len(g)}, expected {self.rank}")
        object.__setattr__(self, "cocharacter_generators", cochars)
        object.__setattr__(self, "torsion_generators", tuple(torsion))

    @classmethod
    def diagonal(cls, rank: int) -> "CentralSubgroupSpec":
        """The diagonally embedded ``G_m``."""
        return cls(rank, cocharacter_generators=((1,) * rank,))

    @classmethod
    def mu(cls, d: int) -> "CentralSubgroupSpec":
        """``mu_d`` inside ``G_m``."""
        return cls(1, torsion_generators=((d, (1,)),) if d > 1 else ())

    def constraint_violations(self, k: Sequence[int]) -> list[int]:
        """Residues of ``k`` against each defining constraint (all zero iff ``k`` is in M_C)."""
        out = [sum(x * y for x, y in zip(k, g)) for g in self.cocharacter_generators]
        out += [sum(x * y for x, y in zip(k, e)) % m for m, e in self.torsion_generators]
        return out


@dataclass(frozen=True)
class CharacterLattice:
    rank: int
    basis: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def character_lattice_of(spec: CentralSubgroupSpec) -> CharacterLattice:
    """Basis of the characters of ``G_m^r`` that vanish on ``C``.

    Each torsion generator ``(m, e)`` contributes an auxiliary unknown ``t``
    and the equation ``sum_i e_i k_i - m t = 0``, so the whole problem is a
    single integer kernel computation.
    """
    r = spec.rank
    aux = len(spec.torsion_generators)
    rows = [list(g) + [0] * aux for g in spec.cocharacter_generators]
    for idx, (m, e) in enumerate(spec.torsion_generators):
        tail = [0] * aux
        tail[idx] = -m
        rows.append(list(e) + tail)
    width = r + aux
    if not rows:
        kernel = _identity(width)
    else:
        diag, _, v = smith_normal_form(rows)
        rank = len([d for d in diag if d])
        kernel = [[v[i][j] for i in range(width)] for j in range(rank, width)]
    # t is determined by k, so projecting away the auxiliary unknowns is injective
    basis = hermite_rows(vec[:r] for vec in kernel)
    return CharacterLattice(r, tuple(basis))


@dataclass(frozen=True)
class ResidueGroup:
    """Image of a character lattice in ``prod_s Z/n_s``, in enumeration order."""

    moduli: Vector
    elements: tuple[Vector, ...]
    generators: tuple[Vector, ...]
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, k) -> bool:
        return tuple(k) in self._members


def residue_group_order(generators: Sequence[Sequence[int]], moduli: Sequence[int]) -> int:
    """Order of the subgroup of ``prod Z/n_s`` generated by ``generators``."""
    r = len(moduli)
    stacked = [list(g) for g in generators]
    stacked += [[n if i == s else 0 for i in range(r)] for s, n in enumerate(moduli)]
    return prod(moduli) // lattice_index(stacked, r)


def residue_image(
    lattice: CharacterLattice,
    moduli: Sequence[int],
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> ResidueGroup:
    """Enumerate the image of ``lattice`` in ``prod_s Z/n_s``.

    Elements are produced breadth-first from zero by adding generators; each
    layer is sorted lexicographically.  Raises ``EnumerationCapExceeded``
    before enumerating if the group is larger than ``cap``.
    """
    moduli = tuple(int(n) for n in moduli)
    if len(moduli) != lattice.rank:
        raise UsageError(f"{len(moduli)} moduli given for a rank {lattice.rank} lattice")
    if any(n < 1 for n in moduli):
        raise UsageError(f"moduli must be positive: {moduli}")
    gens = tuple(tuple(x % n for x, n in zip(b, moduli)) for b in lattice.basis)
    size = residue_group_order(gens, moduli)
    if size > cap:
        raise EnumerationCapExceeded(size, cap)

    zero = (0,) * len(moduli)
    seen = {zero}
    order = [zero]
    layer = [zero]
    while layer:
        fresh = set()
        for x in layer:
            for g in gens:
                y = tuple((a + b) % n for a, b, n in zip(x, g, moduli))
                if y not in seen:
                    seen.add(y)
                    fresh.add(y)
        layer = sorted(fresh)
        order.extend(layer)
    return ResidueGroup(moduli, tuple(order), gens)
