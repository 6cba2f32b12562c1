"""Index arithmetic for classes ``sum_j k_j [A_j]`` of generic division algebras.

The algebras ``A_1, ..., A_r`` have degrees ``n_1, ..., n_r`` and are as
independent as possible: the index of ``sum_j k_j [A_j]`` is
``prod_j n_j / gcd(n_j, k_j)``.  A class is therefore just a coefficient
vector in ``Z/n_1 + ... + Z/n_r``.

Factor indices ``j`` are 1-based throughout, as in the usual notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Sequence

from .arith import primary_decomposition
from .errors import UsageError
from .lattice import ResidueGroup

__all__ = [
    "GenericBrauerClass",
    "TypeATorsorData",
    "index",
    "exponent",
    "reduction_term",
    "index_reduction",
    "torsor_a_is_anisotropic",
    "torsor_a_lifts",
    "primary_decomposition",
]


def _moduli(values: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(n) for n in values)
    if any(n < 1 for n in out):
        raise UsageError(f"degrees must be positive: {out}")
    return out


@dataclass(frozen=True)
class GenericBrauerClass:
    moduli: tuple[int, ...]
    coefficients: tuple[int, ...]

    def __post_init__(self):
        moduli = _moduli(self.moduli)
        if len(self.coefficients) != len(moduli):
            raise UsageError("coefficient vector and moduli differ in length")
        coeffs = tuple(int(k) % n for k, n in zip(self.coefficients, moduli))
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, moduli: Sequence[int]) -> "GenericBrauerClass":
        return cls(tuple(moduli), (0,) * len(moduli))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def _check(self, other: "GenericBrauerClass"):
        if self.moduli != other.moduli:
            raise UsageError(f"classes over different moduli {self.moduli} and {other.moduli}")

    def __add__(self, other: "GenericBrauerClass") -> "GenericBrauerClass":
        self._check(other)
        return GenericBrauerClass(
            self.moduli, tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> "GenericBrauerClass":
        return GenericBrauerClass(self.moduli, tuple(-a for a in self.coefficients))

    def __sub__(self, other: "GenericBrauerClass") -> "GenericBrauerClass":
        return self + (-other)

    def __rmul__(self, m: int) -> "GenericBrauerClass":
        return GenericBrauerClass(self.moduli, tuple(m * a for a in self.coefficients))


def index(c: GenericBrauerClass) -> int:
    # math.gcd(n, 0) == n, so zero coordinates contribute a factor 1
    return prod(n // gcd(n, k) for n, k in zip(c.moduli, c.coefficients))


def exponent(c: GenericBrauerClass) -> int:
    """Additive order of ``c``; always divides ``index(c)``."""
    return lcm(*(n // gcd(n, k) for n, k in zip(c.moduli, c.coefficients)))


def reduction_term(moduli: Sequence[int], k: Sequence[int], j: int) -> int:
    """Index of ``[A_j] + sum_s k_s [A_s]``.

    Equals ``n_j/gcd(1+k_j, n_j) * prod_{s != j} n_s/gcd(k_s, n_s)``.
    """
    shifted = list(k)
    shifted[j - 1] += 1
    return index(GenericBrauerClass(tuple(moduli), tuple(shifted)))


def index_reduction(moduli: Sequence[int], residues: ResidueGroup, j: int) -> int:
    """Index of ``A_j`` over the function field splitting every class in ``residues``.

    This is the gcd of ``reduction_term(moduli, k, j)`` over all residue
    tuples ``k``.
    """
    moduli = _moduli(moduli)
    if tuple(residues.moduli) != moduli:
        raise UsageError(f"residue group lives in {residues.moduli}, not {moduli}")
    if not 1 <= j <= len(moduli):
        raise UsageError(f"factor index {j} out of range 1..{len(moduli)}")
    # quot[s][x] = n_s / gcd(x, n_s), so each term is a product of table entries
    quot = [[n // gcd(x, n) for x in range(n)] for n in moduli]
    g = 0
    for k in residues:
        shifted = list(k)
        shifted[j - 1] = (shifted[j - 1] + 1) % moduli[j - 1]
        g = gcd(g, prod(q[x] for q, x in zip(quot, shifted)))
        if g == 1:
            break
    return g


@dataclass(frozen=True)
class TypeATorsorData:
    """A degree ``n * ind_d`` algebra ``A`` classifying a ``PGL_n(D)``-torsor.

    ``d`` is the order of the central ``mu_d`` in ``SL_n(D)/mu_d``.
    """

    n: int
    ind_d: int
    ind_a: int
    d: int = 1

    def __post_init__(self):
        for name in ("n", "ind_d", "ind_a", "d"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        degree = self.n * self.ind_d
        if degree % self.ind_a:
            raise UsageError(f"ind(A)={self.ind_a} does not divide deg(A)={degree}")
        if degree % self.d:
            raise UsageError(f"d={self.d} does not divide n*ind(D)={degree}")


def torsor_a_is_anisotropic(data: TypeATorsorData) -> bool:
    return data.ind_a == gcd(data.ind_a, data.ind_d) * data.n


def torsor_a_lifts(
    data: TypeATorsorData, class_a: GenericBrauerClass, class_d: GenericBrauerClass
) -> bool:
    """Whether the ``PGL_n(D)``-torsor of ``A`` comes from ``SL_n(D)/mu_d``.

    That happens exactly when ``d([A] - [D]) = 0``.  The classes must have
    the indices recorded in ``data``.
    """
    if index(class_a) != data.ind_a or index(class_d) != data.ind_d:
        raise UsageError(
            f"class indices ({index(class_a)}, {index(class_d)}) disagree with "
            f"ind(A)={data.ind_a}, ind(D)={data.ind_d}"
        )
    return (data.d * (class_a - class_d)).is_zero()
