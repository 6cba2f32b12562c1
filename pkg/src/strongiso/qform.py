"""Invariants and isotropy of diagonal quadratic forms over Q.

Places are encoded as integers: ``REAL`` (= 0) for the real place and a
prime ``p`` for the p-adic place.  A 2-torsion Brauer class over Q is the
finite set of places where it ramifies, so addition is symmetric
difference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt, lcm
from typing import Iterable, NamedTuple, Sequence

from .arith import is_prime, prime_divisors, squarefree_part, squarefree_product, valuation
from .errors import AnisotropicBaseError, TorsorMismatchError, UsageError

REAL = 0

Rational = int | Fraction


def _check_place(v: int) -> int:
    if v != REAL and not is_prime(v):
        raise UsageError(f"place must be REAL (0) or a prime, got {v}")
    return v


def place_name(v: int) -> str:
    return "real" if v == REAL else str(v)


def parse_place(text: str | int) -> int:
    if isinstance(text, int):
        return _check_place(text)
    text = text.strip().lower()
    if text in ("real", "inf", "infinity", "oo"):
        return REAL
    try:
        return _check_place(int(text))
    except ValueError:
        raise UsageError(f"cannot parse place {text!r}") from None


@dataclass(frozen=True)
class SquareClass:
    """Rational square class, stored as its signed squarefree representative."""

    value: int

    @classmethod
    def of(cls, x: Rational) -> "SquareClass":
        return cls(squarefree_part(x))

    def is_trivial(self) -> bool:
        return self.value == 1

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(squarefree_product(self.value, other.value))


@dataclass(frozen=True)
class TwoTorsionBrauerClass:
    ramified: frozenset[int] = frozenset()

    def __post_init__(self):
        ramified = frozenset(_check_place(v) for v in self.ramified)
        if len(ramified) % 2:
            raise UsageError(f"odd ramification set {sorted(ramified)} violates reciprocity")
        object.__setattr__(self, "ramified", ramified)

    def __add__(self, other: "TwoTorsionBrauerClass") -> "TwoTorsionBrauerClass":
        return TwoTorsionBrauerClass(self.ramified ^ other.ramified)

    def is_split(self) -> bool:
        return not self.ramified

    def places(self) -> list[str]:
        return [place_name(v) for v in sorted(self.ramified)]


SPLIT = TwoTorsionBrauerClass()


@dataclass(frozen=True)
class RationalQuadraticForm:
    """The diagonal form ``<a_1, ..., a_n>`` with nonzero rational entries."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(a) for a in self.coefficients)
        if not coeffs:
            raise UsageError("a quadratic form needs at least one coefficient")
        if any(a == 0 for a in coeffs):
            raise UsageError("diagonal entries must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, *entries: Rational) -> "RationalQuadraticForm":
        return cls(tuple(entries))

    @classmethod
    def parse(cls, text: str) -> "RationalQuadraticForm":
        """Parse ``"1,-1,2/3"``."""
        try:
            entries = [Fraction(part.strip()) for part in text.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse form {text!r}: {exc}") from None
        return cls(tuple(entries))

    @classmethod
    def hyperbolic(cls, planes: int) -> "RationalQuadraticForm":
        return cls((1, -1) * planes)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def perp(self, other: "RationalQuadraticForm") -> "RationalQuadraticForm":
        return RationalQuadraticForm(self.coefficients + other.coefficients)

    def scaled(self, a: Rational) -> "RationalQuadraticForm":
        return RationalQuadraticForm(tuple(a * x for x in self.coefficients))

    def __call__(self, x: Sequence[Rational]) -> Fraction:
        return sum((a * Fraction(v) ** 2 for a, v in zip(self.coefficients, x)), Fraction(0))

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.coefficients)

    def squarefree_entries(self) -> list[int]:
        return list(self._squarefree)

    @cached_property
    def _squarefree(self) -> tuple[int, ...]:
        return tuple(squarefree_part(a) for a in self.coefficients)


# -- Hilbert symbols ------------------------------------------------------


def _legendre(u: int, p: int) -> int:
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def _split(a: int, p: int) -> tuple[int, int]:
    v = valuation(a, p)
    return v, a // p**v


def _hilbert_sf(a: int, b: int, v: int) -> int:
    """Hilbert symbol of squarefree integers ``a``, ``b`` at place ``v``."""
    if v == REAL:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, v)
    beta, w = _split(b, v)
    if v == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((v - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= _legendre(u, v)
    if alpha % 2:
        sign *= _legendre(w, v)
    return sign


def hilbert_symbol(a: Rational, b: Rational, v: int) -> int:
    """Local Hilbert symbol ``(a, b)_v`` in ``{1, -1}``."""
    _check_place(v)
    return _hilbert_sf(squarefree_part(a), squarefree_part(b), v)


def _candidate_places(values: Iterable[int]) -> list[int]:
    places = {REAL, 2}
    for x in values:
        places.update(prime_divisors(x))
    return sorted(places)


def quaternion_class(a: Rational, b: Rational) -> TwoTorsionBrauerClass:
    """Ramification set of the quaternion algebra ``(a, b)`` over Q."""
    sa, sb = squarefree_part(a), squarefree_part(b)
    return TwoTorsionBrauerClass(
        frozenset(v for v in _candidate_places((sa, sb)) if _hilbert_sf(sa, sb, v) == -1)
    )


# -- invariants -------------------------------------------------------------


def determinant_class(q: RationalQuadraticForm) -> SquareClass:
    out = SquareClass(1)
    for a in q.squarefree_entries():
        out = out * SquareClass(a)
    return out


def signed_discriminant(q: RationalQuadraticForm) -> SquareClass:
    """Square class of ``(-1)^(n(n-1)/2) * a_1 * ... * a_n``."""
    n = q.dim
    d = determinant_class(q)
    return SquareClass(-d.value) if (n * (n - 1) // 2) % 2 else d


def hasse_invariant(q: RationalQuadraticForm) -> TwoTorsionBrauerClass:
    """``sum_{i<j} (a_i, a_j)``."""
    entries = q.squarefree_entries()
    ramified = set()
    for v in _candidate_places(entries):
        # bilinearity: prod_{i<j} (a_i, a_j) = prod_j (a_1 ... a_{j-1}, a_j)
        sign, partial = 1, entries[0]
        for a in entries[1:]:
            sign *= _hilbert_sf(partial, a, v)
            partial = squarefree_product(partial, a)
        if sign == -1:
            ramified.add(v)
    return TwoTorsionBrauerClass(frozenset(ramified))


def witt_invariant(q: RationalQuadraticForm) -> TwoTorsionBrauerClass:
    """Class of the Clifford algebra (its even part in odd dimension).

    Obtained from the Hasse invariant ``s`` and the determinant ``d`` by the
    correction depending on ``dim mod 8``:

    ====== ===================
    1, 2   ``s``
    3, 4   ``s + (-1, -d)``
    5, 6   ``s + (-1, -1)``
    7, 0   ``s + (-1, d)``
    ====== ===================
    """
    s = hasse_invariant(q)
    d = determinant_class(q).value
    r = q.dim % 8
    if r in (1, 2):
        return s
    if r in (3, 4):
        return s + quaternion_class(-1, -d)
    if r in (5, 6):
        return s + quaternion_class(-1, -1)
    return s + quaternion_class(-1, d)


class SpinDescriptor(NamedTuple):
    dimension: int
    disc_trivial: bool
    clifford_split: bool


def spin_descriptor_of(q: RationalQuadraticForm) -> SpinDescriptor:
    return SpinDescriptor(
        q.dim, signed_discriminant(q).is_trivial(), witt_invariant(q).is_split()
    )


# -- isotropy ---------------------------------------------------------------


def is_local_square(x: Rational, p: int) -> bool:
    """Whether ``x`` is a square in ``Q_p`` (``p = REAL`` means the reals)."""
    s = squarefree_part(x)
    if p == REAL:
        return s > 0
    if s % p == 0:
        return False
    if p == 2:
        return s % 8 == 1
    return _legendre(s, p) == 1


def is_locally_isotropic(q: RationalQuadraticForm, v: int) -> bool:
    """Isotropy of ``q`` over the completion of Q at ``v``."""
    _check_place(v)
    entries = q.squarefree_entries()
    n = len(entries)
    if v == REAL:
        return any(a > 0 for a in entries) and any(a < 0 for a in entries)
    if n == 1:
        return False
    if n >= 5:
        return True
    d = determinant_class(q).value
    if n == 2:
        return is_local_square(-d, v)
    eps = 1
    for a, b in itertools.combinations(entries, 2):
        eps *= _hilbert_sf(a, b, v)
    if n == 3:
        return _hilbert_sf(-1, squarefree_part(-d), v) == eps
    return not is_local_square(d, v) or eps == _hilbert_sf(-1, -1, v)


def relevant_places(q: RationalQuadraticForm) -> list[int]:
    """Places where isotropy of ``q`` can fail (for ``dim >= 3``)."""
    return _candidate_places(q.squarefree_entries())


def is_isotropic(q: RationalQuadraticForm) -> bool:
    """Isotropy over Q, decided place by place."""
    if q.dim == 1:
        return False
    if q.dim == 2:
        a, b = q.coefficients
        return squarefree_part(-a * b) == 1
    return all(is_locally_isotropic(q, v) for v in relevant_places(q))


def find_isotropic_vector(q: RationalQuadraticForm, bound: int) -> tuple[int, ...] | None:
    """Search for a nonzero integer zero of ``q`` with coordinates in ``[0, bound]``.

    The last coordinate is solved for instead of enumerated.
    """
    den = lcm(*(a.denominator for a in q.coefficients))
    ints = [int(a * den) for a in q.coefficients]
    *head, last = ints
    for xs in itertools.product(range(bound + 1), repeat=len(head)):
        partial = sum(a * x * x for a, x in zip(head, xs))
        if partial % last:
            continue
        t = -partial // last
        if t < 0:
            continue
        y = isqrt(t)
        if y * y == t and y <= bound and (y or any(xs)):
            return (*xs, y)
    return None


def torsor_d5_isotropic(q_base: RationalQuadraticForm, q_twist: RationalQuadraticForm) -> bool:
    """Isotropy of the ``SO(q_base)``-torsor given by ``q_twist``.

    Valid for isotropic ``q_base``; the torsor is isotropic iff ``q_twist`` is.
    """
    if not is_isotropic(q_base):
        raise AnisotropicBaseError(f"base form <{q_base}> is anisotropic")
    if q_base.dim != q_twist.dim:
        raise TorsorMismatchError(f"dimensions differ: {q_base.dim} vs {q_twist.dim}")
    if signed_discriminant(q_base) != signed_discriminant(q_twist):
        raise TorsorMismatchError("twisted form has a different discriminant")
    return is_isotropic(q_twist)
