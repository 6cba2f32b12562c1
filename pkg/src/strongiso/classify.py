"""Decision procedures for strong isotropy.

Three procedures are provided:

* ``classify_simple`` for a simple group given by its isogeny data,
* ``classify_semisimple`` for ``(G_1 x ... x G_r) / Z`` via the canonical
  simple quotients ``G_i / p_i(Z)``,
* ``typea_engine`` for ``(GL_{n_1} x ... x GL_{n_r}) / C`` (equivalently its
  derived group) via the character lattice of ``C``.

Every verdict carries a witness that can be re-checked by hand, or the
negative evidence gathered.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import gcd, lcm, prod
from typing import Any, Sequence, Union

from .arith import is_squarefree, prime_divisors
from .brauer import index_reduction
from .errors import SquarefreeHypothesisError, UsageError
from .lattice import (
    DEFAULT_ENUMERATION_CAP,
    CentralSubgroupSpec,
    character_lattice_of,
    residue_group_order,
    residue_image,
)
from .qform import RationalQuadraticForm, spin_descriptor_of

# -- descriptors ------------------------------------------------------------


@dataclass(frozen=True)
class TypeAInner:
    """``SL_m(D) / mu_d`` with ``ind(D) = ind_d``; absolute type ``A_{m*ind_d - 1}``."""

    m: int
    ind_d: int = 1
    d: int = 1

    def __post_init__(self):
        if self.m < 1 or self.ind_d < 1 or self.d < 1:
            raise UsageError(f"m, ind_D and d must be positive: {self}")
        if self.degree % self.d:
            raise UsageError(f"d={self.d} does not divide m*ind_D={self.degree}")

    @property
    def degree(self) -> int:
        return self.m * self.ind_d


@dataclass(frozen=True)
class TypeAOuter:
    pass


@dataclass(frozen=True)
class TypeC:
    n: int = 1
    algebra_split: bool = True
    adjoint: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise UsageError(f"rank must be positive: {self}")


@dataclass(frozen=True)
class TypeD5:
    simply_connected: bool = True
    disc_trivial: bool = True
    clifford_split: bool = True

    @classmethod
    def from_form(cls, q: RationalQuadraticForm) -> "TypeD5":
        """``Spin(q)`` for a 10-dimensional form ``q``."""
        desc = spin_descriptor_of(q)
        if desc.dimension != 10:
            raise UsageError(f"Spin(q) is of type D5 only for dim q = 10, got {desc.dimension}")
        return cls(True, desc.disc_trivial, desc.clifford_split)


@dataclass(frozen=True)
class Other:
    label: str


SimpleGroupDescriptor = Union[TypeAInner, TypeAOuter, TypeC, TypeD5, Other]


def center_order(desc: SimpleGroupDescriptor) -> int:
    """Order of the (cyclic model of the) center a semisimple descriptor may quotient by.

    Outer type A and the ``Other`` labels never become strongly isotropic under
    any quotient, so their centers are not modelled.
    """
    if isinstance(desc, TypeAInner):
        return desc.degree // desc.d
    if isinstance(desc, TypeC):
        return 1 if desc.adjoint else 2
    if isinstance(desc, TypeD5):
        return 4 if desc.simply_connected else 1
    return 1


def quotient(desc: SimpleGroupDescriptor, c: int) -> SimpleGroupDescriptor:
    """Quotient of ``desc`` by the central subgroup of order ``c``."""
    if center_order(desc) % c:
        raise UsageError(f"{desc} has no central subgroup of order {c}")
    if c == 1:
        return desc
    if isinstance(desc, TypeAInner):
        return replace(desc, d=desc.d * c)
    if isinstance(desc, TypeC):
        return replace(desc, adjoint=True)
    return replace(desc, simply_connected=False)


@dataclass(frozen=True)
class SemisimpleDescriptor:
    """``(G_1 x ... x G_r) / Z`` with ``Z`` generated by exponent tuples.

    Generator ``z`` stands for ``(zeta_{m_1}^{z_1}, ..., zeta_{m_r}^{z_r})`` with
    ``m_i = center_order(G_i)``.
    """

    factors: tuple[SimpleGroupDescriptor, ...]
    center_generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise UsageError("a semisimple descriptor needs at least one factor")
        moduli = [center_order(f) for f in factors]
        gens = []
        for z in self.center_generators:
            if len(z) != len(factors):
                raise UsageError(f"center generator {tuple(z)} has wrong length")
            gens.append(tuple(int(x) % m for x, m in zip(z, moduli)))
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "center_generators", tuple(gens))

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(center_order(f) for f in self.factors)

    def center_is_trivial(self) -> bool:
        return not any(any(z) for z in self.center_generators)

    def center_size(self) -> int:
        return residue_group_order(self.center_generators, self.moduli)


@dataclass(frozen=True)
class Verdict:
    strongly_isotropic: bool
    rule: str
    reason: str
    witness: dict[str, Any] | None = None
    evidence: dict[str, Any] = field(default_factory=dict)


# -- simple groups ----------------------------------------------------------


def classify_simple(desc: SimpleGroupDescriptor) -> Verdict:
    rule = "simple"
    if isinstance(desc, TypeAInner):
        if desc.m == 1:
            return Verdict(False, rule, "SL_1(D)/mu_d: no proper parabolic, m must exceed 1",
                           {"violated": "m > 1"})
        free = [p for p in prime_divisors(desc.m) if desc.d % p]
        if free:
            return Verdict(True, rule,
                           f"prime {free[0]} divides m={desc.m} but not d={desc.d}",
                           {"prime": free[0]})
        return Verdict(False, rule, f"every prime divisor of m={desc.m} divides d={desc.d}",
                       {"violated": "some prime divisor of m does not divide d"})
    if isinstance(desc, TypeAOuter):
        return Verdict(False, rule, "outer forms of type A are never strongly isotropic",
                       {"violated": "inner type"})
    if isinstance(desc, TypeC):
        if desc.adjoint:
            return Verdict(False, rule, "type C groups that are not simply connected admit "
                           "anisotropic torsors", {"violated": "simply connected"})
        if not desc.algebra_split:
            return Verdict(False, rule, "Sp(A, sigma) with A non-split admits anisotropic torsors",
                           {"violated": "split algebra"})
        return Verdict(True, rule, f"Sp_{2 * desc.n} has trivial torsors", {"group": "Sp"})
    if isinstance(desc, TypeD5):
        if not desc.simply_connected:
            return Verdict(False, rule, "type D5 groups that are not simply connected admit "
                           "anisotropic torsors", {"violated": "simply connected"})
        if not desc.disc_trivial:
            return Verdict(False, rule, "Spin(q) needs trivial discriminant",
                           {"violated": "trivial discriminant"})
        if not desc.clifford_split:
            return Verdict(False, rule, "Spin(q) needs a split Clifford algebra",
                           {"violated": "split Clifford algebra"})
        return Verdict(True, rule, "Spin(q), dim q = 10, trivial discriminant, split Clifford "
                       "algebra", {"group": "Spin"})
    if isinstance(desc, Other):
        return Verdict(False, rule, f"type {desc.label}: strongly isotropic simple groups are "
                       "of type A, C or D5", {"violated": "type in {A, C, D5}"})
    raise UsageError(f"unknown descriptor {desc!r}")


# -- semisimple groups ------------------------------------------------------


def projected_center(desc: SemisimpleDescriptor, i: int) -> int:
    """Order of the projection ``p_i(Z)`` (``i`` is 1-based)."""
    if not 1 <= i <= len(desc.factors):
        raise UsageError(f"factor index {i} out of range")
    m = desc.moduli[i - 1]
    g = m
    for z in desc.center_generators:
        g = gcd(g, z[i - 1])
    return m // g


def canonical_quotients(desc: SemisimpleDescriptor) -> list[SimpleGroupDescriptor]:
    return [
        quotient(f, projected_center(desc, i)) for i, f in enumerate(desc.factors, start=1)
    ]


def classify_semisimple(desc: SemisimpleDescriptor) -> Verdict:
    """Strong isotropy of ``(G_1 x ... x G_r) / Z``.

    If ``Z`` is the product of its projections the group is a direct product of
    its canonical quotients and no hypothesis is needed.  Otherwise every type A
    factor must have squarefree degree, else ``SquarefreeHypothesisError``.
    """
    quotients = canonical_quotients(desc)
    centers = [projected_center(desc, i) for i in range(1, len(quotients) + 1)]
    direct = desc.center_size() == prod(centers)
    if not direct:
        for i, f in enumerate(desc.factors, start=1):
            if isinstance(f, TypeAInner) and not is_squarefree(f.degree):
                raise SquarefreeHypothesisError(i, f.degree)
    rule = "product" if direct else "semisimple-quotient"
    verdicts = [classify_simple(q) for q in quotients]
    evidence = {
        "projected_centers": centers,
        "quotients": [repr(q) for q in quotients],
        "quotient_verdicts": [v.strongly_isotropic for v in verdicts],
    }
    for i, v in enumerate(verdicts, start=1):
        if v.strongly_isotropic:
            return Verdict(True, rule, f"canonical quotient {i} is strongly isotropic ({v.reason})",
                           {"factor": i, "quotient": repr(quotients[i - 1]), **v.witness},
                           evidence)
    return Verdict(False, rule, "no canonical simple quotient is strongly isotropic",
                   None, evidence)


def product_consistency(first: SemisimpleDescriptor, second: SemisimpleDescriptor) -> bool:
    """Check that a direct product is strongly isotropic iff one factor is."""
    if not (first.center_is_trivial() and second.center_is_trivial()):
        raise UsageError("product law applies to descriptors with trivial Z")
    both = SemisimpleDescriptor(first.factors + second.factors)
    expected = (classify_semisimple(first).strongly_isotropic
                or classify_semisimple(second).strongly_isotropic)
    return classify_semisimple(both).strongly_isotropic == expected


# -- split type A ------------------------------------------------------------


def _centered(k: Sequence[int], moduli: Sequence[int]) -> list[int]:
    return [x - n if 2 * x > n else x for x, n in zip(k, moduli)]


def typea_engine(
    moduli: Sequence[int],
    spec: CentralSubgroupSpec,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Verdict:
    """Strong isotropy of ``(SL_{n_1} x ... x SL_{n_r}) / (C ∩ prod mu_{n_s})``.

    Searches the image of the character lattice of ``C`` for a pair ``(j, k)``
    whose index-reduction term is not divisible by ``n_j``.  Among all such
    pairs the witness minimises the term, then ``j``, then enumeration position.
    """
    moduli = tuple(int(n) for n in moduli)
    if len(moduli) != spec.rank:
        raise UsageError(f"{len(moduli)} degrees for a rank {spec.rank} subgroup")
    lattice = character_lattice_of(spec)
    residues = residue_image(lattice, moduli, cap)
    evidence: dict[str, Any] = {
        "lattice_basis": [list(b) for b in lattice.basis],
        "residue_group_order": len(residues),
    }
    # quot[s][x] = n_s / gcd(x, n_s); the product over s is reduction_term
    quot = [[n // gcd(x, n) for x in range(n)] for n in moduli]
    best = None
    for pos, k in enumerate(residues):
        terms = [q[x] for q, x in zip(quot, k)]
        for j, n in enumerate(moduli, start=1):
            value = quot[j - 1][(k[j - 1] + 1) % n] * prod(terms[:j - 1]) * prod(terms[j:])
            if value % n and (best is None or (value, j, pos) < best[:3]):
                best = (value, j, pos, k)
    if best is not None:
        value, j, _, k = best
        witness = {"j": j, "k": list(k), "k_centered": _centered(k, moduli), "value": value}
        return Verdict(True, "type-a-lattice",
                       f"n_{j}={moduli[j - 1]} does not divide {value}", witness, evidence)
    reductions = [index_reduction(moduli, residues, j) for j in range(1, len(moduli) + 1)]
    evidence["index_reductions"] = reductions
    return Verdict(False, "type-a-lattice",
                   f"every n_j divides its index reduction {reductions}", None, evidence)


def gcd_criterion(moduli: Sequence[int], spec: CentralSubgroupSpec,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """The same criterion phrased as ``exists j: n_j does not divide index_reduction(j)``."""
    residues = residue_image(character_lattice_of(spec), moduli, cap)
    return any(
        index_reduction(moduli, residues, j) % n for j, n in enumerate(moduli, start=1)
    )


def semisimple_to_typea(desc: SemisimpleDescriptor) -> tuple[tuple[int, ...], CentralSubgroupSpec]:
    """Rewrite ``(prod SL_{n_i}/mu_{d_i}) / Z`` as degrees and a subgroup ``C`` of ``G_m^r``.

    Only split inner type A factors (``ind_D = 1``) qualify.
    """
    if not all(isinstance(f, TypeAInner) and f.ind_d == 1 for f in desc.factors):
        raise UsageError("only products of split inner type A factors have a torus model")
    degrees = tuple(f.degree for f in desc.factors)
    big = lcm(*degrees)
    r = len(degrees)
    points = []
    for i, f in enumerate(desc.factors):
        if f.d > 1:
            e = [0] * r
            e[i] = f.degree // f.d
            points.append(e)
    # an exponent z of mu_{n/d} lifts to the same exponent of mu_n
    points.extend(list(z) for z in desc.center_generators)
    torsion = tuple(
        (big, tuple(x * (big // n) for x, n in zip(e, degrees))) for e in points if any(e)
    ) if big > 1 else ()
    return degrees, CentralSubgroupSpec(r, torsion_generators=torsion)
