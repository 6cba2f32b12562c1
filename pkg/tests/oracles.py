"""Independent reference implementations used only by the tests.

Nothing here calls into the criteria tables of ``strongiso``; where the
package is used at all it is for plumbing (building a spec from a lattice).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from fractions import Fraction
from math import gcd, isqrt, prod

from sympy import factorint

from strongiso.lattice import CentralSubgroupSpec, smith_normal_form


# -- p-adic isotropy by modular lifting --------------------------------------


def squarefree_integer(x) -> int:
    """Squarefree integer in the square class of a nonzero rational, via sympy."""
    x = Fraction(x)
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    return sign * prod(p for p, e in factorint(abs(n)).items() if e % 2)


def _val(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def _shifts(ai: int, p: int, K: int) -> tuple[frozenset, frozenset]:
    """Values ``ai x^2 mod p^K`` split by whether ``x`` gives a Hensel-good coordinate."""
    mod = p**K
    plain, good = set(), set()
    for x in range(mod):
        s = ai * x * x % mod
        (good if 2 * _val(2 * ai * x % mod, p) + 1 <= K else plain).add(s)
    return frozenset(plain), frozenset(good)


def locally_isotropic_oracle(entries, p: int) -> bool:
    """Isotropy of the diagonal form over Q_p by exhaustive search mod p^K.

    Entries are first made squarefree.  A vector ``x`` with ``f(x) = 0 mod p^K``
    and a coordinate satisfying ``2 v(2 a_i x_i) + 1 <= K`` lifts to a nonzero
    root by Hensel's lemma; conversely a primitive root has a unit coordinate
    with ``v(2 a_i x_i) <= v(2) + 1``, so ``K = 2 (v(2) + 1) + 1`` is enough.

    The search is a subset-sum over ``Z/p^K`` with two bitmasks per step
    (sums reachable without and with a Hensel-good coordinate).
    """
    a = [squarefree_integer(x) for x in entries]
    K = 2 * (_val(2, p) + 1) + 1
    mod = p**K
    full = (1 << mod) - 1

    def rotate(mask: int, s: int) -> int:
        return ((mask << s) | (mask >> (mod - s))) & full if s else mask

    plain, good = 1, 0  # bit t set: sum t reachable
    for ai in a:
        shifts_plain, shifts_good = _shifts(ai, p, K)
        new_plain = new_good = 0
        for s in shifts_plain:
            new_plain |= rotate(plain, s)
            new_good |= rotate(good, s)
        for s in shifts_good:
            new_good |= rotate(plain, s) | rotate(good, s)
        plain, good = new_plain, new_good
    return bool(good & 1)


def real_isotropic_oracle(entries) -> bool:
    signs = {Fraction(x) > 0 for x in entries}
    return len(signs) == 2


# -- bounded search for rational zeros --------------------------------------


def small_zero(entries, bound: int):
    """A nonzero integer vector in ``[-bound, bound]^n`` with ``q(x) = 0``, if any.

    The last coordinate is recovered with an integer square root.
    """
    den = 1
    for x in entries:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in entries]
    *head, last = ints
    for xs in itertools.product(range(-bound, bound + 1), repeat=len(head)):
        partial = sum(c * v * v for c, v in zip(head, xs))
        if partial % last:
            continue
        t = -partial // last
        if t < 0:
            continue
        y = isqrt(t)
        if y * y == t and y <= bound and (y or any(xs)):
            return (*xs, y)
    return None


# -- finite abelian groups -------------------------------------------------


def closure(generators, moduli) -> frozenset:
    """Subgroup of ``prod Z/n_s`` generated by ``generators`` (naive closure)."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = tuple((a + b) % n for a, b, n in zip(x, g, moduli))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _in_row_span_upper(rows, v) -> bool:
    """Membership in the lattice spanned by upper-triangular rows with positive pivots."""
    v = list(v)
    for i, row in enumerate(rows):
        if v[i] % row[i]:
            return False
        q = v[i] // row[i]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def subgroup_lattices(moduli):
    """Every lattice ``L`` with ``diag(moduli) <= L <= Z^r``, as HNF row bases.

    Subgroups of ``prod Z/n_s`` correspond one-to-one to these lattices.
    """
    r = len(moduli)
    for pivots in itertools.product(*[[h for h in range(1, n + 1) if n % h == 0] for n in moduli]):
        # entry (i, j) with j > i ranges over [0, pivot_j)
        slots = [(i, j) for i in range(r) for j in range(i + 1, r)]
        for values in itertools.product(*[range(pivots[j]) for _, j in slots]):
            rows = [[0] * r for _ in range(r)]
            for i in range(r):
                rows[i][i] = pivots[i]
            for (i, j), val in zip(slots, values):
                rows[i][j] = val
            if all(
                _in_row_span_upper(rows, [n if t == s else 0 for t in range(r)])
                for s, n in enumerate(moduli)
            ):
                yield rows


def spec_with_character_lattice(rows) -> CentralSubgroupSpec:
    """A subgroup ``C`` of the torus whose character lattice ``M_C`` is spanned by ``rows``.

    With ``U B V = D``, a character ``k`` lies in the row span of ``B`` iff
    ``(k V)_i = 0 mod d_i`` for each invariant factor, which is a torsion
    generator ``(d_i, column i of V)``.
    """
    r = len(rows[0])
    diag, _, v = smith_normal_form(rows)
    torsion = tuple(
        (d, tuple(v[s][i] for s in range(r))) for i, d in enumerate(diag) if d > 1
    )
    return CentralSubgroupSpec(r, torsion_generators=torsion)


def subgroup_elements(rows, moduli) -> frozenset:
    return closure([tuple(x % n for x, n in zip(row, moduli)) for row in rows], moduli)


def index_term(moduli, k, j: int) -> int:
    """``n_j/gcd(1+k_j, n_j) * prod_{s != j} n_s/gcd(k_s, n_s)`` from raw integers (1-based j)."""
    out = 1
    for s, (n, x) in enumerate(zip(moduli, k), start=1):
        out *= n // gcd(x + 1 if s == j else x, n)
    return out


# -- ten-dimensional forms with trivial invariants ---------------------------

D5_ENTRIES = [s * x for x in (1, 2, 3, 5, 6, 10, 15, 30) for s in (1, -1)]


def d5_candidate(rng):
    """A random 10-dimensional diagonal form with trivial signed discriminant.

    Either nine random entries closed up by a tenth that fixes the
    discriminant, or two scaled copies of ``<1, -a, -b, ab>`` plus a
    hyperbolic plane (each block has trivial discriminant and the two
    Clifford corrections cancel).  Callers still check the Witt invariant.
    """
    if rng.random() < 0.8:
        head = [rng.choice(D5_ENTRIES) for _ in range(9)]
        # d_+- = (-1)^45 * prod a_i must be a square
        return head + [-squarefree_integer(prod(head))]
    a, b, x, y, u = (rng.choice(D5_ENTRIES) for _ in range(5))
    block = [1, -a, -b, a * b]
    return [x * t for t in block] + [y * t for t in block] + [u, -u]
