"""Interpolation degree of point sets and minimal representing degree.

deg_on_set(f) is the least total degree of a reduced polynomial agreeing
with the partial function f everywhere on its domain; int_deg(A) is the
least d at which every function on A is realizable at degree d, i.e. the
first d where the degree-<=d monomial evaluation columns span all of F_p^A.
Both are computed with one incremental elimination state that absorbs
monomial columns grade by grade, so the cost is a single pass up to the
answer rather than one elimination per candidate degree.

Also here: the constructive side of the bound int_deg <= VC-dim for p=2.
A monomial on an unshattered coordinate set S vanishes against the absent
pattern: the product of (x_i + v_i + 1) over i in S is identically zero on
the family, and expanding it rewrites x_S as a sum of strictly smaller
monomials, recursively pushing every monomial below the VC dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, ParameterError, WitnessNotFoundError
from .families import PointSet, SetFamily, decode_point
from .linalg import FieldMatrix, SpanTrackerGF2, SpanTrackerModP
from .polynomials import MonomialBasis, ReducedPolynomial, _exponent_vectors, _basis_key
from .vc import vc_dim


@dataclass(frozen=True)
class PartialFunction:
    """Field values attached to a point set, aligned with its canonical order."""

    domain: PointSet
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.domain.points):
            raise ParameterError(
                f"{len(self.values)} values for {len(self.domain.points)} domain points"
            )
        p = self.domain.modulus
        for v in self.values:
            if not 0 <= v < p:
                raise ParameterError(f"value {v} out of range for F_{p}")


def evaluation_matrix(domain: PointSet, basis: MonomialBasis) -> FieldMatrix:
    """Entry (i, j) = basis monomial j at domain point i, mod p (0^0 = 1)."""
    if domain.modulus != basis.modulus or domain.dimension != basis.dimension:
        raise DimensionMismatchError(
            "domain and basis disagree on modulus or dimension"
        )
    p, n = domain.modulus, domain.dimension
    digits = np.array([decode_point(pt, p, n) for pt in domain.points], dtype=np.int64)
    pow_table = np.array([[pow(x, e, p) for e in range(p)] for x in range(p)], dtype=np.int64)
    out = np.empty((len(domain.points), len(basis.monomials)), dtype=np.int64)
    for j, expvec in enumerate(basis.monomials):
        col = np.ones(len(domain.points), dtype=np.int64)
        for axis, e in enumerate(expvec):
            if e:
                col = col * pow_table[digits[:, axis], e] % p
        out[:, j] = col
    return FieldMatrix(p, out)


def _graded_monomials(p: int, n: int) -> list[list[tuple[int, ...]]]:
    grades: list[list[tuple[int, ...]]] = [[] for _ in range((p - 1) * n + 1)]
    for expvec in _exponent_vectors(p, n, (p - 1) * n):
        grades[sum(expvec)].append(expvec)
    for grade in grades:
        grade.sort(key=_basis_key)
    return grades


def _gf2_column(points: tuple[int, ...], monomial_mask: int) -> int:
    col = 0
    for i, pt in enumerate(points):
        if pt & monomial_mask == monomial_mask:
            col |= 1 << i
    return col


def _iter_gf2_grade_columns(points: tuple[int, ...], n: int, grade: int):
    # multilinear monomials of one grade, in canonical (descending-lex) order
    for expvec in sorted(_exponent_vectors(2, n, grade), key=_basis_key):
        if sum(expvec) != grade:
            continue
        mask = 0
        for i, e in enumerate(expvec):
            if e:
                mask |= 1 << i
        yield _gf2_column(points, mask)


def _modp_grade_columns(points: tuple[int, ...], p: int, n: int, monomials) -> list[np.ndarray]:
    digits = np.array([decode_point(pt, p, n) for pt in points], dtype=np.int64)
    pow_table = np.array([[pow(x, e, p) for e in range(p)] for x in range(p)], dtype=np.int64)
    cols = []
    for expvec in monomials:
        col = np.ones(len(points), dtype=np.int64)
        for axis, e in enumerate(expvec):
            if e:
                col = col * pow_table[digits[:, axis], e] % p
        cols.append(col)
    return cols


@lru_cache(maxsize=1 << 17)
def _int_deg_points(p: int, n: int, points: tuple[int, ...]) -> int:
    m = len(points)
    if p == 2:
        tracker = SpanTrackerGF2(m)
        for d in range(n + 1):
            for col in _iter_gf2_grade_columns(points, n, d):
                tracker.add(col)
            if tracker.rank == m:
                return d
        raise AssertionError("full multilinear basis must span all functions")
    grades = _graded_monomials(p, n)
    tracker = SpanTrackerModP(p, m)
    for d, monomials in enumerate(grades):
        for col in _modp_grade_columns(points, p, n, monomials):
            tracker.add(col)
        if tracker.rank == m:
            return d
    raise AssertionError("full reduced basis must span all functions")


def int_deg(domain: PointSet) -> int:
    """Least d such that every function on the domain has a degree-<=d representation."""
    domain.require_nonempty("int_deg")
    return _int_deg_points(domain.modulus, domain.dimension, domain.points)


def deg_on_set(f: PartialFunction) -> int:
    """Minimal degree of a reduced polynomial agreeing with f on its domain."""
    f.domain.require_nonempty("deg_on_set")
    p, n = f.domain.modulus, f.domain.dimension
    points = f.domain.points
    m = len(points)
    if p == 2:
        target = 0
        for i, v in enumerate(f.values):
            if v:
                target |= 1 << i
        tracker = SpanTrackerGF2(m)
        for d in range(n + 1):
            for col in _iter_gf2_grade_columns(points, n, d):
                tracker.add(col)
            if tracker.contains(target):
                return d
        raise AssertionError("full multilinear basis must span all functions")
    target = np.array(f.values, dtype=np.int64)
    grades = _graded_monomials(p, n)
    tracker = SpanTrackerModP(p, m)
    for d, monomials in enumerate(grades):
        for col in _modp_grade_columns(points, p, n, monomials):
            tracker.add(col)
        if tracker.contains(target):
            return d
    raise AssertionError("full reduced basis must span all functions")


def find_unshattered_witness(family: SetFamily, subset_mask: int) -> dict[int, int]:
    """A 0/1 pattern on the given coordinates matched by no family member.

    Keys are 1-based ground elements of the subset; the returned pattern is
    the numerically smallest absent trace (bit j of the trace = value at the
    j-th smallest element).
    """
    family.require_nonempty("find_unshattered_witness")
    n = family.ground_size
    if not 0 < subset_mask < (1 << n):
        raise ParameterError(f"subset mask {subset_mask} out of range or empty")
    positions = [i for i in range(subset_mask.bit_length()) if subset_mask >> i & 1]
    k = len(positions)
    seen = set()
    for member in family.members:
        trace = 0
        for j, pos in enumerate(positions):
            trace |= ((member >> pos) & 1) << j
        seen.add(trace)
    for trace in range(1 << k):
        if trace not in seen:
            return {positions[j] + 1: (trace >> j) & 1 for j in range(k)}
    raise WitnessNotFoundError(
        f"subset {subset_mask:#x} is shattered; every pattern occurs"
    )


def represent_monomial(family: SetFamily, monomial_mask: int) -> ReducedPolynomial:
    """A multilinear polynomial of degree <= VC-dim agreeing with x_S on the family.

    Monomials at most the VC dimension are returned unchanged. Above it the
    coordinate set is unshattered, and the absent pattern v makes the product
    of (x_i + v_i + 1) over the set vanish on every member; expanding rewrites
    the monomial as the sum of x_T over all proper subsets T containing every
    coordinate with v_i = 1, which recurse downward. Memoized per monomial.
    """
    family.require_nonempty("represent_monomial")
    n = family.ground_size
    if not 0 <= monomial_mask < (1 << n):
        raise ParameterError(f"monomial mask {monomial_mask} out of range")
    bound = vc_dim(family)
    memo: dict[int, frozenset[int]] = {}

    def rep(mask: int) -> frozenset[int]:
        if mask.bit_count() <= bound:
            return frozenset((mask,))
        hit = memo.get(mask)
        if hit is not None:
            return hit
        pattern = find_unshattered_witness(family, mask)
        ones = 0
        for elem, bit in pattern.items():
            if bit:
                ones |= 1 << (elem - 1)
        free = mask & ~ones
        acc: set[int] = set()
        sub = free
        while True:
            cand = ones | sub
            if cand != mask:
                acc.symmetric_difference_update(rep(cand))
            if sub == 0:
                break
            sub = (sub - 1) & free
        result = frozenset(acc)
        memo[mask] = result
        return result

    masks = rep(monomial_mask)
    terms = {
        tuple((mask >> i) & 1 for i in range(n)): 1
        for mask in masks
    }
    return ReducedPolynomial(2, n, terms)
