"""Sum matrices and tensors of a polynomial, and their slice-rank bounds.

For a degree-d polynomial P the matrix M[x, y] = P(x + y) over all of
F_p^n has rank at most twice the number of monomials of degree at most
floor(d/2): expanding P at a coordinate sum splits every monomial so that
one side has low degree. The k-fold analogue writes f(X^1 + ... + X^k) as
a sum of terms, each multiplicative in the axis whose variable group got
low degree (ties broken toward the lowest axis index), giving an explicit
decomposition with at most k * |monomials of degree <= floor(d/k)| terms.

The other direction is the diagonal lower bound: a k-fold tensor that
vanishes off the equal-index diagonal has slice rank equal to its number
of nonzero diagonal entries. That fact is used as a stated oracle; no
general slice-rank computation is attempted here.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, ParameterError, ResourceLimitError
from .families import PointSet
from .linalg import FieldMatrix, rank
from .polynomials import (
    ReducedPolynomial,
    _basis_key,
    _digit_matrix,
    monomial_count,
    values_on_cube,
)

DEFAULT_POINT_LIMIT = 4096
DEFAULT_GRID_LIMIT = 1 << 24
DEFAULT_ENTRY_LIMIT = 1 << 24


@dataclass(frozen=True)
class CLPBoundReport:
    degree: int
    rank: int
    bound: int
    ok: bool


@dataclass(frozen=True)
class SliceTerm:
    axis: int
    axis_monomial: tuple[int, ...]
    residual: ReducedPolynomial


@dataclass(frozen=True)
class SliceDecomposition:
    modulus: int
    dimension: int
    arity: int
    max_axis_degree: int
    terms: tuple[SliceTerm, ...]

    def term_count(self) -> int:
        return len(self.terms)


@dataclass(frozen=True, eq=False)
class SumTensor:
    modulus: int
    arity: int
    axis_points: PointSet
    values: np.ndarray
    generator: ReducedPolynomial

    def content_digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.modulus}:{self.arity}:{self.values.shape}:".encode())
        h.update(np.ascontiguousarray(self.values, dtype="<i8").tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class DiagonalReport:
    is_diagonal: bool
    lower_bound: int
    nonzero_diagonal_count: int


@lru_cache(maxsize=16)
def _pairwise_sum_index(p: int, n: int) -> np.ndarray:
    """size x size table of encoded coordinatewise sums, size = p**n."""
    size = p**n
    idx = np.arange(size, dtype=np.int64)
    if p == 2:
        table = np.bitwise_xor.outer(idx, idx)
    else:
        table = np.zeros((size, size), dtype=np.int64)
        weight = 1
        for _ in range(n):
            digit = idx // weight % p
            table += (digit[:, None] + digit[None, :]) % p * weight
            weight *= p
    table.setflags(write=False)
    return table


def _digitwise_add_arrays(a: np.ndarray, b: np.ndarray, p: int, n: int) -> np.ndarray:
    if p == 2:
        return np.bitwise_xor(a, b)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    weight = 1
    for _ in range(n):
        out += (a // weight % p + b // weight % p) % p * weight
        weight *= p
    return out


def clp_matrix(poly: ReducedPolynomial, *, point_limit: int = DEFAULT_POINT_LIMIT) -> FieldMatrix:
    """The p^n x p^n matrix M[x, y] = P(x + y), rows/columns in encoded point order."""
    p, n = poly.modulus, poly.dimension
    size = p**n
    if size > point_limit:
        raise ResourceLimitError(
            f"p**n = {size} exceeds the matrix point guard {point_limit}; raise the guard to override"
        )
    vals = values_on_cube(poly)
    return FieldMatrix(p, vals[_pairwise_sum_index(p, n)])


def verify_clp_bound(
    poly: ReducedPolynomial, *, point_limit: int = DEFAULT_POINT_LIMIT
) -> CLPBoundReport:
    """Check rank(M) <= 2 * #monomials(degree <= floor(deg P / 2))."""
    matrix = clp_matrix(poly, point_limit=point_limit)
    d = poly.degree()
    bound = 2 * monomial_count(poly.modulus, poly.dimension, d // 2)
    r = rank(matrix)
    return CLPBoundReport(degree=d, rank=r, bound=bound, ok=r <= bound)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(total: int, split: tuple[int, ...]) -> int:
    out = 1
    rem = total
    for a in split:
        out *= math.comb(rem, a)
        rem -= a
    return out


def slice_decompose(
    f: ReducedPolynomial, k: int, *, grid_limit: int = DEFAULT_GRID_LIMIT
) -> SliceDecomposition:
    """Explicit slice decomposition of the k-axis tensor f(X^1 + ... + X^k).

    Substituting each variable by the sum of its k axis copies expands f
    multinomially (each piece keeps exponents below p, so no re-reduction
    is ever needed); every expanded monomial is assigned to the lowest-index
    axis whose variable group has degree at most floor(deg f / k), and terms
    sharing (axis, axis monomial) aggregate into one residual polynomial.
    """
    if k < 2:
        raise ParameterError(f"arity must be >= 2, got {k}")
    p, n = f.modulus, f.dimension
    if p ** (k * n) > grid_limit:
        raise ResourceLimitError(
            f"p**(k*n) = {p ** (k * n)} exceeds the verification grid guard {grid_limit}"
        )
    cap = f.degree() // k
    expanded: dict[tuple[int, ...], int] = {}
    zero_full = (0,) * (k * n)
    for expvec, coeff in f.terms.items():
        current = {zero_full: coeff % p}
        for j, e in enumerate(expvec):
            if e == 0:
                continue
            new: dict[tuple[int, ...], int] = {}
            for split in _compositions(e, k):
                mcoeff = _multinomial(e, split) % p
                if mcoeff == 0:
                    continue
                for full, c in current.items():
                    grown = list(full)
                    for axis, a in enumerate(split):
                        if a:
                            grown[axis * n + j] += a
                    key = tuple(grown)
                    new[key] = (new.get(key, 0) + c * mcoeff) % p
            current = new
        for key, c in current.items():
            if c:
                expanded[key] = (expanded.get(key, 0) + c) % p

    buckets: dict[tuple[int, tuple[int, ...]], dict[tuple[int, ...], int]] = {}
    for full, c in expanded.items():
        if c == 0:
            continue
        group_degrees = [sum(full[axis * n : (axis + 1) * n]) for axis in range(k)]
        axis = next(i for i, g in enumerate(group_degrees) if g <= cap)
        axis_mono = tuple(full[axis * n : (axis + 1) * n])
        residual_exp = tuple(
            x
            for other in range(k)
            if other != axis
            for x in full[other * n : (other + 1) * n]
        )
        bucket = buckets.setdefault((axis + 1, axis_mono), {})
        bucket[residual_exp] = (bucket.get(residual_exp, 0) + c) % p

    terms = []
    for (axis, axis_mono), residual_terms in sorted(
        buckets.items(), key=lambda kv: (kv[0][0], _basis_key(kv[0][1]))
    ):
        residual = ReducedPolynomial(p, (k - 1) * n, residual_terms)
        if residual.is_zero():
            continue
        terms.append(SliceTerm(axis, axis_mono, residual))
    return SliceDecomposition(p, n, k, cap, tuple(terms))


def sum_grid_values(
    f: ReducedPolynomial, k: int, *, grid_limit: int = DEFAULT_GRID_LIMIT
) -> np.ndarray:
    """f evaluated at every coordinate sum: the dense (p^n)^k tensor grid."""
    p, n = f.modulus, f.dimension
    size = p**n
    if size**k > grid_limit:
        raise ResourceLimitError(f"grid of {size ** k} points exceeds the guard {grid_limit}")
    vals = values_on_cube(f)
    sum_index = _pairwise_sum_index(p, n)
    acc = np.arange(size, dtype=np.int64)
    for _ in range(k - 1):
        acc = sum_index[acc[..., None], np.arange(size, dtype=np.int64)]
    return vals[acc]


def decomposition_values(
    dec: SliceDecomposition, *, grid_limit: int = DEFAULT_GRID_LIMIT
) -> np.ndarray:
    """Evaluate the decomposition sum on the full grid, for reconstruction checks."""
    p, n, k = dec.modulus, dec.dimension, dec.arity
    size = p**n
    if size**k > grid_limit:
        raise ResourceLimitError(f"grid of {size ** k} points exceeds the guard {grid_limit}")
    digits = _digit_matrix(p, n)
    pow_table = np.array([[pow(x, e, p) for e in range(p)] for x in range(p)], dtype=np.int64)
    total = np.zeros((size,) * k, dtype=np.int64)
    for term in dec.terms:
        axis_vals = np.ones(size, dtype=np.int64)
        for j, e in enumerate(term.axis_monomial):
            if e:
                axis_vals = axis_vals * pow_table[digits[:, j], e] % p
        residual_vals = values_on_cube(term.residual)
        residual_grid = residual_vals.reshape((size,) * (k - 1), order="F")
        residual_grid = np.expand_dims(residual_grid, axis=term.axis - 1)
        shape = [1] * k
        shape[term.axis - 1] = size
        total = (total + axis_vals.reshape(shape) * residual_grid) % p
    return total


def reconstruction_matches(
    dec: SliceDecomposition, f: ReducedPolynomial, *, grid_limit: int = DEFAULT_GRID_LIMIT
) -> bool:
    """Pointwise equality of the decomposition with f at coordinate sums."""
    return np.array_equal(
        decomposition_values(dec, grid_limit=grid_limit),
        sum_grid_values(f, dec.arity, grid_limit=grid_limit),
    )


def sum_tensor(
    f: ReducedPolynomial, points: PointSet, k: int, *, entry_limit: int = DEFAULT_ENTRY_LIMIT
) -> SumTensor:
    """Dense k-fold tensor T(a_1, ..., a_k) = f(a_1 + ... + a_k) over the point set."""
    if k < 1:
        raise ParameterError(f"arity must be >= 1, got {k}")
    if f.modulus != points.modulus or f.dimension != points.dimension:
        raise DimensionMismatchError("polynomial and point set disagree on modulus or dimension")
    points.require_nonempty("sum_tensor")
    m = len(points)
    if m**k > entry_limit:
        raise ResourceLimitError(f"tensor of {m ** k} entries exceeds the guard {entry_limit}")
    p, n = points.modulus, points.dimension
    pts = np.array(points.points, dtype=np.int64)
    acc = pts
    for _ in range(k - 1):
        acc = _digitwise_add_arrays(acc[..., None], pts, p, n)
    distinct, inverse = np.unique(acc, return_inverse=True)
    fvals = np.array([f.evaluate_encoded(int(s)) for s in distinct], dtype=np.int64)
    values = fvals[inverse].reshape(acc.shape)
    values.setflags(write=False)
    return SumTensor(p, k, points, values, f)


def diagonal_slice_rank_bounds(tensor: SumTensor) -> DiagonalReport:
    """Diagonality check and the resulting slice-rank lower bound.

    When every entry off the equal-index diagonal vanishes, the slice rank
    equals the count of nonzero diagonal entries (diagonal-tensor lemma,
    taken as an oracle); otherwise no lower bound is claimed.
    """
    vals = tensor.values
    m = len(tensor.axis_points)
    diag = vals[tuple(np.arange(m) for _ in range(tensor.arity))]
    diag_nonzero = int(np.count_nonzero(diag))
    is_diagonal = int(np.count_nonzero(vals)) == diag_nonzero
    return DiagonalReport(
        is_diagonal=is_diagonal,
        lower_bound=diag_nonzero if is_diagonal else 0,
        nonzero_diagonal_count=diag_nonzero,
    )
