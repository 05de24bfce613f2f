import pytest

from sumsetvc import (
    EmptyFamilyError,
    ParameterError,
    PartialFunction,
    PointSet,
    SetFamily,
    WitnessNotFoundError,
    deg_on_set,
    embed_01,
    evaluation_matrix,
    find_unshattered_witness,
    generate_family,
    int_deg,
    monomial_basis,
    represent_monomial,
    vc_dim,
)
from sumsetvc.families import FamilyKind, decode_point
from sumsetvc.sampling import SplitMix64, sample_distinct

from oracles import brute_deg_on_set, brute_int_deg


def all_nonempty_families(n):
    for char in range(1, 1 << (1 << n)):
        yield SetFamily(n, tuple(m for m in range(1 << n) if char >> m & 1))


def full_cube(p, n):
    return PointSet(p, n, tuple(range(p**n)))


# --- evaluation_matrix --------------------------------------------------------


def test_evaluation_matrix_examples():
    origin = PointSet.from_points(2, 3, [0])
    m = evaluation_matrix(origin, monomial_basis(2, 3, 0))
    assert m.array.tolist() == [[1]]

    line = full_cube(2, 1)
    m = evaluation_matrix(line, monomial_basis(2, 1, 1))
    assert m.array.tolist() == [[1, 0], [1, 1]]

    ones = PointSet.from_points(3, 2, [4])  # the all-ones point of F_3^2
    assert decode_point(4, 3, 2) == (1, 1)
    m = evaluation_matrix(ones, monomial_basis(3, 2, 2))
    assert m.array.tolist() == [[1, 1, 1, 1, 1, 1]]


def test_evaluation_matrix_dimension_mismatch():
    from sumsetvc import DimensionMismatchError

    with pytest.raises(DimensionMismatchError):
        evaluation_matrix(full_cube(2, 2), monomial_basis(3, 2, 1))


# --- deg_on_set ------------------------------------------------------------------


def test_deg_on_set_examples():
    # constant one costs degree 0 on any domain
    dom = PointSet.from_points(3, 2, [0, 4, 7])
    assert deg_on_set(PartialFunction(dom, (1, 1, 1))) == 0

    # oracle-computed: the indicator of the all-ones point of F_2^2 needs degree 2
    square = full_cube(2, 2)
    assert deg_on_set(PartialFunction(square, (0, 0, 0, 1))) == 2

    # oracle-computed: (0, 1) on {00, 11} is realized at degree 1
    diag = PointSet.from_points(2, 2, [0, 3])
    assert deg_on_set(PartialFunction(diag, (0, 1))) == 1


def test_deg_on_set_matches_brute_force_p2_n2_exhaustive():
    from itertools import product

    for char in range(1, 16):
        pts = tuple(i for i in range(4) if char >> i & 1)
        dom = PointSet(2, 2, pts)
        for values in product(range(2), repeat=len(pts)):
            f = PartialFunction(dom, values)
            assert deg_on_set(f) == brute_deg_on_set(pts, 2, 2, values)


def test_deg_on_set_matches_brute_force_seeded():
    gen = SplitMix64(31)
    for p, n, rounds in ((2, 3, 30), (3, 2, 20)):
        space = p**n
        for _ in range(rounds):
            size = 1 + gen.below(space)
            pts = tuple(sample_distinct(space, size, gen))
            values = tuple(gen.below(p) for _ in pts)
            f = PartialFunction(PointSet(p, n, pts), values)
            assert deg_on_set(f) == brute_deg_on_set(pts, p, n, values)


def test_partial_function_validation():
    dom = PointSet.from_points(3, 1, [0, 2])
    with pytest.raises(ParameterError):
        PartialFunction(dom, (0,))
    with pytest.raises(ParameterError):
        PartialFunction(dom, (0, 3))
    with pytest.raises(EmptyFamilyError):
        deg_on_set(PartialFunction(PointSet(2, 2, ()), ()))


# --- int_deg ----------------------------------------------------------------------


def test_int_deg_examples():
    assert int_deg(PointSet.from_points(5, 3, [17])) == 0
    for n in (1, 2, 3):
        assert int_deg(full_cube(2, n)) == n
    assert int_deg(PointSet.from_points(2, 2, [0, 3])) == 1


def test_int_deg_of_proper_subsets_is_below_n():
    for n in (1, 2, 3):
        space = 1 << n
        for char in range(1, (1 << space) - 1):  # proper nonempty subsets
            pts = tuple(i for i in range(space) if char >> i & 1)
            assert int_deg(PointSet(2, n, pts)) < n


def test_int_deg_matches_brute_force_sampled():
    gen = SplitMix64(47)
    for _ in range(40):
        size = 1 + gen.below(8)
        pts = tuple(sample_distinct(8, size, gen))
        assert int_deg(PointSet(2, 3, pts)) == brute_int_deg(pts, 2, 3)
    for _ in range(15):
        size = 1 + gen.below(9)
        pts = tuple(sample_distinct(9, size, gen))
        assert int_deg(PointSet(3, 2, pts)) == brute_int_deg(pts, 3, 2)


def test_int_deg_is_max_of_indicator_degrees_exhaustive():
    for n in (1, 2, 3):
        space = 1 << n
        for char in range(1, 1 << space):
            pts = tuple(i for i in range(space) if char >> i & 1)
            dom = PointSet(2, n, pts)
            indicators = []
            for i in range(len(pts)):
                values = tuple(1 if j == i else 0 for j in range(len(pts)))
                indicators.append(deg_on_set(PartialFunction(dom, values)))
            assert int_deg(dom) == max(indicators)


def test_int_deg_within_stated_range():
    gen = SplitMix64(3)
    for _ in range(20):
        size = 1 + gen.below(27)
        pts = tuple(sample_distinct(27, size, gen))
        d = int_deg(PointSet(3, 3, pts))
        assert 0 <= d <= 2 * 3


def test_int_deg_le_vc_dim_exhaustive():
    for n in (1, 2, 3):
        for fam in all_nonempty_families(n):
            assert int_deg(embed_01(fam, 2)) <= vc_dim(fam)


# --- find_unshattered_witness --------------------------------------------------------


def test_witness_examples():
    fam = SetFamily.from_masks(2, [0, 1])
    assert find_unshattered_witness(fam, 0b10) == {2: 1}

    low = generate_family(4, FamilyKind.lowweight(2))
    assert find_unshattered_witness(low, 0b0111) == {1: 1, 2: 1, 3: 1}

    powerset = generate_family(2, FamilyKind.powerset())
    with pytest.raises(WitnessNotFoundError):
        find_unshattered_witness(powerset, 0b01)


def test_witness_is_absent_and_smallest():
    fam = SetFamily.from_masks(3, [0, 1, 2, 4, 6])
    mask = 0b011  # traces 0,1,2 occur; 3 is absent
    pattern = find_unshattered_witness(fam, mask)
    assert pattern == {1: 1, 2: 1}
    # no member realizes the pattern on the subset
    for member in fam.members:
        assert any((member >> (e - 1)) & 1 != bit for e, bit in pattern.items())
    with pytest.raises(ParameterError):
        find_unshattered_witness(fam, 0)


# --- represent_monomial --------------------------------------------------------------


def eval_poly_on_mask(poly, mask):
    digits = tuple((mask >> i) & 1 for i in range(poly.dimension))
    return poly.evaluate(digits)


def monomial_value(monomial_mask, member_mask):
    return 1 if member_mask & monomial_mask == monomial_mask else 0


def test_represent_monomial_examples():
    # {∅, {1}} has VC dimension 1, so the size-1 monomial x_2 is already at
    # the bound and comes back unchanged (and indeed equals x_2 on the family)
    fam = SetFamily.from_masks(2, [0, 1])
    poly = represent_monomial(fam, 0b10)
    assert poly.terms == {(0, 1): 1}
    for member in fam.members:
        assert eval_poly_on_mask(poly, member) == monomial_value(0b10, member)

    # above the bound the reduction kicks in: x_1 x_2 rewrites to x_2 here
    # (absent pattern (0,1) gives (x_1+1) x_2 == 0 on the family)
    poly = represent_monomial(fam, 0b11)
    assert poly.terms == {(0, 1): 1}
    for member in fam.members:
        assert eval_poly_on_mask(poly, member) == monomial_value(0b11, member)

    # at or below the VC dimension the monomial comes back unchanged
    powerset = generate_family(2, FamilyKind.powerset())
    poly = represent_monomial(powerset, 0b11)
    assert poly.terms == {(1, 1): 1}

    low = generate_family(3, FamilyKind.lowweight(1))
    poly = represent_monomial(low, 0b011)
    assert poly.degree() <= 1
    for member in low.members:
        assert eval_poly_on_mask(poly, member) == monomial_value(0b011, member)


def test_represent_monomial_exhaustive_small():
    for n in (1, 2):
        for fam in all_nonempty_families(n):
            bound = vc_dim(fam)
            for mono in range(1 << n):
                poly = represent_monomial(fam, mono)
                assert poly.degree() <= bound
                for member in fam.members:
                    assert eval_poly_on_mask(poly, member) == monomial_value(mono, member)


def test_represent_monomial_rejects_empty():
    with pytest.raises(EmptyFamilyError):
        represent_monomial(SetFamily(2, ()), 1)
