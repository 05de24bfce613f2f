"""Executable theorem checks, scan harnesses, counterexample demos, and
finite-evidence searches for the two open questions.

Every theorem is checked in instance form as a bound inequality lhs <= rhs,
so no instance is vacuous. Scans report the tightest instance seen (largest
lhs/rhs) and collect violations, which are build-failing events. Searches
produce finite evidence tables only; they are labeled as such and never
extrapolate.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .clp import verify_clp_bound
from .errors import ParameterError, ResourceLimitError
from .families import (
    FamilyKind,
    SetFamily,
    binom_sum,
    embed_01,
    generate_family,
    is_prime,
    k_fold_sumset,
    pairwise_family,
)
from .interpolation import int_deg
from .polynomials import ReducedPolynomial, monomial_count, random_polynomial
from .sampling import SplitMix64, sample_distinct
from .vc import vc_dim

EXHAUSTIVE_MAX_N = 4
HEURISTIC_MAX_N = 8
CHUNK = 1 << 12


class TheoremId(enum.Enum):
    SAUER = "sauer"
    MAIN = "main"
    INTDEG_MAIN = "intdeg_main"
    INTDEG_LE_VC = "intdeg_le_vc"
    CLP_BOUND = "clp_bound"
    PSUMS = "psums"
    VC_MONOTONE = "vc_monotone"


def _coerce_theorem(theorem) -> TheoremId:
    if isinstance(theorem, TheoremId):
        return theorem
    try:
        return TheoremId(theorem)
    except ValueError:
        names = ", ".join(t.value for t in TheoremId)
        raise ParameterError(f"unknown theorem {theorem!r}; expected one of {names}") from None


@dataclass
class VerificationReport:
    theorem: str
    parameters: dict
    seed: int | None
    instances_checked: int
    violations: list = field(default_factory=list)
    extremes: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class CounterexampleReport:
    op: str
    n: int
    d: int
    family_size: int
    vc_star: int
    half_bound: int
    witness: bool


@dataclass(frozen=True)
class EvidenceRow:
    question: str
    n: int
    d: int
    mode: str
    best_size: int
    binom_bound: int
    half_bound: int
    certificate: tuple[int, ...]
    instances_examined: int


@dataclass(frozen=True)
class EvidenceTable:
    note: str
    rows: tuple[EvidenceRow, ...]


EVIDENCE_NOTE = (
    "Finite-search evidence only. The open questions allow an O(1) exponent slack, "
    "so no computation at fixed n can refute them; columns show raw bounds so growth "
    "can be eyeballed across rows."
)


def _family_instance(family: SetFamily) -> dict:
    return {"kind": "family", "n": family.ground_size, "members": list(family.members)}


def _poly_instance(poly: ReducedPolynomial) -> dict:
    return {
        "kind": "polynomial",
        "p": poly.modulus,
        "n": poly.dimension,
        "terms": poly.to_term_list(),
    }


def _instance_inequality(theorem: TheoremId, family: SetFamily, p: int | None) -> tuple[int, int]:
    """(lhs, rhs) of the instance-level inequality lhs <= rhs."""
    n = family.ground_size
    if theorem is TheoremId.SAUER:
        return len(family), binom_sum(n, vc_dim(family))
    if theorem is TheoremId.MAIN:
        d = vc_dim(pairwise_family(family, family, "sym_diff"))
        return len(family), 2 * binom_sum(n, d // 2)
    if theorem is TheoremId.INTDEG_MAIN:
        e = int_deg(embed_01(pairwise_family(family, family, "sym_diff"), 2))
        return len(family), 2 * binom_sum(n, e // 2)
    if theorem is TheoremId.INTDEG_LE_VC:
        return int_deg(embed_01(family, 2)), vc_dim(family)
    if theorem is TheoremId.PSUMS:
        if p is None or not is_prime(p):
            raise ParameterError("psums requires a prime modulus p")
        e = int_deg(k_fold_sumset(embed_01(family, p), p))
        return len(family), p * monomial_count(p, n, e // p)
    if theorem is TheoremId.VC_MONOTONE:
        lhs = vc_dim(family)
        rhs = min(vc_dim(pairwise_family(family, family, op)) for op in ("sym_diff", "intersect", "union"))
        return lhs, rhs
    raise ParameterError(
        "clp_bound instances are polynomials, not families; use the scan harnesses or verify_clp_bound"
    )


def check_instance(theorem, family: SetFamily, p: int | None = None) -> bool:
    """Evaluate one theorem instance; True means the inequality holds."""
    theorem = _coerce_theorem(theorem)
    family.require_nonempty("check_instance")
    lhs, rhs = _instance_inequality(theorem, family, p)
    return lhs <= rhs


def _ratio_key(lhs: int, rhs: int) -> tuple[int, int]:
    if rhs == 0:
        return (1, 1) if lhs == 0 else (1 << 62, 1)
    return (lhs, rhs)


def _tighter(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """True when ratio a strictly exceeds ratio b (exact cross-multiplication)."""
    ka, kb = _ratio_key(*a), _ratio_key(*b)
    return ka[0] * kb[1] > kb[0] * ka[1]


def _ratio_float(lhs: int, rhs: int) -> float:
    num, den = _ratio_key(lhs, rhs)
    return num / den


def _extreme_dict(instance: dict, lhs: int, rhs: int) -> dict:
    return {"instance": instance, "lhs": lhs, "rhs": rhs, "ratio": _ratio_float(lhs, rhs)}


class _ScanState:
    """Accumulates count, violations and the tightest instance, in scan order."""

    def __init__(self):
        self.count = 0
        self.violations: list[dict] = []
        self.extreme: tuple[tuple[int, int], dict] | None = None

    def record(self, instance: dict, lhs: int, rhs: int) -> None:
        self.count += 1
        if lhs > rhs:
            self.violations.append({"instance": instance, "lhs": lhs, "rhs": rhs})
        if self.extreme is None or _tighter((lhs, rhs), self.extreme[0]):
            self.extreme = ((lhs, rhs), _extreme_dict(instance, lhs, rhs))

    def merge(self, other: "_ScanState") -> None:
        self.count += other.count
        self.violations.extend(other.violations)
        if other.extreme is not None and (
            self.extreme is None or _tighter(other.extreme[0], self.extreme[0])
        ):
            self.extreme = other.extreme


def _family_from_char(char: int, n: int) -> SetFamily:
    members = tuple(mask for mask in range(1 << n) if char >> mask & 1)
    return SetFamily(n, members)


def _poly_from_coeff_mask(coeff_mask: int, n: int) -> ReducedPolynomial:
    terms = {}
    for mono in range(1 << n):
        if coeff_mask >> mono & 1:
            terms[tuple(mono >> i & 1 for i in range(n))] = 1
    return ReducedPolynomial(2, n, terms)


def _scan_family_chunk(args) -> _ScanState:
    theorem_value, n, p, start, stop = args
    theorem = TheoremId(theorem_value)
    state = _ScanState()
    for char in range(start, stop):
        family = _family_from_char(char, n)
        lhs, rhs = _instance_inequality(theorem, family, p)
        state.record(_family_instance(family), lhs, rhs)
    return state


def _scan_poly_chunk(args) -> _ScanState:
    n, start, stop = args
    state = _ScanState()
    for coeff_mask in range(start, stop):
        poly = _poly_from_coeff_mask(coeff_mask, n)
        report = verify_clp_bound(poly)
        state.record(_poly_instance(poly), report.rank, report.bound)
    return state


def _run_chunks(worker, chunk_args, workers: int, progress=None, total: int | None = None) -> _ScanState:
    state = _ScanState()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for partial in pool.map(worker, chunk_args):
                state.merge(partial)
                if progress is not None:
                    progress(state.count, total)
    else:
        for args in chunk_args:
            state.merge(worker(args))
            if progress is not None:
                progress(state.count, total)
    return state


def exhaustive_scan(
    theorem,
    n: int,
    p: int | None = None,
    *,
    workers: int = 1,
    progress=None,
) -> VerificationReport:
    """Check every instance over ground size n (families, or F_2 polynomials
    for the rank-bound theorem). Instance space is chunked so long scans can
    run concurrently and report progress; the merged report is deterministic.
    """
    theorem = _coerce_theorem(theorem)
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if n > EXHAUSTIVE_MAX_N:
        raise ResourceLimitError(
            f"exhaustive scan over n = {n} enumerates 2**{1 << n} instances; use random_scan"
        )
    if theorem is TheoremId.CLP_BOUND:
        if p not in (None, 2):
            raise ResourceLimitError(
                "exhaustive polynomial enumeration is tractable over F_2 only; use random_scan"
            )
        total = 1 << (1 << n)
        chunks = [(n, start, min(start + CHUNK, total)) for start in range(0, total, CHUNK)]
        state = _run_chunks(_scan_poly_chunk, chunks, workers, progress, total)
        parameters = {"n": n, "p": 2, "mode": "exhaustive", "samples": None}
    else:
        total = (1 << (1 << n)) - 1
        chunks = [
            (theorem.value, n, p, start, min(start + CHUNK, total + 1))
            for start in range(1, total + 1, CHUNK)
        ]
        state = _run_chunks(_scan_family_chunk, chunks, workers, progress, total)
        parameters = {"n": n, "p": p, "mode": "exhaustive", "samples": None}
    return VerificationReport(
        theorem=theorem.value,
        parameters=parameters,
        seed=None,
        instances_checked=state.count,
        violations=state.violations,
        extremes=state.extreme[1] if state.extreme else None,
    )


def _check_family_instances(args) -> _ScanState:
    theorem_value, p, instances = args
    theorem = TheoremId(theorem_value)
    state = _ScanState()
    for n, members in instances:
        family = SetFamily(n, members)
        lhs, rhs = _instance_inequality(theorem, family, p)
        state.record(_family_instance(family), lhs, rhs)
    return state


def _check_poly_instances(args) -> _ScanState:
    (instances,) = args
    state = _ScanState()
    for p, n, term_list in instances:
        poly = ReducedPolynomial.from_term_list(p, n, term_list)
        report = verify_clp_bound(poly)
        state.record(_poly_instance(poly), report.rank, report.bound)
    return state


def random_scan(
    theorem,
    n: int,
    p: int | None = None,
    samples: int = 100,
    seed: int = 0,
    *,
    workers: int = 1,
    progress=None,
) -> VerificationReport:
    """Seeded random instances: uniform family sizes with uniform distinct
    members, or random bounded-degree polynomials for the rank-bound theorem
    (target degrees cycle through 0..(p-1)*n). Reproducible given the seed.
    """
    theorem = _coerce_theorem(theorem)
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if samples < 1:
        raise ParameterError(f"samples must be >= 1, got {samples}")
    gen = SplitMix64(seed)
    if theorem is TheoremId.CLP_BOUND:
        modulus = 2 if p is None else p
        if not is_prime(modulus):
            raise ParameterError(f"modulus must be prime, got {modulus}")
        dmax = (modulus - 1) * n
        instances = []
        for i in range(samples):
            poly = random_polynomial(modulus, n, i % (dmax + 1), gen)
            instances.append((modulus, n, tuple(poly.to_term_list())))
        chunks = [
            (instances[start : start + CHUNK],) for start in range(0, len(instances), CHUNK)
        ]
        state = _run_chunks(_check_poly_instances, chunks, workers, progress, samples)
        parameters = {"n": n, "p": modulus, "mode": "random", "samples": samples}
    else:
        universe = 1 << n
        instances = []
        for _ in range(samples):
            size = 1 + gen.below(universe)
            instances.append((n, tuple(sample_distinct(universe, size, gen))))
        chunks = [
            (theorem.value, p, instances[start : start + CHUNK])
            for start in range(0, len(instances), CHUNK)
        ]
        state = _run_chunks(_check_family_instances, chunks, workers, progress, samples)
        parameters = {"n": n, "p": p, "mode": "random", "samples": samples}
    return VerificationReport(
        theorem=theorem.value,
        parameters=parameters,
        seed=seed,
        instances_checked=state.count,
        violations=state.violations,
        extremes=state.extreme[1] if state.extreme else None,
    )


def counterexample_demo(op: str, n: int, d: int) -> CounterexampleReport:
    """The weight-bounded families on which the halved bound fails for
    intersection and union: the family is closed under the operation, so the
    star family keeps VC dimension d while the family itself has the full
    binomial-sum size.
    """
    if op not in ("intersect", "union"):
        raise ParameterError(f"counterexample op must be intersect or union, got {op!r}")
    if d < 2:
        raise ParameterError(f"the construction needs d >= 2, got {d}")
    if d > n:
        raise ParameterError(f"d = {d} exceeds n = {n}")
    kind = FamilyKind.lowweight(d) if op == "intersect" else FamilyKind.highweight(d)
    family = generate_family(n, kind)
    star = pairwise_family(family, family, op)
    half_bound = 2 * binom_sum(n, d // 2)
    return CounterexampleReport(
        op=op,
        n=n,
        d=d,
        family_size=len(family),
        vc_star=vc_dim(star),
        half_bound=half_bound,
        witness=len(family) > half_bound,
    )


def open_question_constraint(question: str, family: SetFamily, d: int) -> bool:
    """The side condition each open-question search maximizes |A| under."""
    if question == "q1":
        return (
            vc_dim(pairwise_family(family, family, "intersect")) <= d
            and vc_dim(pairwise_family(family, family, "union")) <= d
        )
    if question == "q2":
        double = pairwise_family(family, family, "sym_diff")
        triple = pairwise_family(double, family, "sym_diff")
        return vc_dim(triple) <= d
    raise ParameterError(f"unknown question {question!r}; expected q1 or q2")


def _heuristic_search(question: str, n: int, d: int, budget: int, seed: int):
    universe = 1 << n
    gen = SplitMix64(seed)
    evals = 0
    best: tuple[int, tuple[int, ...]] | None = None

    def feasible(members: tuple[int, ...]) -> bool:
        nonlocal evals
        evals += 1
        return open_question_constraint(question, SetFamily(n, members), d)

    def consider(members: tuple[int, ...]) -> None:
        nonlocal best
        if best is None or len(members) > best[0]:
            best = (len(members), members)

    while evals < budget:
        size = 1 + gen.below(universe)
        current = set(sample_distinct(universe, size, gen))
        # repair: drop random members until the constraint holds
        repaired = False
        while current and evals < budget:
            if feasible(tuple(sorted(current))):
                repaired = True
                break
            ordered = sorted(current)
            current.remove(ordered[gen.below(len(ordered))])
        if not repaired:
            continue
        consider(tuple(sorted(current)))
        improved = True
        while improved and evals < budget:
            improved = False
            # greedy adds; every add has equal gain, take the smallest mask
            for cand in range(universe):
                if cand in current:
                    continue
                trial = tuple(sorted(current | {cand}))
                if evals >= budget:
                    break
                if feasible(trial):
                    current.add(cand)
                    consider(trial)
                    improved = True
                    break
            if improved:
                continue
            # plateau: try single swaps to open up a later add
            for out in sorted(current):
                for inc in range(universe):
                    if inc in current:
                        continue
                    trial = tuple(sorted((current - {out}) | {inc}))
                    if evals >= budget:
                        break
                    if feasible(trial):
                        current.remove(out)
                        current.add(inc)
                        improved = True
                        break
                if improved or evals >= budget:
                    break
    return best, evals


def search_open_question(
    question: str,
    n: int,
    d: int,
    mode: str = "exhaustive",
    *,
    budget: int = 5000,
    seed: int = 0,
) -> EvidenceTable:
    """Largest family found satisfying the question's constraint.

    Exhaustive mode enumerates every nonempty family (n <= 4); heuristic mode
    runs seeded steepest-ascent with restarts under an evaluation budget
    (n <= 8). The winning certificate is re-verified against the constraint
    before it is reported.
    """
    if question not in ("q1", "q2"):
        raise ParameterError(f"unknown question {question!r}; expected q1 or q2")
    if d < 0:
        raise ParameterError(f"d must be nonnegative, got {d}")
    if mode == "exhaustive":
        if n > EXHAUSTIVE_MAX_N:
            raise ResourceLimitError(
                f"exhaustive search over n = {n} enumerates 2**{1 << n} families; use heuristic mode"
            )
        best: tuple[int, tuple[int, ...]] | None = None
        count = 0
        for char in range(1, 1 << (1 << n)):
            count += 1
            size = char.bit_count()
            if best is not None and size <= best[0]:
                continue
            family = _family_from_char(char, n)
            if open_question_constraint(question, family, d):
                best = (size, family.members)
        examined = count
    elif mode == "heuristic":
        if n > HEURISTIC_MAX_N:
            raise ResourceLimitError(f"heuristic search is limited to n <= {HEURISTIC_MAX_N}")
        if budget < 1:
            raise ParameterError(f"budget must be >= 1, got {budget}")
        best, examined = _heuristic_search(question, n, d, budget, seed)
    else:
        raise ParameterError(f"unknown mode {mode!r}; expected exhaustive or heuristic")

    if best is None:
        raise ResourceLimitError(
            "no feasible family found within budget; raise the budget or change the seed"
        )
    certificate = SetFamily(n, best[1])
    if not open_question_constraint(question, certificate, d):
        raise AssertionError("certificate failed re-verification; this is a bug")
    row = EvidenceRow(
        question=question,
        n=n,
        d=d,
        mode=mode,
        best_size=best[0],
        binom_bound=binom_sum(n, d),
        half_bound=2 * binom_sum(n, d // 2),
        certificate=certificate.members,
        instances_examined=examined,
    )
    return EvidenceTable(note=EVIDENCE_NOTE, rows=(row,))
