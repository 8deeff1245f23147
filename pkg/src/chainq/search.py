"""Exhaustive search over slot assignments and reproduction of published tables.

Every assignment of the irreducible factors of x^n - 1 to slots 0..k+1 is
enumerated in mixed-radix order (assignment index i has the slot of the first
coset representative as its most significant base-(k+2) digit).  Assignments
whose divisibility certificate passes are evaluated: Gray image, exact
containment audit, minimum distances, CSS parameters for both constructions.
Results are emitted in index order regardless of worker count, and the JSON
output carries no timing or host data, so output files are byte-stable.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import dataclass, field

from . import polyring as pr
from .chainring import ChainRing
from .code import CyclicCodeR, SlotAssignment
from .field import DualBasis, gf_cache, self_dual_basis
from .fqlinear import BudgetExceeded, cyclic_code, min_distance
from .gray import gray_image_code, residue_torsion_distance
from .polyring import FactorCache, factor_xn_minus_1
from .quantum import NotDualContaining, QuantumParams, construction_i, construction_ii, css

CHUNK = 1024


@dataclass(frozen=True)
class SearchBudgets:
    max_assignments: int = 10**6
    distance_words: int = 2**26
    bound_words: int = 2**16


def _params_dict(p: QuantumParams | None) -> dict | None:
    if p is None:
        return None
    return {
        "q": p.q,
        "n": p.n,
        "l": p.l,
        "d": p.d,
        "d_exact": p.d_exact,
        "singleton_slack": p.singleton_slack,
        "mds": p.mds,
    }


@dataclass(frozen=True)
class SearchResult:
    """One certificate-passing assignment with both constructions evaluated.

    params_i / params_ii follow the published pipeline, which accepts the
    divisibility certificate as proof of dual containment.  contains_dual is
    the exact membership audit; when it is False the parameters describe a
    CSS code that does not actually exist (possible only for k >= 2).
    """

    index: int
    n: int
    m: int
    k: int
    slots: tuple[int, ...]
    type_vector: tuple[int, ...]
    log2_size: int
    contains_dual: bool
    gray_n: int
    gray_dim: int
    d: int
    d_exact: bool
    params_i: QuantumParams | None
    params_ii: QuantumParams | None
    timing: dict = field(default_factory=dict, compare=False, repr=False)

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "slots": list(self.slots),
            "type": list(self.type_vector),
            "log2_size": self.log2_size,
            "contains_dual": self.contains_dual,
            "gray": [self.gray_n, self.gray_dim, self.d],
            "d_exact": self.d_exact,
            "quantum_i": _params_dict(self.params_i),
            "quantum_ii": _params_dict(self.params_ii),
        }

    def rank_key(self):
        l = -1 if self.params_i is None else self.params_i.l
        return (-l, -self.d, self.index)


def assignment_count(num_factors: int, k: int) -> int:
    return (k + 2) ** num_factors


def index_to_slots(index: int, num_factors: int, k: int) -> tuple[int, ...]:
    """Mixed-radix digits of the index, most significant digit first."""
    base = k + 2
    digits = []
    for _ in range(num_factors):
        index, r = divmod(index, base)
        digits.append(r)
    return tuple(reversed(digits))


def slots_to_index(slots, k: int) -> int:
    base = k + 2
    index = 0
    for s in slots:
        index = index * base + s
    return index


def evaluate_assignment(
    ring: ChainRing,
    fac,
    index: int,
    budgets: SearchBudgets = SearchBudgets(),
    basis: DualBasis | None = None,
) -> SearchResult | None:
    """Evaluate one assignment; None when the certificate rejects it."""
    slots = index_to_slots(index, len(fac.factors), ring.k)
    code = CyclicCodeR(ring, SlotAssignment(fac, ring.k, slots))
    t0 = time.perf_counter()
    ok, _ = code.is_dual_containing()
    t_cert = time.perf_counter() - t0
    if not ok:
        return None
    if basis is None:
        basis = self_dual_basis(ring.gf)
    t0 = time.perf_counter()
    exact_dc = code.contains_dual()
    t_audit = time.perf_counter() - t0
    t0 = time.perf_counter()
    try:
        params_i, image = construction_i(code, budgets.distance_words, budgets.bound_words)
        d, d_exact = params_i.d, params_i.d_exact
    except NotDualContaining:
        # certificate passed but the classical dimension is below n/2
        image = gray_image_code(code)
        d, d_exact = min_distance(image, budgets.distance_words, budgets.bound_words)
        params_i = None
    if not d_exact and ring.k == 1:
        # enumeration ran out of budget; the residue/torsion split often
        # finishes because both component codes live over F_q, not F_q^2
        d_s, e_s = residue_torsion_distance(
            code, budgets.distance_words, budgets.bound_words
        )
        if e_s or d_s > d:
            d, d_exact = (d_s, True) if e_s else (max(d, d_s), False)
            if params_i is not None:
                params_i = css(image, d, d_exact, certified=True)
    t_dist = time.perf_counter() - t0
    t0 = time.perf_counter()
    if params_i is not None:
        params_ii, _ = construction_ii(
            code,
            basis,
            budgets.distance_words,
            budgets.bound_words,
            gray_distance=d,
        )
    else:
        params_ii = None
    t_binary = time.perf_counter() - t0
    return SearchResult(
        index=index,
        n=code.n,
        m=code.gf.m,
        k=ring.k,
        slots=slots,
        type_vector=code.type_vector,
        log2_size=code.log2_size,
        contains_dual=exact_dc,
        gray_n=image.n,
        gray_dim=image.dim,
        d=d,
        d_exact=d_exact,
        params_i=params_i,
        params_ii=params_ii,
        timing={
            "certificate_s": t_cert,
            "audit_s": t_audit,
            "distance_s": t_dist,
            "binary_s": t_binary,
        },
    )


_WORKER: dict = {}


def _worker_init(n, m, modulus, k, budgets, cache_dir):
    gf = gf_cache(m, modulus)
    cache = FactorCache(cache_dir) if cache_dir else None
    _WORKER["ring"] = ChainRing(gf, k)
    _WORKER["fac"] = factor_xn_minus_1(n, gf, cache)
    _WORKER["budgets"] = budgets
    _WORKER["basis"] = self_dual_basis(gf)


def _worker_chunk(bounds) -> list[SearchResult]:
    lo, hi = bounds
    out = []
    for index in range(lo, hi):
        res = evaluate_assignment(
            _WORKER["ring"], _WORKER["fac"], index, _WORKER["budgets"], _WORKER["basis"]
        )
        if res is not None:
            out.append(res)
    return out


def run_search(
    n: int,
    m: int,
    k: int,
    budgets: SearchBudgets = SearchBudgets(),
    workers: int = 1,
    modulus: int | None = None,
    cache: FactorCache | None = None,
) -> list[SearchResult]:
    """All certificate-passing assignments for length n over GF(2^m).

    Deterministic: results come back in assignment-index order for any
    worker count.
    """
    gf = gf_cache(m, modulus)
    fac = factor_xn_minus_1(n, gf, cache)
    total = assignment_count(len(fac.factors), k)
    if total > budgets.max_assignments:
        raise BudgetExceeded(total, budgets.max_assignments, "assignment enumeration")
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
    cache_dir = cache.path if cache is not None else None
    if workers <= 1:
        _worker_init(n, m, modulus, k, budgets, cache_dir)
        chunks = [_worker_chunk(b) for b in bounds]
    else:
        with multiprocessing.get_context("fork").Pool(
            processes=workers,
            initializer=_worker_init,
            initargs=(n, m, modulus, k, budgets, cache_dir),
        ) as pool:
            chunks = pool.map(_worker_chunk, bounds)
    results: list[SearchResult] = []
    for chunk in chunks:
        results.extend(chunk)
    return results


def rank_results(results: list[SearchResult]) -> list[SearchResult]:
    return sorted(results, key=SearchResult.rank_key)


def pareto_front(results: list[SearchResult]) -> list[SearchResult]:
    """Results with a CSS code that no other result dominates on (l, d)."""
    live = [r for r in results if r.params_i is not None]
    front = []
    for r in live:
        dominated = any(
            (s.params_i.l >= r.params_i.l and s.d >= r.d)
            and (s.params_i.l > r.params_i.l or s.d > r.d)
            for s in live
        )
        if not dominated:
            front.append(r)
    return rank_results(front)


def write_results_jsonl(results: list[SearchResult], path) -> None:
    """Index-ordered JSON lines; no timing or host data, so reruns are identical."""
    ordered = sorted(results, key=lambda r: r.index)
    with open(path, "w") as fh:
        for r in ordered:
            fh.write(json.dumps(r.to_json_dict(), separators=(",", ":")) + "\n")


@dataclass(frozen=True)
class PublishedRow:
    """A published table row: length, type column, and both parameter claims.

    The published type column prints three entries for a two-level ring; it
    is read as (l_0, l_1) = (first, last).  The published distance for the
    second construction is a lower bound.
    """

    n: int
    type_raw: tuple[int, ...]
    type_claim: tuple[int, int]
    gray_d_claim: int
    quantum_i: tuple[int, int, int]
    quantum_ii: tuple[int, int, int]


TABLE1_PUBLISHED: tuple[PublishedRow, ...] = (
    PublishedRow(7, (6, 0, 1), (6, 1), 2, (14, 12, 2), (28, 24, 2)),
    PublishedRow(17, (13, 0, 4), (13, 4), 4, (34, 26, 4), (68, 52, 4)),
    PublishedRow(31, (25, 0, 6), (25, 6), 4, (62, 50, 4), (124, 100, 4)),
    PublishedRow(35, (30, 0, 5), (30, 5), 4, (70, 60, 4), (140, 120, 4)),
    PublishedRow(43, (36, 0, 0), (36, 0), 5, (86, 78, 5), (172, 156, 5)),
)


@dataclass(frozen=True)
class TableRowReport:
    row: PublishedRow
    status: str
    matching_indices: tuple[int, ...]
    type_matches: tuple[SearchResult, ...]
    best: SearchResult | None
    front: tuple[SearchResult, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Table1Report:
    m: int
    k: int
    rows: tuple[TableRowReport, ...] = field(default_factory=tuple)


def _dimension_reachable(fac, k: int, target_dim: int) -> bool:
    """Whether any assignment attains sum_i (k+1-i) * l_i == target_dim."""
    degs = [len(c) for c in fac.cosets]
    reachable = {0}
    for d in degs:
        step = set()
        for v in reachable:
            for s in range(k + 2):
                weight = 0 if s == 0 else (k + 2 - s) * d
                step.add(v + weight)
        reachable = step
    return target_dim in reachable


def residue_distance(result: SearchResult, fac, budgets: SearchBudgets) -> int:
    """Distance of the residue code <fhat_1> = C mod u, an [n, l_0] code."""
    gf = gf_cache(result.m)
    fhat1 = (1,)
    for f, s in zip(fac.factors, result.slots):
        if s != 1:
            fhat1 = pr.mul(gf, fhat1, f)
    res = cyclic_code(gf, result.n, fhat1)
    d, _ = min_distance(res, budgets.distance_words, budgets.bound_words)
    return d


def _triple(r: SearchResult) -> str:
    """[[n, l, d]] with a >= marker when the distance is only a lower bound."""
    mark = "" if r.d_exact else ">="
    return f"[[{r.params_i.n},{r.params_i.l},{mark}{r.d}]]"


def reproduce_table1(
    budgets: SearchBudgets = SearchBudgets(),
    workers: int = 1,
    cache: FactorCache | None = None,
) -> Table1Report:
    """Audit of every published (m=2, k=1) row against exhaustive search.

    A row is a match when some assignment attains the claimed [[n, l, d]],
    an improvement when additionally some assignment strictly dominates the
    claim, and irreproducible when no assignment attains it.  Irreproducible
    rows carry diagnostic notes: an unreachable-dimension argument where the
    claimed dimension cannot arise from any assignment, and a residue-code
    comparison where the claimed distance matches C mod u instead of the
    Gray image.
    """
    m, k = 2, 1
    rows = []
    for pub in TABLE1_PUBLISHED:
        results = run_search(pub.n, m, k, budgets, workers, cache=cache)
        fac = factor_xn_minus_1(pub.n, gf_cache(m), cache)
        front = tuple(pareto_front(results))
        target_n, target_l, target_d = pub.quantum_i
        exact_hits = tuple(
            r.index
            for r in results
            if r.params_i is not None
            and (r.params_i.n, r.params_i.l, r.params_i.d) == (target_n, target_l, target_d)
        )
        dominating = [
            r
            for r in results
            if r.params_i is not None
            and r.params_i.l >= target_l
            and r.d >= target_d
            and (r.params_i.l > target_l or r.d > target_d)
        ]
        type_matches = tuple(
            r for r in results if r.params_i is not None and r.type_vector == pub.type_claim
        )
        notes = []
        if exact_hits:
            status = "improvement" if dominating else "match"
            if dominating:
                b = rank_results(dominating)[0]
                notes.append(
                    f"claimed [[{target_n},{target_l},{target_d}]] attained but "
                    f"dominated by {_triple(b)}"
                )
        else:
            status = "irreproducible"
            dim_needed = (target_n + target_l) // 2
            if not _dimension_reachable(fac, k, dim_needed):
                degs = sorted(len(c) for c in fac.cosets)
                notes.append(
                    f"classical dimension {dim_needed} over GF(4) is unreachable: "
                    f"no disjoint slot sums of factor degrees {degs} give "
                    f"2*l0 + l1 = {dim_needed}"
                )
            if type_matches:
                b = rank_results(list(type_matches))[0]
                res_d = max(residue_distance(r, fac, budgets) for r in type_matches)
                notes.append(
                    f"assignments of the claimed type {pub.type_claim} give "
                    f"{_triple(b)}; the claimed distance "
                    f"{target_d} equals the residue code C mod u distance {res_d}"
                    if res_d == target_d
                    else f"assignments of the claimed type {pub.type_claim} give "
                    f"{_triple(b)}"
                )
            alt = [
                r
                for r in results
                if r.params_i is not None and r.type_vector == pub.type_raw[:2]
            ]
            if alt and pub.type_raw[:2] != pub.type_claim:
                b = rank_results(alt)[0]
                notes.append(
                    f"reading the type column as {pub.type_raw[:2]} gives "
                    f"{_triple(b)} instead"
                )
        best = rank_results(results)[0] if results else None
        rows.append(
            TableRowReport(
                row=pub,
                status=status,
                matching_indices=exact_hits,
                type_matches=type_matches,
                best=best,
                front=front,
                notes=tuple(notes),
            )
        )
    return Table1Report(m=m, k=k, rows=tuple(rows))
