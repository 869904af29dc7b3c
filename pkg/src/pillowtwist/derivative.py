"""Selection and verification of derivative sublinks of even-slope lifts.

An even-numerator slope lifts to pq disjoint curves in the closed fiber; a
derivative candidate is a choice of (p-1)(q-1) of them whose removal leaves
a single planar piece.  Validity of a subset reduces to connectivity of the
complement, which is read off the dual graph of the full lift's region
decomposition, so the lexicographically least valid subset is found by a
pruned backtracking search.

Verification evaluates every condition in the contract: homology
independence of the chosen classes, the planar connected complement, deck
invariance of the full lift, and vanishing of the linking matrix computed
through the block Seifert form in the matched spine basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .census import complement_components, decompose_chordal
from .curves import Multicurve, deck_image, lift_slope
from .fiber import FiberComplex, TorusParams
from .homology import homology_classes, homology_rank
from .seifert import SeifertData, compute_seifert_matrix
from .slope import Slope


@dataclass(frozen=True)
class DerivativeReport:
    params: TorusParams
    slope: Slope
    subset: tuple[int, ...]
    homology_rank: int
    complement_census: tuple[tuple[int, int, int], ...]
    deck_invariant: bool
    linking_matrix: tuple[tuple[int, ...], ...]
    verdict: bool

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "p": self.params.p,
            "q": self.params.q,
            "slope": str(self.slope),
            "subset": list(self.subset),
            "homology_rank": self.homology_rank,
            "complement_census": [list(c) for c in self.complement_census],
            "deck_invariant": self.deck_invariant,
            "linking_matrix": [list(r) for r in self.linking_matrix],
            "verdict": self.verdict,
        }


def _connected(n_nodes: int, edges: list[tuple[int, int]]) -> bool:
    if n_nodes <= 1:
        return True
    parent = list(range(n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    roots = {find(i) for i in range(n_nodes)}
    return len(roots) == 1


def select_sublink(fc: FiberComplex, lift: Multicurve) -> tuple[int, ...]:
    """Lexicographically least subset cutting the fiber to a planar piece.

    The complement of a subset S is connected exactly when the dual graph
    of the full lift stays connected using only the edges of the unchosen
    components.
    """
    pq = fc.params.deck_order
    if len(lift) != pq:
        raise ValueError("derivative selection needs the full even-slope lift")
    n = fc.genus
    dec = decompose_chordal(fc, lift)
    sides = dec.component_side_regions
    n_regions = dec.n_regions
    best: list[int] | None = None

    def feasible(chosen: set[int], next_idx: int) -> bool:
        # Using every not-yet-excluded component must connect the regions.
        edges = [sides[i] for i in range(pq) if i not in chosen]
        return _connected(n_regions, edges)

    def search(start: int, chosen: list[int]) -> list[int] | None:
        if len(chosen) == n:
            edges = [sides[i] for i in range(pq) if i not in set(chosen)]
            if _connected(n_regions, edges):
                return chosen[:]
            return None
        remaining_needed = n - len(chosen)
        for idx in range(start, pq - remaining_needed + 1):
            trial = chosen + [idx]
            edges = [sides[i] for i in range(pq) if i not in set(trial)]
            if not _connected(n_regions, edges):
                continue
            out = search(idx + 1, trial)
            if out is not None:
                return out
        return None

    best = search(0, [])
    if best is None:
        raise AssertionError("no planar-connected subset exists; lift is inconsistent")
    return tuple(best)


def verify_derivative(
    fc: FiberComplex,
    lift: Multicurve,
    subset: tuple[int, ...],
    seifert: SeifertData | None = None,
) -> DerivativeReport:
    """Evaluate all derivative conditions for a chosen sublink."""
    if seifert is None:
        seifert = compute_seifert_matrix(fc.params, fc)
    n = fc.genus
    pq = fc.params.deck_order
    sub = Multicurve(fc.params, tuple(lift.components[i] for i in subset))
    rows = homology_classes(fc, sub)
    rank = homology_rank(rows)
    census = tuple(sorted(complement_components(fc, sub)))
    single_planar = census == ((2 - 2 * len(subset), 2 * len(subset), 0),)
    deck_ok = (
        deck_image(fc, lift).unoriented_set() == lift.unoriented_set()
    )
    w = seifert.block
    dim = len(w)
    link = []
    for ri in rows:
        row_out = []
        for rj in rows:
            val = sum(ri[a] * w[a][b] * rj[b] for a in range(dim) for b in range(dim))
            row_out.append(val)
        link.append(tuple(row_out))
    linking = tuple(link)
    verdict = (
        rank == n
        and single_planar
        and deck_ok
        and all(all(x == 0 for x in row) for row in linking)
    )
    return DerivativeReport(
        params=fc.params,
        slope=lift.slope if lift.slope is not None else Slope(0, 1),
        subset=tuple(subset),
        homology_rank=rank,
        complement_census=census,
        deck_invariant=deck_ok,
        linking_matrix=linking,
        verdict=verdict,
    )


def framed_link_report(params: TorusParams, slope: Slope, fc: FiberComplex | None = None) -> dict:
    """JSON-ready framed-link report for the derivative of an even slope."""
    if slope.a % 2 != 0:
        raise ValueError(
            f"slope {slope} has odd numerator: the lift is a single separating "
            "curve, not a derivative candidate"
        )
    if fc is None:
        from .fiber import build_fiber

        fc = build_fiber(params)
    from .farey import rational_closure, summand_slopes

    lift = lift_slope(fc, slope)
    subset = select_sublink(fc, lift)
    report = verify_derivative(fc, lift, subset)
    (r1, s1), (r2, s2) = summand_slopes(params.p, params.q)
    out = {
        "schema_version": 1,
        "p": params.p,
        "q": params.q,
        "slope": str(slope),
        "component_count": len(lift),
        "derivative_size": len(subset),
        "subset": list(subset),
        "framings": [0] * len(subset),
        "verdict": report.verdict,
        "summand_slope_candidates": [[r1, s1], [r2, s2]],
        "closure": rational_closure(params.p, params.q, slope),
    }
    return out
