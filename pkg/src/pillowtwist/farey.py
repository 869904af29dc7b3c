"""Farey graph engine: edges, arc-slides, summand slopes, tangle closures.

Two extended rationals p/q and r/s span a Farey edge when |ps - qr| = 1.
The two triangles on an edge are completed by the mediant (p+r)/(q+s) and
the difference (p-r)/(q-s).  An arc-slide replaces one endpoint of an edge
by the third vertex of an adjacent triangle; any edge can be carried to the
standard edge (0/1, 1/0) by a continued-fraction descent of arc-slides.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .slope import INFINITY, ZERO, Slope


def is_edge(s1: Slope, s2: Slope) -> bool:
    return abs(s1.a * s2.b - s1.b * s2.a) == 1


@dataclass(frozen=True)
class FareyEdge:
    """An unordered Farey edge, stored with endpoints in sorted order."""

    low: Slope
    high: Slope

    def __post_init__(self) -> None:
        lo, hi = self.low, self.high
        if hi.sort_key() < lo.sort_key():
            lo, hi = hi, lo
        if lo == hi:
            raise ValueError("edge endpoints must be distinct")
        if not is_edge(lo, hi):
            raise ValueError(f"({lo}, {hi}) is not a Farey edge")
        object.__setattr__(self, "low", lo)
        object.__setattr__(self, "high", hi)

    @property
    def endpoints(self) -> frozenset[Slope]:
        return frozenset((self.low, self.high))

    def other(self, s: Slope) -> Slope:
        if s == self.low:
            return self.high
        if s == self.high:
            return self.low
        raise ValueError(f"{s} is not an endpoint of {self}")

    def __str__(self) -> str:
        return f"({self.low}, {self.high})"


STANDARD_EDGE = FareyEdge(ZERO, INFINITY)


def triangle_completions(edge: FareyEdge) -> tuple[Slope, Slope]:
    """Third vertices of the two Farey triangles containing the edge."""
    x, y = edge.low, edge.high
    med = Slope(x.a + y.a, x.b + y.b)
    dif = Slope(x.a - y.a, x.b - y.b)
    return med, dif


@dataclass(frozen=True)
class SlidePath:
    """A sequence of edges in which consecutive edges differ by an arc-slide."""

    steps: tuple[FareyEdge, ...]

    def __post_init__(self) -> None:
        for prev, nxt in zip(self.steps, self.steps[1:]):
            _check_slide(prev, nxt)

    def __len__(self) -> int:
        return max(len(self.steps) - 1, 0)

    def __iter__(self):
        return iter(self.steps)


def _check_slide(prev: FareyEdge, nxt: FareyEdge) -> None:
    shared = prev.endpoints & nxt.endpoints
    if len(shared) != 1:
        raise ValueError(f"consecutive edges {prev} -> {nxt} share {len(shared)} endpoints")
    kept = next(iter(shared))
    old = prev.other(kept)
    new = nxt.other(kept)
    # Replaced, kept and new vertices must be mutually joined by Farey edges.
    if not (is_edge(old, new) and is_edge(kept, new)):
        raise ValueError(f"{prev} -> {nxt} is not an arc-slide")


def _complexity(s: Slope) -> int:
    return abs(s.a) + s.b


def slide_path(start: FareyEdge, goal: FareyEdge) -> SlidePath:
    """A path of arc-slides from one edge to another.

    Descends by replacing an endpoint with the mediant or difference of the
    current pair, greedily reducing |a| + b, which is the continued-fraction
    expansion when the goal is the standard edge (0/1, 1/0).  For a general
    goal the descent is run from both ends and the two halves are joined at
    the standard edge.
    """
    if start == goal:
        return SlidePath((start,))
    if goal == STANDARD_EDGE:
        return SlidePath(tuple(_descend(start)))
    if start == STANDARD_EDGE:
        return SlidePath(tuple(reversed(_descend(goal))))
    first = _descend(start)
    second = _descend(goal)
    spliced = first + list(reversed(second))[1:]
    # Collapse immediate backtracks produced by the splice.
    out: list[FareyEdge] = []
    for e in spliced:
        if len(out) >= 2 and out[-2] == e:
            out.pop()
        else:
            out.append(e)
    return SlidePath(tuple(out))


def _descend(edge: FareyEdge) -> list[FareyEdge]:
    """Arc-slide descent from an edge to the standard edge (0/1, 1/0).

    Each step replaces the endpoint of larger complexity |a| + b by its sum
    or difference with the kept endpoint, whichever is smaller; this is the
    Euclidean algorithm on the unimodular pair and strictly decreases the
    total complexity until the standard edge is reached.
    """
    path = [edge]
    cur = edge
    while cur != STANDARD_EDGE:
        x, y = cur.low, cur.high
        if _complexity(y) > _complexity(x) or (
            _complexity(y) == _complexity(x) and y.sort_key() > x.sort_key()
        ):
            kept, repl = x, y
        else:
            kept, repl = y, x
        thirds = []
        for sign in (1, -1):
            a, b = repl.a + sign * kept.a, repl.b + sign * kept.b
            if (a, b) == (0, 0):
                continue
            third = Slope(a, b)
            if third in (repl, kept):
                continue
            thirds.append(third)
        thirds.sort(key=lambda s: (_complexity(s), s.sort_key()))
        best = thirds[0]
        if _complexity(best) >= _complexity(repl):
            raise AssertionError(f"descent stuck at {cur}")
        cur = FareyEdge(kept, best)
        path.append(cur)
    return path


def summand_slopes(p: int, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The unordered pair (r1, s1), (r2, s2) of torus-knot summand slopes.

    Characterised by |p*s1 - q*r1| = |p*s2 - q*r2| = |r1*s2 - s1*r2| = 1
    with 0 < r_i < p and 0 < s_i < q; computed by the extended Euclidean
    algorithm and re-verified against those conditions.
    """
    if not (0 < q < p) or gcd(p, q) != 1:
        raise ValueError(f"require 0 < q < p coprime, got ({p}, {q})")
    s1 = pow(p, -1, q)  # p*s1 = 1 (mod q)
    r1 = (p * s1 - 1) // q
    r2, s2 = p - r1, q - s1
    pairs = sorted(((r1, s1), (r2, s2)), key=lambda rs: -rs[0])
    (r1, s1), (r2, s2) = pairs
    checks = (
        abs(p * s1 - q * r1) == 1,
        abs(p * s2 - q * r2) == 1,
        abs(r1 * s2 - s1 * r2) == 1,
        0 < r1 < p and 0 < r2 < p,
        0 < s1 < q and 0 < s2 < q,
    )
    if not all(checks):
        raise AssertionError(f"summand slopes for ({p},{q}) failed re-check: {pairs}")
    return (r1, s1), (r2, s2)


def rational_closure(p: int, q: int, slope: Slope) -> dict:
    """Metadata report for the numerator closure of the rational tangle.

    Only even-numerator slopes give a two-component closure; for 2n/1 the
    pq-fold branched cover is the Brieskorn sphere with parameters
    (p, q, n), and for 0/1 it is a connected sum of (p-1)(q-1) copies of
    S^1 x S^2.
    """
    if slope.a % 2 != 0:
        raise ValueError(f"numerator of {slope} is odd; closure has one component")
    if not (0 < q < p) or gcd(p, q) != 1:
        raise ValueError(f"require 0 < q < p coprime, got ({p}, {q})")
    report: dict = {
        "schema_version": 1,
        "p": p,
        "q": q,
        "slope": str(slope),
        "two_bridge_parameters": [slope.a, slope.b],
        "closure_components": 2,
    }
    if slope == ZERO:
        n_summands = (p - 1) * (q - 1)
        report["branched_cover"] = {
            "kind": "connected_sum_s1xs2",
            "summands": n_summands,
        }
    elif slope.b == 1:
        n = slope.a // 2
        report["branched_cover"] = {
            "kind": "brieskorn",
            "parameters": sorted([p, q, abs(n)]) if n != 0 else None,
            "raw_parameters": [p, q, n],
        }
    else:
        report["branched_cover"] = {"kind": "unidentified"}
    return report
