from fractions import Fraction

import pytest

from pillowtwist.farey import (
    STANDARD_EDGE,
    FareyEdge,
    SlidePath,
    is_edge,
    rational_closure,
    slide_path,
    summand_slopes,
    triangle_completions,
)
from pillowtwist.slope import INFINITY, ZERO, Slope

GRID = [(3, 2), (4, 3), (5, 2), (5, 3), (5, 4), (7, 2), (7, 3)]


def test_is_edge_examples():
    assert is_edge(Slope(3, 2), Slope(1, 1))
    assert is_edge(ZERO, INFINITY)
    assert not is_edge(Slope(2, 3), Slope(4, 5))


def test_edge_normalization_and_validation():
    e = FareyEdge(INFINITY, ZERO)
    assert e == FareyEdge(ZERO, INFINITY)
    with pytest.raises(ValueError):
        FareyEdge(Slope(2, 3), Slope(4, 5))
    with pytest.raises(ValueError):
        FareyEdge(ZERO, ZERO)


def test_triangle_completions_are_edges():
    e = FareyEdge(Slope(3, 2), Slope(1, 1))
    for third in triangle_completions(e):
        assert is_edge(third, e.low) and is_edge(third, e.high)


def test_summand_slopes_examples():
    assert summand_slopes(3, 2) == ((2, 1), (1, 1))
    assert summand_slopes(5, 3) == ((3, 2), (2, 1))


@pytest.mark.parametrize("p,q", GRID)
def test_summand_slopes_grid_conditions(p, q):
    (r1, s1), (r2, s2) = summand_slopes(p, q)
    assert abs(p * s1 - q * r1) == 1
    assert abs(p * s2 - q * r2) == 1
    assert abs(r1 * s2 - s1 * r2) == 1
    assert 0 < r1 < p and 0 < r2 < p
    assert 0 < s1 < q and 0 < s2 < q
    # Mediant relation.
    assert r1 + r2 == p and s1 + s2 == q


def _oracle_summands(p, q):
    found = []
    for r in range(1, p):
        for s in range(1, q):
            if abs(p * s - q * r) == 1:
                found.append((r, s))
    pairs = [
        (x, y)
        for i, x in enumerate(found)
        for y in found[i + 1 :]
        if abs(x[0] * y[1] - x[1] * y[0]) == 1
    ]
    assert len(pairs) == 1
    x, y = pairs[0]
    return tuple(sorted((x, y), key=lambda rs: -rs[0]))


@pytest.mark.parametrize("p,q", GRID)
def test_summand_slopes_against_exhaustive_search(p, q):
    assert summand_slopes(p, q) == _oracle_summands(p, q)


def test_slide_path_trivial():
    path = slide_path(STANDARD_EDGE, STANDARD_EDGE)
    assert len(path) == 0


def test_slide_path_example():
    path = slide_path(FareyEdge(Slope(3, 2), Slope(1, 1)), STANDARD_EDGE)
    assert path.steps[0] == FareyEdge(Slope(3, 2), Slope(1, 1))
    assert path.steps[-1] == STANDARD_EDGE
    assert len(path) <= 4


@pytest.mark.parametrize("p,q", GRID)
def test_slide_path_summand_edge_to_standard(p, q):
    (r1, s1), _ = summand_slopes(p, q)
    start = FareyEdge(Slope(p, q), Slope(r1, s1))
    path = slide_path(start, STANDARD_EDGE)
    assert path.steps[0] == start
    assert path.steps[-1] == STANDARD_EDGE
    # SlidePath validates every step in its constructor; re-build to be sure.
    SlidePath(path.steps)


def _edge_graph(max_den):
    """All Farey edges with complexity bound, and arc-slide adjacency."""
    verts = {INFINITY}
    for b in range(1, max_den + 1):
        for a in range(-max_den, max_den + 1):
            from math import gcd

            if gcd(abs(a), b) == 1:
                verts.add(Slope(a, b))
    edges = set()
    vlist = sorted(verts, key=lambda s: s.sort_key())
    for i, x in enumerate(vlist):
        for y in vlist[i + 1 :]:
            if is_edge(x, y):
                edges.add(FareyEdge(x, y))
    adj = {e: [] for e in edges}
    for e in edges:
        for kept in (e.low, e.high):
            repl = e.other(kept)
            for sign in (1, -1):
                ab = (repl.a + sign * kept.a, repl.b + sign * kept.b)
                if ab == (0, 0):
                    continue
                third = Slope(*ab)
                if third in verts and third not in (e.low, e.high):
                    e2 = FareyEdge(kept, third)
                    if e2 in edges:
                        adj[e].append(e2)
    return edges, adj


def _bfs_distance(adj, start, goal):
    from collections import deque

    seen = {start: 0}
    dq = deque([start])
    while dq:
        cur = dq.popleft()
        if cur == goal:
            return seen[cur]
        for nxt in adj[cur]:
            if nxt not in seen:
                seen[nxt] = seen[cur] + 1
                dq.append(nxt)
    raise AssertionError("goal not reachable")


def test_slide_path_minimality_against_bfs():
    edges, adj = _edge_graph(13)
    import random

    rng = random.Random(7)
    sample = rng.sample(sorted(edges, key=lambda e: (e.low.sort_key(), e.high.sort_key())), 40)
    for start in sample:
        path = slide_path(start, STANDARD_EDGE)
        assert len(path) == _bfs_distance(adj, start, STANDARD_EDGE), str(start)


def test_rational_closure_reports():
    rep = rational_closure(3, 2, Slope(4, 1))
    assert rep["branched_cover"]["kind"] == "brieskorn"
    assert rep["branched_cover"]["raw_parameters"] == [3, 2, 2]
    rep0 = rational_closure(3, 2, ZERO)
    assert rep0["branched_cover"] == {"kind": "connected_sum_s1xs2", "summands": 2}
    with pytest.raises(ValueError):
        rational_closure(3, 2, Slope(1, 1))
