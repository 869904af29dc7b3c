"""First homology of the fiber via the two spine graphs.

Each half of the fiber deformation-retracts onto a complete bipartite spine
graph living on one fold circle, so the lattice cycles of the two spines
form a basis of H_1 of the closed fiber.  The basis cycle z_{ij}
(i, j nonzero) traverses the glued edge pairs (i,j), (0,j), (0,0), (i,0) in
an alternating square; it is realized as an explicit closed polyline: a
horizontal run just below the fold for each edge traversal, joined by
vertical fan hops through the fold around the shared vertices.

Homology classes of curves are computed by exact signed crossing counts
against these polylines, inverted through the intersection form, which is
verified to be unimodular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import CoincidenceError, Component, Multicurve, component_chart_segments
from .fiber import FiberComplex

Point = tuple[Fraction, Fraction]
Segment = tuple[Point, Point]


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def segment_crossing_sign(a: Segment, b: Segment) -> int:
    """+-1 for a strict transversal crossing, 0 for none.

    Raises CoincidenceError when the segments touch at an endpoint or
    overlap, so callers can retry with shifted representatives.
    """
    (ax0, ay0), (ax1, ay1) = a
    (bx0, by0), (bx1, by1) = b
    d1x, d1y = ax1 - ax0, ay1 - ay0
    d2x, d2y = bx1 - bx0, by1 - by0
    denom = _cross(d1x, d1y, d2x, d2y)
    ex, ey = bx0 - ax0, by0 - ay0
    if denom == 0:
        if _cross(ex, ey, d1x, d1y) != 0:
            return 0
        # Colinear: any parameter overlap is a coincidence.
        def proj(px, py):
            return px * d1x + py * d1y

        lo_a, hi_a = sorted((proj(ax0, ay0), proj(ax1, ay1)))
        lo_b, hi_b = sorted((proj(bx0, by0), proj(bx1, by1)))
        if hi_b < lo_a or hi_a < lo_b:
            return 0
        raise CoincidenceError("colinear overlapping segments")
    t = Fraction(_cross(ex, ey, d2x, d2y), denom)
    u = Fraction(_cross(ex, ey, d1x, d1y), denom)
    if 0 < t < 1 and 0 < u < 1:
        return 1 if denom > 0 else -1
    if (t == 0 or t == 1) and 0 <= u <= 1:
        raise CoincidenceError("segment endpoint touches another segment")
    if (u == 0 or u == 1) and 0 <= t <= 1:
        raise CoincidenceError("segment endpoint touches another segment")
    return 0


def polyline_crossings(segs1: list[Segment], segs2: list[Segment]) -> tuple[int, int]:
    """(geometric, algebraic) crossing counts of two segment families."""
    geo = alg = 0
    for a in segs1:
        (ax0, ay0), (ax1, ay1) = a
        alox, ahix = min(ax0, ax1), max(ax0, ax1)
        aloy, ahiy = min(ay0, ay1), max(ay0, ay1)
        for b in segs2:
            (bx0, by0), (bx1, by1) = b
            if max(bx0, bx1) < alox or min(bx0, bx1) > ahix:
                continue
            if max(by0, by1) < aloy or min(by0, by1) > ahiy:
                continue
            s = segment_crossing_sign(a, b)
            if s:
                geo += 1
                alg += s
    return geo, alg


@dataclass
class BasisCycle:
    label: tuple[str, int, int]
    segments: list[Segment]


class HomologyBasis:
    """Realized spine-cycle basis of H_1 with its intersection form."""

    def __init__(self, fc: FiberComplex, tweak: int = 0):
        self.fc = fc
        p, q = fc.p, fc.q
        self.cycles: list[BasisCycle] = []
        idx = 0
        for i in range(1, p):
            for j in range(1, q):
                mu = Fraction(2 * idx + 3, 512 * (tweak + 1))
                eta = Fraction(2 * idx + 3, 1024 * (tweak + 1))
                segs = _realize_spine_cycle(fc, i, j, "top", mu, eta)
                self.cycles.append(BasisCycle(("plus", i, j), segs))
                idx += 1
        n_plus = len(self.cycles)
        for k in range(n_plus):
            label = self.cycles[k].label
            segs = [
                ((x0, -t0), (x1, -t1)) for ((x0, t0), (x1, t1)) in self.cycles[k].segments
            ]
            self.cycles.append(BasisCycle(("minus", label[1], label[2]), segs))
        self.rank = len(self.cycles)
        assert self.rank == 2 * fc.genus
        self.form = self._intersection_form()

    def _intersection_form(self) -> list[list[int]]:
        n = self.rank
        j = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                _, alg = polyline_crossings(self.cycles[a].segments, self.cycles[b].segments)
                j[a][b] = alg
                j[b][a] = -alg
        d = _int_det([row[:] for row in j])
        if abs(d) != 1:
            raise AssertionError(f"intersection form determinant {d} is not a unit")
        return j

    def pairing_vector(self, fc: FiberComplex, comp: Component) -> list[int]:
        segs = component_chart_segments(fc, comp)
        out = []
        for cyc in self.cycles:
            _, alg = polyline_crossings(segs, cyc.segments)
            out.append(alg)
        return out


_BASIS_CACHE: dict = {}


def homology_basis(fc: FiberComplex, tweak: int = 0) -> HomologyBasis:
    key = (id(fc), tweak)
    if key not in _BASIS_CACHE:
        _BASIS_CACHE[key] = HomologyBasis(fc, tweak)
    return _BASIS_CACHE[key]


def _corner_class_maps(fc: FiberComplex, side: str) -> dict[int, int]:
    out = {}
    for ci, cls in enumerate(fc.vertex_classes(side)):
        for c in cls["corners"]:
            out[c] = ci
    return out


def _fan_walk_segments(
    fc: FiberComplex,
    side: str,
    h: Fraction,
    eta: Fraction,
    corner: int,
    rightside: bool,
    target: int,
    target_right: bool,
) -> list[Segment]:
    """Polyline walking the vertex fan from one germ state to another.

    A germ state (c, right) is the point c + eta (right) or c - eta (left)
    at height h.  The walk always advances by crossing the current sector
    under its corner and then hopping through the fold germ on the right,
    which steps through the corner orbit of the vertex class.
    """
    n = fc.N
    segs: list[Segment] = []
    state = (corner % n, rightside)
    guard = 0
    while state != (target % n, target_right):
        c, right = state
        if not right:
            # Cross the sector under its cone corner: left germ to right germ.
            left = (c - eta) % n
            right_pos = (c + eta) % n
            if left > right_pos:  # crossing the chart seam at psi = 0
                segs.append(((left, h), (Fraction(n), h)))
                segs.append(((Fraction(0), h), (right_pos, h)))
            else:
                segs.append(((left, h), (right_pos, h)))
            state = (c, True)
        else:
            pos = (c + eta) % n
            img = fc.fold_image(pos, side)
            segs.append(((pos, h), (pos, Fraction(1))))
            segs.append(((img, Fraction(1)), (img, h)))
            state = ((fc.fold_partner_edge(c % n, side) + 1) % n, False)
        guard += 1
        if guard > 4 * n:
            raise AssertionError("vertex fan walk did not terminate")
    return segs


def _realize_spine_cycle(
    fc: FiberComplex, i: int, j: int, side: str, mu: Fraction, eta: Fraction
) -> list[Segment]:
    """Closed polyline realizing the (i, j) square cycle of the spine."""
    n = fc.N
    h = 1 - mu
    walk = [
        (fc.pair_index(i, j), True),
        (fc.pair_index(0, j), False),
        (fc.pair_index(0, 0), True),
        (fc.pair_index(i, 0), False),
    ]
    # Each traversal runs under the even edge of its pair; forward means
    # from the odd-corner end to the even-corner end (decreasing psi).
    states = []  # (end_state, start_state_of_next) corners with side flags
    runs = []
    for k, forward in walk:
        e = 2 * k
        left = Fraction(e) + eta
        right = Fraction(e + 1) - eta
        if forward:
            runs.append(((right, h), (left, h)))
            end_state = (e % n, True)  # at even corner, right side
        else:
            runs.append(((left, h), (right, h)))
            end_state = ((e + 1) % n, False)  # at odd corner, left side
        if forward:
            start_state = ((2 * k + 1) % n, False)
        else:
            start_state = (e % n, True)
        states.append((start_state, end_state))

    segments: list[Segment] = []
    for t in range(len(walk)):
        segments.append(runs[t])
        end_state = states[t][1]
        next_start = states[(t + 1) % len(walk)][0]
        fan = _fan_walk_segments(
            fc, side, h, eta, end_state[0], end_state[1], next_start[0], next_start[1]
        )
        segments.extend(fan)
        landing = fan[-1][1][0] if fan else runs[t][1][0]
        expected = runs[(t + 1) % len(walk)][0][0]
        if landing % n != expected % n:
            raise AssertionError("fan walk did not land on the next run start")
    if side == "bottom":
        segments = [((x0, -t0), (x1, -t1)) for ((x0, t0), (x1, t1)) in segments]
    return segments


def homology_classes(fc: FiberComplex, m: Multicurve) -> list[list[int]]:
    """Rows are the classes of the components in the spine-cycle basis."""
    for tweak in range(6):
        basis = homology_basis(fc, tweak)
        try:
            rows = []
            for comp in m.components:
                v = basis.pairing_vector(fc, comp)
                rows.append(_solve_integer(_transpose(basis.form), v))
            return rows
        except CoincidenceError:
            continue
    raise AssertionError("no transversal basis realization found")


def homology_rank(rows: list[list[int]]) -> int:
    return _int_rank([row[:] for row in rows])


# -- exact integer linear algebra --------------------------------------------


def _transpose(m):
    return [list(col) for col in zip(*m)]


def _int_det(m: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def _int_rank(m: list[list[int]]) -> int:
    rows = [r[:] for r in m if any(r)]
    rank = 0
    cols = len(m[0]) if m else 0
    col = 0
    while rows and col < cols:
        pivot = None
        for idx, r in enumerate(rows):
            if r[col] != 0:
                pivot = idx
                break
        if pivot is None:
            col += 1
            continue
        rows[0], rows[pivot] = rows[pivot], rows[0]
        pr = rows[0]
        new_rows = []
        for r in rows[1:]:
            if r[col] != 0:
                factor_num, factor_den = r[col], pr[col]
                r = [a * factor_den - b * factor_num for a, b in zip(r, pr)]
            if any(r):
                new_rows.append(r)
        rank += 1
        rows = new_rows
        col += 1
    return rank


def _solve_integer(a: list[list[int]], v: list[int]) -> list[int]:
    """Solve a x = v exactly; a must be invertible and the solution integral."""
    n = len(a)
    mat = [[Fraction(x) for x in row] + [Fraction(v[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [x / pv for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    out = []
    for r in range(n):
        x = mat[r][n]
        if x.denominator != 1:
            raise AssertionError("homology class is not integral")
        out.append(int(x))
    return out
