"""Complement census: cutting the fiber along a geodesic multicurve.

A chordal multicurve cuts the annulus into parallel bands; the cut surface
is the disjoint union of those bands re-glued along the fold pieces that
the curve misses.  The census (Euler characteristic, boundary count,
genus per region) is computed from an explicit cell structure: faces are
bands, edges are glued fold-piece pairs and chord sides, vertices are the
identification classes of the subdivision points.

Horizontal multicurves (slope-infinity lifts) cut the annulus into stacked
middle annuli and two folded caps, handled by the same counting on the cap
cell structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import Component, Multicurve
from .fiber import FiberComplex


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            self.parent[x] = p = self.find(p)
        return p

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def classes(self):
        out: dict = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass
class FoldPiece:
    side: str
    x1: Fraction
    x2: Fraction
    band: int
    partner: int = -1  # index into the piece list


@dataclass
class ChordRecord:
    bottom: Fraction
    top: Fraction
    component: int


@dataclass
class ChordalDecomposition:
    """Cut structure of the annulus along a chordal multicurve."""

    fc: FiberComplex
    chords: list[ChordRecord]
    pieces: list[FoldPiece]
    region_of_band: list[int]
    n_regions: int
    census: list[tuple[int, int, int]]
    region_of_cycle: list[int]
    component_side_regions: list[tuple[int, int]]  # (+ side, - side) per component
    band_bottom: list[tuple[Fraction, Fraction]]
    band_top: list[tuple[Fraction, Fraction]]
    delta: Fraction
    puncture_band: int | None = None


def _cut_points(values: list[Fraction], n: int) -> list[Fraction]:
    pts = {Fraction(k) for k in range(n)}
    for v in values:
        v = v % n
        if v.denominator == 1:
            raise AssertionError("chord endpoint on a corner")
        pts.add(v)
    return sorted(pts)


def decompose_chordal(fc: FiberComplex, m: Multicurve) -> ChordalDecomposition:
    n = fc.N
    chords: list[ChordRecord] = []
    deltas = set()
    for ci, comp in enumerate(m.components):
        if comp.kind != "chords":
            raise ValueError("mixed multicurve kinds cannot be disjoint")
        deltas.add(comp.delta)
        for ch in comp.chords:
            chords.append(ChordRecord(ch.bottom % n, ch.top % n, ci))
    if len(deltas) != 1:
        raise ValueError("disjoint chordal multicurve must have a single slope")
    delta = next(iter(deltas))
    chords.sort(key=lambda c: c.bottom)
    if len({c.bottom for c in chords}) != len(chords):
        raise AssertionError("distinct chords share a bottom endpoint")
    k = len(chords)

    # Band i lies between chord i and chord i+1 in bottom cyclic order; the
    # top endpoints are the bottom ones rotated by 2*delta, so the same
    # cyclic order gives the top arcs.
    band_bottom = []
    band_top = []
    for i in range(k):
        b1, b2 = chords[i].bottom, chords[(i + 1) % k].bottom
        t1, t2 = chords[i].top, chords[(i + 1) % k].top
        band_bottom.append((b1, b2))
        band_top.append((t1, t2))

    def band_of(side: str, x: Fraction) -> int:
        arcs = band_bottom if side == "bottom" else band_top
        for i, (a1, a2) in enumerate(arcs):
            if a1 < a2:
                if a1 < x < a2:
                    return i
            else:
                if x > a1 or x < a2:
                    return i
        raise AssertionError("point on no band arc")

    pieces: list[FoldPiece] = []
    piece_index: dict[tuple[str, Fraction], int] = {}
    for side in ("bottom", "top"):
        ends = [c.bottom if side == "bottom" else c.top for c in chords]
        pts = _cut_points(ends, n)
        for i, x1 in enumerate(pts):
            x2 = pts[(i + 1) % len(pts)]
            if i + 1 == len(pts):
                x2 = Fraction(n)
            mid = (x1 + x2) / 2
            pieces.append(FoldPiece(side, x1, x2, band_of(side, mid)))
            piece_index[(side, x1)] = len(pieces) - 1
    for idx, pc in enumerate(pieces):
        if pc.partner >= 0:
            continue
        mid = (pc.x1 + pc.x2) / 2
        half = (pc.x2 - pc.x1) / 2
        img_mid = fc.fold_image(mid, pc.side)
        y1, y2 = img_mid - half, img_mid + half
        # The fold is an isometric reflection on each edge, so the partner
        # must be exactly the piece with interval (y1, y2).
        for jdx, qc in enumerate(pieces):
            if qc.side == pc.side and qc.x1 == y1 % n and (qc.x2 == y2 or qc.x2 % n == y2 % n):
                pc.partner, qc.partner = jdx, idx
                break
        else:
            raise AssertionError("fold piece has no exact partner")

    # Region union-find over bands.
    uf = _UnionFind()
    for i in range(k):
        uf.find(i)
    for idx, pc in enumerate(pieces):
        uf.union(pc.band, pieces[pc.partner].band)
    roots = sorted({uf.find(i) for i in range(k)})
    region_id = {r: i for i, r in enumerate(roots)}
    region_of_band = [region_id[uf.find(i)] for i in range(k)]
    n_regions = len(roots)

    # Tokens for vertex counting.
    tok_uf = _UnionFind()
    chord_end = {("bottom", c.bottom) for c in chords} | {("top", c.top) for c in chords}

    def token(side: str, x: Fraction, sign: str):
        x = x % n
        if (side, x) in chord_end:
            return (side, x, sign)
        return (side, x, "=")

    for pc in pieces:
        qc = pieces[pc.partner]
        # Orientation-reversing gluing: x1 <-> partner x2, x2 <-> partner x1.
        tok_uf.union(token(pc.side, pc.x1, "+"), token(qc.side, qc.x2, "-"))
        tok_uf.union(token(pc.side, pc.x2, "-"), token(qc.side, qc.x1, "+"))

    # Chord side edges: (+ side) joins bottom + token to top + token.
    side_edges = []
    for i, c in enumerate(chords):
        for sign in ("+", "-"):
            side_edges.append(
                (
                    token("bottom", c.bottom, sign),
                    token("top", c.top, sign),
                    i,
                    sign,
                )
            )
        # Ensure corner-only tokens on chord lines do not appear.
    for e in side_edges:
        tok_uf.find(e[0])
        tok_uf.find(e[1])

    # Region assignment of token classes via incident pieces.
    token_region: dict = {}
    for pc in pieces:
        for sign, x in (("+", pc.x1), ("-", pc.x2)):
            token_region[tok_uf.find(token(pc.side, x, sign))] = region_of_band[pc.band]

    # Boundary cycles from side edges.
    cyc_uf = _UnionFind()
    for ei, e in enumerate(side_edges):
        cyc_uf.find(("edge", ei))
    endpoint_owner: dict = {}
    for ei, e in enumerate(side_edges):
        for tk in (e[0], e[1]):
            root = tok_uf.find(tk)
            if root in endpoint_owner:
                cyc_uf.union(("edge", endpoint_owner[root]), ("edge", ei))
            else:
                endpoint_owner[root] = ei
    cycle_roots = sorted({cyc_uf.find(("edge", i)) for i in range(len(side_edges))},
                         key=str)
    cycle_id = {r: i for i, r in enumerate(cycle_roots)}
    region_of_cycle = [0] * len(cycle_roots)
    for ei, e in enumerate(side_edges):
        i, sign = e[2], e[3]
        band = i if sign == "+" else (i - 1) % k
        region_of_cycle[cycle_id[cyc_uf.find(("edge", ei))]] = region_of_band[band]

    # Census per region.
    census = []
    for r in range(n_regions):
        f_count = sum(1 for b in region_of_band if b == r)
        e_count = 0
        seen_pairs = set()
        for idx, pc in enumerate(pieces):
            if region_of_band[pc.band] == r:
                key = frozenset((idx, pc.partner))
                seen_pairs.add(key)
        e_count += len(seen_pairs)
        for ei, e in enumerate(side_edges):
            i, sign = e[2], e[3]
            band = i if sign == "+" else (i - 1) % k
            if region_of_band[band] == r:
                e_count += 1
        v_count = sum(1 for root, reg in token_region.items() if reg == r)
        b_count = sum(1 for reg in region_of_cycle if reg == r)
        chi = v_count - e_count + f_count
        genus2 = 2 - chi - b_count
        if genus2 % 2:
            raise AssertionError("odd genus defect in census")
        census.append((chi, b_count, genus2 // 2))

    comp_sides = []
    chord_of_component: dict[int, int] = {}
    for i, c in enumerate(chords):
        chord_of_component.setdefault(c.component, i)
    for ci in range(len(m.components)):
        i = chord_of_component[ci]
        plus_region = region_of_band[i]
        minus_region = region_of_band[(i - 1) % k]
        comp_sides.append((plus_region, minus_region))

    dec = ChordalDecomposition(
        fc=fc,
        chords=chords,
        pieces=pieces,
        region_of_band=region_of_band,
        n_regions=n_regions,
        census=sorted(census),
        region_of_cycle=region_of_cycle,
        component_side_regions=comp_sides,
        band_bottom=band_bottom,
        band_top=band_top,
        delta=delta,
    )
    total_chi = sum(c[0] for c in census)
    if total_chi != 2 - 2 * fc.genus:
        raise AssertionError("census does not add up to the fiber's Euler characteristic")
    return dec


def _horizontal_census(fc: FiberComplex, m: Multicurve) -> list[tuple[int, int, int]]:
    ts = sorted(c.t0 for c in m.components)
    if len(set(ts)) != len(ts):
        raise ValueError("horizontal components coincide")
    cls_top = len(fc.vertex_classes("top"))
    cls_bottom = len(fc.vertex_classes("bottom"))
    pq = fc.params.deck_order
    out = []
    # Caps: strip from the extreme circle to a fold, boundary self-glued.
    for cls in (cls_top, cls_bottom):
        chi = cls - pq
        b = 1
        genus2 = 2 - chi - b
        assert genus2 % 2 == 0
        out.append((chi, b, genus2 // 2))
    for _ in range(len(ts) - 1):
        out.append((0, 2, 0))
    total_chi = sum(c[0] for c in out)
    assert total_chi == 2 - 2 * fc.genus
    return sorted(out)


def complement_components(fc: FiberComplex, m: Multicurve) -> list[tuple[int, int, int]]:
    """Census of the fiber cut along a multicurve: (chi, boundary, genus)."""
    if len(m) == 0:
        return [(2 - 2 * fc.genus, 0, fc.genus)]
    kinds = {c.kind for c in m.components}
    if kinds == {"circle"}:
        return _horizontal_census(fc, m)
    if kinds == {"chords"}:
        return decompose_chordal(fc, m).census
    raise ValueError("mixed multicurve kinds cannot be disjoint")


def dual_graph(dec: ChordalDecomposition) -> list[tuple[int, int]]:
    """Per curve component, the regions on its two sides."""
    return list(dec.component_side_regions)
