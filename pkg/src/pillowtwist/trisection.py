"""Trisection diagrams of the homotopy spheres built from a derivative.

The diagram surface is two copies of the fiber punctured at a small square
on the core circle, glued along the square's boundary.  The beta curves are
doubled dualizing arcs, the gamma curves are the derivative sublink
together with the doubled b-arcs, and the alpha curves are doubles whose
copy-0 side is twisted by the monodromy: the deck rotation followed by a
piecewise-affine finger drag returning the puncture, fixing the square
pointwise.

The dualizing arcs are routed through the band decomposition of the fiber
cut along the sublink.  Rooms are bands (convex parallelograms once
unrolled) and doorways are the glued fold pieces; every arc consists of
root-to-feature legs along a spanning tree of the room graph, dispatched
room by room in itinerary order so the cable never crosses itself.  The
a-arc for a component crosses it once at a wall point; the b-arc is a lasso
hugging a parallel copy of the component, cut open at a gap through which
the a-arc threads.  The finished system and diagram are re-verified by
exact crossing counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .census import ChordalDecomposition, decompose_chordal
from .curves import Multicurve, component_chart_segments, trace_component
from .fiber import FiberComplex, TorusParams
from .homology import (
    Segment,
    _int_det,
    homology_basis,
    polyline_crossings,
)

Point = tuple[Fraction, Fraction]


def split_chart_segment(n: int, p0: Point, p1: Point) -> list[Segment]:
    """Split a segment given in unrolled x-coordinates at multiples of N."""
    import math

    (x0, t0), (x1, t1) = p0, p1
    dx = x1 - x0
    if dx == 0:
        x = x0 % n
        return [((x, t0), (x, t1))]
    crossings = []
    first = math.floor(min(x0, x1) / n) + 1
    last = math.ceil(max(x0, x1) / n) - 1
    for k in range(first, last + 1):
        xc = Fraction(k * n)
        lam = (xc - x0) / dx
        if 0 < lam < 1:
            crossings.append((lam, xc))
    crossings.sort()
    pts = (
        [(Fraction(0), x0, t0)]
        + [(lam, xc, t0 + lam * (t1 - t0)) for lam, xc in crossings]
        + [(Fraction(1), x1, t1)]
    )
    out = []
    for (l0, a0, b0), (l1, a1, b1) in zip(pts, pts[1:]):
        base = math.floor(((a0 + a1) / 2) / n) * n
        out.append(((a0 - base, b0), (a1 - base, b1)))
    return out


@dataclass
class PLArc:
    """Polyline arc with endpoints on the puncture square boundary."""

    name: str
    segments: list[Segment]
    crossing_component: int | None = None


@dataclass
class ArcSystem:
    fc: FiberComplex
    subset: tuple[int, ...]
    sublink: Multicurve
    a_arcs: list[PLArc]
    b_arcs: list[PLArc]
    a_primes: list[PLArc]
    b_primes: list[PLArc]
    puncture: Point
    square_half: Fraction


# -- room complex -------------------------------------------------------------


@dataclass
class _Doorway:
    piece_a: int
    piece_b: int
    rooms: tuple[int, int]


class _RoomComplex:
    def __init__(self, fc: FiberComplex, dec: ChordalDecomposition):
        self.fc = fc
        self.dec = dec
        n = fc.N
        k = len(dec.chords)
        self.n_rooms = k
        self.delta = dec.delta
        self.room_bottom: list[tuple[Fraction, Fraction]] = []
        for i in range(k):
            b1, b2 = dec.band_bottom[i]
            if b2 <= b1:
                b2 = b2 + n
            self.room_bottom.append((b1, b2))
        self.doorways: list[_Doorway] = []
        seen = set()
        for idx, pc in enumerate(dec.pieces):
            if idx in seen:
                continue
            seen.add(idx)
            seen.add(pc.partner)
            qc = dec.pieces[pc.partner]
            self.doorways.append(_Doorway(idx, pc.partner, (pc.band, qc.band)))

    def room_of_core_point(self, psi: Fraction) -> int:
        n = self.fc.N
        k = len(self.dec.chords)
        mids = [(c.bottom + self.delta) % n for c in self.dec.chords]
        for i in range(k):
            a = mids[i]
            b = mids[(i + 1) % k]
            x = psi % n
            inside = a < x < b if a < b else (x > a or x < b)
            if inside:
                return i
        raise AssertionError("core point lies on a chord")

    def unroll(self, room: int, x: Fraction, t: Fraction) -> Fraction:
        n = self.fc.N
        b1, b2 = self.room_bottom[room]
        lo = b1 + self.delta * (t + 1)
        hi = b2 + self.delta * (t + 1)
        cand = x % n
        while cand < lo:
            cand += n
        while cand > hi:
            cand -= n
        if not (lo <= cand <= hi):
            raise AssertionError("point does not unroll into the room")
        return cand

    def piece_point(self, piece_idx: int, lam: Fraction) -> Point:
        pc = self.dec.pieces[piece_idx]
        x = pc.x1 + (pc.x2 - pc.x1) * lam
        t = Fraction(1) if pc.side == "top" else Fraction(-1)
        return (x, t)

    def exit_pieces(self, doorway_idx: int, from_room: int) -> tuple[int, int, int]:
        d = self.doorways[doorway_idx]
        pa, pb = self.dec.pieces[d.piece_a], self.dec.pieces[d.piece_b]
        if pa.band == from_room:
            return d.piece_a, d.piece_b, pb.band
        if pb.band == from_room:
            return d.piece_b, d.piece_a, pa.band
        raise AssertionError("doorway not on this room")

    def boundary_position(self, room: int, piece_idx: int | None,
                          wall: str | None = None, along: Fraction = Fraction(0)):
        """Linear position of a boundary element around the room (ccw).

        The boundary cycle is: bottom arc by increasing x, right wall
        upward, top arc by decreasing x, left wall downward.
        """
        b1, b2 = self.room_bottom[room]
        width = b2 - b1
        if piece_idx is not None:
            pc = self.dec.pieces[piece_idx]
            if pc.side == "bottom":
                mid = self.unroll(room, (pc.x1 + pc.x2) / 2, Fraction(-1))
                return mid - b1
            mid = self.unroll(room, (pc.x1 + pc.x2) / 2, Fraction(1))
            return width + 2 + ((b2 + 2 * self.delta) - mid)
        if wall == "right":
            return width + (along + 1) / 2 * 2 * 0 + (along + 1)  # upward
        if wall == "left":
            return 2 * width + 2 + (1 - along)
        raise AssertionError("unknown boundary element")


def _room_tree(rc: _RoomComplex, root: int):
    parent: dict[int, tuple[int, int]] = {root: (-1, -1)}
    frontier = [root]
    while frontier:
        nxt = []
        for room in sorted(frontier):
            for di, d in enumerate(rc.doorways):
                if d.rooms[0] == d.rooms[1]:
                    continue
                if room not in d.rooms:
                    continue
                other = d.rooms[0] if d.rooms[1] == room else d.rooms[1]
                if other not in parent:
                    parent[other] = (room, di)
                    nxt.append(other)
        frontier = nxt
    if len(parent) != rc.n_rooms:
        raise AssertionError("cut surface is not connected")
    return parent


# -- cable routing ------------------------------------------------------------


@dataclass
class _Leg:
    arc_key: tuple  # ("a"|"b", component position, prime)
    leg_kind: str  # "out" | "back"
    target_room: int
    feature_t: Fraction
    feature_offset: Fraction
    feature_wall: str  # "left" | "right"
    route: list[int] = field(default_factory=list)
    points: list[tuple[int, Point]] = field(default_factory=list)
    slot: int = -1


class _Cable:
    """Dispatches legs along the room tree without crossings.

    Within a room, chords from the entry piece to their targets are
    non-crossing exactly when the entry order is the reverse of the target
    order counterclockwise around the room, and passing a fold doorway
    reverses order once more; the two reversals cancel, so the required
    entry order propagates unchanged down the tree.  At the root the legs
    emanate from the puncture square, whose hole boundary matches target
    order directly.
    """

    def __init__(self, fc: FiberComplex, rc: _RoomComplex, root: int, parent):
        self.fc = fc
        self.rc = rc
        self.root = root
        self.parent = parent

    def tree_route(self, room: int) -> list[int]:
        rev = []
        while self.parent[room][0] >= 0:
            pr, d = self.parent[room]
            rev.append(d)
            room = pr
        return list(reversed(rev))

    # ccw positions around a room: bottom arc by increasing x, right wall
    # upward, top arc by decreasing x, left wall downward.
    def ccw_piece(self, room: int, piece_idx: int) -> Fraction:
        rc = self.rc
        b1, b2 = rc.room_bottom[room]
        width = b2 - b1
        pc = rc.dec.pieces[piece_idx]
        if pc.side == "bottom":
            mid = rc.unroll(room, (pc.x1 + pc.x2) / 2, Fraction(-1))
            return mid - b1
        mid = rc.unroll(room, (pc.x1 + pc.x2) / 2, Fraction(1))
        return width + 2 + ((b2 + 2 * rc.delta) - mid)

    def ccw_wall(self, room: int, wall: str, t: Fraction) -> Fraction:
        b1, b2 = self.rc.room_bottom[room]
        width = b2 - b1
        if wall == "right":
            return width + (t + 1)
        return 2 * width + 2 + (1 - t)

    def _group_position(self, room: int, legs: list[_Leg], depth: int) -> Fraction:
        leg = legs[0]
        if depth < len(leg.route):
            p_out, _, _ = self.rc.exit_pieces(leg.route[depth], room)
            return self.ccw_piece(room, p_out)
        return self.ccw_wall(room, leg.feature_wall, leg.feature_t)

    def required_order(self, room: int, legs: list[_Leg], depth: int,
                       entry_pos: Fraction, at_root: bool) -> list[_Leg]:
        """Entry order of the legs at this room (ccw along the entry)."""
        groups: dict = {}
        for leg in legs:
            if depth < len(leg.route):
                gid = ("door", leg.route[depth])
            else:
                gid = ("feat", leg.feature_wall, leg.feature_t, leg.arc_key, leg.leg_kind)
            groups.setdefault(gid, []).append(leg)
        b1, b2 = self.rc.room_bottom[room]
        total = 2 * (b2 - b1) + 4
        keyed = []
        for gid, members in groups.items():
            pos = (self._group_position(room, members, depth) - entry_pos) % total
            if gid[0] == "door":
                d_idx = gid[1]
                _, p_in, to_room = self.rc.exit_pieces(d_idx, room)
                inner = self.required_order(
                    to_room, members, depth + 1, self.ccw_piece(to_room, p_in), False
                )
            else:
                inner = members
            keyed.append((pos, str(gid), inner))
        keyed.sort(key=lambda kv: (kv[0], kv[1]))
        if at_root:
            out: list[_Leg] = []
            for pos, _, inner in keyed:
                out.extend(reversed(inner))
            return out
        out = []
        for pos, _, inner in reversed(keyed):
            out.extend(inner)
        return out

    def place(self, room: int, ordered: list[_Leg], depth: int, at_root: bool) -> None:
        if not ordered:
            return
        groups: list[tuple[object, list[_Leg]]] = []
        for leg in ordered:
            gid = ("door", leg.route[depth]) if depth < len(leg.route) else ("feat", id(leg))
            if groups and groups[-1][0] == gid:
                groups[-1][1].append(leg)
            else:
                groups.append((gid, [leg]))
        for gid, group in groups:
            if gid[0] != "door":
                continue
            d_idx = gid[1]
            p_out, p_in, to_room = self.rc.exit_pieces(d_idx, room)
            m = len(group)
            # Exit points ccw along the exit piece: reverse of the entry
            # order inside the room, same order when leaving the root hole.
            for j, leg in enumerate(group):
                s = Fraction(2 * (j if at_root else m - 1 - j) + 1, 2 * m)
                s = Fraction(1, 4) + s / 2  # keep strictly inside the piece
                lam = self._ccw_to_geom(p_out, s)
                leg.points.append((room, self.rc.piece_point(p_out, lam)))
                leg.points.append((to_room, self.rc.piece_point(p_in, 1 - lam)))
            self.place(to_room, group, depth + 1, False)

    def _ccw_to_geom(self, piece_idx: int, s: Fraction) -> Fraction:
        pc = self.rc.dec.pieces[piece_idx]
        return s if pc.side == "bottom" else 1 - s


# -- arc construction ---------------------------------------------------------


def find_dualizing_arcs(
    fc: FiberComplex, lift: Multicurve, subset: tuple[int, ...]
) -> ArcSystem:
    """Dualizing arc system for the derivative sublink.

    a_i crosses component i of the sublink once through a wall segment; b_i
    is a lasso around a parallel copy of component i, cut open at a gap that
    the a-arcs thread.  Primed parallel copies of every arc are routed in
    the same cable for the alpha system, and the finished system is
    re-verified by exact crossing counts.
    """
    n = fc.N
    g = fc.genus
    if len(subset) != g:
        raise ValueError("derivative subset must have (p-1)(q-1) components")
    sub = Multicurve(fc.params, tuple(lift.components[i] for i in subset))
    dec = decompose_chordal(fc, sub)
    rc = _RoomComplex(fc, dec)
    k = len(dec.chords)

    # Puncture at the widest core gap.
    mids = sorted((c.bottom + dec.delta) % n for c in dec.chords)
    best = None
    for i in range(len(mids)):
        a = mids[i]
        b = mids[(i + 1) % len(mids)] + (n if i + 1 == len(mids) else 0)
        if best is None or b - a > best[0]:
            best = (b - a, a, b)
    gap, a, b = best
    puncture = (Fraction(a + b, 2) % n, Fraction(0))
    rho = min(gap / 16, Fraction(1, 64))
    root = rc.room_of_core_point(puncture[0])
    parent = _room_tree(rc, root)
    cable = _Cable(fc, rc, root, parent)

    first_chord = {}
    for ci, rec in enumerate(dec.chords):
        first_chord.setdefault(rec.component, ci)
    piece_min_len = min(pc.x2 - pc.x1 for pc in dec.pieces)
    room_min_width = min(b2 - b1 for (b1, b2) in rc.room_bottom)
    eps0 = min(piece_min_len, room_min_width, Fraction(1)) / 16

    # Feature layout near each used chord wall (offsets from the wall on the
    # plus side, heights strictly nested so every dive crosses the lasso
    # lines only through their gaps).
    t_a = {False: Fraction(0), True: Fraction(1, 16)}
    t_gap = {False: Fraction(1, 8), True: Fraction(1, 12)}
    eps_l = {False: eps0, True: eps0 / 2}
    stage = 4 * eps0

    legs: list[_Leg] = []
    leg_lookup: dict[tuple, _Leg] = {}

    def add_leg(arc_key, leg_kind, target_room, wall, t_f, off):
        leg = _Leg(arc_key, leg_kind, target_room, t_f, off, wall,
                   cable.tree_route(target_room))
        legs.append(leg)
        leg_lookup[(arc_key, leg_kind)] = leg
        return leg

    for i in range(g):
        ci = first_chord[i]
        plus_room = ci
        minus_room = (ci - 1) % k
        for prime in (False, True):
            akey = ("a", i, prime)
            add_leg(akey, "out", plus_room, "left", t_a[prime], stage)
            add_leg(akey, "back", minus_room, "right", t_a[prime], -stage)
            bkey = ("b", i, prime)
            add_leg(bkey, "out", plus_room, "left", -t_gap[prime], stage)
            add_leg(bkey, "back", plus_room, "left", t_gap[prime], stage)

    b1_root = rc.room_bottom[root][0]
    entry_pos = rc.unroll(root, puncture[0], Fraction(-1)) - b1_root
    ordered = cable.required_order(root, legs, 0, entry_pos, True)
    for si, leg in enumerate(ordered):
        leg.slot = si
    cable.place(root, ordered, 0, True)
    n_slots = len(legs)

    def chord_wall_point(ci: int, offset: Fraction, t: Fraction) -> Point:
        rec = dec.chords[ci]
        x = (rec.bottom + dec.delta * (t + 1) + offset) % n
        return (x, t)

    def emit(points: list[tuple[int, Point]]) -> list[Segment]:
        segs: list[Segment] = []
        for (r0, pt0), (r1, pt1) in zip(points, points[1:]):
            if r0 != r1:
                continue  # fold jump: the two points are identified
            u0 = rc.unroll(r0, pt0[0], pt0[1])
            u1 = rc.unroll(r0, pt1[0], pt1[1])
            segs.extend(split_chart_segment(n, (u0, pt0[1]), (u1, pt1[1])))
        return segs

    arcs: dict[tuple, PLArc] = {}
    for i in range(g):
        ci = first_chord[i]
        plus_room = ci
        minus_room = (ci - 1) % k
        for prime in (False, True):
            akey = ("a", i, prime)
            out = leg_lookup[(akey, "out")]
            back = leg_lookup[(akey, "back")]
            ta = t_a[prime]
            pre = (plus_room, chord_wall_point(ci, stage, ta))
            post = (minus_room, chord_wall_point(ci, -stage, ta))
            head = (
                [(root, sq_point(out.slot))]
                + out.points
                + [pre]
            )
            segs = emit(head)
            u_pre = rc.unroll(plus_room, pre[1][0], ta)
            segs.extend(
                split_chart_segment(n, (u_pre, ta), (u_pre - 2 * stage, ta))
            )
            tail = (
                [post]
                + list(reversed(back.points))
                + [(root, sq_point(back.slot))]
            )
            segs.extend(emit(tail))
            arcs[akey] = PLArc(
                ("a'" if prime else "a") + str(i), segs, crossing_component=i
            )

            bkey = ("b", i, prime)
            outb = leg_lookup[(bkey, "out")]
            backb = leg_lookup[(bkey, "back")]
            eps = eps_l[prime]
            tg = t_gap[prime]
            base_chord = (dec.chords[ci].bottom + eps) % n
            par = trace_component(fc, dec.delta, base_chord)
            chords_cyc = list(par.chords)
            start_idx = next(
                idx for idx, ch in enumerate(chords_cyc)
                if ch.bottom % n == base_chord and ch.upward
            )
            cyc = chords_cyc[start_idx:] + chords_cyc[:start_idx]
            ga = chord_wall_point(ci, eps, -tg)
            gb = chord_wall_point(ci, eps, tg)
            head = (
                [(root, sq_point(outb.slot))]
                + outb.points
                + [(plus_room, chord_wall_point(ci, stage, -tg)), (plus_room, ga)]
            )
            segs_b = emit(head)
            u_ga = rc.unroll(plus_room, ga[0], ga[1])
            u_b0 = rc.unroll(plus_room, base_chord, Fraction(-1))
            segs_b.extend(split_chart_segment(n, (u_ga, ga[1]), (u_b0, Fraction(-1))))
            for jdx in range(len(cyc) - 1, 0, -1):
                ch = cyc[jdx]
                upward = not ch.upward  # reverse traversal of the copy
                b_un = ch.bottom % n
                if upward:
                    segs_b.extend(split_chart_segment(
                        n, (b_un, Fraction(-1)), (b_un + 2 * dec.delta, Fraction(1))))
                else:
                    segs_b.extend(split_chart_segment(
                        n, (b_un + 2 * dec.delta, Fraction(1)), (b_un, Fraction(-1))))
            u_t0 = u_b0 + 2 * dec.delta
            u_gb = rc.unroll(plus_room, gb[0], gb[1])
            segs_b.extend(split_chart_segment(n, (u_t0, Fraction(1)), (u_gb, gb[1])))
            tail = (
                [(plus_room, gb), (plus_room, chord_wall_point(ci, stage, tg))]
                + list(reversed(backb.points))
                + [(root, sq_point(backb.slot))]
            )
            segs_b.extend(emit(tail))
            arcs[bkey] = PLArc(("b'" if prime else "b") + str(i), segs_b)

    system = ArcSystem(
        fc=fc,
        subset=tuple(subset),
        sublink=sub,
        a_arcs=[arcs[("a", i, False)] for i in range(g)],
        b_arcs=[arcs[("b", i, False)] for i in range(g)],
        a_primes=[arcs[("a", i, True)] for i in range(g)],
        b_primes=[arcs[("b", i, True)] for i in range(g)],
        puncture=puncture,
        square_half=rho,
    )
    validate_arc_system(fc, system)
    return system


def validate_arc_system(fc: FiberComplex, system: ArcSystem) -> None:
    """Exact re-check of every dualizing-arc condition."""
    sub_segs = [component_chart_segments(fc, c) for c in system.sublink.components]
    for i, arc in enumerate(system.a_arcs):
        for j, ls in enumerate(sub_segs):
            geo, _ = polyline_crossings(arc.segments, ls)
            if geo != (1 if i == j else 0):
                raise AssertionError(f"|a_{i} ^ L_{j}| = {geo}")
    for name, group in (("b", system.b_arcs), ("b'", system.b_primes), ("a'", system.a_primes)):
        for idx, arc in enumerate(group):
            for j, ls in enumerate(sub_segs):
                geo, _ = polyline_crossings(arc.segments, ls)
                expected = 1 if name == "a'" and idx == j else 0
                if geo != expected:
                    raise AssertionError(f"|{name}_{idx} ^ L_{j}| = {geo} != {expected}")
    allarcs = system.a_arcs + system.b_arcs + system.a_primes + system.b_primes
    for i in range(len(allarcs)):
        for j in range(i + 1, len(allarcs)):
            geo, _ = polyline_crossings(allarcs[i].segments, allarcs[j].segments)
            if geo:
                raise AssertionError(
                    f"arcs {allarcs[i].name} and {allarcs[j].name} cross {geo} times"
                )
