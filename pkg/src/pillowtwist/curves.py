"""Geodesic multicurves on the fiber complex.

A slope curve downstairs is a closed leaf of the constant-direction
foliation of the pillowcase; its full preimage upstairs is a union of
closed billiard leaves on the flat annulus.  In chart coordinates
(psi, t) every leaf of the a/b foliation has constant chart slope
delta = d(psi)/dt = a/(2b), because the fold identifications are local
half-turns.  A chordal component is recorded as its cyclic sequence of
full-height chords; a slope-infinity component is a horizontal circle.

Geodesic representatives of distinct slopes are automatically in minimal
position (flat bigons would violate Gauss-Bonnet, cone angles being at
least 2*pi), so geometric intersection numbers are exact crossing counts.

The lifted twists are affine automorphisms of the flat structure:

* the infinity-twist is the horizontal shear (psi, t) -> (psi + n(t+1), t),
  which restricts to the deck rotation on the top fold;
* the zero-twist is the unit vertical shear of the pq vertical cylinders,
  displacing each point along its vertical leaf by -4n times its offset
  into its cylinder.

Affine maps send geodesics to geodesics, so twisting never needs a
bigon-reduction pass: the image of a component is re-traced from the
image of one of its points with the sheared direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .fiber import FiberComplex, TorusParams
from .slope import INFINITY, ONE, ZERO, Slope, TwistMove, apply_twist


class CoincidenceError(RuntimeError):
    """Two curve representatives touch non-transversally; retry shifted."""


class NotASlopeLiftError(ValueError):
    """The multicurve's intersection profile matches no slope lift."""


_PARAM_LADDER = (
    Fraction(1, 3),
    Fraction(1, 5),
    Fraction(2, 7),
    Fraction(3, 11),
    Fraction(5, 13),
    Fraction(7, 17),
    Fraction(11, 19),
)


@dataclass(frozen=True)
class Chord:
    """A full-height geodesic chord, read off in traversal order.

    ``bottom`` and ``top`` are the psi coordinates of the endpoints on the
    two folds; ``upward`` records the traversal direction.  For every chord
    of a leaf with chart slope delta, top = bottom + 2*delta (mod 2pq).
    """

    bottom: Fraction
    top: Fraction
    upward: bool

    def reversed_(self) -> "Chord":
        return Chord(self.bottom, self.top, not self.upward)


@dataclass(frozen=True)
class Component:
    """One closed geodesic: either a chord cycle or a horizontal circle."""

    kind: str  # "chords" | "circle"
    delta: Optional[Fraction] = None
    chords: tuple[Chord, ...] = ()
    t0: Optional[Fraction] = None

    @staticmethod
    def circle(t0: Fraction) -> "Component":
        if not -1 < t0 < 1:
            raise ValueError("horizontal circle must lie strictly inside the band")
        return Component(kind="circle", t0=Fraction(t0))

    @staticmethod
    def chord_cycle(delta: Fraction, chords: Iterable[Chord]) -> "Component":
        chords = tuple(chords)
        if not chords:
            raise ValueError("empty chord cycle")
        # Canonical rotation: smallest (bottom, top, upward) first.
        key = min(range(len(chords)), key=lambda i: (chords[i].bottom, chords[i].top, chords[i].upward))
        chords = chords[key:] + chords[:key]
        return Component(kind="chords", delta=Fraction(delta), chords=chords)

    def reversed_(self) -> "Component":
        if self.kind == "circle":
            return self
        rev = tuple(c.reversed_() for c in reversed(self.chords))
        return Component.chord_cycle(self.delta, rev)

    def unoriented(self) -> "Component":
        """Canonical representative of the unoriented curve."""
        if self.kind == "circle":
            return self
        rev = self.reversed_()
        mine = tuple((c.bottom, c.top, c.upward) for c in self.chords)
        theirs = tuple((c.bottom, c.top, c.upward) for c in rev.chords)
        return self if mine <= theirs else rev

    def sort_key(self):
        if self.kind == "circle":
            return (0, self.t0, Fraction(0))
        c0 = self.chords[0]
        return (1, c0.bottom, c0.top)


@dataclass(frozen=True)
class Multicurve:
    """A disjoint union of geodesic components, with an optional slope tag."""

    params: TorusParams
    components: tuple[Component, ...]
    slope: Optional[Slope] = None

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.components, key=lambda c: c.sort_key()))
        object.__setattr__(self, "components", ordered)

    def __len__(self) -> int:
        return len(self.components)

    def component_set(self) -> frozenset[Component]:
        return frozenset(self.components)

    def unoriented_set(self) -> frozenset[Component]:
        return frozenset(c.unoriented() for c in self.components)

    def retagged(self, slope: Optional[Slope]) -> "Multicurve":
        return Multicurve(self.params, self.components, slope)


# -- tracing ----------------------------------------------------------------


def chart_delta(s: Slope) -> Fraction:
    """Chart slope d(psi)/dt of the lifted foliation of a slope curve."""
    if s.b == 0:
        raise ValueError("slope infinity leaves are horizontal circles")
    return Fraction(s.a, 2 * s.b)


def default_offset(s: Slope) -> Fraction:
    """Start offset whose whole fold orbit avoids the corners."""
    return Fraction(1, 4 * max(s.b, 1) + 2)


def trace_component(fc: FiberComplex, delta: Fraction, psi_start: Fraction) -> Component:
    """Trace the closed leaf through (psi_start, t=-1), departing upward."""
    n = fc.N
    chords: list[Chord] = []
    state = (psi_start % n, True)
    seen = set()
    psi, up = state
    while (psi, up) not in seen:
        seen.add((psi, up))
        if up:
            top = (psi + 2 * delta) % n
            chords.append(Chord(psi, top, True))
            psi, up = fc.fold_image(top, "top"), False
        else:
            bottom = (psi - 2 * delta) % n
            chords.append(Chord(bottom, psi, False))
            psi, up = fc.fold_image(bottom, "bottom"), True
    if (psi, up) != state:
        raise AssertionError("leaf did not close up at its start state")
    return Component.chord_cycle(delta, chords)


def trace_lift(fc: FiberComplex, s: Slope, offset: Optional[Fraction] = None) -> Multicurve:
    """Full preimage of a slope curve, traced directly (path lifting)."""
    if s.b == 0:
        return Multicurve(fc.params, (Component.circle(Fraction(19, 64)),), s)
    eps = default_offset(s) if offset is None else Fraction(offset)
    delta = chart_delta(s)
    comps: list[Component] = []
    seen_starts: set[tuple[Fraction, bool]] = set()
    for k in range(fc.params.deck_order):
        start = (eps + 2 * k) % fc.N
        if (start, True) in seen_starts:
            continue
        comp = trace_component(fc, delta, start)
        comps.append(comp)
        psi, up = start, True
        for ch in comp.chords:
            seen_starts.add((psi, up))
            if up:
                psi, up = fc.fold_image(ch.top, "top"), False
            else:
                psi, up = fc.fold_image(ch.bottom, "bottom"), True
    return Multicurve(fc.params, tuple(comps), s)


def base_vertical_multicurve(fc: FiberComplex) -> Multicurve:
    """The pq vertical curves through the fold-edge midpoints.

    These are the cores of the vertical cylinders and the axes of the
    lifted zero-twist, which therefore fixes this multicurve chord by
    chord.
    """
    n = fc.N
    comps = []
    seen = set()
    for l in range(n):
        x = Fraction(2 * l + 1, 2)
        if x in seen:
            continue
        y = fc.fold_image(x, "top")
        assert fc.fold_image(y, "bottom") == x
        seen.update((x, y))
        comps.append(
            Component.chord_cycle(
                Fraction(0),
                (Chord(x, x, True), Chord(y, y, False)),
            )
        )
    assert len(comps) == fc.params.deck_order
    return Multicurve(fc.params, tuple(comps), ZERO)


def lift_base_multicurves(fc: FiberComplex) -> tuple[Multicurve, Multicurve, Multicurve]:
    """Base lifts: the verticals, the core circle, and the slope-1 lift."""
    l0 = base_vertical_multicurve(fc)
    linf = Multicurve(fc.params, (Component.circle(Fraction(19, 64)),), INFINITY)
    l1 = trace_lift(fc, ONE)
    return l0, linf, l1


def check_base_curve_invariants(fc: FiberComplex) -> None:
    """Curve-level construction gates, run by build_fiber.

    The wrong mirror convention for the bottom fold passes every cell-level
    check but breaks these counts.
    """
    pq = fc.params.deck_order
    l0 = base_vertical_multicurve(fc)
    if len(l0) != pq:
        raise AssertionError(f"vertical base multicurve has {len(l0)} components, not pq")
    l1 = trace_lift(fc, ONE)
    if len(l1) != 1:
        raise AssertionError(f"slope-1 lift has {len(l1)} components, expected 1")
    lhalf = trace_lift(fc, Slope(1, 2))
    if len(lhalf) != 1:
        raise AssertionError("slope-1/2 lift should be connected")
    l23 = trace_lift(fc, Slope(2, 3))
    if len(l23) != pq:
        raise AssertionError("slope-2/3 lift should have pq components")


# -- intersections ----------------------------------------------------------


def _count_chord_pair(nmod: int, b1: Fraction, d1: Fraction, b2: Fraction, d2: Fraction) -> int:
    """Crossings of two full-height chord lines with distinct chart slopes.

    Solves (d1 - d2)(t + 1) = b2 - b1 (mod N) for t in (-1, 1); an endpoint
    solution means the curves cross exactly on a fold and the caller must
    retry with a shifted representative.
    """
    dd = d1 - d2
    d0 = b2 - b1
    # x = t + 1 in (0, 2):  x = (d0 + k*N) / dd
    lo = -d0 / nmod
    hi = (2 * dd - d0) / nmod
    if lo > hi:
        lo, hi = hi, lo
    if lo.denominator == 1 or hi.denominator == 1:
        raise CoincidenceError("chords meet exactly on a fold")
    import math

    return math.floor(hi) - math.floor(lo)


def geometric_intersection(fc: FiberComplex, m1: Multicurve, m2: Multicurve) -> int:
    """Exact crossing count of two geodesic multicurves in minimal position."""
    total = 0
    for c1 in m1.components:
        for c2 in m2.components:
            total += _component_crossings(fc, c1, c2)
    return total


def _component_crossings(fc: FiberComplex, c1: Component, c2: Component) -> int:
    if c1.kind == "circle" and c2.kind == "circle":
        return 0
    if c1.kind == "circle":
        return len(c2.chords)
    if c2.kind == "circle":
        return len(c1.chords)
    if c1.delta == c2.delta:
        # Parallel leaves; identical components count zero as well.
        if c1.unoriented() != c2.unoriented():
            shared = {(c.bottom, c.top) for c in c1.chords} & {
                (c.bottom, c.top) for c in c2.chords
            }
            if shared:
                raise CoincidenceError("distinct parallel components share a chord")
        return 0
    total = 0
    for a in c1.chords:
        for b in c2.chords:
            total += _count_chord_pair(fc.N, a.bottom, c1.delta, b.bottom, c2.delta)
    return total


def lift_intersection(fc: FiberComplex, s1: Slope, s2: Slope) -> int:
    """Crossings of the canonical lifts of two slopes, retried to transversality."""
    m1 = trace_lift(fc, s1)
    if s1 == s2:
        return 0
    base = default_offset(s2) if s2.b else None
    for j in range(40):
        try:
            if s2.b == 0:
                t0 = Fraction(19, 64) + Fraction(1, 64 * (3 * j + 5))
                m2 = Multicurve(fc.params, (Component.circle(t0),), s2)
            else:
                m2 = trace_lift(fc, s2, offset=base / (2 * j + 1))
            return geometric_intersection(fc, m1, m2)
        except (CoincidenceError, ValueError):
            continue
    raise AssertionError("no transversal offset found for lift intersection")


def intersection_with_retries(
    fc: FiberComplex, m: Multicurve, ref_slope: Slope
) -> int:
    """Crossings of m with a freshly traced reference lift of ref_slope.

    The reference offset is moved through a deterministic ladder until the
    count is transversal; moving a full lift through nonsingular leaves
    does not change its isotopy class.
    """
    base = default_offset(ref_slope)
    for j in range(1, 40):
        if ref_slope.b == 0:
            ref = Multicurve(
                fc.params,
                (Component.circle(Fraction(19, 64) + Fraction(1, 64 * (j + 1) * 3)),),
                ref_slope,
            )
        else:
            ref = trace_lift(fc, ref_slope, offset=base / (2 * j + 1))
        try:
            return geometric_intersection(fc, m, ref)
        except CoincidenceError:
            continue
    raise AssertionError("no transversal reference position found")


def recognize_slope(fc: FiberComplex, m: Multicurve) -> Slope:
    """Identify which slope a reduced lift came from, by its profile.

    Counts against the four reference lifts of 1/0, 0/1, 1/1 and -1/1
    determine |d|, |c|, |c - d| and |c + d| after dividing by 2pq; the two
    sign candidates are disambiguated by the last two counts.  Profiles
    matching no slope raise NotASlopeLiftError.
    """
    pq = fc.params.deck_order
    n_inf = intersection_with_retries(fc, m, INFINITY)
    n_zero = intersection_with_retries(fc, m, ZERO)
    n_one = intersection_with_retries(fc, m, ONE)
    n_neg = intersection_with_retries(fc, m, Slope(-1, 1))
    scale = 2 * pq
    if any(x % scale for x in (n_inf, n_zero, n_one, n_neg)):
        raise NotASlopeLiftError(f"profile {(n_inf, n_zero, n_one, n_neg)} not divisible by 2pq")
    d_abs, c_abs = n_inf // scale, n_zero // scale
    hits = []
    for c_sgn in (1, -1) if c_abs else (1,):
        c = c_sgn * c_abs
        d = d_abs
        if (c, d) == (0, 0):
            continue
        if abs(c - d) * scale == n_one and abs(c + d) * scale == n_neg:
            from math import gcd

            if gcd(abs(c), d) == 1:
                hits.append(Slope(c, d))
    hits = sorted(set(hits), key=lambda s: s.sort_key())
    if not hits:
        raise NotASlopeLiftError(
            f"profile {(n_inf, n_zero, n_one, n_neg)} matches no reduced slope"
        )
    # Symmetric profiles (c = 0 or d = 0) yield one candidate; otherwise the
    # two candidates differ and exactly one matched.
    if len(hits) > 1:
        raise NotASlopeLiftError(f"ambiguous profile {(n_inf, n_zero, n_one, n_neg)}")
    s = hits[0]
    expected = 1 if s.a % 2 else pq
    if len(m) != expected:
        raise NotASlopeLiftError(
            f"component count {len(m)} does not match parity of slope {s}"
        )
    return s


# -- lifted twists ----------------------------------------------------------


def vertical_flow(fc: FiberComplex, psi: Fraction, t: Fraction, dist: Fraction) -> tuple[Fraction, Fraction, int]:
    """Flow along the vertical leaf through (psi, t) by a signed distance.

    Returns (psi', t', direction) where direction is +1 if the flow ends
    moving upward.  Vertical leaves close up with length 4, so the distance
    is reduced mod 4 first.
    """
    d = Fraction(dist) % 4
    pos_psi, pos_t, up = Fraction(psi) % fc.N, Fraction(t), True
    while d > 0:
        if up:
            room = 1 - pos_t
            if d <= room:
                pos_t += d
                d = Fraction(0)
            else:
                d -= room
                pos_psi, pos_t, up = fc.fold_image(pos_psi, "top"), Fraction(1), False
        else:
            room = pos_t + 1
            if d <= room:
                pos_t -= d
                d = Fraction(0)
            else:
                d -= room
                pos_psi, pos_t, up = fc.fold_image(pos_psi, "bottom"), Fraction(-1), True
    return pos_psi, pos_t, 1 if up else -1


def _point_on_component(comp: Component, s_param: Fraction) -> tuple[Fraction, Fraction]:
    """A point strictly inside the first chord (or on the circle)."""
    if comp.kind == "circle":
        return Fraction(1, 3) + s_param, comp.t0
    ch = comp.chords[0]
    t = -1 + 2 * s_param
    return ch.bottom + comp.delta * (t + 1), t


def _retrace_through(fc: FiberComplex, delta: Fraction, psi: Fraction, t: Fraction) -> Component:
    """The closed leaf of chart slope delta through the given point."""
    bottom = (psi - delta * (t + 1)) % fc.N
    if bottom.denominator == 1:
        raise CoincidenceError("leaf basepoint projects to a corner")
    return trace_component(fc, delta, bottom)


def _map_component_tau_inf(fc: FiberComplex, comp: Component, n: int) -> Component:
    if comp.kind == "circle":
        return comp
    for s_param in _PARAM_LADDER:
        psi, t = _point_on_component(comp, s_param)
        image_psi = (psi + n * (t + 1)) % fc.N
        new_delta = comp.delta + n
        try:
            return _retrace_through(fc, new_delta, image_psi, t)
        except (CoincidenceError, ValueError):
            continue
    raise AssertionError("could not retrace infinity-twist image")


def _map_component_tau_zero(fc: FiberComplex, comp: Component, n: int) -> Component:
    for s_param in _PARAM_LADDER:
        if comp.kind == "circle":
            psi = (Fraction(1, 3) + s_param) % fc.N
            t = comp.t0
            delta_num, delta_den = 1, -4 * n  # direction (1, -4n)
        else:
            psi, t = _point_on_component(comp, s_param)
            # direction (delta, 1) -> (delta, 1 - 4n*delta)
            delta_num = comp.delta.numerator
            delta_den = comp.delta.denominator * 1 - 4 * n * comp.delta.numerator
        if psi.denominator == 1:
            continue
        frac_part = psi - (psi.numerator // psi.denominator)
        dist = -4 * n * frac_part
        ipsi, it, _ = vertical_flow(fc, psi, t, dist)
        try:
            if delta_den == 0:
                return Component.circle(it)
            new_delta = Fraction(delta_num, delta_den)
            return _retrace_through(fc, new_delta, ipsi, it)
        except (CoincidenceError, ValueError):
            continue
    raise AssertionError("could not retrace zero-twist image")


def apply_tilde_tau_inf(fc: FiberComplex, m: Multicurve, n: int) -> Multicurve:
    """Image of a multicurve under the n-th power of the lifted infinity-twist."""
    if n == 0:
        return m
    comps = tuple(_map_component_tau_inf(fc, c, n) for c in m.components)
    if len({c.unoriented() for c in comps}) != len(m.components):
        raise AssertionError("twist image collapsed components")
    tag = apply_twist(TwistMove(INFINITY, n), m.slope) if m.slope else None
    return Multicurve(fc.params, comps, tag)


def apply_tilde_tau_zero(fc: FiberComplex, m: Multicurve, n: int) -> Multicurve:
    """Image of a multicurve under the n-th power of the lifted zero-twist."""
    if n == 0:
        return m
    comps = tuple(_map_component_tau_zero(fc, c, n) for c in m.components)
    if len({c.unoriented() for c in comps}) != len(m.components):
        raise AssertionError("twist image collapsed components")
    tag = apply_twist(TwistMove(ZERO, n), m.slope) if m.slope else None
    return Multicurve(fc.params, comps, tag)


def deck_image(fc: FiberComplex, m: Multicurve, k: int = 1) -> Multicurve:
    """Image of a multicurve under the k-th power of the deck rotation."""
    comps = []
    for c in m.components:
        if c.kind == "circle":
            comps.append(c)
        else:
            comps.append(
                Component.chord_cycle(
                    c.delta,
                    (
                        Chord((ch.bottom + 2 * k) % fc.N, (ch.top + 2 * k) % fc.N, ch.upward)
                        for ch in c.chords
                    ),
                )
            )
    return Multicurve(fc.params, tuple(comps), m.slope)


def reflection_image(fc: FiberComplex, m: Multicurve) -> Multicurve:
    """Image under the reflection through the core circle (t -> -t)."""
    comps = []
    for c in m.components:
        if c.kind == "circle":
            comps.append(Component.circle(-c.t0))
        else:
            comps.append(
                Component.chord_cycle(
                    -c.delta,
                    tuple(
                        Chord(ch.top, ch.bottom, ch.upward) for ch in c.chords
                    ),
                )
            )
    return Multicurve(fc.params, tuple(comps), m.slope)


def lift_slope(fc: FiberComplex, s: Slope) -> Multicurve:
    """Lift a slope curve via the twist word of its reduction.

    reduce_slope provides a word in the two axis twists carrying s to a
    terminal slope; the lift is the inverse word of lifted twists applied
    to the terminal's base lift.  The direct tracer trace_lift is the
    independent oracle for this route.
    """
    from .slope import reduce_slope

    terminal, word = reduce_slope(s)
    if terminal == ZERO:
        m = base_vertical_multicurve(fc)
    elif terminal == INFINITY:
        m = Multicurve(fc.params, (Component.circle(Fraction(19, 64)),), INFINITY)
    else:
        m = trace_lift(fc, ONE)
    for mv in reversed(word.moves):
        if mv.axis == INFINITY:
            m = apply_tilde_tau_inf(fc, m, -mv.power)
        elif mv.axis == ZERO:
            m = apply_tilde_tau_zero(fc, m, -mv.power)
        else:
            raise AssertionError(f"reduction word uses unexpected axis {mv.axis}")
    expected = 1 if s.a % 2 else fc.params.deck_order
    if len(m) != expected:
        raise AssertionError(
            f"lift of {s} has {len(m)} components, expected {expected}"
        )
    return m.retagged(s)


# -- chart segments (shared with homology and rendering) ---------------------


def component_chart_segments(
    fc: FiberComplex, comp: Component
) -> list[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]]:
    """Chart segments ((x0, t0), (x1, t1)) of a component, in traversal order.

    Chords are split at the chart seam psi = 0 so every segment has its
    x-coordinates inside [0, N]; the segment direction follows the curve's
    orientation.
    """
    n = fc.N
    segs = []
    if comp.kind == "circle":
        segs.append(((Fraction(0), comp.t0), (Fraction(n), comp.t0)))
        return segs
    delta = comp.delta
    for ch in comp.chords:
        x0 = ch.bottom % n
        x1 = x0 + 2 * delta  # unrolled top endpoint
        pieces = _split_unrolled(n, x0, x1)
        if not ch.upward:
            pieces = [(b1, t1, b0, t0) for (b0, t0, b1, t1) in reversed(pieces)]
        segs.extend(((a, b), (c, d)) for (a, b, c, d) in pieces)
    return segs


def _split_unrolled(
    n: int, x0: Fraction, x1: Fraction
) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    """Split the unrolled segment (x0,-1)->(x1,+1) at multiples of N."""
    import math

    dx = x1 - x0
    if dx == 0:
        x = x0 % n
        return [(x, Fraction(-1), x, Fraction(1))]
    crossings = []
    first = math.floor(min(x0, x1) / n) + 1
    last = math.ceil(max(x0, x1) / n) - 1
    for k in range(first, last + 1):
        xc = Fraction(k * n)
        t = -1 + 2 * (xc - x0) / dx
        if -1 < t < 1:
            crossings.append((t, xc))
    crossings.sort()
    out = []
    cur_x, cur_t = x0, Fraction(-1)
    for t, xc in crossings:
        base = math.floor(((cur_x + xc) / 2) / n) * n
        out.append((cur_x - base, cur_t, xc - base, t))
        cur_x, cur_t = xc, t
    base = math.floor(((cur_x + x1) / 2) / n) * n
    out.append((cur_x - base, cur_t, x1 - base, Fraction(1)))
    return out
