"""The closed fiber of a generalized square knot as a flat polygon complex.

The closed fiber is modelled as a flat annulus of circumference 2pq and
height 2, whose two boundary circles are folded shut by an edge pairing:
the boundary is divided into 2pq unit edges, and the even edge l is glued
to the odd edge l + 2ap + 1 (mod 2pq), orientation reversed, where
ap = -1 (mod q).  Both boundary circles carry the same pairing, which is
the unique mirror convention admitting the reflection through the core
circle; the alternative mirrored pairing is kept for the invariant-gating
test and fails the curve-level checks.

The deck transformation of the induced order-pq branched covering over the
four-cone-point sphere is the rotation by one sector (two edge widths).
Gluing corners in the pairing orbits produces two vertex classes of local
degree p and q on each boundary circle; these are the cone-point preimages.
All positions are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class TorusParams:
    """Parameters (p, q) of the torus-knot summand, 0 < q < p coprime."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not (0 < self.q < self.p):
            raise ValueError(f"require 0 < q < p, got ({self.p}, {self.q})")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"require gcd(p, q) = 1, got ({self.p}, {self.q})")

    @property
    def genus(self) -> int:
        return (self.p - 1) * (self.q - 1)

    @property
    def deck_order(self) -> int:
        return self.p * self.q


class FiberComplex:
    """Flat-annulus model of the closed fiber with its fold identifications.

    Treat instances as immutable.  Positions psi live in Q / (2pq)Z; the
    height coordinate t lies in [-1, 1] with the folds at t = +-1.
    """

    def __init__(self, params: TorusParams, mirror: str = "symmetric"):
        if mirror not in ("symmetric", "reversed"):
            raise ValueError(f"unknown mirror convention {mirror!r}")
        self.params = params
        self.p = params.p
        self.q = params.q
        self.N = 2 * params.p * params.q
        self.mirror = mirror
        # a with a*p = -1 (mod q); then b*q = a*p + 1.
        a = (-pow(params.p, -1, params.q)) % params.q
        self.a_const = a
        self.b_const = (a * params.p + 1) // params.q
        self.shift = 2 * a * params.p + 1  # odd pairing shift
        self._vertex_classes: dict[str, list[dict]] = {}
        for side in ("top", "bottom"):
            self._vertex_classes[side] = self._build_vertex_classes(side)

    # -- fold structure ----------------------------------------------------

    def fold_partner_edge(self, edge: int, side: str = "top") -> int:
        """Edge paired with the given boundary edge on one fold circle."""
        s = self.shift
        if side == "bottom" and self.mirror == "reversed":
            s = -s
        if edge % 2 == 0:
            return (edge + s) % self.N
        return (edge - s) % self.N

    def fold_image(self, psi: Fraction, side: str) -> Fraction:
        """Image of a non-corner fold point under the edge pairing."""
        psi = Fraction(psi) % self.N
        if psi.denominator == 1:
            raise ValueError(f"fold position {psi} is a corner")
        ledge = psi.numerator // psi.denominator
        frac = psi - ledge
        partner = self.fold_partner_edge(ledge, side)
        return (partner + 1 - frac) % self.N

    # -- vertices and cone points -------------------------------------------

    def _corner_step(self, parity: int, side: str) -> int:
        # Corner c maps to c + shift + 1 (even corners) or c + shift - 1
        # (odd corners) under the gluing of the incident edge pair.
        s = self.shift
        if side == "bottom" and self.mirror == "reversed":
            s = -s
        return s + 1 if parity == 0 else s - 1

    def _build_vertex_classes(self, side: str) -> list[dict]:
        classes = []
        for parity in (0, 1):
            step = self._corner_step(parity, side)
            seen = set()
            for c in range(parity, self.N, 2):
                if c in seen:
                    continue
                orbit = []
                x = c
                while x not in orbit:
                    orbit.append(x)
                    seen.add(x)
                    x = (x + step) % self.N
                classes.append(
                    {
                        "side": side,
                        "corners": tuple(sorted(orbit)),
                        "local_degree": len(orbit),
                        "cone_order": len(orbit),
                    }
                )
        return classes

    def vertex_classes(self, side: str) -> list[dict]:
        return self._vertex_classes[side]

    def cone_point_summary(self) -> list[dict]:
        """The four cone points downstairs with their preimage counts."""
        out = []
        for side in ("top", "bottom"):
            for parity in (0, 1):
                cls = [
                    c
                    for c in self._vertex_classes[side]
                    if c["corners"][0] % 2 == parity
                ]
                orders = {c["cone_order"] for c in cls}
                out.append(
                    {
                        "side": side,
                        "corner_parity": parity,
                        "order": max(orders) if len(orders) == 1 else None,
                        "preimage_vertices": len(cls),
                    }
                )
        return out

    # -- deck action --------------------------------------------------------

    def deck_psi(self, psi: Fraction, k: int = 1) -> Fraction:
        return (psi + 2 * k) % self.N

    # -- edge-pair labels ---------------------------------------------------

    def edge_pair_label(self, k: int) -> tuple[int, int]:
        """Label (i, j) of the k-th glued edge pair, i mod p and j mod q.

        The even edge 2k and its partner form the pair; the deck rotation
        sends pair k to pair k + 1, acting as (i, j) -> (i + 1, j + 1).
        """
        return (k % self.p, k % self.q)

    def pair_index(self, i: int, j: int) -> int:
        """Inverse of edge_pair_label by the Chinese remainder theorem."""
        p, q = self.p, self.q
        k = (i * q * pow(q, -1, p) + j * p * pow(p, -1, q)) % (p * q)
        assert k % p == i % p and k % q == j % q
        return k

    # -- cell counts and self checks ----------------------------------------

    def euler_characteristic(self) -> int:
        v = len(self._vertex_classes["top"]) + len(self._vertex_classes["bottom"])
        e = 2 * self.N  # N vertical edges + N/2 fold pairs per side
        f = self.N
        return v - e + f

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic()
        assert chi % 2 == 0
        return (2 - chi) // 2

    def self_check_cells(self) -> None:
        p, q, n = self.p, self.q, self.N
        if self.genus != self.params.genus:
            raise AssertionError(
                f"genus {self.genus} != (p-1)(q-1) = {self.params.genus}"
            )
        # Pairing is a parity-swapping involution compatible with the deck.
        for side in ("top", "bottom"):
            for l in range(n):
                l2 = self.fold_partner_edge(l, side)
                if (l + l2) % 2 != 1 or self.fold_partner_edge(l2, side) != l:
                    raise AssertionError("fold pairing is not a parity-swapping involution")
                if self.fold_partner_edge((l + 2) % n, side) != (l2 + 2) % n:
                    raise AssertionError("fold pairing is not deck equivariant")
        # Deck acts freely on the N sector faces.
        for k in range(1, p * q):
            if (2 * k) % n == 0:
                raise AssertionError("deck action is not free on faces")
        # Cone points: on each side one class family of order p with q
        # preimages and one of order q with p preimages.
        for side in ("top", "bottom"):
            degrees = sorted(
                (c["local_degree"], len([1 for d in self._vertex_classes[side] if d["local_degree"] == c["local_degree"]]))
                for c in self._vertex_classes[side]
            )
            counts = {(deg, cnt) for deg, cnt in degrees}
            if counts != {(p, q), (q, p)}:
                raise AssertionError(
                    f"cone structure on {side} fold is {counts}, expected order-p "
                    f"points with {q} preimages and order-q points with {p}"
                )
        # Quotient by the deck is a sphere with four cone points.
        quotient_vertices = 0
        for side in ("top", "bottom"):
            orbits = set()
            for cls in self._vertex_classes[side]:
                orbit = frozenset(
                    tuple(sorted((c + 2 * k) % n for c in cls["corners"]))
                    for k in range(p * q)
                )
                orbits.add(min(orbit))
            quotient_vertices += len(orbits)
        quotient_chi = quotient_vertices - 4 + 2  # 2 edge orbits/side, 2 faces
        if quotient_chi != 2 or quotient_vertices != 4:
            raise AssertionError("deck quotient is not a sphere with 4 cone points")


def build_fiber(params: TorusParams) -> FiberComplex:
    """Construct the fiber complex and run every structural self-check.

    Cell-level invariants are verified here; curve-level gates (base lift
    counts, separation by the core, lift parity on a sample) live in the
    curves module and are also run, so a wrong mirror convention fails
    loudly at construction.
    """
    fc = FiberComplex(params)
    fc.self_check_cells()
    from . import curves  # deferred: curves imports this module

    curves.check_base_curve_invariants(fc)
    return fc
