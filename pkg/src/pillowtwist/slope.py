"""Exact arithmetic for slope curves on the pillowcase.

A curve on the four-cone-point sphere that misses the cone points is
determined by its slope, an extended rational a/b.  Slopes are kept in the
normal form gcd(|a|, b) = 1 with b >= 0, and the point at infinity is 1/0.

A Dehn twist along a slope curve acts on slopes by a symplectic transvection:
twisting n times along a/b sends c/d to

    (c + 2nDa) / (d + 2nDb),    D = ad - bc,

followed by renormalisation.  The factor 2 appears because two slope curves
of determinant D meet in 2|D| points on the pillowcase.  Twists along the
axes 0/1 and 1/0 suffice to carry any slope to one of the three terminals
0/1, 1/0, 1/1, by a Euclidean descent on (b, |a|).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator


@dataclass(frozen=True)
class Slope:
    """A reduced extended rational a/b with b >= 0 (1/0 is infinity)."""

    a: int
    b: int

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if a == 0 and b == 0:
            raise ValueError("slope 0/0 is not defined")
        if b < 0:
            a, b = -a, -b
        if b == 0:
            a = 1
        else:
            g = gcd(abs(a), b)
            a //= g
            b //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        t = text.strip()
        if t in ("inf", "-inf", "oo", "1/0"):
            return cls(1, 0)
        if "/" in t:
            num, den = t.split("/", 1)
            return cls(int(num), int(den))
        return cls(int(t), 1)

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    @property
    def numerator_odd(self) -> bool:
        return self.a % 2 == 1

    def __str__(self) -> str:
        if self.b == 0:
            return "inf"
        return f"{self.a}/{self.b}"

    def sort_key(self) -> tuple[int, int]:
        return (self.b, self.a)


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)


@dataclass(frozen=True)
class TwistMove:
    """A power of a Dehn twist along a slope curve."""

    axis: Slope
    power: int

    def __post_init__(self) -> None:
        if self.power == 0:
            raise ValueError("twist power must be nonzero")

    def inverse(self) -> "TwistMove":
        return TwistMove(self.axis, -self.power)

    def __str__(self) -> str:
        return f"tau[{self.axis}]^{self.power}"


@dataclass(frozen=True)
class TwistWord:
    """An ordered product of twist moves, applied left to right.

    Canonical form: adjacent moves along the same axis are merged and
    cancelled moves are dropped, so equal words compare equal.
    """

    moves: tuple[TwistMove, ...] = ()

    def __post_init__(self) -> None:
        merged: list[TwistMove] = []
        for mv in self.moves:
            if merged and merged[-1].axis == mv.axis:
                total = merged[-1].power + mv.power
                merged.pop()
                if total != 0:
                    merged.append(TwistMove(mv.axis, total))
            else:
                merged.append(mv)
        object.__setattr__(self, "moves", tuple(merged))

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple(mv.inverse() for mv in reversed(self.moves)))

    def __iter__(self) -> Iterator[TwistMove]:
        return iter(self.moves)

    def __len__(self) -> int:
        return len(self.moves)

    def __str__(self) -> str:
        if not self.moves:
            return "(empty)"
        return " . ".join(str(mv) for mv in self.moves)


def intersection_number(s1: Slope, s2: Slope) -> int:
    """Geometric intersection number of two slope curves: 2|ad - bc|."""
    return 2 * abs(s1.a * s2.b - s1.b * s2.a)


def apply_twist(move: TwistMove, target: Slope) -> Slope:
    """Image of a slope under a power of a twist along the move's axis.

    Left-handed convention, pinned by tau_inf(0/1) = 2/1, tau_0(1/0) = -1/2
    and tau_1(0/1) = 2/3.
    """
    a, b = move.axis.a, move.axis.b
    c, d = target.a, target.b
    det = a * d - b * c
    n = move.power
    e = c + 2 * n * det * a
    f = d + 2 * n * det * b
    return Slope(e, f)


def apply_word(word: TwistWord, target: Slope) -> Slope:
    for mv in word:
        target = apply_twist(mv, target)
    return target


def _tau_inf_step(c: int, d: int) -> TwistMove:
    # Pick n with |c + 2nd| minimal; ties resolved toward a positive残.
    # Remainder r = c + 2nd lies in [-d+1, d] for d > 0.
    r = ((c + d - 1) % (2 * d)) + 1 - d
    n = (r - c) // (2 * d)
    return TwistMove(INFINITY, n)


def _tau_zero_step(c: int, d: int) -> TwistMove:
    # tau_0^n sends c/d to c/(d - 2nc); pick n with |d - 2nc| minimal.
    ac = abs(c)
    r = ((d + ac - 1) % (2 * ac)) + 1 - ac
    n = (d - r) // (2 * c)
    return TwistMove(ZERO, n)


def reduce_slope(s: Slope) -> tuple[Slope, TwistWord]:
    """Terminal slope and twist word carrying s to it.

    The word uses only the axes 1/0 and 0/1 and satisfies
    apply_word(word, s) == terminal.  Even numerators end at 0/1, odd ones
    at 1/0 or 1/1; the slope -1/1 is pushed on to 1/1 by one more
    infinity-twist.  Each step strictly decreases (b, |a|) in dictionary
    order, so the descent terminates.
    """
    moves: list[TwistMove] = []
    cur = s
    while True:
        a, b = cur.a, cur.b
        if b == 0 or a == 0:
            break
        if abs(a) == b:  # +-1/1
            if a < 0:
                mv = TwistMove(INFINITY, 1)
                moves.append(mv)
                cur = apply_twist(mv, cur)
            break
        if abs(a) > b:
            mv = _tau_inf_step(a, b)
        else:
            mv = _tau_zero_step(a, b)
        nxt = apply_twist(mv, cur)
        assert (nxt.b, abs(nxt.a)) < (b, abs(a)), "descent must make progress"
        moves.append(mv)
        cur = nxt
    word = TwistWord(tuple(moves))
    assert apply_word(word, s) == cur
    return cur, word
