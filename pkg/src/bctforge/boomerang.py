"""Boomerang connectivity rows beta(1, b) of power maps.

For a power map the BCT is determined by the a = 1 row. Any solution (x, y) of

    F(x) - F(y) = b,   F(x+1) - F(y+1) = b

has F(x+1) - F(x) = F(y+1) - F(y), and conversely, for x and y with equal
derivative value, F(x+1) - F(y+1) = F(x) - F(y). So the whole row is found
by bucketing x on its derivative value and tallying F(x) - F(y) over ordered
pairs inside each bucket.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ZeroBError, ZeroDifferenceError
from .field_core import Elem
from .power_map import PowerMap


@dataclass
class BctReport:
    per_b: dict[Elem, int]          # nonzero entries only, ascending b
    beta: int
    spectrum: dict[int, int]        # BCT value -> number of nonzero b
    omega_classes: dict[int, int]   # preimage size i -> |Omega_i|
    zero_b_pairs: int = 0           # ordered pairs x != y in a bucket with F(x) = F(y)


def bct_rows_fast(F: PowerMap) -> BctReport:
    ctx, vals = F.ctx, F.values
    sub = ctx.sub
    tally: Counter[Elem] = Counter()
    zero_pairs = 0
    for xs in F.classes.values():
        if len(xs) < 2:
            continue
        for x in xs:
            fx = vals[x]
            for y in xs:
                if y == x:
                    continue
                b = sub(fx, vals[y])
                if b:
                    tally[b] += 1
                else:
                    zero_pairs += 1

    per_b = dict(sorted(tally.items()))
    spectrum = Counter(per_b.values())
    spectrum[0] = ctx.order - 1 - len(per_b)
    omega = Counter(len(xs) for xs in F.classes.values())
    omega[0] = ctx.order - len(F.classes)
    return BctReport(
        per_b=per_b,
        beta=max(per_b.values(), default=0),
        spectrum=dict(sorted((k, v) for k, v in spectrum.items() if v)),
        omega_classes=dict(sorted((k, v) for k, v in omega.items() if v)),
        zero_b_pairs=zero_pairs,
    )


def boomerang_uniformity(F: PowerMap) -> int:
    return bct_rows_fast(F).beta


def solution_pairs(F: PowerMap, b: Elem) -> list[tuple[Elem, Elem]]:
    """All ordered (x, y) solving the boomerang system for output difference b."""
    if b == 0:
        raise ZeroBError("output difference must be nonzero")
    ctx, vals = F.ctx, F.values
    out = []
    for xs in F.classes.values():
        if len(xs) < 2:
            continue
        for x in xs:
            for y in xs:
                if y != x and ctx.sub(vals[x], vals[y]) == b:
                    out.append((x, y))
    return out


def _shifted_values(F: PowerMap, a: Elem) -> tuple[list[Elem], list[Elem]]:
    ctx = F.ctx
    return ([ctx.pow(x, F.d) for x in ctx.elements()],
            [ctx.pow(ctx.add(x, a), F.d) for x in ctx.elements()])


def bct_row_naive(F: PowerMap, b: Elem, a: Elem = 1) -> int:
    """beta(a, b) by trying every ordered pair (x, y). Quartic in q; oracle use only."""
    if b == 0:
        raise ZeroBError("output difference must be nonzero")
    if a == 0:
        raise ZeroDifferenceError("input difference must be nonzero")
    sub = F.ctx.sub
    f0, fa = _shifted_values(F, a)
    count = 0
    for x in F.ctx.elements():
        u, v = f0[x], fa[x]
        for y in F.ctx.elements():
            if sub(u, f0[y]) == b and sub(v, fa[y]) == b:
                count += 1
    return count


def bct_table_naive(F: PowerMap, a: Elem = 1) -> dict[Elem, int]:
    """Every nonzero beta(a, b) from a single pass over all ordered pairs."""
    if a == 0:
        raise ZeroDifferenceError("input difference must be nonzero")
    sub = F.ctx.sub
    f0, fa = _shifted_values(F, a)
    tally: Counter[Elem] = Counter()
    for x in F.ctx.elements():
        u, v = f0[x], fa[x]
        for y in F.ctx.elements():
            b = sub(u, f0[y])
            if b and b == sub(v, fa[y]):
                tally[b] += 1
    return dict(sorted(tally.items()))
