"""Power mappings x -> x^d over GF(q^2) and their differential behaviour."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt

from .errors import InvalidExponentError, NotSquareFieldError, ZeroDifferenceError
from .field_core import Elem, FieldCtx


def field_q(ctx: FieldCtx) -> int:
    """The q with |ctx| = q^2."""
    if ctx.m % 2:
        raise NotSquareFieldError(f"GF({ctx.p}^{ctx.m}) is not of the form GF(q^2)")
    q = ctx.p ** (ctx.m // 2)
    assert q * q == ctx.order and isqrt(ctx.order) == q
    return q


@dataclass(frozen=True, eq=False)
class PowerMap:
    ctx: FieldCtx
    q: int
    d: int

    def __call__(self, x: Elem) -> Elem:
        return self.ctx.pow(x, self.d)

    @cached_property
    def values(self) -> tuple[Elem, ...]:
        """F(x) for every x, indexed by x."""
        pw = self.ctx.pow
        return tuple(pw(x, self.d) for x in self.ctx.elements())

    @cached_property
    def derivatives(self) -> tuple[Elem, ...]:
        """F(x+1) - F(x) for every x, indexed by x."""
        ctx, vals = self.ctx, self.values
        return tuple(ctx.sub(vals[ctx.add(x, 1)], vals[x]) for x in ctx.elements())

    @cached_property
    def classes(self) -> dict[Elem, tuple[Elem, ...]]:
        """Derivative value c -> ascending tuple of x with F(x+1) - F(x) = c."""
        buckets: dict[Elem, list[Elem]] = {}
        for x, c in enumerate(self.derivatives):
            buckets.setdefault(c, []).append(x)
        return {c: tuple(buckets[c]) for c in sorted(buckets)}


def make_power(ctx: FieldCtx, d: int) -> PowerMap:
    q = field_q(ctx)
    n = q * q - 1
    if d <= 0 or d % n == 0:
        raise InvalidExponentError(f"exponent {d} is not a valid power map exponent for GF({q}^2)")
    return PowerMap(ctx, q, d % n)


def make_f1(ctx: FieldCtx) -> PowerMap:
    """x^(q-1)."""
    q = field_q(ctx)
    return make_power(ctx, q - 1)


def make_f2(ctx: FieldCtx) -> PowerMap:
    """x^((q-1)(q+3)/2), i.e. x^(q-1) times the quadratic character."""
    q = field_q(ctx)
    return make_power(ctx, (q - 1) * (q + 3) // 2)


def evaluate(F: PowerMap, x: Elem) -> Elem:
    return F.ctx.pow(x, F.d)


def derivative_at(F: PowerMap, x: Elem) -> Elem:
    ctx = F.ctx
    return ctx.sub(ctx.pow(ctx.add(x, 1), F.d), ctx.pow(x, F.d))


def delta_preimage(F: PowerMap, b: Elem) -> frozenset[Elem]:
    """All x with F(x+1) - F(x) = b, by exhaustive scan."""
    return frozenset(x for x, c in enumerate(F.derivatives) if c == b)


@dataclass
class SpectrumReport:
    omega: dict[int, int]
    max_delta: int
    per_b: dict[Elem, int] | None = field(default=None)


def differential_spectrum(F: PowerMap, per_b: bool = False) -> SpectrumReport:
    """Differential spectrum {omega_i} of F, including omega_0."""
    counts = Counter(F.derivatives)
    omega = Counter(counts.values())
    omega[0] = F.ctx.order - len(counts)
    if omega[0] == 0:
        del omega[0]
    table = None
    if per_b:
        table = {b: counts.get(b, 0) for b in F.ctx.elements()}
    return SpectrumReport(dict(sorted(omega.items())), max(counts.values()), table)


def ddt_entry(F: PowerMap, a: Elem, b: Elem) -> int:
    """#{x : F(x+a) - F(x) = b} through the reduction to a = 1."""
    if a == 0:
        raise ZeroDifferenceError("input difference must be nonzero")
    ctx = F.ctx
    reduced = ctx.div(b, ctx.pow(a, F.d))
    return len(F.classes.get(reduced, ()))
