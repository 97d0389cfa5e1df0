"""Closed-form derivative preimages for x^(q-1) and x^((q-1)(q+3)/2).

Both counters reduce F(x+1) - F(x) = b to quadratics over GF(q^2). The
reductions apply the Frobenius map x -> x^q, which is not reversible at the
level of equations, so every candidate root is substituted back into the
original derivative equation before it is accepted. Rejected candidates are
kept on the result for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateLeadingCoefficientError, HypothesisViolatedError
from .field_core import Elem, FieldCtx
from .power_map import field_q

SPECIAL_ZERO = "special_zero"
SPECIAL_ONE = "special_one"
QUADRATIC_CASE = "quadratic_case"
CHARACTER_CASE_I = "character_case_I"
CHARACTER_CASE_II = "character_case_II"


@dataclass(frozen=True)
class AnalyticPreimage:
    b: Elem
    roots: tuple[Elem, ...]
    method: str
    validated: bool
    rejected: tuple[Elem, ...] = ()


def solve_quadratic(ctx: FieldCtx, A: Elem, B: Elem, C: Elem) -> frozenset[Elem]:
    """Roots of A x^2 + B x + C in ctx (odd characteristic)."""
    if A == 0:
        raise DegenerateLeadingCoefficientError("leading coefficient is zero")
    disc = ctx.sub(ctx.mul(B, B), ctx.mul(ctx.element(4), ctx.mul(A, C)))
    r = ctx.sqrt(disc)
    if r is None:
        return frozenset()
    two_a = ctx.mul(ctx.element(2), A)
    minus_b = ctx.neg(B)
    return frozenset((ctx.div(ctx.add(minus_b, r), two_a),
                      ctx.div(ctx.sub(minus_b, r), two_a)))


def d1_exponent(q: int) -> int:
    return q - 1


def d2_exponent(q: int) -> int:
    return ((q - 1) * (q + 3) // 2) % (q * q - 1)


def _check(ctx: FieldCtx, q: int) -> None:
    if field_q(ctx) != q:
        raise ValueError(f"field has {ctx.order} elements, expected {q}^2")


def _derivative(ctx: FieldCtx, d: int, x: Elem) -> Elem:
    return ctx.sub(ctx.pow(ctx.add(x, 1), d), ctx.pow(x, d))


def lemma1_coefficients(ctx: FieldCtx, q: int, b: Elem) -> tuple[Elem, Elem]:
    """(B, C) of the monic quadratic x^2 + B x + C satisfied by every
    x not in {0, -1} with (x+1)^(q-1) - x^(q-1) = b, for b != 0."""
    B = ctx.sub(1, ctx.div(ctx.element(2), b))
    num = ctx.sub(ctx.add(ctx.pow(b, q - 1), 1), ctx.pow(b, q))
    C = ctx.div(num, ctx.pow(b, q + 1))
    return B, C


def case2_constant(ctx: FieldCtx, q: int, b: Elem, s: int) -> Elem | None:
    """Constant term of x^2 + x + C for the mixed-character case with
    chi(x) = s, or None when b^(q+1) = 4."""
    norm = ctx.pow(b, q + 1)
    gap = ctx.sub(norm, ctx.element(4))
    if gap == 0:
        return None
    trace = ctx.add(ctx.pow(b, q), b)
    sgn = ctx.element(s)
    num = ctx.add(norm, ctx.mul(sgn, trace))
    den = ctx.neg(ctx.mul(sgn, ctx.mul(b, gap)))
    return ctx.div(num, den)


def _subfield_minus_ends(ctx: FieldCtx) -> list[Elem]:
    minus_one = ctx.minus_one
    return [x for x in ctx.subfield_elements(ctx.m // 2) if x not in (0, minus_one)]


def _finish(ctx, d, b, candidates, method) -> AnalyticPreimage:
    good, bad = [], []
    for x in sorted(set(candidates)):
        (good if _derivative(ctx, d, x) == b else bad).append(x)
    return AnalyticPreimage(b, tuple(good), method, True, tuple(bad))


def delta1_analytic(ctx: FieldCtx, q: int, b: Elem) -> AnalyticPreimage:
    """Solutions of (x+1)^(q-1) - x^(q-1) = b for q not congruent to 2 mod 3."""
    _check(ctx, q)
    if q % 3 == 2:
        raise HypothesisViolatedError(f"q = {q} is congruent to 2 mod 3")
    d = d1_exponent(q)
    if b == 0:
        return _finish(ctx, d, b, _subfield_minus_ends(ctx), SPECIAL_ZERO)

    candidates = list(solve_quadratic(ctx, 1, *lemma1_coefficients(ctx, q, b)))
    method = QUADRATIC_CASE
    if b == 1:
        candidates.append(0)
        method = SPECIAL_ONE
    elif b == ctx.minus_one:
        candidates.append(ctx.minus_one)
        method = SPECIAL_ONE
    return _finish(ctx, d, b, candidates, method)


def delta2_analytic(ctx: FieldCtx, q: int, b: Elem) -> AnalyticPreimage:
    """Solutions of (x+1)^d2 - x^d2 = b with d2 = (q-1)(q+3)/2.

    Requires q not congruent to 2 mod 3 and q congruent to 3 mod 4. For
    x not in {0, -1}, x^d2 = chi(x) x^(q-1); squares of b admit only roots
    with chi(x+1) = chi(x), nonsquares only roots with chi(x+1) = -chi(x).
    """
    _check(ctx, q)
    if q % 3 == 2 or q % 4 != 3:
        raise HypothesisViolatedError(f"q = {q} needs q != 2 mod 3 and q = 3 mod 4")
    d = d2_exponent(q)
    minus_one = ctx.minus_one
    if b == 0:
        return _finish(ctx, d, b, _subfield_minus_ends(ctx), SPECIAL_ZERO)

    chi = ctx.chi
    candidates: list[Elem] = []
    pattern_rejects: list[Elem] = []
    if chi(b) == 1:
        method = CHARACTER_CASE_I
        for s in (1, -1):
            bs = b if s == 1 else ctx.neg(b)
            for x in solve_quadratic(ctx, 1, *lemma1_coefficients(ctx, q, bs)):
                if x not in (0, minus_one) and chi(x) == s and chi(ctx.add(x, 1)) == s:
                    candidates.append(x)
                else:
                    pattern_rejects.append(x)
    else:
        method = CHARACTER_CASE_II
        for s in (1, -1):
            C = case2_constant(ctx, q, b, s)
            if C is None:
                continue
            for x in solve_quadratic(ctx, 1, 1, C):
                if chi(x) == s and chi(ctx.add(x, 1)) == -s:
                    candidates.append(x)
                else:
                    pattern_rejects.append(x)

    if b == 1:
        candidates.append(0)
        method = SPECIAL_ONE
    elif b == minus_one:
        candidates.append(minus_one)
        method = SPECIAL_ONE
    res = _finish(ctx, d, b, candidates, method)
    rejected = tuple(sorted(set(res.rejected) | (set(pattern_rejects) - set(res.roots))))
    return AnalyticPreimage(res.b, res.roots, res.method, True, rejected)


def bc_relation_holds(ctx: FieldCtx, q: int, b: Elem, c: Elem) -> bool:
    """(b/c)^(q-1) = -1 and (b/c)^2 = 1 - 4/c^(q+1)."""
    if b == 0 or c == 0:
        raise ValueError("b and c must be nonzero")
    r = ctx.div(b, c)
    if ctx.pow(r, q - 1) != ctx.minus_one:
        return False
    rhs = ctx.sub(1, ctx.div(ctx.element(4), ctx.pow(c, q + 1)))
    return ctx.mul(r, r) == rhs


def case2_root_pairs(ctx: FieldCtx, q: int, c: Elem) -> list[tuple[Elem, Elem]]:
    """The four sign choices of z1 = (-1 +- (c-2) c^((q-1)/2) / sqrt(c^(q+1) - 4)) / 2
    and z2 = (-1 +- (c+2) c^((q-1)/2) / sqrt(c^(q+1) - 4)) / 2.

    Order: (+,+), (+,-), (-,+), (-,-). Empty when c^(q+1) - 4 is zero or a
    nonsquare.
    """
    if q % 4 != 3:
        raise HypothesisViolatedError(f"q = {q} is not congruent to 3 mod 4")
    if c == 0:
        return []
    root = ctx.sqrt(ctx.sub(ctx.pow(c, q + 1), ctx.element(4)))
    if not root:
        return []
    h = ctx.div(ctx.pow(c, (q - 1) // 2), root)
    two = ctx.element(2)
    t1 = ctx.mul(ctx.sub(c, two), h)
    t2 = ctx.mul(ctx.add(c, two), h)

    def half(v):
        return ctx.div(ctx.sub(v, 1), two)

    z1s = (half(t1), half(ctx.neg(t1)))
    z2s = (half(t2), half(ctx.neg(t2)))
    return [(z1, z2) for z1 in z1s for z2 in z2s]


def case2_b(ctx: FieldCtx, c: Elem, z1: Elem, z2: Elem) -> Elem | None:
    """F(z1) - F(z2) for a mixed-character pair in the derivative class of c,
    written through z^(q-1) = (+-c(z+1) - 1)/(1 + 2z):

        (c(z1 - z2) + 2(1 + z1 + z2)) / ((1 + 2 z1)(1 + 2 z2))

    z1 is the root with chi(z1) = -1. Returns None on a zero denominator.
    """
    two = ctx.element(2)
    den = ctx.mul(ctx.add(1, ctx.mul(two, z1)), ctx.add(1, ctx.mul(two, z2)))
    if den == 0:
        return None
    num = ctx.add(ctx.mul(c, ctx.sub(z1, z2)),
                  ctx.mul(two, ctx.add(1, ctx.add(z1, z2))))
    return ctx.div(num, den)
