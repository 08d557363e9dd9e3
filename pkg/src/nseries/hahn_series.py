"""Truncated Hahn/Noetherian series over an ordered exponent monoid.

A series is a sparse map from exponent vectors to exact rationals; every
stored exponent has weight in [0, N].  Because the weight is additive and
nonnegative, multiplication is exact modulo the ideal of weights above N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatchError, WeightBoundError
from .support_order import Cmp, ExpVec, MonoidCtx, vec_add

_ZERO = Fraction(0)


@dataclass(frozen=True)
class HahnPoly:
    ctx: MonoidCtx
    bound: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("weight bound must be >= 0")
        canon = {}
        for exp, coeff in self.terms.items():
            exp = self.ctx.check_vec(exp)
            w = self.ctx.weight(exp)
            if w < 0 or w > self.bound:
                raise WeightBoundError(
                    f"exponent {exp} has weight {w}, outside [0, {self.bound}]"
                )
            coeff = Fraction(coeff)
            if coeff != 0:
                canon[exp] = coeff
        object.__setattr__(self, "terms", canon)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ctx: MonoidCtx, bound: int) -> "HahnPoly":
        return cls(ctx, bound, {})

    @classmethod
    def one(cls, ctx: MonoidCtx, bound: int) -> "HahnPoly":
        return cls.monomial(ctx, bound, (0,) * ctx.dim)

    @classmethod
    def monomial(cls, ctx: MonoidCtx, bound: int, exp: Iterable[int], coeff=1) -> "HahnPoly":
        return cls(ctx, bound, {tuple(exp): Fraction(coeff)})

    # -- structure ----------------------------------------------------

    @property
    def support(self) -> set[ExpVec]:
        return set(self.terms)

    def coefficient(self, exp: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exp), _ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[ExpVec, Fraction]]:
        return sorted(
            self.terms.items(), key=lambda kv: (self.ctx.weight(kv[0]), kv[0])
        )

    def _require_same(self, other: "HahnPoly"):
        if not isinstance(other, HahnPoly):
            raise TypeError(f"expected HahnPoly, got {type(other).__name__}")
        if self.ctx != other.ctx or self.bound != other.bound:
            raise DimensionMismatchError("series live over different contexts or bounds")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "HahnPoly") -> "HahnPoly":
        self._require_same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, _ZERO) + c
        return HahnPoly(self.ctx, self.bound, out)

    def __neg__(self) -> "HahnPoly":
        return self.scale(-1)

    def __sub__(self, other: "HahnPoly") -> "HahnPoly":
        return self + (-other)

    def scale(self, c) -> "HahnPoly":
        c = Fraction(c)
        if c == 0:
            return HahnPoly.zero(self.ctx, self.bound)
        return HahnPoly(self.ctx, self.bound, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "HahnPoly") -> "HahnPoly":
        """Convolution product; terms of weight above the bound are discarded."""
        self._require_same(other)
        ctx = self.ctx
        out: dict[ExpVec, Fraction] = {}
        for ea, ca in self.terms.items():
            wa = ctx.weight(ea)
            for eb, cb in other.terms.items():
                if wa + ctx.weight(eb) > self.bound:
                    continue
                e = vec_add(ea, eb)
                out[e] = out.get(e, _ZERO) + ca * cb
        return HahnPoly(self.ctx, self.bound, out)

    def power(self, n: int) -> "HahnPoly":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        acc = HahnPoly.one(self.ctx, self.bound)
        for _ in range(n):
            acc = acc * self
        return acc


def hp_add(a: HahnPoly, b: HahnPoly) -> HahnPoly:
    return a + b


def hp_scale(c, a: HahnPoly) -> HahnPoly:
    return a.scale(c)


def hp_mul(a: HahnPoly, b: HahnPoly) -> HahnPoly:
    return a * b


def hp_prec(v: HahnPoly, w: HahnPoly) -> dict | None:
    """Dominance witness for v strictly below w, or None.

    v is dominated by w when w is nonzero and every exponent in the support
    of v strictly exceeds some exponent in the support of w; the returned map
    assigns such a witness to each support element of v.  The zero series is
    dominated by every nonzero series (empty witness); nothing dominates the
    zero series, and no nonzero series dominates itself.
    """
    v._require_same(w)
    if w.is_zero():
        return None
    witness: dict[ExpVec, ExpVec] = {}
    targets = [e for e, _ in w.sorted_terms()]
    for p in sorted(v.terms):
        hit = next((q for q in targets if v.ctx.cmp(p, q) is Cmp.GREATER), None)
        if hit is None:
            return None
        witness[p] = hit
    return witness


def hahn_to_json(a: HahnPoly) -> dict:
    return {
        "ctx": {"kind": a.ctx.kind, "dim": a.ctx.dim, "weights": list(a.ctx.weights)},
        "bound": a.bound,
        "terms": [{"exps": list(e), "coeff": str(c)} for e, c in a.sorted_terms()],
    }


def hahn_from_json(data: Mapping) -> HahnPoly:
    c = data["ctx"]
    ctx = MonoidCtx(int(c["dim"]), c["kind"], tuple(c["weights"]))
    terms = {tuple(t["exps"]): Fraction(t["coeff"]) for t in data["terms"]}
    return HahnPoly(ctx, int(data["bound"]), terms)
