"""Strongly linear operators on truncated Hahn series, as monomial tables.

An operator is stored as the family of images of every basis monomial t^m
with m in the nonnegative cone of weight at most N, and acts on a series by
linear extension over its finite support.  Contracting tables (every image
supported strictly above its basis exponent, with weight raised by at least
one) are the operators for which evaluation of formal power series
terminates at the truncation bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    DimensionMismatchError,
    IncompleteTableError,
    NotAUnitError,
    NotContractingError,
)
from .free_algebra import FreeSeries, Word
from .hahn_series import HahnPoly
from .support_order import Cmp, ExpVec, MonoidCtx, weight_universe


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a predicate check; `witness` explains a failure."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class OpTable:
    """Image table of a strongly linear operator at truncation.

    `images` must assign a series to every exponent of weight <= bound in
    the nonnegative cone; missing entries fail fast.
    """

    ctx: MonoidCtx
    bound: int
    images: dict = field(default_factory=dict)

    def __post_init__(self):
        universe = weight_universe(self.ctx, self.bound)
        canon = {}
        for exp, img in self.images.items():
            exp = self.ctx.check_vec(exp)
            if not isinstance(img, HahnPoly):
                raise TypeError("table images must be HahnPoly values")
            if img.ctx != self.ctx or img.bound != self.bound:
                raise DimensionMismatchError(
                    f"image of {exp} lives over a different context or bound"
                )
            canon[exp] = img
        missing = [m for m in universe if m not in canon]
        if missing:
            raise IncompleteTableError(
                f"table is missing images for basis exponents {missing[:4]}"
                + ("..." if len(missing) > 4 else "")
            )
        object.__setattr__(self, "images", canon)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_function(
        cls, ctx: MonoidCtx, bound: int, f: Callable[[ExpVec], HahnPoly]
    ) -> "OpTable":
        return cls(ctx, bound, {m: f(m) for m in weight_universe(ctx, bound)})

    @classmethod
    def identity(cls, ctx: MonoidCtx, bound: int) -> "OpTable":
        return cls.from_function(ctx, bound, lambda m: HahnPoly.monomial(ctx, bound, m))

    @classmethod
    def zero(cls, ctx: MonoidCtx, bound: int) -> "OpTable":
        return cls.from_function(ctx, bound, lambda m: HahnPoly.zero(ctx, bound))

    # -- action and algebra --------------------------------------------

    def basis(self) -> tuple[ExpVec, ...]:
        return weight_universe(self.ctx, self.bound)

    def _require_same(self, other: "OpTable"):
        if not isinstance(other, OpTable):
            raise TypeError(f"expected OpTable, got {type(other).__name__}")
        if self.ctx != other.ctx or self.bound != other.bound:
            raise DimensionMismatchError("tables live over different contexts or bounds")

    def __call__(self, a: HahnPoly) -> HahnPoly:
        return op_apply(self, a)

    def __add__(self, other: "OpTable") -> "OpTable":
        self._require_same(other)
        return OpTable(
            self.ctx,
            self.bound,
            {m: self.images[m] + other.images[m] for m in self.images},
        )

    def __neg__(self) -> "OpTable":
        return self.scale(-1)

    def __sub__(self, other: "OpTable") -> "OpTable":
        return self + (-other)

    def scale(self, c) -> "OpTable":
        c = Fraction(c)
        return OpTable(
            self.ctx, self.bound, {m: img.scale(c) for m, img in self.images.items()}
        )

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images.values())


def op_apply(table: OpTable, a: HahnPoly) -> HahnPoly:
    """Apply by linear extension over the support of `a`."""
    if table.ctx != a.ctx or table.bound != a.bound:
        raise DimensionMismatchError("operator and series contexts differ")
    out = HahnPoly.zero(table.ctx, table.bound)
    for exp, coeff in a.terms.items():
        img = table.images.get(exp)
        if img is None:
            raise IncompleteTableError(f"no tabulated image for basis exponent {exp}")
        out = out + img.scale(coeff)
    return out


def op_compose(f: OpTable, g: OpTable) -> OpTable:
    """(f o g): images are f applied to the images of g."""
    f._require_same(g)
    return OpTable(f.ctx, f.bound, {m: op_apply(f, img) for m, img in g.images.items()})


def op_lin_sum(tables: Sequence[OpTable]) -> OpTable:
    """Pointwise sum of a nonempty finite family of tables."""
    if not tables:
        raise ValueError("lin_sum needs at least one table to fix the context")
    acc = tables[0]
    for t in tables[1:]:
        acc = acc + t
    return acc


def op_scale(c, table: OpTable) -> OpTable:
    return table.scale(c)


def op_bracket(f: OpTable, g: OpTable) -> OpTable:
    return op_compose(f, g) - op_compose(g, f)


def multiplication_table(a: HahnPoly) -> OpTable:
    """Left multiplication by `a`, tabulated on the basis monomials."""
    return OpTable.from_function(
        a.ctx, a.bound, lambda m: a * HahnPoly.monomial(a.ctx, a.bound, m)
    )


def op_is_contracting(table: OpTable) -> CheckResult:
    """Every image exponent strictly above its basis exponent, weight raised.

    Beyond the order condition supp(image of t^m) > m, the image weights must
    exceed weight(m) by at least one, so that composition chains longer than
    the bound vanish on the truncated universe.
    """
    ctx = table.ctx
    for m in table.basis():
        wm = ctx.weight(m)
        for q in table.images[m].terms:
            if ctx.cmp(m, q) is not Cmp.LESS or ctx.weight(q) < wm + 1:
                return CheckResult(False, (m, q))
    return CheckResult(True)


def op_is_derivation(table: OpTable, weight_budget: int | None = None) -> CheckResult:
    """Leibniz rule on all basis pairs within the weight budget.

    Checking monomial pairs suffices: both sides are bilinear, and every
    series is a finite sum of monomials.
    """
    budget = table.bound if weight_budget is None else weight_budget
    ctx = table.ctx
    basis = [m for m in table.basis() if ctx.weight(m) <= budget]
    for i, m1 in enumerate(basis):
        w1 = ctx.weight(m1)
        t1 = HahnPoly.monomial(ctx, table.bound, m1)
        for m2 in basis[i:]:
            if w1 + ctx.weight(m2) > budget:
                continue
            t2 = HahnPoly.monomial(ctx, table.bound, m2)
            lhs = op_apply(table, t1 * t2)
            rhs = op_apply(table, t1) * t2 + t1 * op_apply(table, t2)
            if lhs != rhs:
                return CheckResult(False, (m1, m2))
    return CheckResult(True)


def op_is_unital_endomorphism(table: OpTable, weight_budget: int | None = None) -> CheckResult:
    """sigma(1) = 1 and multiplicativity on basis pairs within the budget."""
    budget = table.bound if weight_budget is None else weight_budget
    ctx = table.ctx
    unit = HahnPoly.one(ctx, table.bound)
    if op_apply(table, unit) != unit:
        return CheckResult(False, "unit")
    basis = [m for m in table.basis() if ctx.weight(m) <= budget]
    for i, m1 in enumerate(basis):
        w1 = ctx.weight(m1)
        t1 = HahnPoly.monomial(ctx, table.bound, m1)
        for m2 in basis[i:]:
            if w1 + ctx.weight(m2) > budget:
                continue
            t2 = HahnPoly.monomial(ctx, table.bound, m2)
            if op_apply(table, t1 * t2) != op_apply(table, t1) * op_apply(table, t2):
                return CheckResult(False, (m1, m2))
    return CheckResult(True)


def op_evaluate(
    P: FreeSeries, args: Sequence[OpTable], require_contracting: bool = True
) -> OpTable:
    """Evaluate a free series at a tuple of operator tables.

    Returns P(empty)*Id plus the sum over nonempty words theta of length at
    most the bound of P(theta) * (args[theta_1] o ... o args[theta_n]).  With
    contracting arguments the cutoff is exact: longer compositions vanish on
    the truncated universe because each factor raises weight.
    """
    if not args:
        raise DimensionMismatchError("evaluation needs at least one operator argument")
    first = args[0]
    for t in args[1:]:
        first._require_same(t)
    if P.alphabet_size != len(args):
        raise DimensionMismatchError(
            f"series over alphabet of size {P.alphabet_size} evaluated at {len(args)} operators"
        )
    if P.grade < first.bound:
        raise DimensionMismatchError(
            f"series grade {P.grade} is below the operator bound {first.bound}"
        )
    if require_contracting:
        for i, t in enumerate(args):
            chk = op_is_contracting(t)
            if not chk:
                raise NotContractingError(
                    f"argument {i} is not contracting at basis pair {chk.witness}",
                    witness=(i, chk.witness),
                )
    bound = first.bound
    words = [w for w in P.terms if 0 < len(w) <= bound]
    needed: set[Word] = set()
    for w in words:
        for i in range(len(w)):
            needed.add(w[i:])
    tables: dict[Word, OpTable] = {}
    for w in sorted(needed, key=len):
        if len(w) == 1:
            tables[w] = args[w[0]]
        else:
            tail = tables[w[1:]]
            tables[w] = (
                tail if tail.is_zero() else op_compose(args[w[0]], tail)
            )
    result = OpTable.zero(first.ctx, bound)
    const = P.constant_term
    if const != 0:
        result = result + OpTable.identity(first.ctx, bound).scale(const)
    for w in sorted(words, key=lambda u: (len(u), u)):
        result = result + tables[w].scale(P.terms[w])
    return result


def op_geometric_inverse(table: OpTable) -> OpTable:
    """Inverse of a table of the form c*Id + contracting, c nonzero.

    Computed as (1/c) * sum_{n <= N} (-(table - c*Id)/c)^n; exact at the
    truncation because the contracting part nilpotently raises weight.
    """
    ctx, bound = table.ctx, table.bound
    zero_exp = (0,) * ctx.dim
    c = table.images[zero_exp].coefficient(zero_exp)
    if c == 0:
        raise NotAUnitError("table has no scalar part on the weight-zero monomial")
    ident = OpTable.identity(ctx, bound)
    eps = table - ident.scale(c)
    chk = op_is_contracting(eps)
    if not chk:
        raise NotAUnitError(
            f"table is not of the form c*Id + contracting; offending pair {chk.witness}"
        )
    r = eps.scale(Fraction(-1) / c)
    acc = ident
    for _ in range(bound):
        acc = ident + op_compose(r, acc)
    return acc.scale(Fraction(1) / c)
