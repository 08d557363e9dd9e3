"""Factor groups of valuation-preserving automorphisms and their algebra.

Three kinds of building blocks act on truncated Hahn series over a lattice
context: coefficient characters (multiplicative rescale by x(g)), exponent
relabelings along order-preserving unimodular matrices, and diagonal
derivations scaling each t^g by an additive character value.  A suitable
automorphism table factors as

    residual  o  character rescale  o  exponent relabeling

with a near-identity residual, and the factorization round-trips exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (
    DimensionMismatchError,
    InconsistentExponentialError,
    NotDecomposableError,
    TruncationOverflowError,
)
from .hahn_series import HahnPoly
from .operators import (
    CheckResult,
    OpTable,
    op_apply,
    op_compose,
    op_is_contracting,
    op_is_unital_endomorphism,
)
from .support_order import Cmp, ExpVec, FinitePosetFragment, MonoidCtx, minimal_elements

Matrix = tuple[tuple[int, ...], ...]


# -- small exact matrix helpers --------------------------------------------

def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise DimensionMismatchError("matrix must be square and nonempty")
    return mat


def mat_vec(mat: Matrix, v: ExpVec) -> ExpVec:
    if len(v) != len(mat[0]):
        raise DimensionMismatchError("matrix/vector dimension mismatch")
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in mat)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_det(mat: Matrix) -> int:
    n = len(mat)
    rows = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor == 0:
                continue
            for c in range(col, n):
                rows[r][c] -= factor * rows[col][c]
    assert det.denominator == 1
    return int(det)


def mat_inverse(mat: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise NotDecomposableError("matrix is singular", witness=mat)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r == col or aug[r][col] == 0:
                continue
            factor = aug[r][col]
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    out = tuple(tuple(aug[i][n + j] for j in range(n)) for i in range(n))
    if any(x.denominator != 1 for row in out for x in row):
        raise NotDecomposableError("matrix inverse is not integral", witness=mat)
    return tuple(tuple(int(x) for x in row) for row in out)


def _probe_vectors(dim: int) -> list[ExpVec]:
    span = range(-2, 3) if dim <= 3 else range(-1, 2)
    return list(itertools.product(span, repeat=dim))


# -- factor data types ------------------------------------------------------

@dataclass(frozen=True)
class CharacterX:
    """Multiplicative character on the exponent lattice, by generator values."""

    ctx: MonoidCtx
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.ctx.dim:
            raise DimensionMismatchError("one generator value per dimension required")
        if any(v == 0 for v in vals):
            raise ValueError("character values must be nonzero")
        object.__setattr__(self, "values", vals)

    @classmethod
    def trivial(cls, ctx: MonoidCtx) -> "CharacterX":
        return cls(ctx, (Fraction(1),) * ctx.dim)

    def at(self, g: Sequence[int]) -> Fraction:
        g = self.ctx.check_vec(g)
        out = Fraction(1)
        for v, e in zip(self.values, g):
            out *= v ** e
        return out

    def __mul__(self, other: "CharacterX") -> "CharacterX":
        if self.ctx != other.ctx:
            raise DimensionMismatchError("characters live over different contexts")
        return CharacterX(self.ctx, tuple(a * b for a, b in zip(self.values, other.values)))

    def inverse(self) -> "CharacterX":
        return CharacterX(self.ctx, tuple(1 / v for v in self.values))

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)


@dataclass(frozen=True)
class ExponentAut:
    """Order-preserving unimodular relabeling of the exponent lattice."""

    ctx: MonoidCtx
    matrix: Matrix

    def __post_init__(self):
        mat = _as_matrix(self.matrix)
        if len(mat) != self.ctx.dim:
            raise DimensionMismatchError("matrix size must match the context dimension")
        object.__setattr__(self, "matrix", mat)
        det = mat_det(mat)
        if det not in (1, -1):
            raise ValueError(f"exponent automorphism must be unimodular, det = {det}")
        inv = mat_inverse(mat)
        for m in (mat, inv):
            probes = _probe_vectors(self.ctx.dim)
            for a in probes:
                for b in probes:
                    if self.ctx.cmp(a, b) is Cmp.LESS and self.ctx.cmp(
                        mat_vec(m, a), mat_vec(m, b)
                    ) is not Cmp.LESS:
                        raise ValueError(
                            f"matrix does not preserve the order on probe pair {a} < {b}"
                        )

    @classmethod
    def identity(cls, ctx: MonoidCtx) -> "ExponentAut":
        return cls(ctx, tuple(tuple(int(i == j) for j in range(ctx.dim)) for i in range(ctx.dim)))

    def apply(self, g: Sequence[int]) -> ExpVec:
        return mat_vec(self.matrix, self.ctx.check_vec(g))

    def inverse(self) -> "ExponentAut":
        return ExponentAut(self.ctx, mat_inverse(self.matrix))

    def compose(self, other: "ExponentAut") -> "ExponentAut":
        if self.ctx != other.ctx:
            raise DimensionMismatchError("exponent maps live over different contexts")
        return ExponentAut(self.ctx, mat_mul(self.matrix, other.matrix))

    def is_identity(self) -> bool:
        return self.matrix == ExponentAut.identity(self.ctx).matrix


@dataclass(frozen=True)
class AdditiveChar:
    """Additive character on the exponent lattice, by generator values."""

    ctx: MonoidCtx
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.ctx.dim:
            raise DimensionMismatchError("one generator value per dimension required")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, ctx: MonoidCtx) -> "AdditiveChar":
        return cls(ctx, (Fraction(0),) * ctx.dim)

    def at(self, g: Sequence[int]) -> Fraction:
        g = self.ctx.check_vec(g)
        return sum((v * e for v, e in zip(self.values, g)), Fraction(0))

    def __add__(self, other: "AdditiveChar") -> "AdditiveChar":
        if self.ctx != other.ctx:
            raise DimensionMismatchError("characters live over different contexts")
        return AdditiveChar(self.ctx, tuple(a + b for a, b in zip(self.values, other.values)))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class FactorAut:
    """Decomposed automorphism: exponent map, character, near-identity rest."""

    mu: ExponentAut
    chi: CharacterX
    residual: OpTable


# -- actions ----------------------------------------------------------------

def apply_gexp(x: CharacterX, a: HahnPoly) -> HahnPoly:
    """Rescale each coefficient a(g) by the character value x(g)."""
    if x.ctx != a.ctx:
        raise DimensionMismatchError("character and series contexts differ")
    return HahnPoly(a.ctx, a.bound, {g: x.at(g) * c for g, c in a.terms.items()})


def apply_oaut(mu, a: HahnPoly) -> HahnPoly:
    """Relabel exponents along mu: sum a(g) t^(mu g).

    `mu` may be an ExponentAut or a plain integer matrix (any injective
    order-preserving relabeling, not necessarily onto).  Images leaving the
    admissible weight range raise instead of being dropped.
    """
    matrix = mu.matrix if isinstance(mu, ExponentAut) else _as_matrix(mu)
    if not isinstance(mu, ExponentAut):
        if mat_det(matrix) == 0:
            raise ValueError("relabeling matrix must be injective")
        supp = sorted(a.terms)
        for p in supp:
            for q in supp:
                if a.ctx.cmp(p, q) is Cmp.LESS and a.ctx.cmp(
                    mat_vec(matrix, p), mat_vec(matrix, q)
                ) is not Cmp.LESS:
                    raise ValueError(
                        f"relabeling does not preserve the order on support pair {p} < {q}"
                    )
    out = {}
    for g, c in a.terms.items():
        img = mat_vec(matrix, g)
        w = a.ctx.weight(img)
        if w < 0 or w > a.bound:
            raise TruncationOverflowError(
                f"relabeled exponent {img} of {g} has weight {w}, outside [0, {a.bound}]"
            )
        out[img] = c
    return HahnPoly(a.ctx, a.bound, out)


def apply_gder(alpha: AdditiveChar, a: HahnPoly) -> HahnPoly:
    """Diagonal derivation: scale each term a(g) t^g by alpha(g)."""
    if alpha.ctx != a.ctx:
        raise DimensionMismatchError("character and series contexts differ")
    return HahnPoly(a.ctx, a.bound, {g: alpha.at(g) * c for g, c in a.terms.items()})


def gexp_table(x: CharacterX, bound: int) -> OpTable:
    return OpTable.from_function(
        x.ctx, bound, lambda m: HahnPoly.monomial(x.ctx, bound, m, x.at(m))
    )


def oaut_table(mu: ExponentAut, bound: int) -> OpTable:
    def image(m):
        img = mu.apply(m)
        w = mu.ctx.weight(img)
        if w < 0 or w > bound:
            raise TruncationOverflowError(
                f"relabeled exponent {img} of {m} has weight {w}, outside [0, {bound}]"
            )
        return HahnPoly.monomial(mu.ctx, bound, img)

    return OpTable.from_function(mu.ctx, bound, image)


def gder_table(alpha: AdditiveChar, bound: int) -> OpTable:
    return OpTable.from_function(
        alpha.ctx, bound, lambda m: HahnPoly.monomial(alpha.ctx, bound, m, alpha.at(m))
    )


def pullback_morphism(mu: ExponentAut, bound: int) -> Callable[[OpTable], OpTable]:
    """Conjugation by the relabeling table: d -> O_mu o d o O_mu^(-1)."""
    fwd = oaut_table(mu, bound)
    back = oaut_table(mu.inverse(), bound)
    return lambda d: op_compose(op_compose(fwd, d), back)


# -- middle correspondence ---------------------------------------------------

def middle_correspond(
    alpha: AdditiveChar,
    e_values: Mapping | None = None,
    *,
    mode: str = "declared",
    order: int | None = None,
) -> CharacterX:
    """Character e o alpha from declared (or truncated-Taylor) exponentials.

    No exact exponential exists on the rationals, so its finitely many needed
    values are either supplied (`declared`, with the homomorphism law checked
    on all probed sums of declared points) or synthesized as truncated Taylor
    sums (`taylor`, needs `order`).
    """
    if mode == "taylor":
        if order is None:
            raise ValueError("taylor mode needs a truncation order")
        vals = []
        for v in alpha.values:
            acc = Fraction(0)
            term = Fraction(1)
            for n in range(order + 1):
                if n > 0:
                    term = term * v / n
                acc += term
            if acc == 0:
                raise InconsistentExponentialError(
                    f"truncated exponential of {v} vanishes at order {order}"
                )
            vals.append(acc)
        return CharacterX(alpha.ctx, tuple(vals))
    if mode != "declared":
        raise ValueError(f"unknown exponential mode {mode!r}")
    if e_values is None:
        raise ValueError("declared mode needs exponential values")
    table = {Fraction(k): Fraction(v) for k, v in e_values.items()}
    if any(v == 0 for v in table.values()):
        raise InconsistentExponentialError("exponential values must be nonzero")
    if Fraction(0) in table and table[Fraction(0)] != 1:
        raise InconsistentExponentialError(
            f"declared value at 0 must be 1, got {table[Fraction(0)]}"
        )
    keys = sorted(table)
    for u in keys:
        for v in keys:
            s = u + v
            if s in table and table[u] * table[v] != table[s]:
                raise InconsistentExponentialError(
                    f"hom law fails: e({u})*e({v}) = {table[u] * table[v]} != {table[s]} = e({u}+{v})"
                )
    vals = []
    for v in alpha.values:
        if v not in table:
            raise InconsistentExponentialError(f"no declared exponential value for {v}")
        vals.append(table[v])
    return CharacterX(alpha.ctx, tuple(vals))


# -- composition and decomposition -------------------------------------------

def one_aut_check(table: OpTable) -> CheckResult:
    """Near-identity automorphism test: unital endomorphism, rest contracting."""
    endo = op_is_unital_endomorphism(table)
    if not endo:
        return endo
    return op_is_contracting(table - OpTable.identity(table.ctx, table.bound))


def compose_factors(f: FactorAut) -> OpTable:
    """Recompose residual o character-rescale o exponent-relabeling as a table."""
    ctx = f.residual.ctx
    bound = f.residual.bound
    if f.mu.ctx != ctx or f.chi.ctx != ctx:
        raise DimensionMismatchError("factor components live over different contexts")

    def image(m):
        relabeled = apply_oaut(f.mu, HahnPoly.monomial(ctx, bound, m))
        return op_apply(f.residual, apply_gexp(f.chi, relabeled))

    return OpTable.from_function(ctx, bound, image)


def decompose_vaut(sigma: OpTable) -> FactorAut:
    """Split a valuation-compatible automorphism table into its three factors.

    The exponent map is read off the (unique) minimal support exponent of
    each basis image; it must extend the generator images linearly and be a
    unimodular order automorphism.  The character is chosen so that the
    residual sigma o (relabel)^(-1) o (rescale)^(-1) is a near-identity
    automorphism; any failure along the way reports a witness.
    """
    ctx, bound = sigma.ctx, sigma.bound
    endo = op_is_unital_endomorphism(sigma)
    if not endo:
        raise NotDecomposableError(
            f"table is not a unital endomorphism; witness {endo.witness}",
            witness=endo.witness,
        )
    lead: dict[ExpVec, ExpVec] = {}
    lead_coeff: dict[ExpVec, Fraction] = {}
    for m in sigma.basis():
        img = sigma.images[m]
        mins = minimal_elements(FinitePosetFragment.of(ctx, img.support))
        if len(mins) != 1:
            raise NotDecomposableError(
                f"image of {m} has {len(mins)} minimal support exponents", witness=m
            )
        (lm,) = mins
        lead[m] = lm
        lead_coeff[m] = img.coefficient(lm)
    gens = [tuple(int(i == j) for j in range(ctx.dim)) for i in range(ctx.dim)]
    matrix = tuple(tuple(lead[g][i] for g in gens) for i in range(ctx.dim))
    try:
        mu = ExponentAut(ctx, matrix)
    except (ValueError, NotDecomposableError) as exc:
        raise NotDecomposableError(
            f"leading exponents do not form an order automorphism: {exc}", witness=matrix
        ) from exc
    for m in sigma.basis():
        if mat_vec(matrix, m) != lead[m]:
            raise NotDecomposableError(
                f"leading exponent of {m} is {lead[m]}, not the linear image {mat_vec(matrix, m)}",
                witness=m,
            )
    # Character making the residual near-identity: on a generator e_i the
    # recomposition carries coefficient chi(mu e_i), so chi must take the
    # observed leading coefficient at mu^(-1) e_i.  For mu = id this is just
    # the leading coefficient at e_i.
    base = CharacterX(ctx, tuple(lead_coeff[g] for g in gens))
    minv = mu.inverse()
    chi = CharacterX(ctx, tuple(base.at(minv.apply(g)) for g in gens))
    residual = op_compose(
        op_compose(sigma, oaut_table(minv, bound)), gexp_table(chi.inverse(), bound)
    )
    near = one_aut_check(residual)
    if not near:
        raise NotDecomposableError(
            f"residual fails the near-identity test; witness {near.witness}",
            witness=near.witness,
        )
    factors = FactorAut(mu, chi, residual)
    if compose_factors(factors) != sigma:
        raise NotDecomposableError("recomposition does not reproduce the table")
    return factors
