"""Truncated noncommutative power series over a finite alphabet.

A series is a sparse map from words (tuples of letter indices) to exact
rational coefficients, cut off at a fixed grade bound N.  All arithmetic is
exact modulo the two-sided ideal of words longer than N: multiplying or
substituting never perturbs coefficients at or below the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatchError, NotAUnitError

Word = tuple[int, ...]
EMPTY_WORD: Word = ()

_ZERO = Fraction(0)


def word_concat(a: Word, b: Word) -> Word:
    """Concatenation; the empty word is the two-sided identity."""
    return tuple(a) + tuple(b)


def factorizations(theta: Word) -> list[tuple[Word, Word]]:
    """All n+1 ordered splits (beta, gamma) with beta gamma = theta."""
    theta = tuple(theta)
    return [(theta[:i], theta[i:]) for i in range(len(theta) + 1)]


@dataclass(frozen=True)
class FreeSeries:
    """Element of the truncated free algebra on alphabet {0, .., m-1}.

    Stored coefficients are never zero and every stored word has length at
    most `grade`; two series are equal iff alphabet, grade and term maps all
    agree.
    """

    alphabet_size: int
    grade: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.alphabet_size < 0:
            raise ValueError("alphabet size must be >= 0")
        if self.grade < 0:
            raise ValueError("grade bound must be >= 0")
        canon = {}
        for word, coeff in self.terms.items():
            word = tuple(int(i) for i in word)
            if len(word) > self.grade:
                raise ValueError(
                    f"word {word} exceeds the grade bound {self.grade}"
                )
            if any(i < 0 or i >= self.alphabet_size for i in word):
                raise DimensionMismatchError(
                    f"word {word} uses letters outside alphabet of size {self.alphabet_size}"
                )
            coeff = Fraction(coeff)
            if coeff != 0:
                canon[word] = coeff
        object.__setattr__(self, "terms", canon)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, alphabet_size: int, grade: int) -> "FreeSeries":
        return cls(alphabet_size, grade, {})

    @classmethod
    def constant(cls, value, alphabet_size: int, grade: int) -> "FreeSeries":
        return cls(alphabet_size, grade, {EMPTY_WORD: Fraction(value)})

    @classmethod
    def one(cls, alphabet_size: int, grade: int) -> "FreeSeries":
        return cls.constant(1, alphabet_size, grade)

    @classmethod
    def variable(cls, index: int, alphabet_size: int, grade: int) -> "FreeSeries":
        return cls(alphabet_size, grade, {(index,): Fraction(1)})

    @classmethod
    def monomial(cls, word: Iterable[int], coeff, alphabet_size: int, grade: int) -> "FreeSeries":
        return cls(alphabet_size, grade, {tuple(word): Fraction(coeff)})

    # -- structure ----------------------------------------------------

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get(EMPTY_WORD, _ZERO)

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(word), _ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def in_augmentation_ideal(self) -> bool:
        return self.constant_term == 0

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def support_slice(self, n: int) -> set[Word]:
        """Words of length exactly n carrying a nonzero coefficient."""
        if n > self.grade:
            raise ValueError(f"slice degree {n} exceeds grade bound {self.grade}")
        return {w for w in self.terms if len(w) == n}

    def grade_slice(self, n: int) -> "FreeSeries":
        """The homogeneous degree-n part, as a series."""
        if n > self.grade:
            raise ValueError(f"slice degree {n} exceeds grade bound {self.grade}")
        return FreeSeries(
            self.alphabet_size,
            self.grade,
            {w: c for w, c in self.terms.items() if len(w) == n},
        )

    def _require_same(self, other: "FreeSeries"):
        if not isinstance(other, FreeSeries):
            raise TypeError(f"expected FreeSeries, got {type(other).__name__}")
        if self.alphabet_size != other.alphabet_size or self.grade != other.grade:
            raise DimensionMismatchError(
                f"incompatible series: alphabet {self.alphabet_size}/{other.alphabet_size}, "
                f"grade {self.grade}/{other.grade}"
            )

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "FreeSeries") -> "FreeSeries":
        self._require_same(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, _ZERO) + c
        return FreeSeries(self.alphabet_size, self.grade, out)

    def __neg__(self) -> "FreeSeries":
        return self.scale(-1)

    def __sub__(self, other: "FreeSeries") -> "FreeSeries":
        return self + (-other)

    def scale(self, c) -> "FreeSeries":
        c = Fraction(c)
        if c == 0:
            return FreeSeries.zero(self.alphabet_size, self.grade)
        return FreeSeries(
            self.alphabet_size, self.grade, {w: c * v for w, v in self.terms.items()}
        )

    def __mul__(self, other: "FreeSeries") -> "FreeSeries":
        """Cauchy product: (P.Q)(theta) sums P(beta) Q(gamma) over theta = beta gamma.

        Words longer than the grade bound are discarded; by grading this is
        exact modulo the truncation ideal.
        """
        self._require_same(other)
        out: dict[Word, Fraction] = {}
        bound = self.grade
        for wa, ca in self.terms.items():
            la = len(wa)
            for wb, cb in other.terms.items():
                if la + len(wb) > bound:
                    continue
                w = wa + wb
                out[w] = out.get(w, _ZERO) + ca * cb
        return FreeSeries(self.alphabet_size, self.grade, out)

    def power(self, n: int) -> "FreeSeries":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        acc = FreeSeries.one(self.alphabet_size, self.grade)
        for _ in range(n):
            acc = acc * self
        return acc

    def geometric_inverse(self) -> "FreeSeries":
        """Two-sided inverse modulo the grade bound.

        Defined when the constant term c is nonzero; computed as
        (1/c) * sum_{n <= N} (-(P - c)/c)^n.  Series with zero constant term
        lie in the augmentation ideal and have no inverse.
        """
        c = self.constant_term
        if c == 0:
            raise NotAUnitError(
                "series with zero constant term lies in the augmentation ideal"
            )
        one = FreeSeries.one(self.alphabet_size, self.grade)
        r = (self - FreeSeries.constant(c, self.alphabet_size, self.grade)).scale(
            Fraction(-1) / c
        )
        acc = one
        for _ in range(self.grade):
            acc = one + r * acc
        return acc.scale(Fraction(1) / c)


# Named operation surface mirroring the contract above.

def fs_add(P: FreeSeries, Q: FreeSeries) -> FreeSeries:
    return P + Q


def fs_scale(c, P: FreeSeries) -> FreeSeries:
    return P.scale(c)


def fs_mul(P: FreeSeries, Q: FreeSeries) -> FreeSeries:
    return P * Q


def fs_geometric_inverse(P: FreeSeries) -> FreeSeries:
    return P.geometric_inverse()


def fs_support_slice(P: FreeSeries, n: int) -> set[Word]:
    return P.support_slice(n)


def free_to_json(P: FreeSeries) -> dict:
    return {
        "alphabet": P.alphabet_size,
        "grade": P.grade,
        "terms": [
            {"word": list(w), "coeff": str(c)} for w, c in P.sorted_terms()
        ],
    }


def free_from_json(data: Mapping) -> FreeSeries:
    terms = {tuple(t["word"]): Fraction(t["coeff"]) for t in data["terms"]}
    return FreeSeries(int(data["alphabet"]), int(data["grade"]), terms)
