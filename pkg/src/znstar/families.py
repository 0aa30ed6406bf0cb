"""Finite families of number-theoretic functions evaluated at one integer.

A family bundles the functions whose values must land in Z_n*
simultaneously: linear forms a*x + b, the shifted pair {x, x + 2a},
the Sophie Germain pair {x, 2x + 1}, Mersenne numbers 2^x - 1,
x^2 + 1, and Fermat numbers 2^(2^x) + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

KIND_LINEAR = "linear-family"
KIND_SHIFTED = "shifted-pair"
KIND_SOPHIE_GERMAIN = "sophie-germain-pair"
KIND_MERSENNE = "mersenne"
KIND_QUADRATIC = "quadratic-plus-one"
KIND_FERMAT = "fermat"

_KINDS = (
    KIND_LINEAR,
    KIND_SHIFTED,
    KIND_SOPHIE_GERMAIN,
    KIND_MERSENNE,
    KIND_QUADRATIC,
    KIND_FERMAT,
)

# Kinds whose values depend on x only through its residue class; the
# exponential kinds (mersenne, fermat) are not periodic in x mod n.
_POLYNOMIAL_KINDS = frozenset((KIND_LINEAR, KIND_SHIFTED, KIND_SOPHIE_GERMAIN, KIND_QUADRATIC))


@dataclass(frozen=True)
class LinearForm:
    """The form a*x + b."""

    a: int
    b: int

    def __call__(self, x: int) -> int:
        return self.a * x + self.b


@dataclass(frozen=True)
class FunctionFamily:
    """A named finite family of functions of one integer argument.

    ``shift`` is the half-gap parameter a of the shifted pair {x, x + 2a};
    ``forms`` carries the linear forms of a linear family; other kinds take
    no parameters.  ``require_x_gt_1`` records whether arguments start at 2
    (the smallest-witness theorems demand x > 1) or at 1.
    """

    kind: str
    shift: int = 0
    forms: tuple[LinearForm, ...] = ()
    require_x_gt_1: bool = False

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise DomainError(f"unknown family kind {self.kind!r}")
        if self.kind == KIND_SHIFTED and self.shift < 1:
            raise DomainError("shifted pair needs a half-gap a >= 1")
        if self.kind == KIND_LINEAR:
            if not self.forms:
                raise DomainError("linear family needs at least one form")
            if len(set(self.forms)) != len(self.forms):
                raise DomainError("linear family forms must be pairwise distinct")
            if any(f.a < 1 for f in self.forms):
                raise DomainError("linear family forms need positive leading coefficients")

    @property
    def min_arg(self) -> int:
        return 2 if self.require_x_gt_1 else 1

    @property
    def is_polynomial(self) -> bool:
        return self.kind in _POLYNOMIAL_KINDS

    def evaluate(self, x: int) -> list[int]:
        k = self.kind
        if k == KIND_SHIFTED:
            return [x, x + 2 * self.shift]
        if k == KIND_SOPHIE_GERMAIN:
            return [x, 2 * x + 1]
        if k == KIND_MERSENNE:
            return [(1 << x) - 1]
        if k == KIND_QUADRATIC:
            return [x * x + 1]
        if k == KIND_FERMAT:
            return [(1 << (1 << x)) + 1]
        return [f(x) for f in self.forms]

    def max_arg(self, n: int) -> int:
        """Largest x for which every family value can still be below n.

        All kinds are monotone increasing in x, so arguments beyond this
        bound cannot yield witnesses for modulus n.  May fall below
        ``min_arg``, in which case the search space is empty.
        """
        k = self.kind
        if k == KIND_SHIFTED:
            return n - 2 * self.shift - 1
        if k == KIND_SOPHIE_GERMAIN:
            return (n - 2) // 2
        if k == KIND_MERSENNE:
            x = max(n.bit_length(), 1)
            while x >= 1 and (1 << x) - 1 >= n:
                x -= 1
            return x
        if k == KIND_QUADRATIC:
            return math.isqrt(n - 2) if n >= 2 else 0
        if k == KIND_FERMAT:
            x = 0
            while (1 << (1 << (x + 1))) + 1 < n:
                x += 1
            return x if (1 << (1 << x)) + 1 < n else 0
        return min((n - 1 - f.b) // f.a for f in self.forms)

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "require_x_gt_1": self.require_x_gt_1}
        if self.kind == KIND_SHIFTED:
            d["a"] = self.shift
        if self.kind == KIND_LINEAR:
            d["forms"] = [[f.a, f.b] for f in self.forms]
        return d


def shifted_pair(a: int, require_x_gt_1: bool = True) -> FunctionFamily:
    """{x, x + 2a}; a = 1 is the twin pair."""
    return FunctionFamily(KIND_SHIFTED, shift=a, require_x_gt_1=require_x_gt_1)


def sophie_germain_pair(require_x_gt_1: bool = True) -> FunctionFamily:
    """{x, 2x + 1}."""
    return FunctionFamily(KIND_SOPHIE_GERMAIN, require_x_gt_1=require_x_gt_1)


def mersenne_numbers(require_x_gt_1: bool = True) -> FunctionFamily:
    """{2^x - 1}."""
    return FunctionFamily(KIND_MERSENNE, require_x_gt_1=require_x_gt_1)


def quadratic_plus_one(require_x_gt_1: bool = False) -> FunctionFamily:
    """{x^2 + 1}; x = 1 (value 2) is admissible by default."""
    return FunctionFamily(KIND_QUADRATIC, require_x_gt_1=require_x_gt_1)


def fermat_numbers(require_x_gt_1: bool = False) -> FunctionFamily:
    """{2^(2^x) + 1} for positive x."""
    return FunctionFamily(KIND_FERMAT, require_x_gt_1=require_x_gt_1)


def linear_family(forms, require_x_gt_1: bool = False) -> FunctionFamily:
    """An explicit list of linear forms a_i*x + b_i."""
    return FunctionFamily(KIND_LINEAR, forms=tuple(forms), require_x_gt_1=require_x_gt_1)
