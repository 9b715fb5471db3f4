"""Identity displays as data: monomials, factor lists, series and contour integrals.

Monomials are written as strings such as ``"q*t1/t6"``, ``"t1^2/x"`` or
``"-q*x"``. A leading ``±`` or an exponent ``^±n`` expands into both
choices, so ``"t1*z^±1"`` is the pair t_1z, t_1/z. Names are looked up in
an environment that always holds ``q`` and, inside integrals, ``z``.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from enum import StrEnum

import numpy as np

from .. import qkernel
from ..errors import ContractError
from ..quad import integrate_circle
from ..series import SeriesKind, SeriesSpec, series_result

_ATOM = re.compile(r"^(?P<name>[A-Za-z]\w*|\d+)(?:\^(?P<pm>±)?(?P<exp>-?\d+))?$")

Env = Mapping[str, complex]


@dataclass(frozen=True)
class Monomial:
    """coeff · ∏ name^exp."""

    coeff: complex = 1
    powers: tuple[tuple[str, int], ...] = ()

    def __call__(self, env: Env):
        value = self.coeff
        for name, exp in self.powers:
            value = value * env[name] ** exp
        return value

    @property
    def names(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.powers)


def parse_monomials(text: str) -> tuple[Monomial, ...]:
    """Parse one monomial, expanding ``±`` into two."""
    body = text.replace(" ", "")
    signs = (1,)
    if body.startswith("±"):
        signs, body = (1, -1), body[1:]
    elif body.startswith("-"):
        signs, body = (-1,), body[1:]
    if body == "0":
        return (Monomial(0),)

    pieces = re.split(r"([*/])", body)
    coeff = 1.0
    fixed: list[tuple[str, int]] = []
    flipping: list[tuple[str, int]] = []
    for op, atom in zip(["*", *pieces[1::2]], pieces[0::2], strict=True):
        match = _ATOM.match(atom)
        if match is None:
            raise ContractError(f"cannot parse {atom!r} in monomial {text!r}")
        direction = 1 if op == "*" else -1
        exp = int(match["exp"] or 1) * direction
        if match["name"].isdigit():
            coeff *= float(match["name"]) ** exp
        elif match["pm"]:
            flipping.append((match["name"], exp))
        else:
            fixed.append((match["name"], exp))

    out = []
    for sign in signs:
        for flips in itertools.product((1, -1), repeat=len(flipping)):
            signed = zip(flipping, flips, strict=True)
            powers = fixed + [(name, exp * f) for (name, exp), f in signed]
            out.append(Monomial(sign * coeff, tuple(powers)))
    return tuple(out)


def monomial(text: str) -> Monomial:
    (single,) = parse_monomials(text)
    return single


def monomials(*texts: str) -> tuple[Monomial, ...]:
    return tuple(m for text in texts for m in parse_monomials(text))


class FactorKind(StrEnum):
    POCH = "poch"
    THETA = "theta"
    PLAIN = "plain"
    ONE_MINUS = "one_minus"


@dataclass(frozen=True)
class Factor:
    kind: FactorKind
    arg: Monomial

    def __call__(self, env: Env):
        value = self.arg(env)
        q = env["q"]
        match self.kind:
            case FactorKind.POCH:
                return qkernel.qpoch(value, q)
            case FactorKind.THETA:
                return qkernel.theta(value, q)
            case FactorKind.PLAIN:
                return value
            case FactorKind.ONE_MINUS:
                return 1 - value


def poch(*texts: str) -> tuple[Factor, ...]:
    """(a;q)_inf factors."""
    return tuple(Factor(FactorKind.POCH, m) for m in monomials(*texts))


def theta(*texts: str) -> tuple[Factor, ...]:
    """θ(a;q) factors."""
    return tuple(Factor(FactorKind.THETA, m) for m in monomials(*texts))


def plain(*texts: str) -> tuple[Factor, ...]:
    return tuple(Factor(FactorKind.PLAIN, m) for m in monomials(*texts))


def one_minus(*texts: str) -> tuple[Factor, ...]:
    return tuple(Factor(FactorKind.ONE_MINUS, m) for m in monomials(*texts))


@dataclass(frozen=True)
class Product:
    """A quotient of factor lists."""

    num: tuple[Factor, ...] = ()
    den: tuple[Factor, ...] = ()

    def __call__(self, env: Env):
        value = 1 + 0j
        for factor in self.num:
            value = value * factor(env)
        for factor in self.den:
            value = value / factor(env)
        return value

    @property
    def factor_count(self) -> int:
        return len(self.num) + len(self.den)


def ratio(num: tuple[Factor, ...] | list = (), den: tuple[Factor, ...] | list = ()) -> Product:
    """Build a product from lists of factor tuples.

    ``ratio([poch("q"), theta("x")], [poch("a")])`` is (q;q) θ(x;q) / (a;q).
    """

    def flat(groups) -> tuple[Factor, ...]:
        if groups and isinstance(groups[0], Factor):
            return tuple(groups)
        return tuple(f for group in groups for f in group)

    return Product(flat(num), flat(den))


@dataclass(frozen=True)
class Evaluation:
    value: complex
    magnitude: float
    terms_used: int = 0
    quadrature_n: int = 0


@dataclass(frozen=True)
class Series:
    """rφs, rψs or rWs with monomial parameters."""

    kind: SeriesKind
    upper: tuple[Monomial, ...]
    lower: tuple[Monomial, ...]
    argument: Monomial

    def spec(self, env: Env) -> SeriesSpec:
        return SeriesSpec(
            self.kind,
            tuple(m(env) for m in self.upper),
            tuple(m(env) for m in self.lower),
            env["q"],
            self.argument(env),
        )

    def evaluate(self, env: Env) -> Evaluation:
        result = series_result(self.spec(env))
        return Evaluation(result.value, result.abs_sum, terms_used=result.terms)


def phi(upper: tuple[str, ...], lower: tuple[str, ...], argument: str) -> Series:
    return Series(SeriesKind.PHI, monomials(*upper), monomials(*lower), monomial(argument))


def psi(upper: tuple[str, ...], lower: tuple[str, ...], argument: str) -> Series:
    return Series(SeriesKind.PSI, monomials(*upper), monomials(*lower), monomial(argument))


def vwp(base: str, params: tuple[str, ...], argument: str) -> Series:
    return Series(SeriesKind.VWP_W, monomials(base, *params), (), monomial(argument))


@dataclass(frozen=True)
class Integral:
    """(1/2πi)∮ integrand(z) dz/z over |z| = radius."""

    integrand: Product
    radius: float = 1.0
    rtol: float = 1e-13

    def evaluate(self, env: Env) -> Evaluation:
        def f(z):
            return np.asarray(self.integrand({**env, "z": z}), dtype=np.complex128)

        result = integrate_circle(f, radius=self.radius, rtol=self.rtol)
        return Evaluation(result.value, abs(result.value), quadrature_n=result.n)


@dataclass(frozen=True)
class Term:
    """prefactor × body, optionally with two parameters interchanged."""

    prefactor: Product = field(default_factory=Product)
    body: Series | Integral | None = None
    swap: tuple[str, str] | None = None

    def evaluate(self, env: Env) -> Evaluation:
        if self.swap is not None:
            a, b = self.swap
            env = {**env, a: env[b], b: env[a]}
        pre = complex(self.prefactor(env))
        if self.body is None:
            return Evaluation(pre, abs(pre))
        inner = self.body.evaluate(env)
        return Evaluation(
            pre * inner.value,
            abs(pre) * inner.magnitude,
            terms_used=inner.terms_used,
            quadrature_n=inner.quadrature_n,
        )


def with_swap(term: Term, a: str, b: str) -> tuple[Term, Term]:
    """The term and its image under a <-> b."""
    return term, replace(term, swap=(a, b))


ONE = (Term(),)


def evaluate_side(terms: tuple[Term, ...], env: Env) -> Evaluation:
    """Sum of the terms; ``magnitude`` is Σ|term| for judging cancellation."""
    parts = [term.evaluate(env) for term in terms]
    return Evaluation(
        value=sum((p.value for p in parts), 0j),
        magnitude=sum(p.magnitude for p in parts),
        terms_used=sum(p.terms_used for p in parts),
        quadrature_n=max((p.quadrature_n for p in parts), default=0),
    )


def pairs(names: list[str] | tuple[str, ...]) -> list[tuple[str, str]]:
    return list(itertools.combinations(names, 2))
