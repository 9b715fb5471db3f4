"""Run configuration and normalization of command line values."""

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

THREADS_ENV = "QLIMIT_THREADS"

_RATIONAL = re.compile(r"[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)")


@dataclass(frozen=True)
class RunConfig:
    """Options shared by every check command."""

    command: str
    alpha: tuple[Fraction, ...] | None = None
    zeta: Fraction = Fraction(0)
    q: complex = 0.35
    x: complex = 0.3
    seed: int = 0
    tol: float | None = None
    samples: int = 1
    steps: int = 8
    ids: tuple[str, ...] = field(default_factory=tuple)
    broken: bool = False
    extended: bool = False
    out: str | None = None
    threads: int = 1
    timings: bool = False


def parse_rational(text: str) -> Fraction:
    """Parse "a/b", an integer or a decimal string into an exact rational.

    Raises:
        ValueError: If the text is not a rational number
    """
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"not a rational number: {text!r}")
    value = Fraction(text)
    return value


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    """Parse a comma separated list of rationals such as "1/6,1/6,-1/3"."""
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise ValueError("empty rational list")
    return tuple(parse_rational(part) for part in parts)


def parse_complex(text: str) -> complex:
    """Parse a complex number written as "re,im", "re+imi" or a plain real.

    Raises:
        ValueError: If the text is not a complex number
    """
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty complex number")

    if "," in text:
        re_part, _, im_part = text.partition(",")
        return complex(float(re_part), float(im_part))

    if text[-1] in "ij":
        return complex(text[:-1] + "j")

    return complex(float(text), 0.0)


def threads_from_env(default: int | None = None) -> int:
    """Worker cap from QLIMIT_THREADS, falling back to the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or not raw.strip():
        return max(1, default or os.cpu_count() or 1)

    try:
        threads = int(raw)
    except ValueError as e:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from e

    if threads < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return threads


def format_rational(value: Fraction) -> str:
    """Render a rational the way it is accepted on the command line."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
