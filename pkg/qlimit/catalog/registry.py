"""Lookup and numerical verification of catalog entries."""

from __future__ import annotations

import cmath
import time
from collections import Counter

import numpy as np

from ..asym import fob
from ..errors import (
    AccuracyError,
    DegenerateError,
    DivergenceError,
    DomainError,
    DrawError,
    PoleError,
    QLimitError,
    UnknownIdentityError,
)
from ..log import get_logger
from ..report import IdentityReport
from ..tiling import TileAssignment, classify, limit_kinds_at, normalize_zeta
from . import fifth, first, fourth, second, third, top
from .entry import IdentityEntry

logger = get_logger("catalog")

DEFAULT_Q = 0.35
MAX_REDRAWS = 100
CONDITION_MAX = 1e4
"""Largest Σ|term| / |rhs| accepted on a draw."""

EVALUATION_ERRORS = (
    DivergenceError,
    DomainError,
    AccuracyError,
    PoleError,
    DegenerateError,
    ZeroDivisionError,
)

_ENTRIES: tuple[IdentityEntry, ...] = (
    *top.ENTRIES,
    *first.ENTRIES,
    *second.ENTRIES,
    *third.ENTRIES,
    *fourth.ENTRIES,
    *fifth.ENTRIES,
)
_BY_ID = {entry.id: entry for entry in _ENTRIES}


def entries() -> list[IdentityEntry]:
    """Every catalog entry, from the top level down to the fifth degeneration."""
    return list(_ENTRIES)


def get(identity_id: str) -> IdentityEntry:
    """Look up an entry by id.

    Raises:
        UnknownIdentityError: If no entry has this id
    """
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UnknownIdentityError(f"unknown identity {identity_id!r}") from None


def verify(
    identity_id: str,
    draw_seed: int,
    tol: float | None = None,
    q: complex = DEFAULT_Q,
) -> IdentityReport:
    """Evaluate both sides of an identity on a random admissible draw.

    Draws that break a bound, make an evaluation fail or cancel too badly
    are replaced, up to MAX_REDRAWS times. The report counts redraws by
    cause and keeps the last evaluation error.

    Raises:
        UnknownIdentityError: If no entry has this id
        DrawError: If no admissible draw is found
    """
    entry = get(identity_id)
    rng = np.random.default_rng(draw_seed)
    start = time.perf_counter()
    last_issue = "no draw attempted"
    evaluation_error = ""
    redraws: Counter[str] = Counter()

    for attempt in range(MAX_REDRAWS):
        env = entry.draw.draw(rng, q)
        if not entry.draw.admissible(env):
            last_issue = "draw outside the entry's bounds"
            redraws["bounds"] += 1
            continue
        try:
            with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
                lhs, rhs = entry.evaluate(env)
        except EVALUATION_ERRORS as e:
            last_issue = evaluation_error = f"{type(e).__name__}: {e}"
            redraws["evaluation"] += 1
            logger.info(f"{identity_id} draw {attempt} redrawn after {last_issue}")
            continue
        if not (cmath.isfinite(lhs.value) and cmath.isfinite(rhs.value)) or rhs.value == 0:
            last_issue = "non-finite or zero value"
            redraws["non_finite"] += 1
            continue
        condition = max(lhs.magnitude, rhs.magnitude) / abs(rhs.value)
        if condition > CONDITION_MAX:
            last_issue = f"cancellation {condition:.3g}"
            redraws["cancellation"] += 1
            continue

        if attempt:
            logger.debug(f"{identity_id}: accepted draw after {attempt} redraws {dict(redraws)}")
        return IdentityReport(
            id=entry.id,
            draw_seed=draw_seed,
            lhs=lhs.value,
            rhs=rhs.value,
            tol=tol if tol is not None else entry.tol,
            terms_used=lhs.terms_used + rhs.terms_used,
            quadrature_n=max(lhs.quadrature_n, rhs.quadrature_n),
            corrected=entry.corrected,
            params={name: env[name] for name in ("q", *entry.draw.names)},
            note=entry.note,
            redraws=dict(redraws),
            evaluation_error=evaluation_error,
            elapsed=time.perf_counter() - start,
        )

    raise DrawError(f"{identity_id}: no admissible draw in {MAX_REDRAWS} attempts ({last_issue})")


def face_assignment(entry: IdentityEntry) -> TileAssignment:
    return classify(entry.face_vector.alpha)


def tiling_consistent(entry: IdentityEntry) -> bool:
    """Whether the face classifies in agreement with the entry.

    The entry's ζ has to be the correct ζ of a tile containing the face,
    with fob vanishing there. The extremum type at ζ has to admit the
    entry kind.

    Faces lie on several tiles, so ``classify`` can report a different
    correct ζ than the one the identity is derived at.
    """
    try:
        assignment = face_assignment(entry)
    except QLimitError as e:
        logger.warning(f"{entry.id}: face {entry.face_label()} does not classify ({e})")
        return False
    zeta = normalize_zeta(entry.zeta)
    if zeta not in assignment.zeta_candidates:
        logger.warning(
            f"{entry.id}: ζ = {zeta} is not a correct ζ of the face"
            f" (tiles give {', '.join(map(str, assignment.zeta_candidates))})"
        )
        return False
    if fob(assignment.alpha, zeta) != 0:
        logger.warning(f"{entry.id}: fob does not vanish at ζ = {zeta}")
        return False
    kinds = limit_kinds_at(assignment, zeta)
    if not kinds & entry.kind.limit_kinds:
        logger.warning(f"{entry.id}: a {entry.kind} identity cannot come from {sorted(kinds)}")
        return False
    return True
