"""Top level: the faces (0^5,1), (-1/2^2,1/2^4) and (-3/2,1/2^5)."""

from __future__ import annotations

from fractions import Fraction

from .entry import EntryKind, IdentityEntry, balanced_draw, bound, draw_spec, face
from .expr import (
    ONE,
    Integral,
    Term,
    one_minus,
    pairs,
    plain,
    poch,
    psi,
    ratio,
    theta,
    vwp,
    with_swap,
)

T5 = [f"t{r}" for r in range(1, 6)]
U4 = [f"u{r}" for r in range(1, 5)]
U5 = [f"u{r}" for r in range(1, 6)]

NR = IdentityEntry(
    id="NR",
    face_vector=face(0, 0, 0, 0, 0, 1),
    zeta=Fraction(0),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q"), plain("1/2")]),
            Integral(
                ratio(
                    [poch("z^±2", "u*z^±1")],
                    [poch(*(f"{t}*z^±1" for t in T5))],
                )
            ),
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch(*(f"u/{t}" for t in T5))],
                [poch(*(f"{a}*{b}" for a, b in pairs(T5)))],
            )
        ),
    ),
    draw=draw_spec("t1 t2 t3 t4 t5", {"u": "t1*t2*t3*t4*t5"}),
    note="symmetric integral evaluation with five parameters",
)

SB_TOP = IdentityEntry(
    id="SBtop",
    face_vector=face("-1/2", "-1/2", "1/2", "1/2", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q")]),
            Integral(
                ratio(
                    [
                        poch(*(f"q*z/{u}" for u in U4)),
                        theta("t1*t2*w/z", "w*z"),
                        one_minus("z^2"),
                    ],
                    [
                        poch("t1*z^±1", "t2*z^±1", *(f"{u}*z" for u in U4)),
                        theta("t1*w", "t2*w"),
                    ],
                )
            ),
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch(*(f"q/{a}/{b}" for a, b in pairs(U4)))],
                [poch("t1*t2", *(f"t1*{u}" for u in U4), *(f"t2*{u}" for u in U4))],
            )
        ),
    ),
    draw=balanced_draw(
        "t1 t2 u1 u2 u3",
        last="u4",
        extra="w",
        ranges={name: (0.7, 0.95) for name in ("t1", "t2", "u1", "u2", "u3")},
        bounds=[bound("u4", 0.05, 0.95)],
    ),
    note="symmetry broken integral; w is free",
)

_II25_TERM = Term(
    ratio(
        [poch(*(f"q*t1/{u}" for u in U4), *(f"t2*{u}" for u in U4))],
        [poch("q*t1^2", "t2/t1")],
    ),
    vwp("t1^2", ("t1*t2", *(f"t1*{u}" for u in U4)), "q"),
)

II25 = IdentityEntry(
    id="II.25",
    face_vector=face("-1/2", "-1/2", "1/2", "1/2", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.UNILATERAL,
    lhs=with_swap(_II25_TERM, "t1", "t2"),
    rhs=(Term(ratio([poch(*(f"q/{a}/{b}" for a, b in pairs(U4)))])),),
    draw=balanced_draw(
        "t1 t2 u1 u2 u3",
        last="u4",
        ranges={name: (0.55, 0.95) for name in ("t1", "t2", "u1", "u2", "u3")},
        bounds=[bound("u4", 0.1, 1.5)],
    ),
    note="sum of two very-well-poised 8W7 series",
)

_UU = [f"q*t/{a}/{b}" for a, b in pairs(U5)]
_W87 = vwp("t", tuple(U5), "q")

TOP_MIXED = IdentityEntry(
    id="TOP.mixed",
    face_vector=face("-3/2", "1/2", "1/2", "1/2", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.MIXED,
    lhs=(
        Term(
            ratio(
                [poch(*(f"q*t/{u}" for u in U5)), theta(*(f"{u}/t/x" for u in U5))],
                [poch("q*t", *_UU), theta("1/t/x", "1/t/x^2")],
            ),
            _W87,
        ),
        Term(
            ratio(
                [poch(*(f"q*t/{u}" for u in U5)), theta(*(f"{u}*x" for u in U5))],
                [poch("q*t", *_UU), theta("t*x^2", "x")],
            ),
            _W87,
        ),
        Term(
            ratio(
                [poch(*U5, *(f"q*t*x/{u}" for u in U5), *(f"q/{u}/x" for u in U5))],
                [poch("q", "q*t*x^2", "t*x", "1/x", "q/t/x^2", *_UU)],
            ),
            psi(
                ("t*x", "±q*x*s", *(f"{u}*x" for u in U5)),
                ("q*x", "±x*s", *(f"q*t*x/{u}" for u in U5)),
                "q",
            ),
        ),
    ),
    rhs=ONE,
    draw=draw_spec(
        "s u1 u2 u3 u4 x",
        {"t": "s^2", "u5": "q*t^2/u1/u2/u3/u4"},
        ranges={"s": (0.4, 0.9), **{u: (0.3, 0.9) for u in U4}},
        bounds=[bound("u5", 0.05, 2.0)],
    ),
    tol=1e-8,
    note="an 8ψ8 plus two equal 8W7 series; s is the square root of t",
)

ENTRIES = (NR, SB_TOP, II25, TOP_MIXED)
