"""Third degeneration: two nonzero parameters on the symmetric face."""

from __future__ import annotations

from fractions import Fraction

from .entry import EntryKind, IdentityEntry, balanced_draw, bound, draw_spec, face
from .expr import ONE, Integral, Term, phi, plain, poch, psi, ratio, theta, with_swap

D3_AW = IdentityEntry(
    id="D3.AW",
    face_vector=face(0, 0, "1/4", "1/4", "1/4", "1/4"),
    zeta=Fraction(0),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q"), plain("1/2")]),
            Integral(ratio([poch("z^±2")], [poch("t1*z^±1", "t2*z^±1")])),
        ),
    ),
    rhs=(Term(ratio([], [poch("t1*t2")])),),
    draw=draw_spec("t1 t2"),
)

D3_4PHI5 = IdentityEntry(
    id="D3.4phi5",
    face_vector=face("-1/2", "1/4", "1/4", "1/4", "1/4", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.UNILATERAL,
    lhs=(
        Term(
            body=phi(
                ("t1^2", "±q*t1", "t1*t6"),
                ("±t1", "q*t1/t6", "0", "0"),
                "q*t1/t6",
            )
        ),
    ),
    rhs=(Term(ratio([poch("q*t1^2")], [poch("q*t1/t6")])),),
    draw=draw_spec("t1 t6", ranges={"t6": (0.3, 0.75)}, bounds=[bound("q*t1/t6", hi=3.0)]),
)

D3_4PSI6 = IdentityEntry(
    id="D3.4psi6",
    face_vector=face("-3/4", "1/4", "1/4", "1/4", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.BILATERAL,
    lhs=(
        Term(
            body=psi(
                ("±q*t1/x", "t1*t5/x", "t1*t6/x"),
                ("±t1/x", "q*t1/t5/x", "q*t1/t6/x", "0", "0"),
                "q*t1^2/t5/t6/x^2",
            )
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch("q", "q/t5/t6", "q*t1^2/x^2", "q*x^2/t1^2")],
                [poch("q*t1/t5/x", "q*t1/t6/x", "q*x/t1/t5", "q*x/t1/t6")],
            )
        ),
    ),
    draw=draw_spec(
        "t1 t5 t6 x",
        ranges={"t5": (0.4, 0.75), "t6": (0.4, 0.75)},
        bounds=[bound("q*t1^2/t5/t6/x^2", hi=3.0)],
    ),
)

D3_INTEGRAL = IdentityEntry(
    id="D3.integral",
    face_vector=face("-1/8", "-1/8", "1/8", "3/8", "3/8", "3/8"),
    zeta=Fraction("1/8"),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q")]),
            Integral(
                ratio(
                    [theta("t1*t2*w/z", "w*z")],
                    [poch("t1/z", "t2/z", "u*z"), theta("t1*w", "t2*w")],
                )
            ),
        ),
    ),
    rhs=(Term(ratio([], [poch("t1*u", "t2*u")])),),
    draw=draw_spec("t1 t2 u w"),
)

_D3_DOUBLE_TERM = Term(
    ratio([poch("t2*t3")], [poch("t2/t1")]),
    phi(("t1*t3", "0"), ("q*t1/t2",), "q"),
)

D3_DOUBLE = IdentityEntry(
    id="D3.double",
    face_vector=face("-1/8", "-1/8", "1/8", "3/8", "3/8", "3/8"),
    zeta=Fraction("1/8"),
    kind=EntryKind.UNILATERAL,
    lhs=with_swap(_D3_DOUBLE_TERM, "t1", "t2"),
    rhs=ONE,
    draw=draw_spec("t1 t2 t3"),
)

II5 = IdentityEntry(
    id="II.5",
    face_vector=face("-3/8", "1/8", "1/8", "1/8", "3/8", "5/8"),
    zeta=Fraction("3/8"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=phi(("t1*t5",), ("q*t1/t6",), "q/t5/t6")),),
    rhs=(Term(ratio([poch("q/t5/t6")], [poch("q*t1/t6")])),),
    draw=draw_spec(
        "t1 t5 t6",
        ranges={"t5": (0.4, 0.75), "t6": (0.4, 0.75)},
        bounds=[bound("q/t5/t6", hi=3.0)],
    ),
    note="1φ1 summation",
)

D3_MIXED = IdentityEntry(
    id="D3.mixed",
    face_vector=face("-3/8", "-1/8", "1/8", "1/8", "5/8", "5/8"),
    zeta=Fraction("1/8"),
    kind=EntryKind.MIXED,
    lhs=(
        Term(
            ratio([theta("t1*t3/x", "t1*t4/x")], [theta("t1/t2/x", "t5*t6*x")]),
            phi(("t2*t3", "t2*t4"), ("0",), "q"),
        ),
        Term(
            ratio(
                [poch("t2*t3", "t2*t4", "q*x/t1/t3", "q*x/t1/t4")],
                [poch("q", "t2*x/t1"), theta("t5*t6*x")],
            ),
            psi(("t1*t3/x", "t1*t4/x"), ("q*t1/t2/x", "0"), "q"),
        ),
    ),
    rhs=ONE,
    draw=balanced_draw(extra="x"),
    tol=1e-8,
)

_D3_BILATERAL_TERM = Term(
    ratio(
        [poch("q*t1/t6/x", "q*x/t1/t3", "q*x/t1/t4"), theta("t2*t3/x", "t2*t4/x")],
        [poch("q", "q/t3/t6", "q/t4/t6"), theta("t2/t1", "t5*t6*x^2")],
    ),
    psi(("t1*t3/x", "t1*t4/x"), ("q*t1/t6/x", "0"), "q"),
)

D3_BILATERAL = IdentityEntry(
    id="D3.bilateral",
    face_vector=face("-3/8", "-3/8", "1/8", "1/8", "5/8", "7/8"),
    zeta=Fraction("1/8"),
    kind=EntryKind.BILATERAL,
    lhs=with_swap(_D3_BILATERAL_TERM, "t1", "t2"),
    rhs=ONE,
    draw=balanced_draw(extra="x"),
    tol=1e-8,
)

D3_THETA_INTEGRAL = IdentityEntry(
    id="D3.theta.integral",
    face_vector=face("-1/4", 0, 0, "1/4", "1/2", "1/2"),
    zeta=Fraction("1/4"),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q")]),
            Integral(ratio([theta("t*v/z")], [poch("t/z", "u*z")])),
        ),
    ),
    rhs=(Term(ratio([poch("q/v", "t*u*v")], [poch("t*u")])),),
    draw=draw_spec("t u v"),
)

II3 = IdentityEntry(
    id="II.3",
    face_vector=face("-1/4", 0, 0, "1/4", "1/2", "1/2"),
    zeta=Fraction("1/4"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=phi(("t1*t4",), (), "t2*t3")),),
    rhs=(Term(ratio([poch("t1*t2*t3*t4")], [poch("t2*t3")])),),
    draw=draw_spec("t1 t2 t3 t4"),
    note="q-binomial theorem",
)

II29 = IdentityEntry(
    id="II.29",
    face_vector=face("-1/2", 0, 0, "1/4", "1/2", "3/4"),
    zeta=Fraction("1/4"),
    kind=EntryKind.BILATERAL,
    lhs=(Term(body=psi(("t1*t4/x",), ("q*t1/t6/x",), "t2*t3")),),
    rhs=(
        Term(
            ratio(
                [poch("q", "q/t4/t6"), theta("t5*t6*x")],
                [poch("t2*t3", "t1*t5", "q*t1/t6/x", "q*x/t1/t4")],
            )
        ),
    ),
    draw=balanced_draw(extra="x", bounds=[bound("t2*t3", hi=0.9), bound("t1*t5", hi=0.9)]),
    note="Ramanujan's 1ψ1 sum",
)

ENTRIES = (
    D3_AW,
    D3_4PHI5,
    D3_4PSI6,
    D3_INTEGRAL,
    D3_DOUBLE,
    II5,
    D3_MIXED,
    D3_BILATERAL,
    D3_THETA_INTEGRAL,
    II3,
    II29,
)
