"""Fourth degeneration: one nonzero parameter on the symmetric face."""

from __future__ import annotations

from fractions import Fraction

from .entry import EntryKind, IdentityEntry, balanced_draw, bound, draw_spec, face
from .expr import ONE, Integral, Term, phi, plain, poch, psi, ratio, theta, with_swap

D4_AW = IdentityEntry(
    id="D4.AW",
    face_vector=face(0, "1/5", "1/5", "1/5", "1/5", "1/5"),
    zeta=Fraction(0),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q"), plain("1/2")]),
            Integral(ratio([poch("z^±2")], [poch("t*z^±1")])),
        ),
    ),
    rhs=ONE,
    draw=draw_spec("t"),
)

D4_3PHI5 = IdentityEntry(
    id="D4.3phi5",
    face_vector=face("-1/2", "3/10", "3/10", "3/10", "3/10", "3/10"),
    zeta=Fraction("1/2"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=phi(("t1^2", "±q*t1"), ("±t1", "0", "0", "0"), "q*t1^2")),),
    rhs=(Term(ratio([poch("q*t1^2")])),),
    draw=draw_spec("t1"),
)

D4_3PSI6 = IdentityEntry(
    id="D4.3psi6",
    face_vector=face("-7/10", "3/10", "3/10", "3/10", "3/10", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.BILATERAL,
    lhs=(
        Term(
            body=psi(
                ("±q*t1/x", "t1*t6/x"),
                ("±t1/x", "q*t1/t6/x", "0", "0", "0"),
                "q*t1^3/t6/x^3",
            )
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch("q", "q*t1^2/x^2", "q*x^2/t1^2")],
                [poch("q*t1/t6/x", "q*x/t1/t6")],
            )
        ),
    ),
    draw=draw_spec(
        "t1 t6 x",
        ranges={"t6": (0.4, 0.75)},
        bounds=[bound("q*t1^3/t6/x^3", hi=3.0)],
    ),
)

D4_INTEGRAL = IdentityEntry(
    id="D4.integral",
    face_vector=face("-1/10", "-1/10", "3/10", "3/10", "3/10", "3/10"),
    zeta=Fraction("1/10"),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q")]),
            Integral(
                ratio(
                    [theta("t1*t2*w/z", "w*z")],
                    [poch("t1/z", "t2/z"), theta("t1*w", "t2*w")],
                )
            ),
        ),
    ),
    rhs=ONE,
    draw=draw_spec("t1 t2 w"),
)

_D4_DOUBLE_TERM = Term(
    ratio([], [poch("t2/t1")]),
    phi(("0", "0"), ("q*t1/t2",), "q"),
)

D4_DOUBLE = IdentityEntry(
    id="D4.double",
    face_vector=face("-1/10", "-1/10", "3/10", "3/10", "3/10", "3/10"),
    zeta=Fraction("1/10"),
    kind=EntryKind.UNILATERAL,
    lhs=with_swap(_D4_DOUBLE_TERM, "t1", "t2"),
    rhs=ONE,
    draw=draw_spec("t1 t2"),
)

D4_0PHI1 = IdentityEntry(
    id="D4.0phi1",
    face_vector=face("-2/5", "1/5", "1/5", "1/5", "1/5", "3/5"),
    zeta=Fraction("2/5"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=phi((), ("q*t1/t6",), "q*t1/t6")),),
    rhs=(Term(ratio([], [poch("q*t1/t6")])),),
    draw=draw_spec("t1 t6", ranges={"t6": (0.3, 0.75)}),
)

_D4_BILATERAL_TERM = Term(
    ratio(
        [poch("q*x/t1/t3", "q*x/t1/t4"), theta("t2*t3/x", "t2*t4/x")],
        [poch("q"), theta("t2/t1", "t5*t6*x^2")],
    ),
    psi(("t1*t3/x", "t1*t4/x"), ("0", "0"), "q"),
)

D4_BILATERAL = IdentityEntry(
    id="D4.bilateral",
    face_vector=face("-3/10", "-3/10", "1/10", "1/10", "7/10", "7/10"),
    zeta=Fraction("1/10"),
    kind=EntryKind.BILATERAL,
    lhs=with_swap(_D4_BILATERAL_TERM, "t1", "t2"),
    rhs=ONE,
    draw=balanced_draw(extra="x"),
    tol=1e-8,
)

D4_THETA_INTEGRAL = IdentityEntry(
    id="D4.theta.integral",
    face_vector=face("-1/5", 0, 0, "2/5", "2/5", "2/5"),
    zeta=Fraction("1/5"),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q")]),
            Integral(ratio([theta("t*u/z")], [poch("t/z")])),
        ),
    ),
    rhs=(Term(ratio([poch("q/u")])),),
    draw=draw_spec("t u", ranges={"u": (0.5, 1.5)}),
)

II1 = IdentityEntry(
    id="II.1",
    face_vector=face("-1/5", 0, 0, "2/5", "2/5", "2/5"),
    zeta=Fraction("1/5"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=phi(("0",), (), "t2*t3")),),
    rhs=(Term(ratio([], [poch("t2*t3")])),),
    draw=draw_spec("t2 t3"),
    note="Euler's first sum",
)

II2 = IdentityEntry(
    id="II.2",
    face_vector=face("-3/10", "1/10", "1/10", "1/10", "1/2", "1/2"),
    zeta=Fraction("3/10"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=phi((), (), "q/t5/t6")),),
    rhs=(Term(ratio([poch("q/t5/t6")])),),
    draw=draw_spec("t5 t6", ranges={"t5": (0.3, 1.0), "t6": (0.3, 1.0)}),
    note="Euler's second sum",
)

D4_1PSI1 = IdentityEntry(
    id="D4.1psi1",
    face_vector=face("-2/5", 0, 0, "1/5", "3/5", "3/5"),
    zeta=Fraction("1/5"),
    kind=EntryKind.BILATERAL,
    lhs=(Term(body=psi(("t1*t4/x",), ("0",), "t2*t3")),),
    rhs=(
        Term(
            ratio(
                [poch("q"), theta("t5*t6*x")],
                [poch("t2*t3", "q*x/t1/t4")],
            )
        ),
    ),
    draw=balanced_draw(extra="x", bounds=[bound("t2*t3", hi=0.9)]),
)

ENTRIES = (
    D4_AW,
    D4_3PHI5,
    D4_3PSI6,
    D4_INTEGRAL,
    D4_DOUBLE,
    D4_0PHI1,
    D4_BILATERAL,
    D4_THETA_INTEGRAL,
    II1,
    II2,
    D4_1PSI1,
)
