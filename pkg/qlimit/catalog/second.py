"""Second degeneration: three nonzero parameters on the symmetric face."""

from __future__ import annotations

from fractions import Fraction

from .entry import EntryKind, IdentityEntry, balanced_draw, bound, draw_spec, face
from .expr import ONE, Integral, Term, pairs, phi, plain, poch, psi, ratio, theta, with_swap

T3 = ["t1", "t2", "t3"]
T456 = ["t4", "t5", "t6"]

D2_AW = IdentityEntry(
    id="D2.AW",
    face_vector=face(0, 0, 0, "1/3", "1/3", "1/3"),
    zeta=Fraction(0),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q"), plain("1/2")]),
            Integral(ratio([poch("z^±2")], [poch(*(f"{t}*z^±1" for t in T3))])),
        ),
    ),
    rhs=(Term(ratio([], [poch(*(f"{a}*{b}" for a, b in pairs(T3)))])),),
    draw=draw_spec("t1 t2 t3"),
    note="continuous q-Hermite type evaluation with three parameters",
)

D2_5PHI5 = IdentityEntry(
    id="D2.5phi5",
    face_vector=face("-1/2", "1/6", "1/6", "1/6", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.UNILATERAL,
    lhs=(
        Term(
            body=phi(
                ("t1^2", "±q*t1", "t1*t5", "t1*t6"),
                ("±t1", "q*t1/t5", "q*t1/t6", "0"),
                "q/t5/t6",
            )
        ),
    ),
    rhs=(Term(ratio([poch("q*t1^2", "q/t5/t6")], [poch("q*t1/t5", "q*t1/t6")])),),
    draw=draw_spec(
        "t1 t5 t6",
        ranges={"t5": (0.4, 0.75), "t6": (0.4, 0.75)},
        bounds=[bound("q/t5/t6", hi=3.0)],
    ),
)

D2_5PSI6 = IdentityEntry(
    id="D2.5psi6",
    face_vector=face("-5/6", "1/6", "1/6", "1/2", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.BILATERAL,
    lhs=(
        Term(
            body=psi(
                ("±q*t1/x", *(f"t1*{t}/x" for t in T456)),
                ("±t1/x", *(f"q*t1/{t}/x" for t in T456), "0"),
                "q*t1/t4/t5/t6/x",
            )
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch("q", *(f"q/{a}/{b}" for a, b in pairs(T456)), "q*t1^2/x^2", "q*x^2/t1^2")],
                [poch(*(f"q*t1/{t}/x" for t in T456), *(f"q*x/t1/{t}" for t in T456))],
            )
        ),
    ),
    draw=draw_spec(
        "t1 t4 t5 t6 x",
        ranges={t: (0.4, 0.75) for t in T456},
        bounds=[bound("q*t1/t4/t5/t6/x", hi=3.0)],
    ),
)

D2_INTEGRAL = IdentityEntry(
    id="D2.integral",
    face_vector=face("-1/6", "-1/6", "1/6", "1/6", "1/2", "1/2"),
    zeta=Fraction("1/6"),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q")]),
            Integral(
                ratio(
                    [theta("t1*t2*w/z", "w*z")],
                    [poch("t1/z", "t2/z", "u1*z", "u2*z"), theta("t1*w", "t2*w")],
                )
            ),
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch("t1*t2*u1*u2")],
                [poch("t1*u1", "t1*u2", "t2*u1", "t2*u2")],
            )
        ),
    ),
    draw=draw_spec("t1 t2 u1 u2 w"),
)

II8 = IdentityEntry(
    id="II.8",
    face_vector=face("-1/3", 0, 0, "1/3", "1/3", "2/3"),
    zeta=Fraction("1/3"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=phi(("t1*t4", "t1*t5"), ("q*t1/t6",), "t2*t3")),),
    rhs=(
        Term(
            ratio(
                [poch("q/t4/t6", "q/t5/t6")],
                [poch("t2*t3", "q*t1/t6")],
            )
        ),
    ),
    draw=balanced_draw(),
    note="q-Gauss summation",
)

_II23_TERM = Term(
    ratio(
        [poch("t2*t3", "t2*t4")],
        [poch("t2/t1", "t1*t2*t3*t4")],
    ),
    phi(("t1*t3", "t1*t4"), ("q*t1/t2",), "q"),
)

II23 = IdentityEntry(
    id="II.23",
    face_vector=face("-1/6", "-1/6", "1/6", "1/6", "1/2", "1/2"),
    zeta=Fraction("1/6"),
    kind=EntryKind.UNILATERAL,
    lhs=with_swap(_II23_TERM, "t1", "t2"),
    rhs=ONE,
    draw=draw_spec("t1 t2 t3 t4"),
    note="nonterminating q-Chu-Vandermonde sum",
)

_Q_PAIRS_34_56 = ("q/t3/t5", "q/t4/t5", "q/t3/t6", "q/t4/t6")

EX510 = IdentityEntry(
    id="Ex5.10",
    face_vector=face(-1, 0, "1/3", "1/3", "2/3", "2/3"),
    zeta=Fraction("1/3"),
    kind=EntryKind.BILATERAL,
    lhs=(
        Term(
            ratio(
                [
                    poch("t1*t2", "q*t1/t3/x", "q*t1/t4/x", "q*x/t1/t5", "q*x/t1/t6"),
                    theta("t5*x^2/t1", "t6*x^2/t1"),
                ],
                [poch("q", *_Q_PAIRS_34_56), theta("t5*t6*x", "x^3/t1^2")],
            ),
            psi(("t1*t5/x", "t1*t6/x"), ("q*t1/t3/x", "q*t1/t4/x"), "q"),
        ),
        Term(
            ratio(
                [
                    poch("t1*t2", "q*t1/t5/x^2", "q*t1/t6/x^2", "q*x^2/t1/t3", "q*x^2/t1/t4"),
                    theta("t1*t5/x", "t1*t6/x"),
                ],
                [poch("q", *_Q_PAIRS_34_56), theta("t1^2/x^3", "t5*t6*x")],
            ),
            psi(("t1*t3/x^2", "t1*t4/x^2"), ("q*t1/t5/x^2", "q*t1/t6/x^2"), "t1*t2"),
        ),
    ),
    rhs=ONE,
    draw=balanced_draw(extra="x", bounds=[bound("t1*t2", hi=0.9)]),
    tol=1e-8,
    corrected=True,
    note="two 2ψ2 series; the second has argument t1t2",
)

D2_MIXED = IdentityEntry(
    id="D2.mixed",
    face_vector=face("-1/2", "-1/6", "1/6", "1/6", "1/2", "5/6"),
    zeta=Fraction("1/6"),
    kind=EntryKind.MIXED,
    lhs=(
        Term(
            ratio(
                [poch("t2*t3", "t2*t4", "t1*t5", "q*t1/t6/x", "q*x/t1/t3", "q*x/t1/t4")],
                [poch("q", "q/t3/t6", "q/t4/t6", "t2*x/t1"), theta("t5*t6*x")],
            ),
            psi(("t1*t3/x", "t1*t4/x"), ("q*t1/t2/x", "q*t1/t6/x"), "q"),
        ),
        Term(
            ratio(
                [poch("t1*t5", "q*t2/t6"), theta("t1*t3/x", "t1*t4/x")],
                [poch("q/t3/t6", "q/t4/t6"), theta("t1/t2/x", "t5*t6*x")],
            ),
            phi(("t2*t3", "t2*t4"), ("q*t2/t6",), "q"),
        ),
    ),
    rhs=ONE,
    draw=balanced_draw(extra="x", bounds=[bound("t1*t5", hi=0.9)]),
    tol=1e-8,
    note="a 2ψ2 against a 2φ1",
)

ENTRIES = (D2_AW, D2_5PHI5, D2_5PSI6, D2_INTEGRAL, II8, II23, EX510, D2_MIXED)
