"""First degeneration: the faces (0^4,1/2^2) and (-1/4^2,1/4^3,3/4) with their shifts."""

from __future__ import annotations

from fractions import Fraction

from .entry import EntryKind, IdentityEntry, balanced_draw, bound, draw_spec, face
from .expr import ONE, Integral, Term, pairs, phi, plain, poch, psi, ratio, theta, vwp, with_swap

T4 = [f"t{r}" for r in range(1, 5)]
T36 = [f"t{r}" for r in range(3, 7)]

AW = IdentityEntry(
    id="AW",
    face_vector=face(0, 0, 0, 0, "1/2", "1/2"),
    zeta=Fraction(0),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q"), plain("1/2")]),
            Integral(ratio([poch("z^±2")], [poch(*(f"{t}*z^±1" for t in T4))])),
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch("t1*t2*t3*t4")],
                [poch(*(f"{a}*{b}" for a, b in pairs(T4)))],
            )
        ),
    ),
    draw=draw_spec("t1 t2 t3 t4"),
    note="symmetric integral evaluation with four parameters",
)

II20 = IdentityEntry(
    id="II.20",
    face_vector=face("-1/2", 0, 0, "1/2", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.UNILATERAL,
    lhs=(Term(body=vwp("t^2", ("t*u1", "t*u2", "t*u3"), "q/t/u1/u2/u3")),),
    rhs=(
        Term(
            ratio(
                [poch("q*t^2", "q/u1/u2", "q/u1/u3", "q/u2/u3")],
                [poch("q*t/u1", "q*t/u2", "q*t/u3", "q/t/u1/u2/u3")],
            )
        ),
    ),
    draw=draw_spec(
        "t u1 u2 u3",
        ranges={name: (0.8, 0.99) for name in ("t", "u1", "u2", "u3")},
        bounds=[bound("q/t/u1/u2/u3", hi=0.9)],
    ),
    note="very-well-poised 6W5 summation",
)

II33 = IdentityEntry(
    id="II.33",
    face_vector=face(-1, 0, "1/2", "1/2", "1/2", "1/2"),
    zeta=Fraction("1/2"),
    kind=EntryKind.BILATERAL,
    lhs=(
        Term(
            body=psi(
                ("±q*t1/x", *(f"t1*{t}/x" for t in T36)),
                ("±t1/x", *(f"q*t1/{t}/x" for t in T36)),
                "t1*t2",
            )
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch("q", "q*t1^2/x^2", "q*x^2/t1^2", *(f"q/{a}/{b}" for a, b in pairs(T36)))],
                [
                    poch("t1*t2"),
                    poch(*(f"q*t1/{t}/x" for t in T36)),
                    poch(*(f"q*x/t1/{t}" for t in T36)),
                ],
            )
        ),
    ),
    draw=balanced_draw(extra="x", bounds=[bound("t1*t2", hi=0.9), bound("t6", hi=10.0)]),
    corrected=True,
    note="very-well-poised 6ψ6 summation; the pair factors are (q/(t_rt_s);q)",
)

D1_QUARTER_INTEGRAL = IdentityEntry(
    id="D1.quarter.integral",
    face_vector=face("-1/4", "-1/4", "1/4", "1/4", "1/4", "3/4"),
    zeta=Fraction("1/4"),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q")]),
            Integral(
                ratio(
                    [poch("q*z/t6"), theta("t1*t2*w/z", "w*z")],
                    [poch("t1/z", "t2/z", "t3*z", "t4*z", "t5*z"), theta("t1*w", "t2*w")],
                )
            ),
        ),
    ),
    rhs=(
        Term(
            ratio(
                [poch("q/t3/t6", "q/t4/t6", "q/t5/t6")],
                [poch("t1*t3", "t2*t3", "t1*t4", "t2*t4", "t1*t5", "t2*t5")],
            )
        ),
    ),
    draw=balanced_draw(extra="w"),
)

_II24_TERM = Term(
    ratio(
        [poch("q*t1/t6", "t2*t3", "t2*t4", "t2*t5")],
        [poch("t2/t1", "q/t3/t6", "q/t4/t6", "q/t5/t6")],
    ),
    phi(("t1*t3", "t1*t4", "t1*t5"), ("q*t1/t2", "q*t1/t6"), "q"),
)

II24 = IdentityEntry(
    id="II.24",
    face_vector=face("-1/4", "-1/4", "1/4", "1/4", "1/4", "3/4"),
    zeta=Fraction("1/4"),
    kind=EntryKind.UNILATERAL,
    lhs=with_swap(_II24_TERM, "t1", "t2"),
    rhs=ONE,
    draw=balanced_draw(),
    note="nonterminating balanced 3φ2 summation",
)

_Q_PAIRS_34_56 = ("q/t3/t5", "q/t4/t5", "q/t3/t6", "q/t4/t6")

D1_QUARTER_TRI = IdentityEntry(
    id="D1.quarter.tri",
    face_vector=face("-3/4", "-1/4", "1/4", "1/4", "3/4", "3/4"),
    zeta=Fraction("1/4"),
    kind=EntryKind.MIXED,
    lhs=(
        Term(
            ratio(
                [poch("q*t1/t3", "t2*t3", "q*t1/t4", "t2*t4"), theta("t5*x/t1", "t6*x/t1")],
                [poch(*_Q_PAIRS_34_56), theta("x/t1^2", "t5*t6*x")],
            ),
            phi(("t1*t2", "t1*t5", "t1*t6"), ("q*t1/t3", "q*t1/t4"), "q"),
        ),
        Term(
            ratio(
                [poch("q*t2/t5", "t1*t5", "q*t2/t6", "t1*t6"), theta("t1*t3/x", "t1*t4/x")],
                [poch(*_Q_PAIRS_34_56), theta("t1/t2/x", "t5*t6*x")],
            ),
            phi(("t1*t2", "t2*t3", "t2*t4"), ("q*t2/t5", "q*t2/t6"), "q"),
        ),
        Term(
            ratio(
                [
                    poch(
                        "t1*t2", "t2*t3", "t2*t4", "t1*t5", "t1*t6",
                        "q*t1/t5/x", "q*t1/t6/x", "q*x/t1/t3", "q*x/t1/t4",
                    )
                ],
                [poch("q", *_Q_PAIRS_34_56, "t1^2/x", "t2*x/t1"), theta("t5*t6*x")],
            ),
            psi(
                ("t1^2/x", "t1*t3/x", "t1*t4/x"),
                ("q*t1/t2/x", "q*t1/t5/x", "q*t1/t6/x"),
                "q",
            ),
        ),
    ),
    rhs=ONE,
    draw=balanced_draw(extra="x"),
    tol=1e-8,
    note="two balanced 3φ2 series and a 3ψ3",
)

_Q_PAIRS_234_56 = ("q/t2/t5", "q/t3/t5", "q/t4/t5", "q/t2/t6", "q/t3/t6", "q/t4/t6")
_PHI32 = phi(("t1*t2", "t1*t3", "t1*t4"), ("q*t1/t5", "q*t1/t6"), "q")

D1_QUARTER_EVAL = IdentityEntry(
    id="D1.quarter.eval",
    face_vector=face("-5/4", "1/4", "1/4", "1/4", "3/4", "3/4"),
    zeta=Fraction("1/4"),
    kind=EntryKind.MIXED,
    lhs=(
        Term(
            ratio(
                [
                    poch("q*t1/t5", "q*t1/t6"),
                    theta("t2*x/t1", "t3*x/t1", "t4*x/t1", "t5*x^2/t1", "t6*x^2/t1"),
                ],
                [poch(*_Q_PAIRS_234_56), theta("x/t1^2", "x^3/t1^2", "t5*t6*x")],
            ),
            _PHI32,
        ),
        Term(
            ratio(
                [
                    poch("q*t1/t5", "q*t1/t6"),
                    theta("t1*t2/x^2", "t1*t3/x^2", "t1*t4/x^2", "t1*t5/x", "t1*t6/x"),
                ],
                [poch(*_Q_PAIRS_234_56), theta("t1^2/x^3", "1/x^2", "t5*t6*x")],
            ),
            _PHI32,
        ),
        Term(
            ratio(
                [
                    poch(
                        "t1*t2", "t1*t3", "t1*t4", "q*t1/t2/x", "q*t1/t3/x", "q*t1/t4/x",
                        "q*x/t1/t5", "q*x/t1/t6",
                    ),
                    theta("t5*x^2/t1", "t6*x^2/t1"),
                ],
                [poch("q", *_Q_PAIRS_234_56, "t1^2/x"), theta("t5*t6*x", "x^3/t1^2")],
            ),
            psi(
                ("t1^2/x", "t1*t5/x", "t1*t6/x"),
                ("q*t1/t2/x", "q*t1/t3/x", "q*t1/t4/x"),
                "q",
            ),
        ),
        Term(
            ratio(
                [
                    poch("t1*t2", "t1*t3", "t1*t4", "q*x^2/t1/t2", "q*x^2/t1/t3", "q*x^2/t1/t4"),
                    theta("t1*t5/x", "t1*t6/x", "t5*x^2/t1", "t6*x^2/t1"),
                ],
                [
                    poch("q", *_Q_PAIRS_234_56, "x^2", "t5*x^2/t1", "t6*x^2/t1"),
                    theta("t1^2/x^3", "t5*t6*x"),
                ],
            ),
            psi(
                ("t1*t2/x^2", "t1*t3/x^2", "t1*t4/x^2"),
                ("q/x^2", "q*t1/t5/x^2", "q*t1/t6/x^2"),
                "q",
            ),
        ),
    ),
    rhs=ONE,
    draw=balanced_draw(extra="x"),
    tol=1e-8,
    note="a balanced 3φ2 with two 3ψ3 series",
)

ENTRIES = (AW, II20, II33, D1_QUARTER_INTEGRAL, II24, D1_QUARTER_TRI, D1_QUARTER_EVAL)
