"""Fifth degeneration: no parameters left on the symmetric face."""

from __future__ import annotations

from fractions import Fraction

from .entry import EntryKind, IdentityEntry, draw_spec, face
from .expr import ONE, Integral, Term, plain, poch, psi, ratio, theta

D5_AW = IdentityEntry(
    id="D5.AW",
    face_vector=face(*(["1/6"] * 6)),
    zeta=Fraction(0),
    kind=EntryKind.INTEGRAL,
    lhs=(
        Term(
            ratio([poch("q"), plain("1/2")]),
            Integral(ratio([poch("z^±2")])),
        ),
    ),
    rhs=ONE,
    draw=draw_spec(""),
    note="normalization of the q-Hermite weight",
)

D5_THETA = IdentityEntry(
    id="D5.theta",
    face_vector=face("-1/12", "-1/12", "-1/12", "5/12", "5/12", "5/12"),
    zeta=Fraction("1/4"),
    kind=EntryKind.INTEGRAL,
    lhs=(Term(ratio([poch("q")]), Integral(ratio([theta("t1*t2*t3/z")]))),),
    rhs=ONE,
    draw=draw_spec("t1 t2 t3"),
    note="constant term of the Jacobi triple product",
)

D5_2PSI6 = IdentityEntry(
    id="D5.2psi6",
    face_vector=face("-2/3", "1/3", "1/3", "1/3", "1/3", "1/3"),
    zeta=Fraction("1/2"),
    kind=EntryKind.BILATERAL,
    lhs=(
        Term(
            body=psi(
                ("±q*t1/x",),
                ("±t1/x", "0", "0", "0", "0"),
                "q*t1^4/x^4",
            )
        ),
    ),
    rhs=(Term(ratio([poch("q", "q*t1^2/x^2", "q*x^2/t1^2")])),),
    draw=draw_spec("t1 x"),
)

II28 = IdentityEntry(
    id="II.28",
    face_vector=face("-5/12", "1/12", "1/12", "1/12", "7/12", "7/12"),
    zeta=Fraction("1/4"),
    kind=EntryKind.BILATERAL,
    lhs=(Term(body=psi((), ("0",), "q/x/t5/t6")),),
    rhs=(Term(ratio([poch("q"), theta("t5*t6*x")])),),
    draw=draw_spec("t5 t6 x"),
    note="Jacobi triple product",
)

ENTRIES = (D5_AW, D5_THETA, D5_2PSI6, II28)
