"""Smoke test for the orbigw Python module.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

from fractions import Fraction

import orbigw


def check(cond, what):
    print(("PASS " if cond else "FAIL ") + what)
    return cond


def main():
    ok = True
    st = orbigw.OrbifoldStructure(2, 1)
    ok &= check((st.l, st.rho, st.q(1)) == (3, "2/3", "1/2"), "structure (2,1)")
    ok &= check(st.verify_tde(1, 8)[0], "difference equation residual (2,1) a=1")

    p1 = orbigw.OrbifoldStructure(1, 1)
    ok &= check(p1.m_coefficient(1, 2, 2, 2) == [(2, "-1")], "(1,1): alpha = s^2/z^2 + ...")

    r = orbigw.invariant(2, 1, [(1, 1)] * 5, 0)
    ok &= check((Fraction(r.value), r.degree) == (Fraction(10), 3), "<tau_1(phi_1)^5>_(0,3) = 10")
    r = orbigw.invariant(2, 1, [(1, 1)] * 3, 1)
    ok &= check(Fraction(r.value) == Fraction(-1, 8), "<tau_1(phi_1)^3>_(1,1) = -1/8")
    r = orbigw.invariant(3, 1, [(1, 1)] * 3, 0)
    ok &= check(r.vanishes() and r.degree is None, "(3,1) odd power vanishes")

    cells = {(k, g): v for k, g, _, v in orbigw.table(2, 1, 1, 1, 5, 2)}
    golden = {(k, g): v for k, g, v in orbigw.golden_table("P21-tau11")}
    agree = all(Fraction(v or 0) == Fraction(golden[kg]) for kg, v in cells.items())
    ok &= check(agree, "table P21-tau11 k <= 5, g <= 2")

    op = orbigw.one_point(3, 1, 2, 2, 3, "operator")
    closed = orbigw.one_point(3, 1, 2, 2, 3, "closed")
    ok &= check([x.value for x in op] == [x.value for x in closed], "one-point routes agree on (3,1)")

    try:
        orbigw.invariant(2, 1, [(1, 1)] * 5, 0, order=3)
        ok &= check(False, "small budget raises TruncationError")
    except orbigw.TruncationError:
        check(True, "small budget raises TruncationError")
    try:
        orbigw.OrbifoldStructure(0, 1)
        ok &= check(False, "bad structure raises ValueError")
    except ValueError:
        check(True, "bad structure raises ValueError")

    ok &= check(len(orbigw.golden_table_ids()) == 14, "14 embedded tables")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
