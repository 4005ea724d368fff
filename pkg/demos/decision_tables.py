"""Decision tables for sequence and Lebesgue spaces, plus a witness chain.

Run:  python3 demos/decision_tables.py
"""

import itertools
from fractions import Fraction

from rkhs_sandwich import INF, cube, decide, lebesgue_lp, sequence_lp, slobodeckij

GRID = [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3), INF]


def show_table(title, make_pair, keep):
    print(f"\n{title}")
    print("      " + "".join(f"{str(q):>8}" for q in GRID))
    for p in GRID:
        row = [f"{str(p):>6}"]
        for q in GRID:
            if not keep(p, q):
                row.append(f"{'.':>8}")
                continue
            status = decide(*make_pair(p, q)).status
            row.append(f"{status[:4]:>8}")
        print("".join(row))


def main():
    show_table("sequence spaces  lp -> lq  (p <= q)",
               lambda p, q: (sequence_lp(p), sequence_lp(q)),
               lambda p, q: p <= q)
    show_table("Lebesgue on the unit interval  Lp -> Lq  (q <= p)",
               lambda p, q: (lebesgue_lp(p, cube(1)), lebesgue_lp(q, cube(1))),
               lambda p, q: q <= p)

    print("\nA fractional pair with an explicit Hilbert-space waypoint:")
    E = slobodeckij(Fraction(11, 5), 2, cube(2))
    F = slobodeckij(Fraction(3, 10), 2, cube(2))
    v = decide(E, F)
    print(f"  {E.label()} -> {F.label()}: {v.status} via {v.rule}")
    print("  chain:", "  ->  ".join(s.label() for s in v.witness.links))
    print("  admissible Hilbert smoothness u:", v.witness.u_interval)


if __name__ == "__main__":
    main()
