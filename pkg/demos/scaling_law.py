"""The exact norm-scaling identity for disjoint scaled bumps.

A signed sum of n translated copies of a fixed smooth bump at scale delta
satisfies, for every derivative order alpha and every sign pattern,

    || d_alpha h ||_p  =  n^(1/p) * delta^(d/p - |alpha|) * || d_alpha f ||_p.

Run:  python3 demos/scaling_law.py
"""

import itertools

import numpy as np

from rkhs_sandwich import QuadratureConfig, ball, lp_norm, smooth_family
from rkhs_sandwich.bumps import SmoothBumpMember

CFG = QuadratureConfig(tolerance=1e-4)


def main():
    for d, delta in [(1, 0.25), (2, 0.25)]:
        fam = smooth_family(d, delta)
        alpha = tuple([1] + [0] * (d - 1))
        base = lp_norm(SmoothBumpMember(d, np.zeros(d), 1.0).derivative(alpha),
                       2, ball(d), CFG)
        predicted = fam.n ** 0.5 * delta ** (d / 2 - 1) * base
        print(f"d={d}, delta={delta}, n={fam.n}, alpha={alpha}:")
        for signs in itertools.product([1, -1], repeat=fam.n):
            h = fam.signed_sum(list(signs)).derivative(alpha)
            got = lp_norm(h, 2, fam.domain, CFG)
            rel = abs(got - predicted) / predicted
            print(f"  signs={signs}:  quadrature {got:.10f}  "
                  f"predicted {predicted:.10f}  rel err {rel:.2e}")


if __name__ == "__main__":
    main()
