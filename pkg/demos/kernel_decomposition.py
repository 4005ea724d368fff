"""Positive decomposition of a power-series kernel and applicability checks.

sigma(t) = cos(t) splits into even-index coefficient groups: the positive
part keeps 1/(4i)!, the negative part keeps 1/(4i+2)!.  On a bounded ball
both parts are bounded kernels; on the whole space the verdict is
conditional on a cosh-integrability requirement.

Run:  python3 demos/kernel_decomposition.py
"""

from rkhs_sandwich import SeriesSpec, check_applicability, cosine_series, split_series


def main():
    spec = cosine_series(10)
    plus, minus = split_series(spec)
    print("cos(t) truncation:", [str(c) for c in spec.coefficients])
    print("positive part:    ", [str(c) for c in plus])
    print("negative part:    ", [str(c) for c in minus])

    bounded = check_applicability(spec)
    print("\non the unit ball:")
    print("  verdict:", bounded.lemma_applicable)
    print("  diagonal bound (truncated cosh(1)):", round(bounded.diagonal_bound, 8))

    everywhere = check_applicability(SeriesSpec(spec.coefficients, None))
    print("\non the whole space:")
    print("  verdict:", everywhere.lemma_applicable)
    print("  requirement:", everywhere.required_integrability)


if __name__ == "__main__":
    main()
