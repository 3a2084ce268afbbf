#include "vchow/dtseries.hpp"

namespace vchow {

TruncatedSeries macmahon(int order) {
    if (order < 0) throw MathError("series order must be >= 0");
    /* P = prod_{n<=order} (1-q^n)^n, then invert once; multiplying by
       (1-q^n) is a single subtraction pass. */
    TruncatedSeries P = TruncatedSeries::one(order);
    for (int n = 1; n <= order; ++n)
        for (int rep = 0; rep < n; ++rep)
            for (int k = order; k >= n; --k) P.at(k) -= P[k - n];
    return series_inv(P);
}

TruncatedSeries substitute_neg_q(const TruncatedSeries& f) {
    TruncatedSeries out(f.order());
    for (int k = 0; k <= f.order(); ++k)
        out.at(k) = (k % 2) ? -f[k] : f[k];
    return out;
}

TruncatedSeries cao_kool_series(const Rat& c3c1, int order) {
    return series_rational_power(substitute_neg_q(macmahon(order)), c3c1);
}

TruncatedSeries dt3_degree_zero_series(const Rat& c3TK, int order) {
    return series_rational_power(substitute_neg_q(macmahon(order)), c3TK);
}

TruncatedSeries dtpt_quotient(const TruncatedSeries& I, const TruncatedSeries& I0) {
    return series_mul(I, series_inv(I0));
}

static Int integral_value(const Rat& r, const char* what) {
    if (!is_integer(r)) throw MathError("non-integral Chern number", what);
    return r.get_num();
}

Int chern_number_c3c1(const VarietyPtr& X, const KClass& TX, const KClass& L) {
    if (X->dim != 4) throw MathError("dimension mismatch", "expected a 4-fold");
    if (TX.variety() != X || L.variety() != X) throw MathError("ring mismatch");
    if (L.rank() != 1) throw MathError("divisor class must have rank 1");
    return integral_value(integrate(X, TX.chern(3) * L.chern(1)), "c3(TX).c1(L)");
}

Int chern_number_c3_twist(const VarietyPtr& D, const KClass& TD, const KClass& KD) {
    if (D->dim != 3) throw MathError("dimension mismatch", "expected a 3-fold");
    if (TD.variety() != D || KD.variety() != D) throw MathError("ring mismatch");
    if (KD.rank() != 1) throw MathError("twisting class must have rank 1");
    return integral_value(integrate(D, chern_of_twist(TD, KD.chern(1), 3)),
                          "c3(TD (x) KD)");
}

} // namespace vchow
