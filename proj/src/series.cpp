#include "vchow/series.hpp"
#include "vchow/errors.hpp"
#include <algorithm>

namespace vchow {

TruncatedSeries::TruncatedSeries(int order) {
    if (order < 0) throw MathError("series order must be >= 0");
    c_.assign(order + 1, Rat(0));
}

TruncatedSeries::TruncatedSeries(int order, std::vector<Rat> coeffs)
    : TruncatedSeries(order) {
    for (int k = 0; k <= order && k < (int)coeffs.size(); ++k) c_[k] = coeffs[k];
}

TruncatedSeries TruncatedSeries::one(int order) {
    TruncatedSeries f(order);
    f.at(0) = 1;
    return f;
}

static int min_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    return std::min(a.order(), b.order());
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = min_order(a, b);
    TruncatedSeries out(n);
    for (int k = 0; k <= n; ++k) out.at(k) = a[k] + b[k];
    return out;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = min_order(a, b);
    TruncatedSeries out(n);
    for (int k = 0; k <= n; ++k) out.at(k) = a[k] - b[k];
    return out;
}

TruncatedSeries series_scale(const Rat& s, const TruncatedSeries& f) {
    TruncatedSeries out(f.order());
    for (int k = 0; k <= f.order(); ++k) out.at(k) = s * f[k];
    return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = min_order(a, b);
    TruncatedSeries out(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b[j] == 0) continue;
            out.at(i + j) += a[i] * b[j];
        }
    }
    return out;
}

TruncatedSeries series_truncate(const TruncatedSeries& f, int order) {
    if (order > f.order()) throw MathError("cannot raise the order of a series");
    TruncatedSeries out(order);
    for (int k = 0; k <= order; ++k) out.at(k) = f[k];
    return out;
}

TruncatedSeries series_inv(const TruncatedSeries& f) {
    if (f[0] == 0) throw MathError("constant term is not a unit");
    int n = f.order();
    TruncatedSeries g(n);
    Rat inv0 = Rat(1) / f[0];
    g.at(0) = inv0;
    for (int k = 1; k <= n; ++k) {
        Rat s(0);
        for (int j = 1; j <= k; ++j) s += f[j] * g[k - j];
        g.at(k) = -inv0 * s;
    }
    return g;
}

TruncatedSeries series_log(const TruncatedSeries& f) {
    if (f[0] != 1) throw MathError("constant term must be 1");
    int n = f.order();
    TruncatedSeries l(n);
    // n l_n = n f_n - sum_{k=1}^{n-1} k l_k f_{n-k}
    for (int k = 1; k <= n; ++k) {
        Rat s = Rat(k) * f[k];
        for (int j = 1; j < k; ++j) s -= Rat(j) * l[j] * f[k - j];
        l.at(k) = s / k;
    }
    return l;
}

TruncatedSeries series_exp(const TruncatedSeries& f) {
    if (f[0] != 0) throw MathError("constant term must be 0");
    int n = f.order();
    TruncatedSeries g(n);
    g.at(0) = 1;
    // n g_n = sum_{k=1}^{n} k f_k g_{n-k}
    for (int k = 1; k <= n; ++k) {
        Rat s(0);
        for (int j = 1; j <= k; ++j) s += Rat(j) * f[j] * g[k - j];
        g.at(k) = s / k;
    }
    return g;
}

TruncatedSeries series_rational_power(const TruncatedSeries& f, const Rat& a) {
    if (f[0] != 1) throw MathError("constant term must be 1");
    return series_exp(series_scale(a, series_log(f)));
}

} // namespace vchow
