#pragma once
#include "vchow/rational.hpp"
#include <vector>

namespace vchow {

/* Univariate exact series truncated at a fixed order (coefficients 0..order
   inclusive).  The order is set at construction; binary operations return
   the minimum of the two orders. */
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order);
    TruncatedSeries(int order, std::vector<Rat> coeffs); // pads / truncates

    static TruncatedSeries one(int order);

    int order() const { return (int)c_.size() - 1; }
    const Rat& operator[](int k) const { return c_[k]; }
    Rat& at(int k) { return c_[k]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool operator==(const TruncatedSeries& o) const { return c_ == o.c_; }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

private:
    std::vector<Rat> c_;
};

TruncatedSeries series_add(const TruncatedSeries&, const TruncatedSeries&);
TruncatedSeries series_sub(const TruncatedSeries&, const TruncatedSeries&);
TruncatedSeries series_scale(const Rat&, const TruncatedSeries&);
TruncatedSeries series_mul(const TruncatedSeries&, const TruncatedSeries&);
TruncatedSeries series_truncate(const TruncatedSeries&, int order);

/* 1/f; requires a unit (nonzero) constant term. */
TruncatedSeries series_inv(const TruncatedSeries& f);
/* log f; requires f(0) = 1. */
TruncatedSeries series_log(const TruncatedSeries& f);
/* exp f; requires f(0) = 0. */
TruncatedSeries series_exp(const TruncatedSeries& f);
/* f^a for rational a, as exp(a log f); requires f(0) = 1.  Integer powers go
   through the same path. */
TruncatedSeries series_rational_power(const TruncatedSeries& f, const Rat& a);

} // namespace vchow
