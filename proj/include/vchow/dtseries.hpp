#pragma once
#include "vchow/classes.hpp"
#include "vchow/series.hpp"

namespace vchow {

/* MacMahon series prod_{n>=1} (1 - q^n)^{-n} to the given order. */
TruncatedSeries macmahon(int order);

/* q -> -q: flips the sign of the odd coefficients. */
TruncatedSeries substitute_neg_q(const TruncatedSeries& f);

/* Degree-zero DT series M(-q)^e; the exponent is an integer Chern number in
   the applications but any rational is accepted. */
TruncatedSeries cao_kool_series(const Rat& c3c1, int order);

/* Degree-zero 3-fold DT series M(-q)^{c3TK}. */
TruncatedSeries dt3_degree_zero_series(const Rat& c3TK, int order);

/* DT/PT wall-crossing quotient I / I0; I0 must have a unit constant term. */
TruncatedSeries dtpt_quotient(const TruncatedSeries& I, const TruncatedSeries& I0);

/* integral of c3(TX) c1(L) over a 4-dimensional X; must come out integral. */
Int chern_number_c3c1(const VarietyPtr& X, const KClass& TX, const KClass& L);

/* integral of c3(TD (x) KD) over a 3-dimensional D (KD a line class). */
Int chern_number_c3_twist(const VarietyPtr& D, const KClass& TD, const KClass& KD);

} // namespace vchow
