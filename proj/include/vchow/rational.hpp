#pragma once
#include <gmpxx.h>
#include <string>

namespace vchow {

/* All arithmetic in the calculator is exact.  Rationals are GMP mpq_class
   values kept in canonical form (reduced, positive denominator). */
using Rat = mpq_class;
using Int = mpz_class;

Rat rat_of(long num, long den = 1);

/* Parses "a" or "a/b" (optional sign); throws SchemaError on anything else,
   including a zero denominator. */
Rat parse_rat(const std::string& s);

/* Canonical text form: "n" when the denominator is 1, else "n/d". */
std::string rat_str(const Rat& r);

bool is_integer(const Rat& r);

/* Generalized binomial coefficient: binom(a, k) = a(a-1)...(a-k+1) / k! for
   k >= 0 (any integer a, negative included), and 0 for k < 0. */
Int binom(long a, long k);

} // namespace vchow
