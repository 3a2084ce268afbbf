#pragma once
#include "vchow/classes.hpp"
#include <random>

namespace vchow {

/* Two-term complex [K0 -> K1] of honest bundles on a common base; its class
   K = K0 - K1 has rank r = r0 - r1 and c(K) = c(K0)/c(K1). */
struct TwoTermComplex {
    KClass K0, K1;
    TwoTermComplex(KClass k0, KClass k1);
    const VarietyPtr& base() const { return K0.variety(); }
    int rank() const { return K0.rank() - K1.rank(); }
    KClass k_class() const { return k_sum(K0, k_negate(K1)); }
};

struct PushforwardQuery {
    TwoTermComplex complex; // [K0 -> K1], r0 >= 1
    KClass xi;              // coefficient class, any (virtual) rank
    int m = 0;              // Chern index on the bundle side
    GradedClass alpha;      // base class to push against
};

/* Closed form: p_*(c_m(p^* xi(1)) . p^! alpha)
     = sum_{0<=i<=m} binom(s-i, m-i) c_i(xi) c_{m-i+1-r}(-K) alpha,
   with negative Chern indices contributing zero. */
GradedClass vpb_pushforward_formula(const PushforwardQuery& q);

/* Independent route through the actual projective bundle: build P(K0),
   compute q_*( c_m(xi(1)) . e(K1(1)) . q^* alpha ) with the Segre-class
   pushforward of powers of zeta. */
GradedClass vpb_pushforward_oracle(const PushforwardQuery& q);

struct OracleCheck {
    GradedClass formula, oracle;
    bool equal = false;
};
OracleCheck vpb_check(const PushforwardQuery& q);

/* Rank-1 abstract base for the pairs/sheaves specialization: free degree-1
   generators u = c1(xi-side) and v = c1(K-side), truncation 1. */
struct PairsSheavesBase {
    VarietyPtr M;
    GradedClass u, v;
};
PairsSheavesBase make_pairs_sheaves_base();

/* Specialized wall-crossing pushforward at r = n, s = N:
     m = n-1 -> binom(N, n-1) * 1
     m = n   -> binom(N-1, n-1) u - binom(N, n) v
     else    -> 0. */
GradedClass pairs_sheaves_pushforward(int n, int N, const GradedClass& u,
                                      const GradedClass& v, int m);

/* Tautological-insertion comparison numbers:
     n = 0  -> -binom(N, 0) * mO
     n >= 1 -> binom(N-1, n-1) * mE - binom(N, n) * mO. */
Rat tautological_ptgv(int n, int N, const Rat& mE, const Rat& mO);

/* gcd(beta_degree, n) == 1, with gcd(0, n) = |n|. */
bool js_coprimality_gate(long beta_degree, long n);

/* Seeded random instance for self-tests: base drawn from
   pt / P^1 / P^2 / P^1xP^1, K0 and K1 sums of line classes with small
   integer first Chern classes (r0 in 1..3, r1 in 0..2), xi a difference of
   line sums with rank in -2..3, m in 0..dim P(K0), alpha a random class. */
PushforwardQuery random_pushforward_query(std::mt19937& rng);

} // namespace vchow
