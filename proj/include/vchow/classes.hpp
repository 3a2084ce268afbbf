#pragma once
#include "vchow/chow.hpp"
#include <vector>

namespace vchow {

/* K-theory class presented by a rank and a total Chern class (constant term
   1).  `honest` marks classes known to be genuine bundles; operations that
   only make sense for bundles (euler, proj_bundle) require it. */
class KClass {
public:
    KClass() = default;
    KClass(VarietyPtr X, int rank, GradedClass total_chern, bool honest);

    const VarietyPtr& variety() const { return X_; }
    int rank() const { return rank_; }
    const GradedClass& total_chern() const { return c_; }
    bool honest() const { return honest_; }
    GradedClass chern(int i) const; // c_i, zero outside stored degrees

private:
    VarietyPtr X_;
    int rank_ = 0;
    GradedClass c_;
    bool honest_ = false;
};

KClass k_trivial(const VarietyPtr& X, int rank);
KClass k_line(const VarietyPtr& X, const GradedClass& c1);

KClass k_sum(const KClass& a, const KClass& b);
KClass k_negate(const KClass& a);          // virtual; total Chern inverted
KClass k_dual(const KClass& a);            // odd Chern components negated
/* Twist by a line class with c1 = c1L (pure degree 1); works for virtual
   ranks via generalized binomials. */
KClass k_twist_line(const KClass& a, const GradedClass& c1L);

GradedClass segre(const KClass& a);        // s = 1/c
/* c_m(a (x) O(zeta)) = sum_{i<=m} binom(s-i, m-i) c_i(a) zeta^{m-i}. */
GradedClass chern_of_twist(const KClass& a, const GradedClass& zeta, int m);
GradedClass euler(const KClass& a);        // top Chern; honest only

/* Bundle presented by formal Chern roots (degree-1 classes). */
struct RootBundle {
    VarietyPtr X;
    std::vector<GradedClass> roots;
};
RootBundle dual(const RootBundle& r);
KClass to_kclass(const RootBundle& r);
GradedClass todd(const RootBundle& r);            // prod x/(1-e^{-x})
GradedClass chern_character(const RootBundle& r); // sum e^{x_i}
GradedClass k_euler(const RootBundle& r);         // prod (1-e^{-x_i})
GradedClass k_euler_twisted(const RootBundle& r); // prod (e^{x/2}-e^{-x/2})

/* exp(c1(a)/2): the square root of the determinant line in cohomology. */
GradedClass sqrt_det(const KClass& a);

/* Bernoulli number B_n (B_1 = -1/2), exact, cached; safe for concurrent
   callers. */
Rat bernoulli(int n);

/* Orthogonal bundle split as L + L^dual for L with the given isotropic
   roots; orientation_sign (+1/-1) is user input, never inferred. */
struct OrthSplitBundle {
    VarietyPtr X;
    std::vector<GradedClass> isotropic_roots;
    int orientation_sign = 1;
};
GradedClass sqrt_euler(const OrthSplitBundle& E); // sign * prod roots
KClass to_kclass(const OrthSplitBundle& E);       // rank 2n, c = prod(1-x^2)
/* Splits off the sub-bundle on the selected roots: returns (K, E') with
   sqrt_euler(E) = euler(K) * sqrt_euler(E'). */
std::pair<KClass, OrthSplitBundle> reduce_orth(const OrthSplitBundle& E,
                                               const std::vector<int>& k_indices);

/* ---- equivariant layer (torus of rank one) ---- */

/* base Chow ring with a free degree-1 generator t adjoined; classes may be
   divided by units of the localized ring (t inverted). */
struct EquivariantSpace {
    VarietyPtr base;
    VarietyPtr space; // ring = base ring with t appended (last generator)
    int t_index = 0;
};
using EquivPtr = std::shared_ptr<const EquivariantSpace>;
EquivPtr make_equivariant(const VarietyPtr& base, const std::string& t = "t");

/* Element num / t^tpow of the localized equivariant ring, normalized so the
   numerator is not divisible by t (zero is 0/t^0). */
class LocalizedClass {
public:
    LocalizedClass() = default;
    LocalizedClass(EquivPtr ctx, GradedClass num, long tpow);
    static LocalizedClass of(const EquivPtr& ctx, const GradedClass& num);

    const EquivPtr& ctx() const { return ctx_; }
    const GradedClass& num() const { return num_; }
    long tpow() const { return tpow_; }

    friend LocalizedClass operator*(const LocalizedClass&, const LocalizedClass&);
    friend LocalizedClass operator+(const LocalizedClass&, const LocalizedClass&);
    bool operator==(const LocalizedClass& o) const;
    bool operator!=(const LocalizedClass& o) const { return !(*this == o); }
    std::string str() const;

private:
    EquivPtr ctx_;
    GradedClass num_;
    long tpow_ = 0;
};

/* 1/u for u = c t^k (1 + nilpotent); throws MathError when u is not a unit
   of the localized ring. */
LocalizedClass invert_localized(const EquivPtr& ctx, const GradedClass& u);

/* e(Bm) / sqrt_euler(Em) for the fixed-locus data of an isometric pair:
   every root of Em must have a nonzero t-coefficient (movability). */
LocalizedClass sqrt_euler_virtual_normal(const KClass& Bm, const OrthSplitBundle& Em,
                                         const EquivPtr& ctx);

/* chi(P^n, O(k)) computed through the projective-bundle machinery as
   integrate(td(T) e^{k zeta}) on P(O^{n+1}) over a point; returns the pair
   (computed, binom(n + k, n)). */
std::pair<Rat, Rat> grr_check(int n, int k);

} // namespace vchow
