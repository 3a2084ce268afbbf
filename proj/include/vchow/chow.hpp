#pragma once
#include "vchow/graded.hpp"
#include <map>
#include <string>
#include <vector>

namespace vchow {

/* A Chow-ring model: a truncated graded ring plus a linear integration table
   on the degree-dim normal monomials (missing entries integrate to 0). */
struct Variety {
    RingPtr ring;
    int dim = 0;
    std::map<Exponents, Rat> integrals;

    GradedClass cls(const std::string& expr) const { return ring->parse(expr); }
};
using VarietyPtr = std::shared_ptr<const Variety>;

VarietyPtr make_point();
VarietyPtr make_projective_space(int n, const std::string& h = "h");
VarietyPtr make_product(const VarietyPtr& a, const VarietyPtr& b);

/* Raw table: generator (name, degree) pairs, relation strings, dimension,
   and integral entries (monomial expression -> rational string). */
VarietyPtr make_variety(const std::vector<std::pair<std::string, int>>& gens,
                        const std::vector<std::string>& relations, int dim,
                        const std::vector<std::pair<std::string, std::string>>& integrals);

/* Degree-dim component of `a` fed through the table. */
Rat integrate(const VarietyPtr& X, const GradedClass& a);

class KClass; // classes.hpp

/* P(K0) -> X with the relation sum_i zeta^{r0-i} c_i(K0) = 0 and the
   pushforward normalization q_*(zeta^{r0-1}) = 1. */
struct ProjBundleSpace {
    VarietyPtr base;
    VarietyPtr total;          // base generators first, zeta appended last
    int r0 = 0;
    int zeta_index = 0;
    GradedClass k0_total_chern; // c(K0) on the base

    GradedClass zeta() const { return total->ring->gen(zeta_index); }
};

ProjBundleSpace proj_bundle(const VarietyPtr& X, const KClass& K0);

/* Flat pullback along q: re-expresses a base class in the extended ring. */
GradedClass pb_pullback(const ProjBundleSpace& PB, const GradedClass& a);

/* q_*: writes a = sum_k zeta^k a_k in normal form and maps
   zeta^k a_k -> s_{k - r0 + 1}(K0) a_k (Segre classes; zero for k < r0-1). */
GradedClass proj_pushforward(const ProjBundleSpace& PB, const GradedClass& a);

} // namespace vchow
