#pragma once
#include "vchow/rational.hpp"
#include "vchow/errors.hpp"
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vchow {

/* Exponent vector over the ring's generators; Poly maps normal-form
   monomials to nonzero coefficients. */
using Exponents = std::vector<int>;
using Poly = std::map<Exponents, Rat>;

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

class GradedClass {
public:
    GradedClass() = default;
    GradedClass(RingPtr ring, Poly p); // normalizes p

    const RingPtr& ring() const { return ring_; }
    const Poly& poly() const { return p_; }

    bool is_zero() const { return p_.empty(); }
    Rat scalar_part() const;               // degree-0 coefficient
    Rat coeff(const Exponents& e) const;   // coefficient of a normal monomial
    GradedClass component(int degree) const;
    int top_degree() const;                // -1 for the zero class
    bool is_homogeneous(int degree) const; // zero class counts as homogeneous

    GradedClass pow(int k) const;          // k >= 0

    friend GradedClass operator+(const GradedClass&, const GradedClass&);
    friend GradedClass operator-(const GradedClass&, const GradedClass&);
    friend GradedClass operator*(const GradedClass&, const GradedClass&);
    friend GradedClass operator*(const Rat&, const GradedClass&);
    friend GradedClass operator-(const GradedClass&);
    bool operator==(const GradedClass& o) const;
    bool operator!=(const GradedClass& o) const { return !(*this == o); }

    std::string str() const;

private:
    RingPtr ring_;
    Poly p_;
};

/* Truncated graded-commutative ring over Q, supporting exactly the
   presentation families the calculator needs:
     - free generators truncated above a total-degree cap,
     - pure power relations x^k = 0,
     - leading-power relations x^k + (lower powers of x with coefficients in
       earlier generators) = 0   (the projective-bundle relation),
     - tensor products of the above,
     - an appended free generator exempt from truncation (equivariant t).
   Every class is kept in a canonical normal form: each generator's exponent
   is below its relation cap and each generator group's total degree is
   within the group cap; monomials outside the caps are exactly zero. */
class GradedRing : public std::enable_shared_from_this<GradedRing> {
public:
    struct Generator {
        std::string name;
        int degree = 1;
        int group = 0;
    };

    /* Relations are polynomial strings in the generators, homogeneous, of
       one of the supported shapes. */
    static RingPtr make(const std::vector<std::pair<std::string, int>>& gens,
                        const std::vector<std::string>& relations,
                        int truncation_dim);
    static RingPtr point(); // no generators, cap 0
    static RingPtr tensor(const RingPtr& a, const RingPtr& b);

    /* Adjoins zeta of degree 1 with zeta^r0 = -sum_{i=1..r0} c_i zeta^{r0-i};
       `chern[i-1]` is c_i as a class of *this* ring.  Group caps of the base
       are preserved, so base classes above the base dimension stay zero. */
    RingPtr extend_projective(const std::vector<GradedClass>& chern,
                              const std::string& zeta_name, int r0) const;

    /* Adjoins a free degree-1 generator (no relation, no truncation). */
    RingPtr extend_free(const std::string& name) const;

    int num_generators() const { return (int)gens_.size(); }
    const Generator& generator(int i) const { return gens_[i]; }
    int find_generator(const std::string& name) const; // -1 if absent
    int degree_of(const Exponents& e) const;

    /* Sum of the group caps: the largest total degree a normal-form monomial
       in capped generators can have. */
    int bounded_degree_cap() const;
    bool has_free_generator() const;

    Poly normalize(Poly p) const;

    GradedClass zero() const;
    GradedClass one() const;
    GradedClass constant(const Rat& c) const;
    GradedClass gen(int i) const;
    GradedClass cls(Poly p) const;
    GradedClass parse(const std::string& expr) const;

    std::string monomial_str(const Exponents& e) const;

    /* All normal-form monomials of a given total degree (free generators
       included, their exponents bounded by the degree budget). */
    std::vector<Exponents> monomials_of_degree(int d) const;

private:
    struct Rule {
        int cap = 0; // gen^cap rewrites to sub
        Poly sub;    // only earlier generators and powers of gen below cap
    };

    std::vector<Generator> gens_;
    std::vector<std::optional<Rule>> rules_;      // per generator
    std::vector<std::optional<int>> group_caps_;  // per group; nullopt = free

    bool within_group_caps(const Exponents& e) const;
    void enumerate(int gi, int budget, Exponents& cur,
                   std::vector<Exponents>& out, int want) const;
    friend class GradedClass;
};

/* 1/c for a class with nonzero scalar part (finite geometric series; the
   positive-degree part is nilpotent by truncation). */
GradedClass inverse_unit_class(const GradedClass& c);

/* sum_k n^k / k! for a class with zero scalar part; requires the ring to
   have no free generator (otherwise the sum would not terminate). */
GradedClass exp_nilpotent(const GradedClass& n);

} // namespace vchow
