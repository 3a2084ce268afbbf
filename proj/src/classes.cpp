#include "vchow/classes.hpp"
#include <mutex>
#include <sstream>

namespace vchow {

/* ---------------- KClass ---------------- */

KClass::KClass(VarietyPtr X, int rank, GradedClass total_chern, bool honest)
    : X_(std::move(X)), rank_(rank), c_(std::move(total_chern)), honest_(honest) {
    if (!X_) throw MathError("K-class without a variety");
    if (c_.ring() != X_->ring) throw MathError("ring mismatch", "total Chern class of a foreign ring");
    if (c_.scalar_part() != 1) throw MathError("total Chern class must have constant term 1");
    if (honest_ && rank_ < 0) throw MathError("honest class with negative rank");
}

GradedClass KClass::chern(int i) const {
    if (i < 0) return X_->ring->zero();
    return c_.component(i);
}

KClass k_trivial(const VarietyPtr& X, int rank) {
    if (rank < 0) throw MathError("honest class with negative rank");
    return KClass(X, rank, X->ring->one(), true);
}

KClass k_line(const VarietyPtr& X, const GradedClass& c1) {
    if (!c1.is_homogeneous(1)) throw MathError("line class needs a degree-1 first Chern class");
    return KClass(X, 1, X->ring->one() + c1, true);
}

KClass k_sum(const KClass& a, const KClass& b) {
    if (a.variety() != b.variety()) throw MathError("ring mismatch");
    return KClass(a.variety(), a.rank() + b.rank(), a.total_chern() * b.total_chern(),
                  a.honest() && b.honest());
}

KClass k_negate(const KClass& a) {
    return KClass(a.variety(), -a.rank(), inverse_unit_class(a.total_chern()), false);
}

KClass k_dual(const KClass& a) {
    GradedClass c = a.variety()->ring->zero();
    int top = a.total_chern().top_degree();
    for (int i = 0; i <= top; ++i) {
        GradedClass ci = a.total_chern().component(i);
        c = (i % 2) ? c - ci : c + ci;
    }
    return KClass(a.variety(), a.rank(), c, a.honest());
}

GradedClass chern_of_twist(const KClass& a, const GradedClass& zeta, int m) {
    if (m < 0) throw MathError("negative Chern index");
    if (zeta.ring() != a.variety()->ring)
        throw MathError("ring mismatch", "twist class of a foreign ring");
    if (!zeta.is_homogeneous(1))
        throw MathError("twist class must be homogeneous of degree 1");
    const long s = a.rank();
    GradedClass out = a.variety()->ring->zero();
    for (int i = 0; i <= m; ++i) {
        GradedClass ci = a.chern(i);
        if (ci.is_zero()) continue;
        Rat b(binom(s - i, m - i));
        if (b == 0) continue;
        out = out + b * (ci * zeta.pow(m - i));
    }
    return out;
}

KClass k_twist_line(const KClass& a, const GradedClass& c1L) {
    const int cap = a.variety()->ring->bounded_degree_cap();
    GradedClass c = a.variety()->ring->zero();
    for (int m = 0; m <= cap; ++m) c = c + chern_of_twist(a, c1L, m);
    return KClass(a.variety(), a.rank(), c, a.honest());
}

GradedClass segre(const KClass& a) { return inverse_unit_class(a.total_chern()); }

GradedClass euler(const KClass& a) {
    if (!a.honest()) throw MathError("euler class requires an honest bundle");
    return a.chern(a.rank());
}

/* ---------------- Bernoulli cache ---------------- */

Rat bernoulli(int n) {
    if (n < 0) throw MathError("negative Bernoulli index");
    static std::mutex mu;
    static std::vector<Rat> cache{Rat(1)}; // B_0
    std::lock_guard<std::mutex> lock(mu);
    while ((int)cache.size() <= n) {
        int m = (int)cache.size();
        // sum_{j=0}^{m} binom(m+1, j) B_j = 0
        Rat s(0);
        for (int j = 0; j < m; ++j) s += Rat(binom(m + 1, j)) * cache[j];
        cache.push_back(-s / Rat(binom(m + 1, m)));
    }
    return cache[n];
}

/* ---------------- root-bundle characteristic classes ---------------- */

static void check_roots(const RootBundle& r) {
    for (const auto& x : r.roots) {
        if (x.ring() != r.X->ring) throw MathError("ring mismatch", "root of a foreign ring");
        if (!x.is_homogeneous(1)) throw MathError("Chern roots must be homogeneous of degree 1");
    }
    if (r.X->ring->has_free_generator())
        throw MathError("exponential over a ring with a free generator");
}

RootBundle dual(const RootBundle& r) {
    RootBundle out{r.X, {}};
    for (const auto& x : r.roots) out.roots.push_back(-x);
    return out;
}

KClass to_kclass(const RootBundle& r) {
    GradedClass c = r.X->ring->one();
    for (const auto& x : r.roots) c = c * (r.X->ring->one() + x);
    return KClass(r.X, (int)r.roots.size(), c, true);
}

/* evaluate sum coeff[k] x^k for a nilpotent degree-1 class */
static GradedClass eval_poly_at(const std::vector<Rat>& coeff, const GradedClass& x) {
    GradedClass acc = coeff.empty() ? x.ring()->zero() : x.ring()->constant(coeff[0]);
    GradedClass p = x.ring()->one();
    for (size_t k = 1; k < coeff.size(); ++k) {
        p = p * x;
        if (p.is_zero()) break;
        if (coeff[k] != 0) acc = acc + coeff[k] * p;
    }
    return acc;
}

GradedClass todd(const RootBundle& r) {
    check_roots(r);
    const int cap = r.X->ring->bounded_degree_cap();
    // td coefficients: x/(1 - e^{-x}) = sum (-1)^k B_k x^k / k!
    std::vector<Rat> td(cap + 1);
    Rat fact(1);
    for (int k = 0; k <= cap; ++k) {
        if (k > 0) fact *= k;
        td[k] = bernoulli(k) / fact;
        if (k % 2) td[k] = -td[k];
    }
    GradedClass acc = r.X->ring->one();
    for (const auto& x : r.roots) acc = acc * eval_poly_at(td, x);
    return acc;
}

GradedClass chern_character(const RootBundle& r) {
    check_roots(r);
    GradedClass acc = r.X->ring->constant(Rat((long)r.roots.size()));
    for (const auto& x : r.roots) acc = acc + (exp_nilpotent(x) - r.X->ring->one());
    return acc;
}

GradedClass k_euler(const RootBundle& r) {
    check_roots(r);
    GradedClass acc = r.X->ring->one();
    for (const auto& x : r.roots)
        acc = acc * (r.X->ring->one() - exp_nilpotent(-x));
    return acc;
}

GradedClass k_euler_twisted(const RootBundle& r) {
    check_roots(r);
    GradedClass acc = r.X->ring->one();
    for (const auto& x : r.roots) {
        GradedClass half = Rat(1, 2) * x;
        acc = acc * (exp_nilpotent(half) - exp_nilpotent(-half));
    }
    return acc;
}

GradedClass sqrt_det(const KClass& a) {
    return exp_nilpotent(Rat(1, 2) * a.chern(1));
}

/* ---------------- orthogonal split bundles ---------------- */

static void check_orth(const OrthSplitBundle& E) {
    if (E.orientation_sign != 1 && E.orientation_sign != -1)
        throw MathError("orientation sign must be +1 or -1");
    for (const auto& x : E.isotropic_roots) {
        if (x.ring() != E.X->ring) throw MathError("ring mismatch", "root of a foreign ring");
        if (!x.is_homogeneous(1)) throw MathError("roots must be homogeneous of degree 1");
    }
}

GradedClass sqrt_euler(const OrthSplitBundle& E) {
    check_orth(E);
    GradedClass acc = E.X->ring->constant(Rat(E.orientation_sign));
    for (const auto& x : E.isotropic_roots) acc = acc * x;
    return acc;
}

KClass to_kclass(const OrthSplitBundle& E) {
    check_orth(E);
    GradedClass c = E.X->ring->one();
    for (const auto& x : E.isotropic_roots) c = c * (E.X->ring->one() - x * x);
    return KClass(E.X, 2 * (int)E.isotropic_roots.size(), c, true);
}

std::pair<KClass, OrthSplitBundle> reduce_orth(const OrthSplitBundle& E,
                                               const std::vector<int>& k_indices) {
    check_orth(E);
    std::vector<bool> pick(E.isotropic_roots.size(), false);
    for (int i : k_indices) {
        if (i < 0 || i >= (int)E.isotropic_roots.size())
            throw MathError("root index out of range");
        if (pick[i]) throw MathError("repeated root index");
        pick[i] = true;
    }
    GradedClass ck = E.X->ring->one();
    int rk = 0;
    OrthSplitBundle rest{E.X, {}, E.orientation_sign};
    for (size_t i = 0; i < E.isotropic_roots.size(); ++i) {
        if (pick[i]) {
            ck = ck * (E.X->ring->one() + E.isotropic_roots[i]);
            ++rk;
        } else {
            rest.isotropic_roots.push_back(E.isotropic_roots[i]);
        }
    }
    return {KClass(E.X, rk, ck, true), rest};
}

/* ---------------- equivariant layer ---------------- */

EquivPtr make_equivariant(const VarietyPtr& base, const std::string& t) {
    auto sp = std::make_shared<Variety>();
    sp->ring = base->ring->extend_free(t);
    sp->dim = base->dim;
    auto eq = std::make_shared<EquivariantSpace>();
    eq->base = base;
    eq->space = sp;
    eq->t_index = sp->ring->num_generators() - 1;
    return eq;
}

static bool divisible_by_t(const GradedClass& a, int ti) {
    for (const auto& [e, c] : a.poly())
        if (e[ti] == 0) return false;
    return !a.is_zero();
}

static GradedClass divide_by_t(const GradedClass& a, int ti) {
    Poly out;
    for (const auto& [e, c] : a.poly()) {
        Exponents ne = e;
        ne[ti] -= 1;
        out[ne] = c;
    }
    return a.ring()->cls(std::move(out));
}

static GradedClass times_t_pow(const GradedClass& a, int ti, long k) {
    Poly out;
    for (const auto& [e, c] : a.poly()) {
        Exponents ne = e;
        ne[ti] += (int)k;
        out[ne] = c;
    }
    return a.ring()->cls(std::move(out));
}

LocalizedClass::LocalizedClass(EquivPtr ctx, GradedClass num, long tpow)
    : ctx_(std::move(ctx)), num_(std::move(num)), tpow_(tpow) {
    if (!ctx_) throw MathError("localized class without a context");
    if (num_.ring() != ctx_->space->ring) throw MathError("ring mismatch");
    if (tpow_ < 0) {
        num_ = times_t_pow(num_, ctx_->t_index, -tpow_);
        tpow_ = 0;
    }
    if (num_.is_zero()) {
        tpow_ = 0;
        return;
    }
    while (tpow_ > 0 && divisible_by_t(num_, ctx_->t_index)) {
        num_ = divide_by_t(num_, ctx_->t_index);
        --tpow_;
    }
}

LocalizedClass LocalizedClass::of(const EquivPtr& ctx, const GradedClass& num) {
    return LocalizedClass(ctx, num, 0);
}

LocalizedClass operator*(const LocalizedClass& a, const LocalizedClass& b) {
    if (a.ctx() != b.ctx()) throw MathError("ring mismatch");
    return LocalizedClass(a.ctx(), a.num() * b.num(), a.tpow() + b.tpow());
}

LocalizedClass operator+(const LocalizedClass& a, const LocalizedClass& b) {
    if (a.ctx() != b.ctx()) throw MathError("ring mismatch");
    long p = std::max(a.tpow(), b.tpow());
    GradedClass na = times_t_pow(a.num(), a.ctx()->t_index, p - a.tpow());
    GradedClass nb = times_t_pow(b.num(), b.ctx()->t_index, p - b.tpow());
    return LocalizedClass(a.ctx(), na + nb, p);
}

bool LocalizedClass::operator==(const LocalizedClass& o) const {
    return ctx_ == o.ctx_ && tpow_ == o.tpow_ && num_ == o.num_;
}

std::string LocalizedClass::str() const {
    if (!ctx_) return "0";
    std::ostringstream os;
    os << "(" << num_.str() << ")";
    if (tpow_ > 0)
        os << " / " << ctx_->space->ring->generator(ctx_->t_index).name << "^" << tpow_;
    return os.str();
}

LocalizedClass invert_localized(const EquivPtr& ctx, const GradedClass& u) {
    if (u.ring() != ctx->space->ring) throw MathError("ring mismatch");
    const int ti = ctx->t_index;
    /* the unit part is the unique monomial c t^k with no capped generators */
    long k = -1;
    Rat c(0);
    for (const auto& [e, cc] : u.poly()) {
        bool pure = true;
        for (int i = 0; i < (int)e.size(); ++i)
            if (i != ti && e[i] != 0) { pure = false; break; }
        if (!pure) continue;
        if (k >= 0) throw MathError("localized denominator is not a unit",
                                    "two pure t-monomials");
        k = e[ti];
        c = cc;
    }
    if (k < 0 || c == 0)
        throw MathError("localized denominator is not a unit", "no pure t-monomial");
    /* u = c t^k (1 + m) with m nilpotent in the localized ring */
    Exponents lead(u.ring()->num_generators(), 0);
    lead[ti] = (int)k;
    Poly rest = u.poly();
    rest.erase(lead);
    LocalizedClass m(ctx, (Rat(1) / c) * u.ring()->cls(std::move(rest)), k);
    const int cap = u.ring()->bounded_degree_cap();
    LocalizedClass acc = LocalizedClass::of(ctx, u.ring()->one());
    LocalizedClass term = acc;
    for (int j = 1; j <= cap; ++j) {
        term = term * m;
        if (term.num().is_zero()) break;
        if (j % 2) acc = acc + LocalizedClass(ctx, -term.num(), term.tpow());
        else acc = acc + term;
    }
    return LocalizedClass(ctx, (Rat(1) / c) * acc.num(), acc.tpow() + k);
}

LocalizedClass sqrt_euler_virtual_normal(const KClass& Bm, const OrthSplitBundle& Em,
                                         const EquivPtr& ctx) {
    if (Bm.variety() != ctx->space || Em.X != ctx->space)
        throw MathError("ring mismatch", "fixed-locus data must live on the equivariant space");
    if (!Bm.honest()) throw MathError("euler class requires an honest bundle");
    if (Em.orientation_sign != 1 && Em.orientation_sign != -1)
        throw MathError("orientation sign must be +1 or -1");
    const int ti = ctx->t_index;
    Exponents t1(ctx->space->ring->num_generators(), 0);
    t1[ti] = 1;
    LocalizedClass acc = LocalizedClass::of(
        ctx, Rat(Em.orientation_sign) * Bm.chern(Bm.rank()));
    for (const auto& x : Em.isotropic_roots) {
        if (!x.is_homogeneous(1)) throw MathError("roots must be homogeneous of degree 1");
        if (x.coeff(t1) == 0)
            throw MathError("movability", "a root of Em has zero t-coefficient");
        acc = acc * invert_localized(ctx, x);
    }
    return acc;
}

/* ---------------- GRR desk check ---------------- */

std::pair<Rat, Rat> grr_check(int n, int k) {
    if (n < 1) throw MathError("grr check needs n >= 1");
    VarietyPtr pt = make_point();
    ProjBundleSpace PB = proj_bundle(pt, k_trivial(pt, n + 1));
    GradedClass z = PB.zeta();
    RootBundle T{PB.total, std::vector<GradedClass>(n + 1, z)}; // Euler sequence
    GradedClass integrand = todd(T) * exp_nilpotent(Rat(k) * z);
    Rat lhs = integrate(PB.total, integrand);
    Rat rhs(binom(n + k, n));
    return {lhs, rhs};
}

} // namespace vchow
