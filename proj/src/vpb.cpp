#include "vchow/vpb.hpp"
#include <numeric>

namespace vchow {

PushforwardQuery random_pushforward_query(std::mt19937& rng) {
    auto pick = [&](int lo, int hi) {
        return (int)std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    VarietyPtr X;
    switch (pick(0, 3)) {
    case 0: X = make_point(); break;
    case 1: X = make_projective_space(1); break;
    case 2: X = make_projective_space(2); break;
    default:
        X = make_product(make_projective_space(1, "x"), make_projective_space(1, "y"));
    }
    // random degree-1 class (zero on a point)
    auto line_c1 = [&]() {
        auto c = X->ring->zero();
        for (int g = 0; g < X->ring->num_generators(); ++g)
            c = c + Rat(pick(-2, 2)) * X->ring->gen(g);
        return c;
    };
    auto line_sum = [&](int rank) {
        auto K = k_trivial(X, 0);
        for (int i = 0; i < rank; ++i) K = k_sum(K, k_line(X, line_c1()));
        return K;
    };
    const int r0 = pick(1, 3), r1 = pick(0, 2);
    TwoTermComplex cx(line_sum(r0), line_sum(r1));
    // xi = (sum of p lines) - (sum of n lines), rank p - n in -2..3
    KClass xi = k_sum(line_sum(pick(0, 3)), k_negate(line_sum(pick(0, 2))));
    const int m = pick(0, X->dim + r0 - 1);
    auto alpha = X->ring->zero();
    for (int d = 0; d <= X->dim; ++d)
        for (const auto& e : X->ring->monomials_of_degree(d))
            alpha = alpha + Rat(pick(-3, 3)) * X->ring->cls(Poly{{e, Rat(1)}});
    return PushforwardQuery{cx, xi, m, alpha};
}

TwoTermComplex::TwoTermComplex(KClass k0, KClass k1)
    : K0(std::move(k0)), K1(std::move(k1)) {
    if (K0.variety() != K1.variety()) throw MathError("ring mismatch");
    if (!K0.honest() || !K1.honest())
        throw MathError("two-term complex requires honest bundles");
    if (K0.rank() < 1) throw MathError("projective bundle requires rank >= 1",
                                       "K0 must have rank >= 1");
}

GradedClass vpb_pushforward_formula(const PushforwardQuery& q) {
    const VarietyPtr& X = q.complex.base();
    if (q.xi.variety() != X || q.alpha.ring() != X->ring)
        throw MathError("ring mismatch");
    if (q.m < 0) throw MathError("negative Chern index");
    const long r = q.complex.rank();
    const long s = q.xi.rank();
    // c(-K) = c(K1)/c(K0)
    GradedClass cminus =
        q.complex.K1.total_chern() * inverse_unit_class(q.complex.K0.total_chern());
    GradedClass out = X->ring->zero();
    for (int i = 0; i <= q.m; ++i) {
        int j = q.m - i + 1 - (int)r;
        if (j < 0) continue;
        Rat b(binom(s - i, q.m - i));
        if (b == 0) continue;
        GradedClass ci = q.xi.chern(i);
        if (ci.is_zero()) continue;
        GradedClass cj = cminus.component(j);
        if (cj.is_zero()) continue;
        out = out + b * (ci * cj);
    }
#ifdef VCHOW_FAULT_INJECT_VPB
    /* test hook: perturb the closed form so oracle disagreement is visible */
    out = out + q.alpha;
    return out;
#else
    return out * q.alpha;
#endif
}

GradedClass vpb_pushforward_oracle(const PushforwardQuery& q) {
    const VarietyPtr& X = q.complex.base();
    if (q.xi.variety() != X || q.alpha.ring() != X->ring)
        throw MathError("ring mismatch");
    if (q.m < 0) throw MathError("negative Chern index");
    ProjBundleSpace PB = proj_bundle(X, q.complex.K0);
    GradedClass z = PB.zeta();
    // pull xi and K1 up to P(K0)
    KClass xi_up(PB.total, q.xi.rank(), pb_pullback(PB, q.xi.total_chern()), q.xi.honest());
    KClass k1_up(PB.total, q.complex.K1.rank(),
                 pb_pullback(PB, q.complex.K1.total_chern()), true);
    GradedClass integrand = chern_of_twist(xi_up, z, q.m) *
                            chern_of_twist(k1_up, z, q.complex.K1.rank()) *
                            pb_pullback(PB, q.alpha);
    return proj_pushforward(PB, integrand);
}

OracleCheck vpb_check(const PushforwardQuery& q) {
    OracleCheck out{vpb_pushforward_formula(q), vpb_pushforward_oracle(q), false};
    out.equal = (out.formula == out.oracle);
    return out;
}

PairsSheavesBase make_pairs_sheaves_base() {
    PairsSheavesBase B;
    auto M = std::make_shared<Variety>();
    M->ring = GradedRing::make({{"u", 1}, {"v", 1}}, {}, 1);
    M->dim = 1;
    B.M = M;
    B.u = M->ring->gen(0);
    B.v = M->ring->gen(1);
    return B;
}

GradedClass pairs_sheaves_pushforward(int n, int N, const GradedClass& u,
                                      const GradedClass& v, int m) {
    if (n < 0) throw MathError("pairs/sheaves specialization needs n >= 0");
    if (u.ring() != v.ring()) throw MathError("ring mismatch");
    const RingPtr& R = u.ring();
    if (m == n - 1) return R->constant(Rat(binom(N, n - 1)));
    if (m == n) return Rat(binom(N - 1, n - 1)) * u - Rat(binom(N, n)) * v;
    return R->zero();
}

Rat tautological_ptgv(int n, int N, const Rat& mE, const Rat& mO) {
    if (n < 0) throw MathError("tautological comparison needs n >= 0");
    if (n == 0) return -Rat(binom(N, 0)) * mO;
    return Rat(binom(N - 1, n - 1)) * mE - Rat(binom(N, n)) * mO;
}

bool js_coprimality_gate(long beta_degree, long n) {
    return std::gcd(beta_degree, n) == 1;
}

} // namespace vchow
