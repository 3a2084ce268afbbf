#include "doctest.h"
#include "vchow/chow.hpp"
#include "vchow/classes.hpp"
#include <random>

using namespace vchow;

TEST_CASE("point integrates constants") {
    auto pt = make_point();
    CHECK(integrate(pt, pt->ring->constant(rat_of(7, 3))) == rat_of(7, 3));
    CHECK(make_projective_space(0)->dim == 0);
}

TEST_CASE("projective space tables") {
    auto P2 = make_projective_space(2);
    auto h = P2->ring->gen(0);
    CHECK(integrate(P2, h * h) == 1);
    CHECK(integrate(P2, h) == 0);
    CHECK(integrate(P2, P2->ring->one()) == 0);
    CHECK(integrate(P2, P2->cls("3*h^2 + 5*h + 1")) == 3);
    auto P4 = make_projective_space(4);
    CHECK(integrate(P4, P4->ring->gen(0).pow(4)) == 1);
    CHECK(P4->ring->gen(0).pow(5).is_zero());
}

TEST_CASE("integration requires a matching ring") {
    auto P2 = make_projective_space(2);
    auto P3 = make_projective_space(3);
    CHECK_THROWS_AS(integrate(P2, P3->ring->gen(0)), MathError);
}

TEST_CASE("product spaces and Kunneth integrals") {
    auto Q = make_product(make_projective_space(1, "x"), make_projective_space(1, "y"));
    auto x = Q->ring->gen(0), y = Q->ring->gen(1);
    CHECK(Q->dim == 2);
    CHECK(integrate(Q, x * y) == 1);
    CHECK(integrate(Q, x * x) == 0);
    CHECK(integrate(Q, (x + y).pow(2)) == 2);

    // Fubini on seeded classes: integral of (sum a_k x^k)(sum b_j y^j)
    // factors through the two line integrals.
    auto P2 = make_projective_space(2, "h");
    auto P1 = make_projective_space(1, "p");
    auto W = make_product(P2, P1);
    auto h = W->ring->gen(0), p = W->ring->gen(1);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rat> a(3), b(2);
        auto ca = W->ring->zero(), cb = W->ring->zero();
        for (int k = 0; k < 3; ++k) { a[k] = coef(rng); ca = ca + a[k] * h.pow(k); }
        for (int k = 0; k < 2; ++k) { b[k] = coef(rng); cb = cb + b[k] * p.pow(k); }
        CHECK(integrate(W, ca * cb) == a[2] * b[1]);
    }
}

TEST_CASE("raw variety tables") {
    // Hirzebruch-type table entered by hand; p*z is the only degree-2
    // normal-form monomial (z^2 rewrites to -p*z).
    auto F = make_variety({{"p", 1}, {"z", 1}}, {"p^2", "z^2 + p*z"}, 2,
                          {{"p*z", "1"}});
    auto p = F->ring->gen(0), z = F->ring->gen(1);
    CHECK(integrate(F, (p + z).pow(2)) == 1); // 2pz + z^2 = 2pz - pz
    CHECK(integrate(F, z.pow(2)) == -1);
    CHECK_THROWS_AS(make_variety({{"h", 1}}, {"h^3"}, 2, {{"h", "1"}}), MathError);
    CHECK_THROWS_AS(make_variety({{"h", 1}}, {"h^3"}, 2, {{"h + h^2", "1"}}), SchemaError);
    // keys must already be in normal form
    CHECK_THROWS_AS(make_variety({{"p", 1}, {"z", 1}}, {"p^2", "z^2 + p*z"}, 2,
                                 {{"z^2", "-1"}}),
                    SchemaError);
    CHECK_THROWS_AS(make_variety({{"h", 1}}, {"h^3"}, 2, {{"h^2", "1/0"}}), SchemaError);
}

TEST_CASE("projective bundle over a point is projective space") {
    auto pt = make_point();
    auto PB = proj_bundle(pt, k_trivial(pt, 3)); // P(O^3) = P^2
    CHECK(PB.total->dim == 2);
    auto z = PB.zeta();
    CHECK(integrate(PB.total, z.pow(2)) == 1);
    CHECK(z.pow(3).is_zero());
    CHECK(proj_pushforward(PB, z.pow(2)) == pt->ring->one());
    CHECK(proj_pushforward(PB, z) == pt->ring->zero());
    CHECK(proj_pushforward(PB, PB.total->ring->one()) == pt->ring->zero());
}

TEST_CASE("Hirzebruch surface as a projective bundle") {
    auto P1 = make_projective_space(1, "p");
    auto p = P1->ring->gen(0);
    auto F1 = proj_bundle(P1, k_sum(k_trivial(P1, 1), k_line(P1, p)));
    auto z = F1.zeta();
    auto pp = pb_pullback(F1, p);
    CHECK(F1.total->dim == 2);
    CHECK(z * z == -(pp * z));           // Grothendieck relation
    CHECK(integrate(F1.total, z * pp) == 1);
    CHECK(integrate(F1.total, z * z) == -1);
    CHECK(proj_pushforward(F1, z * z) == -p); // s_1(K0) = -c_1
    CHECK(proj_pushforward(F1, z) == P1->ring->one());
    CHECK(proj_pushforward(F1, F1.total->ring->one()).is_zero());
    CHECK(proj_pushforward(F1, pp).is_zero()); // fiber dimension kills it
}

TEST_CASE("projective bundle requires an honest positive-rank input") {
    auto P1 = make_projective_space(1);
    CHECK_THROWS_AS(proj_bundle(P1, k_trivial(P1, 0)), MathError);
    CHECK_THROWS_AS(proj_bundle(P1, k_negate(k_trivial(P1, 1))), MathError);
}

TEST_CASE("zeta name avoids collisions with base generators") {
    auto X = make_variety({{"zeta", 1}}, {"zeta^2"}, 1, {{"zeta", "1"}});
    auto PB = proj_bundle(X, k_trivial(X, 2));
    CHECK(PB.total->ring->find_generator("zeta'") == PB.zeta_index);
}

static GradedClass random_class(const VarietyPtr& X, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-4, 4);
    auto out = X->ring->zero();
    for (int d = 0; d <= X->dim; ++d)
        for (const auto& e : X->ring->monomials_of_degree(d))
            out = out + Rat(coef(rng)) * X->ring->cls(Poly{{e, Rat(1)}});
    return out;
}

TEST_CASE("pullback is a ring map and the projection formula holds") {
    auto P2 = make_projective_space(2);
    auto h = P2->ring->gen(0);
    auto K0 = k_sum(k_sum(k_line(P2, h), k_line(P2, 2 * h)), k_trivial(P2, 1));
    auto PB = proj_bundle(P2, K0);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> zc(-3, 3);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = random_class(P2, rng), b = random_class(P2, rng);
        CHECK(pb_pullback(PB, a * b) == pb_pullback(PB, a) * pb_pullback(PB, b));
        CHECK(pb_pullback(PB, a + b) == pb_pullback(PB, a) + pb_pullback(PB, b));
        // beta = random polynomial in zeta with base coefficients
        auto z = PB.zeta();
        auto beta = PB.total->ring->zero();
        for (int k = 0; k <= 2; ++k)
            beta = beta + Rat(zc(rng)) * (pb_pullback(PB, random_class(P2, rng)) * z.pow(k));
        CHECK(proj_pushforward(PB, pb_pullback(PB, a) * beta) ==
              a * proj_pushforward(PB, beta));
        // q_* q^* a = 0 for fiber dimension >= 1
        CHECK(proj_pushforward(PB, pb_pullback(PB, a)).is_zero());
    }
}

TEST_CASE("pushforward against the full Segre expansion") {
    // P(K0) over P^2 with K0 = O(h) + O: q_*(zeta^k) = s_{k-1}(K0).
    auto P2 = make_projective_space(2);
    auto h = P2->ring->gen(0);
    auto K0 = k_sum(k_line(P2, h), k_trivial(P2, 1));
    auto PB = proj_bundle(P2, K0);
    auto z = PB.zeta();
    auto s = segre(K0); // 1 - h + h^2
    CHECK(s == P2->cls("1 - h + h^2"));
    for (int k = 1; k <= 3; ++k)
        CHECK(proj_pushforward(PB, z.pow(k)) == s.component(k - 1));
}
