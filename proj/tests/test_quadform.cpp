#include "doctest.h"
#include "vchow/errors.hpp"
#include "vchow/quadform.hpp"
#include <random>

using namespace vchow;

static Mat diag(const std::vector<Rat>& d) {
    Mat m = mat_zero((int)d.size(), (int)d.size());
    for (int i = 0; i < (int)d.size(); ++i) m[i][i] = d[i];
    return m;
}

TEST_CASE("exact linear algebra basics") {
    Mat A = {{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
    CHECK(mat_det(A) == -2);
    CHECK(mat_rank(A) == 2);
    Mat B = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK(mat_det(B) == 0);
    CHECK(mat_rank(B) == 1);
    auto K = mat_kernel(B);
    CHECK((int)K[0].size() == 1);
    CHECK(mat_is_zero(mat_mul(B, K)));
    auto x = mat_solve(A, {Rat(5), Rat(11)});
    REQUIRE(x.has_value());
    CHECK(mat_vec(A, *x) == Vec{Rat(5), Rat(11)});
    CHECK(!mat_solve(B, {Rat(1), Rat(0)}).has_value()); // inconsistent
    CHECK(independent_columns(B) == std::vector<int>{0});
    // rational pivots stay exact
    Mat C = {{rat_of(1, 3), rat_of(1, 7)}, {rat_of(2, 5), rat_of(3, 11)}};
    auto y = mat_solve(C, {Rat(1), Rat(2)});
    REQUIRE(y.has_value());
    CHECK(mat_vec(C, *y) == Vec{Rat(1), Rat(2)});
}

TEST_CASE("hyperbolic spaces and isotropy") {
    auto H = hyperbolic_space(1);
    CHECK(H.dim == 2);
    CHECK(H.gram == Mat{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    CHECK(is_nondegenerate(H));
    CHECK(quad_eval(H, {Rat(1), Rat(0)}) == 0);
    CHECK(quad_eval(H, {Rat(1), Rat(1)}) == 2);
    CHECK(is_isotropic(H, make_subspace(H, {{Rat(1)}, {Rat(0)}})));
    CHECK(!is_isotropic(H, make_subspace(H, {{Rat(1)}, {Rat(1)}})));
    CHECK_THROWS_AS(make_quadspace(Mat{{Rat(0), Rat(1)}, {Rat(2), Rat(0)}}), MathError);
    CHECK_THROWS_AS(make_subspace(H, Mat{{Rat(1), Rat(2)}, {Rat(1), Rat(2)}}), MathError);
}

TEST_CASE("square-free parts and square classes") {
    CHECK(squarefree_part(Rat(12)) == 3);
    CHECK(squarefree_part(Rat(-18)) == -2);
    CHECK(squarefree_part(rat_of(4, 9)) == 1);
    CHECK(squarefree_part(rat_of(1, 2)) == 2);
    CHECK(squarefree_part(Rat(1)) == 1);
    Int big = Int(1000003) * Int(1000003) * 2; // leftover beyond trial division
    CHECK(squarefree_part(Rat(mpq_class(big))) == 2);
    CHECK(same_square_class(Rat(8), Rat(2)));
    CHECK(!same_square_class(Rat(2), Rat(3)));
    CHECK(same_square_class(Rat(-2), Rat(-8)));
    CHECK(same_square_class(rat_of(1, 2), Rat(2)));
    CHECK(!same_square_class(Rat(-1), Rat(1)));
    CHECK_THROWS_AS(squarefree_part(Rat(0)), MathError);
    CHECK_THROWS_AS(same_square_class(Rat(0), Rat(1)), MathError);
}

TEST_CASE("invariants of small spaces") {
    auto iH = quad_invariants(hyperbolic_space(1));
    CHECK(iH == QuadInvariants{2, Int(-1), 1, 1});
    auto iE = quad_invariants(make_quadspace(diag({Rat(1), Rat(1)})));
    CHECK(iE == QuadInvariants{2, Int(1), 2, 0});
    auto iHH = quad_invariants(hyperbolic_space(2));
    CHECK(iHH == QuadInvariants{4, Int(1), 2, 2});
    auto iD = quad_invariants(make_quadspace(diag({Rat(2), Rat(3), Rat(-5)})));
    CHECK(iD.dim == 3);
    CHECK(iD.disc == -30);
    CHECK(iD.sig_pos == 2);
    CHECK(iD.sig_neg == 1);
    // zero diagonal but nondegenerate: the e_i += e_j fallback path
    auto iZ = quad_invariants(make_quadspace(Mat{{Rat(0), Rat(2)}, {Rat(2), Rat(0)}}));
    CHECK(iZ.sig_pos == 1);
    CHECK(iZ.sig_neg == 1);
    CHECK_THROWS_AS(quad_invariants(make_quadspace(diag({Rat(1), Rat(0)}))), MathError);
}

TEST_CASE("reduction of quadratic spaces") {
    auto H = hyperbolic_space(1);
    auto r1 = reduce_quadspace(H, make_subspace(H, {{Rat(1)}, {Rat(0)}}));
    CHECK(r1.reduced.dim == 0);

    auto HH = hyperbolic_space(2);
    Mat e1 = {{Rat(1)}, {Rat(0)}, {Rat(0)}, {Rat(0)}};
    auto r2 = reduce_quadspace(HH, make_subspace(HH, e1));
    CHECK(r2.reduced.dim == 2);
    CHECK(quad_invariants(r2.reduced) == quad_invariants(hyperbolic_space(1)));

    // H (+) <1, -1> reduced by the hyperbolic isotropic leaves <1, -1>
    Mat G = mat_zero(4, 4);
    G[0][1] = G[1][0] = 1;
    G[2][2] = 1;
    G[3][3] = -1;
    auto Q = make_quadspace(G);
    auto r3 = reduce_quadspace(Q, make_subspace(Q, {{Rat(1)}, {Rat(0)}, {Rat(0)}, {Rat(0)}}));
    CHECK(quad_invariants(r3.reduced) ==
          quad_invariants(make_quadspace(diag({Rat(1), Rat(-1)}))));

    // k = 0 leaves the space unchanged
    auto r0 = reduce_quadspace(HH, make_subspace(HH, mat_zero(4, 0)));
    CHECK(r0.reduced.dim == 4);
    CHECK(quad_invariants(r0.reduced) == quad_invariants(HH));

    CHECK_THROWS_AS(reduce_quadspace(Q, make_subspace(Q, {{Rat(0)}, {Rat(0)}, {Rat(1)}, {Rat(0)}})),
                    MathError); // not isotropic
    CHECK_THROWS_AS(reduce_quadspace(make_quadspace(diag({Rat(1), Rat(0)})),
                                     make_subspace(Q, e1)),
                    MathError); // degenerate
}

/* Seeded instances: unimodular shears keep all determinants at desk scale.
   U is built as a product of elementary shears; isotropic data is produced
   in split coordinates and carried through U by exact solving. */
struct ShearedSplit {
    QuadSpace Q;       // U^T G0 U
    Mat iso;           // image of chosen split isotropic vectors (columns)
    int k = 0;
};

static Mat random_unimodular(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
    Mat U = mat_identity(n);
    for (int step = 0; step < 2 * n; ++step) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Rat c(coef(rng));
        for (int r = 0; r < n; ++r) U[r][j] += c * U[r][i];
    }
    return U;
}

static ShearedSplit random_split_instance(int n, int k, std::mt19937& rng) {
    auto G0 = hyperbolic_space(n);
    Mat U = random_unimodular(2 * n, rng);
    Mat G = mat_mul(mat_transpose(U), mat_mul(G0.gram, U));
    // isotropic columns e_1, e_3, ... of the split form, pulled through U
    Mat iso = mat_zero(2 * n, k);
    for (int j = 0; j < k; ++j) {
        Vec e(2 * n, Rat(0));
        e[2 * j] = 1;
        auto x = mat_solve(U, e);
        REQUIRE(x.has_value());
        for (int r = 0; r < 2 * n; ++r) iso[r][j] = (*x)[r];
    }
    return {make_quadspace(G), iso, k};
}

TEST_CASE("reduction invariants on seeded sheared split forms") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> nd(1, 3);
    for (int trial = 0; trial < 25; ++trial) {
        int n = nd(rng);
        int k = std::uniform_int_distribution<int>(1, n)(rng);
        auto inst = random_split_instance(n, k, rng);
        auto before = quad_invariants(inst.Q);
        auto red = reduce_quadspace(inst.Q, make_subspace(inst.Q, inst.iso));
        if (2 * n - 2 * k == 0) {
            CHECK(red.reduced.dim == 0);
            continue;
        }
        auto after = quad_invariants(red.reduced);
        CHECK(after.dim == before.dim - 2 * k);
        CHECK(after.sig_pos == before.sig_pos - k);
        CHECK(after.sig_neg == before.sig_neg - k);
        // disc(Q) = (-1)^k disc(red) in square classes
        Rat lhs(before.disc), rhs = Rat((k % 2) ? -1 : 1) * Rat(after.disc);
        CHECK(same_square_class(lhs, rhs));
    }
}

TEST_CASE("maximal reduction of the split form is the zero space") {
    std::mt19937 rng(78);
    for (int n = 1; n <= 4; ++n) {
        auto inst = random_split_instance(n, n, rng);
        auto red = reduce_quadspace(inst.Q, make_subspace(inst.Q, inst.iso));
        CHECK(red.reduced.dim == 0);
        CHECK(mat_det(inst.Q.gram) != 0);
    }
}

TEST_CASE("symmetric resolutions: construction and checks") {
    auto HH = hyperbolic_space(2);
    Mat d = {{Rat(1)}, {Rat(0)}, {Rat(0)}, {Rat(0)}};
    // n = 2: lambda^2 = det = 1
    auto R = make_symres(1, HH, d, Rat(1));
    CHECK(symres_check(R));
    CHECK(quadratic_descent_check(R, 25, 7));
    CHECK_THROWS_AS(make_symres(1, HH, d, Rat(2)), MathError);
    try {
        make_symres(1, HH, d, Rat(2));
        CHECK(false);
    } catch (const MathError& e) {
        CHECK(e.precondition == "orientation");
    }
    // non-isotropic image is constructible; the check reports it and the
    // descent check refuses to run
    Mat dbad = {{Rat(1)}, {Rat(1)}, {Rat(0)}, {Rat(0)}};
    auto Rbad = make_symres(1, HH, dbad, Rat(1));
    CHECK(!symres_check(Rbad));
    CHECK_THROWS_AS(quadratic_descent_check(Rbad, 5, 1), MathError);
    // odd-dimensional space rejected
    CHECK_THROWS_AS(make_symres(0, make_quadspace(diag({Rat(1)})), mat_zero(1, 0), Rat(1)),
                    MathError);
}

TEST_CASE("symres reduction: trivial and full cases") {
    auto HH = hyperbolic_space(2);
    Mat d = {{Rat(1)}, {Rat(0)}, {Rat(0)}, {Rat(0)}};
    auto R = make_symres(1, HH, d, Rat(1));

    // empty D and K: unchanged
    auto same = reduce_symres(R, mat_zero(1, 0), mat_zero(4, 0));
    CHECK(same.b_dim == 1);
    CHECK(same.E.dim == 4);
    CHECK(same.E.gram == HH.gram);
    CHECK(same.d == d);
    CHECK(same.orientation == R.orientation);

    // D = B, K = d(B): drops to a 0-dim source over H
    auto red = reduce_symres(R, mat_identity(1), d);
    CHECK(red.b_dim == 0);
    CHECK(red.E.dim == 2);
    CHECK(quad_invariants(red.E) == quad_invariants(hyperbolic_space(1)));
    // orientation relation holds exactly (n - k = 1)
    CHECK(red.orientation * red.orientation == -mat_det(red.E.gram));
}

TEST_CASE("symres reduction rejects incompatible data") {
    auto HH = hyperbolic_space(2);
    Mat d = {{Rat(1)}, {Rat(0)}, {Rat(0)}, {Rat(0)}};
    auto R = make_symres(1, HH, d, Rat(1));
    // K not isotropic
    Mat Kbad = {{Rat(0)}, {Rat(1)}, {Rat(0)}, {Rat(1)}};
    CHECK_THROWS_AS(reduce_symres(R, mat_zero(1, 0), Kbad), MathError);
    // d(D) not inside K
    Mat Kother = {{Rat(0)}, {Rat(0)}, {Rat(1)}, {Rat(0)}};
    CHECK_THROWS_AS(reduce_symres(R, mat_identity(1), Kother), MathError);
    // K does not pair to zero with d(B)
    Mat Kpair = {{Rat(0)}, {Rat(1)}, {Rat(0)}, {Rat(0)}};
    CHECK_THROWS_AS(reduce_symres(R, mat_zero(1, 0), Kpair), MathError);
}

/* Random SymRes over a sheared split form: d lands in the span of split
   isotropic directions, D maps into the K-selection, orientation is +-1. */
struct SymResCase {
    SymRes R;
    Mat D, K;
    int k = 0, dcount = 0;
};

static SymResCase random_symres_case(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 3);
    int n = nd(rng);
    int b = std::uniform_int_distribution<int>(0, 2)(rng);
    int k = std::uniform_int_distribution<int>(0, n)(rng);
    int dcount = std::uniform_int_distribution<int>(0, b)(rng); // columns of D
    auto G0 = hyperbolic_space(n);
    Mat U = random_unimodular(2 * n, rng);
    Mat G = mat_mul(mat_transpose(U), mat_mul(G0.gram, U));
    std::uniform_int_distribution<int> coef(-2, 2);

    // Split-coordinate isotropic directions e_1, e_3, ...: the first k of
    // them span K0; D-columns of d stay inside K0, the others may use every
    // odd slot (all odd slots pair to zero with each other, so <d(B), K> = 0
    // holds automatically).
    auto pull = [&](const Vec& v) {
        auto x = mat_solve(U, v);
        REQUIRE(x.has_value());
        return *x;
    };
    Mat K = mat_zero(2 * n, k);
    for (int j = 0; j < k; ++j) {
        Vec e(2 * n, Rat(0));
        e[2 * j] = 1;
        auto King = pull(e);
        for (int r = 0; r < 2 * n; ++r) K[r][j] = King[r];
    }
    // D selects the first dcount basis vectors of B
    Mat D = mat_zero(b, dcount);
    for (int j = 0; j < dcount; ++j) D[j][j] = 1;
    // d columns: images of D-columns lie in span(K0); others in all odd slots
    Mat d = mat_zero(2 * n, b);
    for (int col = 0; col < b; ++col) {
        Vec v(2 * n, Rat(0));
        int range = (col < dcount) ? k : n;
        for (int j = 0; j < range; ++j) v[2 * j] += Rat(coef(rng));
        auto w = pull(v);
        for (int r = 0; r < 2 * n; ++r) d[r][col] = w[r];
    }
    // det(G) = det(G0) = (-1)^n, so lambda = +-1
    Rat lambda((std::uniform_int_distribution<int>(0, 1)(rng)) ? 1 : -1);
    return {make_symres(b, make_quadspace(G), d, lambda), D, K, k, dcount};
}

TEST_CASE("seeded symres descent and reduction") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto c = random_symres_case(rng);
        CHECK(symres_check(c.R));
        CHECK(quadratic_descent_check(c.R, 10, 1000 + trial));
        auto red = reduce_symres(c.R, c.D, c.K);
        int n = c.R.E.dim / 2;
        CHECK(red.E.dim == c.R.E.dim - 2 * c.k);
        CHECK(red.b_dim == c.R.b_dim - c.dcount);
        // make_symres re-validated the orientation; assert it explicitly
        Rat sq = red.orientation * red.orientation;
        Rat expect = Rat(((n - c.k) % 2) ? -1 : 1) * mat_det(red.E.gram);
        CHECK(sq == expect);
        CHECK(symres_check(red));
        if (red.E.dim > 0) CHECK(quadratic_descent_check(red, 10, 2000 + trial));
        // a second reduction by nothing keeps everything
        auto again = reduce_symres(red, mat_zero(red.b_dim, 0), mat_zero(red.E.dim, 0));
        CHECK(again.E.gram == red.E.gram);
        CHECK(again.orientation == red.orientation);
    }
}
