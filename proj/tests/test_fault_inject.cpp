#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "vchow/vpb.hpp"

// This binary links vpb.cpp compiled with VCHOW_FAULT_INJECT_VPB, which
// perturbs the closed-form pushforward.  The oracle goes through the actual
// projective bundle and is untouched, so vpb_check must flag the mismatch:
// a passing check cannot be a tautology of comparing a function to itself.

using namespace vchow;

TEST_CASE("oracle comparison detects an injected fault in the formula") {
    auto P2 = make_projective_space(2);
    auto h = P2->ring->gen(0);
    PushforwardQuery q{TwoTermComplex(k_sum(k_line(P2, h), k_trivial(P2, 1)),
                                      k_trivial(P2, 0)),
                       k_line(P2, h), 1, P2->ring->one()};
    auto c = vpb_check(q);
    CHECK(!c.equal);
    CHECK(c.oracle == P2->ring->one());      // the honest route still works
    CHECK(c.formula != P2->ring->one());     // the perturbed route does not
    CHECK(c.formula == P2->ring->constant(Rat(2))); // out + alpha instead of out * alpha
}

TEST_CASE("the fault also trips randomized self-test instances") {
    std::mt19937 rng(424242);
    int mismatches = 0;
    for (int i = 0; i < 40; ++i) {
        auto q = random_pushforward_query(rng);
        if (!vpb_check(q).equal) ++mismatches;
    }
    CHECK(mismatches > 0);
}
