#include "vchow/chow.hpp"
#include "vchow/classes.hpp"

namespace vchow {

VarietyPtr make_point() {
    auto X = std::make_shared<Variety>();
    X->ring = GradedRing::point();
    X->dim = 0;
    X->integrals[Exponents{}] = 1;
    return X;
}

VarietyPtr make_projective_space(int n, const std::string& h) {
    if (n < 0) throw SchemaError("negative projective dimension");
    if (n == 0) return make_point();
    auto X = std::make_shared<Variety>();
    X->ring = GradedRing::make({{h, 1}},
                               {h + "^" + std::to_string(n + 1)}, n);
    X->dim = n;
    Exponents top{n};
    X->integrals[top] = 1;
    return X;
}

VarietyPtr make_product(const VarietyPtr& a, const VarietyPtr& b) {
    auto X = std::make_shared<Variety>();
    X->ring = GradedRing::tensor(a->ring, b->ring);
    X->dim = a->dim + b->dim;
    const int na = a->ring->num_generators(), nb = b->ring->num_generators();
    for (const auto& [ea, va] : a->integrals)
        for (const auto& [eb, vb] : b->integrals) {
            Exponents e(na + nb, 0);
            for (int i = 0; i < na; ++i) e[i] = ea[i];
            for (int i = 0; i < nb; ++i) e[na + i] = eb[i];
            X->integrals[e] = va * vb;
        }
    return X;
}

VarietyPtr make_variety(const std::vector<std::pair<std::string, int>>& gens,
                        const std::vector<std::string>& relations, int dim,
                        const std::vector<std::pair<std::string, std::string>>& integrals) {
    auto X = std::make_shared<Variety>();
    X->ring = GradedRing::make(gens, relations, dim);
    X->dim = dim;
    for (const auto& [mono, val] : integrals) {
        GradedClass m = X->ring->parse(mono);
        if (m.poly().size() != 1 || m.poly().begin()->second != 1)
            throw SchemaError("integral key is not a monomial: '" + mono + "'");
        const Exponents& e = m.poly().begin()->first;
        if (X->ring->degree_of(e) != dim)
            throw MathError("integral monomial of wrong degree", mono);
        X->integrals[e] = parse_rat(val);
    }
    return X;
}

Rat integrate(const VarietyPtr& X, const GradedClass& a) {
    if (a.ring() != X->ring) throw MathError("ring mismatch");
    Rat out(0);
    for (const auto& [e, c] : a.poly()) {
        if (X->ring->degree_of(e) != X->dim) continue;
        auto it = X->integrals.find(e);
        if (it != X->integrals.end()) out += c * it->second;
    }
    return out;
}

ProjBundleSpace proj_bundle(const VarietyPtr& X, const KClass& K0) {
    if (K0.variety() != X) throw MathError("ring mismatch", "bundle lives on another variety");
    if (!K0.honest()) throw MathError("projective bundle requires an honest bundle");
    if (K0.rank() < 1) throw MathError("projective bundle requires rank >= 1");
    const int r0 = K0.rank();
    std::vector<GradedClass> chern;
    for (int i = 1; i <= r0; ++i) chern.push_back(K0.chern(i));
    std::string zname = "zeta";
    while (X->ring->find_generator(zname) >= 0) zname += "'";
    RingPtr R2 = X->ring->extend_projective(chern, zname, r0);

    auto total = std::make_shared<Variety>();
    total->ring = R2;
    total->dim = X->dim + r0 - 1;
    const int nb = X->ring->num_generators();
    for (const auto& [e, v] : X->integrals) {
        Exponents e2(nb + 1, 0);
        for (int i = 0; i < nb; ++i) e2[i] = e[i];
        e2[nb] = r0 - 1;
        total->integrals[e2] = v;
    }
    ProjBundleSpace PB;
    PB.base = X;
    PB.total = total;
    PB.r0 = r0;
    PB.zeta_index = nb;
    PB.k0_total_chern = K0.total_chern();
    return PB;
}

GradedClass pb_pullback(const ProjBundleSpace& PB, const GradedClass& a) {
    if (a.ring() != PB.base->ring) throw MathError("ring mismatch", "pullback of a foreign class");
    const int nb = PB.base->ring->num_generators();
    Poly out;
    for (const auto& [e, c] : a.poly()) {
        Exponents e2(nb + 1, 0);
        for (int i = 0; i < nb; ++i) e2[i] = e[i];
        out[e2] = c;
    }
    return PB.total->ring->cls(std::move(out));
}

GradedClass proj_pushforward(const ProjBundleSpace& PB, const GradedClass& a) {
    if (a.ring() != PB.total->ring) throw MathError("ring mismatch", "pushforward of a foreign class");
    const int nb = PB.base->ring->num_generators();
    // Segre classes of K0 on the base: s = 1/c(K0)
    GradedClass s = inverse_unit_class(PB.k0_total_chern);
    // split a by the zeta exponent
    std::map<int, Poly> slices;
    for (const auto& [e, c] : a.poly()) {
        Exponents eb(nb, 0);
        for (int i = 0; i < nb; ++i) eb[i] = e[i];
        slices[e[nb]][eb] += c;
    }
    GradedClass out = PB.base->ring->zero();
    for (auto& [k, p] : slices) {
        int j = k - PB.r0 + 1;
        if (j < 0) continue;
        out = out + s.component(j) * PB.base->ring->cls(std::move(p));
    }
    return out;
}

} // namespace vchow
