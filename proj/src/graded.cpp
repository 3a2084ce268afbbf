#include "vchow/graded.hpp"
#include <algorithm>
#include <sstream>

namespace vchow {

/* ---------------- GradedClass ---------------- */

GradedClass::GradedClass(RingPtr ring, Poly p) : ring_(std::move(ring)) {
    if (!ring_) throw MathError("class without a ring");
    p_ = ring_->normalize(std::move(p));
}

Rat GradedClass::scalar_part() const {
    if (!ring_) return Rat(0);
    Exponents e(ring_->num_generators(), 0);
    return coeff(e);
}

Rat GradedClass::coeff(const Exponents& e) const {
    auto it = p_.find(e);
    return it == p_.end() ? Rat(0) : it->second;
}

GradedClass GradedClass::component(int degree) const {
    Poly out;
    for (const auto& [e, c] : p_)
        if (ring_->degree_of(e) == degree) out[e] = c;
    return GradedClass(ring_, std::move(out));
}

int GradedClass::top_degree() const {
    int d = -1;
    for (const auto& [e, c] : p_) d = std::max(d, ring_->degree_of(e));
    return d;
}

bool GradedClass::is_homogeneous(int degree) const {
    for (const auto& [e, c] : p_)
        if (ring_->degree_of(e) != degree) return false;
    return true;
}

static void check_same_ring(const GradedClass& a, const GradedClass& b) {
    if (a.ring() != b.ring()) throw MathError("ring mismatch");
}

GradedClass operator+(const GradedClass& a, const GradedClass& b) {
    check_same_ring(a, b);
    Poly out = a.poly();
    for (const auto& [e, c] : b.poly()) out[e] += c;
    return GradedClass(a.ring(), std::move(out));
}

GradedClass operator-(const GradedClass& a, const GradedClass& b) {
    check_same_ring(a, b);
    Poly out = a.poly();
    for (const auto& [e, c] : b.poly()) out[e] -= c;
    return GradedClass(a.ring(), std::move(out));
}

GradedClass operator-(const GradedClass& a) {
    Poly out;
    for (const auto& [e, c] : a.poly()) out[e] = -c;
    return GradedClass(a.ring(), std::move(out));
}

GradedClass operator*(const GradedClass& a, const GradedClass& b) {
    check_same_ring(a, b);
    Poly out;
    const int n = a.ring()->num_generators();
    for (const auto& [ea, ca] : a.poly())
        for (const auto& [eb, cb] : b.poly()) {
            Exponents e(n);
            for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    return GradedClass(a.ring(), std::move(out));
}

GradedClass operator*(const Rat& s, const GradedClass& a) {
    Poly out;
    for (const auto& [e, c] : a.poly()) out[e] = s * c;
    return GradedClass(a.ring(), std::move(out));
}

GradedClass GradedClass::pow(int k) const {
    if (k < 0) throw MathError("negative power of a class");
    GradedClass acc = ring_->one(), base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool GradedClass::operator==(const GradedClass& o) const {
    return ring_ == o.ring_ && p_ == o.p_;
}

std::string GradedClass::str() const {
    if (!ring_ || p_.empty()) return "0";
    // order terms by (degree, exponents) for deterministic output
    std::vector<std::pair<Exponents, Rat>> terms(p_.begin(), p_.end());
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const auto& x, const auto& y) {
                         int dx = ring_->degree_of(x.first),
                             dy = ring_->degree_of(y.first);
                         if (dx != dy) return dx < dy;
                         return x.first < y.first;
                     });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        Rat a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        std::string mono = ring_->monomial_str(e);
        if (mono == "1") os << rat_str(a);
        else if (a == 1) os << mono;
        else os << rat_str(a) << "*" << mono;
    }
    return os.str();
}

/* ---------------- GradedRing ---------------- */

int GradedRing::find_generator(const std::string& name) const {
    for (int i = 0; i < (int)gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return -1;
}

int GradedRing::degree_of(const Exponents& e) const {
    int d = 0;
    for (int i = 0; i < (int)gens_.size(); ++i) d += e[i] * gens_[i].degree;
    return d;
}

int GradedRing::bounded_degree_cap() const {
    int d = 0;
    for (const auto& c : group_caps_)
        if (c) d += *c;
    // a rule-capped generator in a capless group still has bounded powers
    for (int i = 0; i < (int)gens_.size(); ++i)
        if (!group_caps_[gens_[i].group] && rules_[i])
            d += (rules_[i]->cap - 1) * gens_[i].degree;
    return d;
}

bool GradedRing::has_free_generator() const {
    for (int i = 0; i < (int)gens_.size(); ++i)
        if (!rules_[i] && !group_caps_[gens_[i].group]) return true;
    return false;
}

bool GradedRing::within_group_caps(const Exponents& e) const {
    for (int g = 0; g < (int)group_caps_.size(); ++g) {
        if (!group_caps_[g]) continue;
        int d = 0;
        for (int i = 0; i < (int)gens_.size(); ++i)
            if (gens_[i].group == g) d += e[i] * gens_[i].degree;
        if (d > *group_caps_[g]) return false;
    }
    return true;
}

/* Rewrites until every generator exponent is below its relation cap, then
   prunes monomials over a group cap.  Substitutions only involve the same
   generator at lower powers and generators of smaller index, so the exponent
   vector decreases lexicographically from the last generator: terminates. */
Poly GradedRing::normalize(Poly p) const {
    const int n = (int)gens_.size();
    Poly out;
    std::vector<std::pair<Exponents, Rat>> work;
    work.reserve(p.size());
    for (auto& [e, c] : p) {
        if ((int)e.size() != n) throw MathError("exponent vector of wrong arity");
        if (c != 0) work.emplace_back(e, c);
    }
    while (!work.empty()) {
        auto [e, c] = std::move(work.back());
        work.pop_back();
        int g = -1;
        for (int i = n - 1; i >= 0; --i)
            if (rules_[i] && e[i] >= rules_[i]->cap) { g = i; break; }
        if (g < 0) {
            if (within_group_caps(e)) {
                Rat& slot = out[e];
                slot += c;
                if (slot == 0) out.erase(e);
            }
            continue;
        }
        const Rule& r = *rules_[g];
        Exponents rest = e;
        rest[g] -= r.cap;
        for (const auto& [se, sc] : r.sub) {
            Exponents ne = rest;
            for (int i = 0; i < n; ++i) ne[i] += se[i];
            work.emplace_back(std::move(ne), c * sc);
        }
    }
    return out;
}

GradedClass GradedRing::zero() const {
    return GradedClass(shared_from_this(), Poly{});
}

GradedClass GradedRing::one() const { return constant(Rat(1)); }

GradedClass GradedRing::constant(const Rat& c) const {
    Poly p;
    if (c != 0) p[Exponents(gens_.size(), 0)] = c;
    return GradedClass(shared_from_this(), std::move(p));
}

GradedClass GradedRing::gen(int i) const {
    if (i < 0 || i >= (int)gens_.size()) throw MathError("generator index out of range");
    Poly p;
    Exponents e(gens_.size(), 0);
    e[i] = 1;
    p[e] = 1;
    return GradedClass(shared_from_this(), std::move(p));
}

GradedClass GradedRing::cls(Poly p) const {
    return GradedClass(shared_from_this(), std::move(p));
}

std::string GradedRing::monomial_str(const Exponents& e) const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < (int)gens_.size(); ++i) {
        if (e[i] == 0) continue;
        if (any) os << "*";
        os << gens_[i].name;
        if (e[i] > 1) os << "^" << e[i];
        any = true;
    }
    return any ? os.str() : "1";
}

void GradedRing::enumerate(int gi, int budget, Exponents& cur,
                           std::vector<Exponents>& out, int want) const {
    if (gi == (int)gens_.size()) {
        if (want == 0 && within_group_caps(cur)) out.push_back(cur);
        return;
    }
    int deg = gens_[gi].degree;
    int maxe = want / deg;
    if (rules_[gi]) maxe = std::min(maxe, rules_[gi]->cap - 1);
    for (int k = 0; k <= maxe; ++k) {
        cur[gi] = k;
        enumerate(gi + 1, budget, cur, out, want - k * deg);
    }
    cur[gi] = 0;
}

std::vector<Exponents> GradedRing::monomials_of_degree(int d) const {
    std::vector<Exponents> out;
    if (d < 0) return out;
    Exponents cur(gens_.size(), 0);
    enumerate(0, d, cur, out, d);
    std::sort(out.begin(), out.end());
    return out;
}

/* ---------------- expression parser ----------------
   expr   := term (('+'|'-') term)*
   term   := ['-'] factor ('*' factor)*
   factor := rational | generator ['^' int]                        */

namespace {

struct Tok {
    enum Kind { Num, Name, Op, End } kind;
    std::string text;
};

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    Tok next() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i == s.size()) return {Tok::End, ""};
        char c = s[i];
        if (c == '+' || c == '-' || c == '*' || c == '^') {
            ++i;
            return {Tok::Op, std::string(1, c)};
        }
        if (c >= '0' && c <= '9') {
            size_t j = i;
            while (j < s.size() && ((s[j] >= '0' && s[j] <= '9') || s[j] == '/')) ++j;
            Tok t{Tok::Num, s.substr(i, j - i)};
            i = j;
            return t;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= 'A' && s[j] <= 'Z') ||
                    (s[j] >= '0' && s[j] <= '9') || s[j] == '_' || s[j] == '\''))
                ++j;
            Tok t{Tok::Name, s.substr(i, j - i)};
            i = j;
            return t;
        }
        throw SchemaError("unexpected character '" + std::string(1, c) + "' in expression");
    }
};

} // namespace

GradedClass GradedRing::parse(const std::string& expr) const {
    const int n = (int)gens_.size();
    Lexer lx(expr);
    Tok t = lx.next();
    if (t.kind == Tok::End) throw SchemaError("empty expression");
    Poly acc;
    bool done = false;
    while (!done) {
        // sign
        Rat sign(1);
        while (t.kind == Tok::Op && (t.text == "+" || t.text == "-")) {
            if (t.text == "-") sign = -sign;
            t = lx.next();
        }
        // term = factor (* factor)*
        Rat coeff = sign;
        Exponents e(n, 0);
        bool expectFactor = true;
        while (true) {
            if (expectFactor) {
                if (t.kind == Tok::Num) {
                    coeff *= parse_rat(t.text);
                    t = lx.next();
                } else if (t.kind == Tok::Name) {
                    int gi = find_generator(t.text);
                    if (gi < 0) throw SchemaError("unknown generator '" + t.text + "'");
                    int p = 1;
                    t = lx.next();
                    if (t.kind == Tok::Op && t.text == "^") {
                        t = lx.next();
                        if (t.kind != Tok::Num || t.text.find('/') != std::string::npos)
                            throw SchemaError("bad exponent in expression");
                        p = std::stoi(t.text);
                        if (p < 0) throw SchemaError("negative exponent in expression");
                        t = lx.next();
                    }
                    e[gi] += p;
                } else {
                    throw SchemaError("expected a factor in expression");
                }
                expectFactor = false;
            } else if (t.kind == Tok::Op && t.text == "*") {
                expectFactor = true;
                t = lx.next();
            } else {
                break;
            }
        }
        acc[e] += coeff;
        if (t.kind == Tok::End) done = true;
        else if (t.kind == Tok::Op && (t.text == "+" || t.text == "-")) continue;
        else throw SchemaError("trailing junk in expression");
    }
    return GradedClass(shared_from_this(), std::move(acc));
}

/* ---------------- constructors ---------------- */

RingPtr GradedRing::make(const std::vector<std::pair<std::string, int>>& gens,
                         const std::vector<std::string>& relations,
                         int truncation_dim) {
    if (truncation_dim < 0) throw SchemaError("negative truncation dimension");
    auto ring = std::make_shared<GradedRing>();
    for (const auto& [name, deg] : gens) {
        if (deg < 1) throw SchemaError("generator degree must be >= 1");
        if (ring->find_generator(name) >= 0)
            throw SchemaError("duplicate generator '" + name + "'");
        ring->gens_.push_back({name, deg, 0});
        ring->rules_.push_back(std::nullopt);
    }
    ring->group_caps_.push_back(truncation_dim);

    /* Parse relations on an uncapped copy so leading terms are visible. */
    auto free_copy = std::make_shared<GradedRing>();
    free_copy->gens_ = ring->gens_;
    free_copy->rules_.assign(ring->gens_.size(), std::nullopt);
    free_copy->group_caps_.push_back(std::nullopt);

    const int n = (int)ring->gens_.size();
    for (const std::string& rel : relations) {
        GradedClass r = free_copy->parse(rel);
        if (r.is_zero()) throw SchemaError("zero relation");
        int deg = r.top_degree();
        if (!r.is_homogeneous(deg)) throw MathError("non-homogeneous relation", rel);
        /* leading generator: the highest index appearing in the relation */
        int g = -1;
        for (const auto& [e, c] : r.poly())
            for (int i = n - 1; i > g; --i)
                if (e[i] > 0) g = i;
        if (g < 0) throw MathError("unsupported presentation family", "constant relation");
        /* leading term must be exactly x_g^p, p maximal among x_g exponents */
        int p = 0;
        for (const auto& [e, c] : r.poly()) p = std::max(p, e[g]);
        Exponents lead(n, 0);
        lead[g] = p;
        auto it = r.poly().find(lead);
        if (it == r.poly().end())
            throw MathError("unsupported presentation family",
                            "no pure leading power in '" + rel + "'");
        Rat lc = it->second;
        Poly sub;
        for (const auto& [e, c] : r.poly()) {
            if (e == lead) continue;
            if (e[g] >= p)
                throw MathError("unsupported presentation family",
                                "mixed leading terms in '" + rel + "'");
            sub[e] = -c / lc;
        }
        if (ring->rules_[g])
            throw MathError("unsupported presentation family",
                            "two relations lead in the same generator");
        ring->rules_[g] = Rule{p, std::move(sub)};
    }
    return ring;
}

RingPtr GradedRing::point() { return make({}, {}, 0); }

RingPtr GradedRing::tensor(const RingPtr& a, const RingPtr& b) {
    auto ring = std::make_shared<GradedRing>();
    const int na = a->num_generators(), nb = b->num_generators();
    const int ga = (int)a->group_caps_.size();
    for (const auto& g : a->gens_) ring->gens_.push_back(g);
    for (const auto& g : b->gens_) {
        if (ring->find_generator(g.name) >= 0)
            throw SchemaError("duplicate generator '" + g.name + "' in tensor product");
        ring->gens_.push_back({g.name, g.degree, g.group + ga});
    }
    ring->group_caps_ = a->group_caps_;
    for (const auto& c : b->group_caps_) ring->group_caps_.push_back(c);
    auto remap = [&](const Poly& p, int shift) {
        Poly out;
        for (const auto& [e, c] : p) {
            Exponents ne(na + nb, 0);
            for (int i = 0; i < (int)e.size(); ++i) ne[i + shift] = e[i];
            out[ne] = c;
        }
        return out;
    };
    for (int i = 0; i < na; ++i)
        ring->rules_.push_back(a->rules_[i]
                                   ? std::optional<Rule>(Rule{a->rules_[i]->cap,
                                                              remap(a->rules_[i]->sub, 0)})
                                   : std::nullopt);
    for (int i = 0; i < nb; ++i)
        ring->rules_.push_back(b->rules_[i]
                                   ? std::optional<Rule>(Rule{b->rules_[i]->cap,
                                                              remap(b->rules_[i]->sub, na)})
                                   : std::nullopt);
    return ring;
}

RingPtr GradedRing::extend_projective(const std::vector<GradedClass>& chern,
                                      const std::string& zeta_name, int r0) const {
    if (r0 < 1) throw MathError("projective extension needs rank >= 1");
    if ((int)chern.size() != r0)
        throw MathError("projective extension needs c_1..c_r0");
    if (find_generator(zeta_name) >= 0)
        throw SchemaError("generator '" + zeta_name + "' already present");
    auto ring = std::make_shared<GradedRing>();
    ring->gens_ = gens_;
    ring->rules_ = rules_;
    ring->group_caps_ = group_caps_;
    const int n = (int)gens_.size();
    const int zg = (int)ring->group_caps_.size();
    ring->gens_.push_back({zeta_name, 1, zg});
    ring->group_caps_.push_back(std::nullopt); // zeta is bounded by its rule
    auto self = shared_from_this();
    Poly sub; // zeta^r0 = -sum c_i zeta^{r0-i}
    for (int i = 1; i <= r0; ++i) {
        const GradedClass& ci = chern[i - 1];
        if (ci.ring() != self) throw MathError("ring mismatch", "chern class of foreign ring");
        if (!ci.is_homogeneous(i))
            throw MathError("projective extension needs homogeneous chern classes");
        for (const auto& [e, c] : ci.poly()) {
            Exponents ne(n + 1, 0);
            for (int j = 0; j < n; ++j) ne[j] = e[j];
            ne[n] = r0 - i;
            sub[ne] -= c;
        }
    }
    ring->rules_.push_back(Rule{r0, std::move(sub)});
    return ring;
}

RingPtr GradedRing::extend_free(const std::string& name) const {
    if (find_generator(name) >= 0)
        throw SchemaError("generator '" + name + "' already present");
    auto ring = std::make_shared<GradedRing>();
    ring->gens_ = gens_;
    ring->rules_ = rules_;
    ring->group_caps_ = group_caps_;
    const int g = (int)ring->group_caps_.size();
    ring->gens_.push_back({name, 1, g});
    ring->group_caps_.push_back(std::nullopt);
    ring->rules_.push_back(std::nullopt);
    return ring;
}

/* ---------------- utilities ---------------- */

GradedClass inverse_unit_class(const GradedClass& c) {
    Rat c0 = c.scalar_part();
    if (c0 == 0) throw MathError("constant term is not a unit");
    const RingPtr& R = c.ring();
    if (R->has_free_generator())
        throw MathError("inverse over a ring with a free generator",
                        "use the localized inverse instead");
    GradedClass n = (Rat(1) / c0) * c - R->one(); // nilpotent
    GradedClass acc = R->one(), term = R->one();
    const int cap = R->bounded_degree_cap();
    for (int k = 1; k <= cap; ++k) {
        term = term * n;
        if (term.is_zero()) break;
        acc = (k % 2 ? acc - term : acc + term);
    }
    return (Rat(1) / c0) * acc;
}

GradedClass exp_nilpotent(const GradedClass& x) {
    if (x.scalar_part() != 0) throw MathError("exponential of a class with nonzero constant term");
    const RingPtr& R = x.ring();
    if (R->has_free_generator())
        throw MathError("exponential over a ring with a free generator");
    GradedClass acc = R->one(), term = R->one();
    const int cap = R->bounded_degree_cap();
    Rat fact(1);
    for (int k = 1; k <= cap; ++k) {
        term = term * x;
        if (term.is_zero()) break;
        fact /= k;
        acc = acc + fact * term;
    }
    return acc;
}

} // namespace vchow
