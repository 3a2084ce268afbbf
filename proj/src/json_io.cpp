#include "vchow/json_io.hpp"

namespace vchow {

static const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing field '") + key + "'");
    return j.at(key);
}

static std::string need_string(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

static long need_int(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
    return v.get<long>();
}

VarietyPtr variety_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("variety spec must be an object");
    if (j.contains("builtin")) {
        std::string b = j.at("builtin").get<std::string>();
        if (b == "pt") return make_point();
        if (b == "P1") return make_projective_space(1);
        if (b == "P2") return make_projective_space(2);
        if (b == "P3") return make_projective_space(3);
        if (b == "P4") return make_projective_space(4);
        if (b == "P1xP1")
            return make_product(make_projective_space(1, "x"), make_projective_space(1, "y"));
        throw SchemaError("unknown builtin variety '" + b + "'");
    }
    const Json& gens = need(j, "generators");
    if (!gens.is_array()) throw SchemaError("field 'generators' must be an array");
    std::vector<std::pair<std::string, int>> gv;
    for (const Json& g : gens) {
        if (g.is_string()) {
            gv.emplace_back(g.get<std::string>(), 1);
        } else if (g.is_array() && g.size() == 2 && g[0].is_string() && g[1].is_number_integer()) {
            gv.emplace_back(g[0].get<std::string>(), g[1].get<int>());
        } else {
            throw SchemaError("generator entries must be \"name\" or [\"name\", degree]");
        }
    }
    std::vector<std::string> rels;
    if (j.contains("relations")) {
        if (!j.at("relations").is_array()) throw SchemaError("field 'relations' must be an array");
        for (const Json& r : j.at("relations")) {
            if (!r.is_string()) throw SchemaError("relations must be strings");
            rels.push_back(r.get<std::string>());
        }
    }
    long dim = need_int(j, "dim");
    std::vector<std::pair<std::string, std::string>> ints;
    if (j.contains("integrals")) {
        if (!j.at("integrals").is_object()) throw SchemaError("field 'integrals' must be an object");
        for (auto it = j.at("integrals").begin(); it != j.at("integrals").end(); ++it) {
            if (!it.value().is_string()) throw SchemaError("integral values must be rational strings");
            ints.emplace_back(it.key(), it.value().get<std::string>());
        }
    }
    return make_variety(gv, rels, (int)dim, ints);
}

KClass kclass_from_json(const Json& j, const VarietyPtr& X) {
    if (!j.is_object()) throw SchemaError("K-class spec must be an object");
    long rank = need_int(j, "rank");
    GradedClass c = X->ring->one();
    if (j.contains("chern")) {
        const Json& ch = j.at("chern");
        if (!ch.is_array()) throw SchemaError("field 'chern' must be an array");
        int i = 1;
        for (const Json& e : ch) {
            if (!e.is_string()) throw SchemaError("chern entries must be expressions");
            GradedClass ci = X->ring->parse(e.get<std::string>());
            if (!ci.is_homogeneous(i))
                throw MathError("chern entry of wrong degree",
                                "c_" + std::to_string(i) + " = " + e.get<std::string>());
            c = c + ci;
            ++i;
        }
    }
    bool honest = j.value("honest", false);
    return KClass(X, (int)rank, c, honest);
}

OrthSplitBundle orth_from_json(const Json& j, const VarietyPtr& X) {
    if (!j.is_object()) throw SchemaError("orthogonal bundle spec must be an object");
    OrthSplitBundle E{X, {}, 1};
    const Json& roots = need(j, "roots");
    if (!roots.is_array()) throw SchemaError("field 'roots' must be an array");
    for (const Json& r : roots) {
        if (!r.is_string()) throw SchemaError("roots must be expressions");
        E.isotropic_roots.push_back(X->ring->parse(r.get<std::string>()));
    }
    if (j.contains("sign")) {
        long s = j.at("sign").get<long>();
        if (s != 1 && s != -1) throw SchemaError("field 'sign' must be +1 or -1");
        E.orientation_sign = (int)s;
    }
    return E;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("matrix must be an array of rows");
    Mat m;
    for (const Json& row : j) {
        if (!row.is_array()) throw SchemaError("matrix rows must be arrays");
        Vec v;
        for (const Json& x : row) {
            if (!x.is_string()) throw SchemaError("matrix entries must be rational strings");
            v.push_back(parse_rat(x.get<std::string>()));
        }
        m.push_back(std::move(v));
    }
    for (const auto& row : m)
        if (row.size() != m[0].size()) throw SchemaError("ragged matrix");
    return m;
}

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (const auto& r : m) {
        Json row = Json::array();
        for (const auto& x : r) row.push_back(rat_str(x));
        rows.push_back(row);
    }
    return rows;
}

PushforwardQuery pushforward_query_from_json(const Json& j, VarietyPtr* base_out) {
    if (!j.is_object()) throw SchemaError("push-forward spec must be an object");
    if (j.contains("schema") && j.at("schema").get<std::string>() != kPushforwardSchema)
        throw SchemaError("unsupported schema tag");
    VarietyPtr X = variety_from_json(need(j, "base"));
    if (base_out) *base_out = X;
    KClass K0 = kclass_from_json(need(j, "K0"), X);
    KClass K1 = kclass_from_json(need(j, "K1"), X);
    KClass xi = kclass_from_json(need(j, "xi"), X);
    long m = need_int(j, "m");
    GradedClass alpha =
        j.contains("alpha") ? X->ring->parse(need_string(j, "alpha")) : X->ring->one();
    return PushforwardQuery{TwoTermComplex(K0, K1), xi, (int)m, alpha};
}

std::vector<Rat> series_coeffs_from_json(const Json& j) {
    const Json* arr = &j;
    if (j.is_object()) arr = &need(j, "coefficients");
    if (!arr->is_array()) throw SchemaError("series must be an array of rational strings");
    std::vector<Rat> out;
    for (const Json& x : *arr) {
        if (!x.is_string()) throw SchemaError("series entries must be rational strings");
        out.push_back(parse_rat(x.get<std::string>()));
    }
    return out;
}

Json series_to_json(const TruncatedSeries& f) {
    Json arr = Json::array();
    for (int k = 0; k <= f.order(); ++k) arr.push_back(rat_str(f[k]));
    return arr;
}

Json class_to_json(const GradedClass& a) {
    Json obj = Json::object();
    for (const auto& [e, c] : a.poly())
        obj[a.ring()->monomial_str(e)] = rat_str(c);
    return obj;
}

GradedClass class_from_json(const Json& j, const RingPtr& R) {
    if (j.is_string()) return R->parse(j.get<std::string>());
    if (!j.is_object()) throw SchemaError("class must be an expression or monomial map");
    GradedClass out = R->zero();
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string()) throw SchemaError("class coefficients must be rational strings");
        out = out + parse_rat(it.value().get<std::string>()) * R->parse(it.key());
    }
    return out;
}

} // namespace vchow
