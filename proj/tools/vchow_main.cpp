#include "vchow/dtseries.hpp"
#include "vchow/json_io.hpp"
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace vchow;

namespace {

bool g_json = false;   // --output json
int g_status = 0;      // 1 when a check command found a mismatch

long max_order_cap() {
    const char* env = std::getenv("VCHOW_MAX_ORDER");
    if (!env) return 512;
    std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw SchemaError("VCHOW_MAX_ORDER must be a nonnegative integer");
    long v = 0;
    try {
        v = std::stol(s);
    } catch (const std::exception&) {
        throw SchemaError("VCHOW_MAX_ORDER is out of range");
    }
    return v;
}

void check_order(long order) {
    if (order < 0) throw SchemaError("order must be >= 0");
    long cap = max_order_cap();
    if (order > cap)
        throw SchemaError("order " + std::to_string(order) + " exceeds VCHOW_MAX_ORDER (" +
                          std::to_string(cap) + ")");
}

Json load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open spec file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return j;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void emit_series(const std::string& name, const Json& params, const TruncatedSeries& f) {
    if (g_json) {
        Json out{{"schema", kSeriesSchema}, {"series", name}, {"order", f.order()},
                 {"coefficients", series_to_json(f)}};
        for (auto& [k, v] : params.items()) out[k] = v;
        emit_json(out);
        return;
    }
    std::cout << name;
    for (auto& [k, v] : params.items())
        std::cout << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    std::cout << " order=" << f.order() << "\n";
    for (int k = 0; k <= f.order(); ++k)
        std::cout << "q^" << k << ": " << rat_str(f[k]) << "\n";
}

Json invariants_to_json(const QuadInvariants& inv) {
    return Json{{"dim", inv.dim},
                {"disc", inv.disc.get_str()},
                {"signature", Json::array({inv.sig_pos, inv.sig_neg})}};
}

std::string invariants_str(const QuadInvariants& inv) {
    return "dim=" + std::to_string(inv.dim) + " disc=" + inv.disc.get_str() + " signature=(" +
           std::to_string(inv.sig_pos) + "," + std::to_string(inv.sig_neg) + ")";
}

/* ---- subcommand bodies ---- */

void run_series_dtpt(const std::string& spec_path) {
    Json j = load_spec(spec_path);
    if (j.contains("schema") && j.at("schema").get<std::string>() != kSeriesSchema)
        throw SchemaError("unsupported schema tag");
    if (!j.contains("I") || !j.contains("I0"))
        throw SchemaError("dtpt spec needs fields 'I' and 'I0'");
    auto ci = series_coeffs_from_json(j.at("I"));
    auto c0 = series_coeffs_from_json(j.at("I0"));
    if (ci.empty() || c0.empty()) throw SchemaError("series must be nonempty");
    check_order((long)std::max(ci.size(), c0.size()) - 1);
    TruncatedSeries I((int)ci.size() - 1, ci), I0((int)c0.size() - 1, c0);
    emit_series("dtpt", Json::object(), dtpt_quotient(I, I0));
}

void run_push_forward(const std::string& spec_path, bool check_oracle, int self_test,
                      unsigned long seed) {
    if (self_test > 0) {
        std::mt19937 rng(seed);
        for (int i = 0; i < self_test; ++i) {
            auto q = random_pushforward_query(rng);
            auto c = vpb_check(q);
            if (!c.equal) {
                if (g_json)
                    emit_json(Json{{"self_test", "failed"},
                                   {"instance", i},
                                   {"formula", c.formula.str()},
                                   {"oracle", c.oracle.str()}});
                else
                    std::cout << "self-test FAILED at instance " << i
                              << ": formula = " << c.formula.str()
                              << ", oracle = " << c.oracle.str() << "\n";
                g_status = 1;
                return;
            }
        }
        if (g_json)
            emit_json(Json{{"self_test", "passed"}, {"instances", self_test}, {"seed", seed}});
        else
            std::cout << "self-test passed: " << self_test << " instances (seed " << seed
                      << ")\n";
        return;
    }
    if (spec_path.empty())
        throw SchemaError("push-forward needs --spec FILE (or --self-test N)");
    VarietyPtr base;
    PushforwardQuery q = pushforward_query_from_json(load_spec(spec_path), &base);
    GradedClass formula = vpb_pushforward_formula(q);
    Json out{{"schema", kPushforwardSchema}, {"m", q.m}, {"formula", class_to_json(formula)}};
    bool equal = true;
    GradedClass oracle;
    if (check_oracle) {
        oracle = vpb_pushforward_oracle(q);
        equal = (formula == oracle);
        out["oracle"] = class_to_json(oracle);
        out["equal"] = equal;
        if (!equal) g_status = 1;
    }
    if (g_json) {
        emit_json(out);
        return;
    }
    std::cout << "formula = " << formula.str() << "\n";
    if (check_oracle) {
        std::cout << "oracle  = " << oracle.str() << "\n";
        std::cout << "equal   = " << (equal ? "true" : "false") << "\n";
    }
}

void run_pairs_sheaves(int n, int N, int m, bool have_m, const std::string& me,
                       const std::string& mo, long beta, bool have_beta) {
    auto B = make_pairs_sheaves_base();
    Json results = Json::array();
    std::vector<int> ms;
    if (have_m)
        ms.push_back(m);
    else {
        if (n >= 1) ms.push_back(n - 1);
        ms.push_back(n);
    }
    for (int mm : ms) {
        auto cls = pairs_sheaves_pushforward(n, N, B.u, B.v, mm);
        results.push_back(Json{{"m", mm}, {"class", class_to_json(cls)}, {"text", cls.str()}});
    }
    Json out{{"n", n}, {"N", N}, {"results", results}};
    bool gate = true;
    if (have_beta) {
        gate = js_coprimality_gate(beta, n);
        out["beta_degree"] = beta;
        out["gate"] = gate;
    }
    if (me.empty() != mo.empty())
        throw SchemaError("--me and --mo must be given together");
    if (!me.empty() && gate)
        out["ptgv"] = rat_str(tautological_ptgv(n, N, parse_rat(me), parse_rat(mo)));
    if (g_json) {
        emit_json(out);
        return;
    }
    std::cout << "pairs-sheaves n=" << n << " N=" << N << "\n";
    for (const auto& r : results)
        std::cout << "m=" << r.at("m").get<int>() << ": " << r.at("text").get<std::string>()
                  << "\n";
    if (have_beta)
        std::cout << "gate(beta=" << beta << ", n=" << n << ") = " << (gate ? "true" : "false")
                  << "\n";
    if (out.contains("ptgv")) std::cout << "ptgv = " << out.at("ptgv").get<std::string>() << "\n";
}

void run_sqrt_euler(const std::string& spec_path) {
    Json j = load_spec(spec_path);
    if (j.contains("schema") && j.at("schema").get<std::string>() != kSqrtEulerSchema)
        throw SchemaError("unsupported schema tag");
    VarietyPtr X = variety_from_json(j.contains("variety") ? j.at("variety")
                                                           : Json{{"builtin", "pt"}});
    if (j.contains("equivariant")) {
        const Json& eqj = j.at("equivariant");
        auto eq = make_equivariant(X);
        KClass Bm = kclass_from_json(eqj.contains("Bm") ? eqj.at("Bm")
                                                        : Json{{"rank", 0}, {"honest", true}},
                                     eq->space);
        if (!eqj.contains("Em")) throw SchemaError("equivariant spec needs field 'Em'");
        OrthSplitBundle Em = orth_from_json(eqj.at("Em"), eq->space);
        LocalizedClass ratio = sqrt_euler_virtual_normal(Bm, Em, eq);
        if (g_json)
            emit_json(Json{{"schema", kSqrtEulerSchema},
                           {"ratio", Json{{"num", class_to_json(ratio.num())},
                                          {"tpow", ratio.tpow()}}},
                           {"text", ratio.str()}});
        else
            std::cout << "ratio = " << ratio.str() << "\n";
        return;
    }
    if (!j.contains("bundle")) throw SchemaError("sqrt-euler spec needs field 'bundle'");
    OrthSplitBundle E = orth_from_json(j.at("bundle"), X);
    GradedClass se = sqrt_euler(E);
    Json out{{"schema", kSqrtEulerSchema},
             {"sqrt_euler", class_to_json(se)},
             {"text", se.str()},
             {"rank", 2 * (int)E.isotropic_roots.size()}};
    bool ok = true;
    if (j.contains("reduce")) {
        std::vector<int> idx;
        for (const Json& v : j.at("reduce")) idx.push_back(v.get<int>());
        auto [K, rest] = reduce_orth(E, idx);
        auto eK = euler(K);
        auto rest_se = sqrt_euler(rest);
        ok = (se == eK * rest_se);
        out["reduction"] = Json{{"euler_K", class_to_json(eK)},
                                {"sqrt_euler_rest", class_to_json(rest_se)},
                                {"identity", ok}};
        if (!ok) g_status = 1;
    }
    if (g_json) {
        emit_json(out);
        return;
    }
    std::cout << "sqrt_euler = " << se.str() << "\n";
    if (j.contains("reduce")) {
        std::cout << "euler(K) = " << out["reduction"]["euler_K"].dump() << "\n";
        std::cout << "identity = " << (ok ? "true" : "false") << "\n";
    }
}

SymRes symres_from_spec(const Json& j, const QuadSpace& E) {
    const Json& sj = j.at("symres");
    if (!sj.is_object()) throw SchemaError("field 'symres' must be an object");
    if (!sj.contains("b_dim") || !sj.contains("d") || !sj.contains("orientation"))
        throw SchemaError("symres spec needs 'b_dim', 'd', 'orientation'");
    int b = sj.at("b_dim").get<int>();
    Mat d = mat_from_json(sj.at("d"));
    Rat lambda = parse_rat(sj.at("orientation").get<std::string>());
    return make_symres(b, E, d, lambda);
}

void run_quadform_reduce(const std::string& spec_path) {
    Json j = load_spec(spec_path);
    if (j.contains("schema") && j.at("schema").get<std::string>() != kQuadformSchema)
        throw SchemaError("unsupported schema tag");
    if (!j.contains("gram")) throw SchemaError("quadform spec needs field 'gram'");
    QuadSpace Q = make_quadspace(mat_from_json(j.at("gram")));
    Mat K = j.contains("k_basis") ? mat_from_json(j.at("k_basis")) : mat_zero(Q.dim, 0);

    Json out{{"schema", kQuadformSchema}, {"invariants", invariants_to_json(quad_invariants(Q))}};
    if (j.contains("symres")) {
        SymRes R = symres_from_spec(j, Q);
        Mat D = j.at("symres").contains("D_basis") ? mat_from_json(j.at("symres").at("D_basis"))
                                                   : mat_zero(R.b_dim, 0);
        SymRes red = reduce_symres(R, D, K);
        out["reduced_symres"] = Json{{"b_dim", red.b_dim},
                                     {"gram", mat_to_json(red.E.gram)},
                                     {"d", mat_to_json(red.d)},
                                     {"orientation", rat_str(red.orientation)}};
        if (red.E.dim > 0)
            out["reduced_invariants"] = invariants_to_json(quad_invariants(red.E));
    } else {
        auto red = reduce_quadspace(Q, make_subspace(Q, K));
        out["reduced_gram"] = mat_to_json(red.reduced.gram);
        if (red.reduced.dim > 0)
            out["reduced_invariants"] = invariants_to_json(quad_invariants(red.reduced));
    }
    if (g_json) {
        emit_json(out);
        return;
    }
    std::cout << "invariants: " << invariants_str(quad_invariants(Q)) << "\n";
    if (out.contains("reduced_gram")) std::cout << "reduced gram: " << out["reduced_gram"].dump() << "\n";
    if (out.contains("reduced_symres"))
        std::cout << "reduced symres: b_dim=" << out["reduced_symres"]["b_dim"].get<int>()
                  << " orientation=" << out["reduced_symres"]["orientation"].get<std::string>()
                  << "\n";
    if (out.contains("reduced_invariants"))
        std::cout << "reduced invariants: dim=" << out["reduced_invariants"]["dim"].get<int>()
                  << " disc=" << out["reduced_invariants"]["disc"].get<std::string>() << "\n";
}

void run_quadform_check(const std::string& spec_path, int samples, unsigned long seed) {
    Json j = load_spec(spec_path);
    if (j.contains("schema") && j.at("schema").get<std::string>() != kQuadformSchema)
        throw SchemaError("unsupported schema tag");
    if (!j.contains("gram")) throw SchemaError("quadform spec needs field 'gram'");
    QuadSpace Q = make_quadspace(mat_from_json(j.at("gram")));
    if (!j.contains("symres")) throw SchemaError("quadform check needs field 'symres'");
    SymRes R = symres_from_spec(j, Q); // construction validates the orientation
    bool iso = symres_check(R);
    bool descent = iso && quadratic_descent_check(R, samples, seed);
    if (!iso || !descent) g_status = 1;
    if (g_json) {
        emit_json(Json{{"schema", kQuadformSchema},
                       {"orientation_ok", true},
                       {"isotropic_image", iso},
                       {"descent", descent},
                       {"samples", samples},
                       {"seed", seed}});
        return;
    }
    std::cout << "orientation_ok = true\n";
    std::cout << "isotropic_image = " << (iso ? "true" : "false") << "\n";
    std::cout << "descent = " << (descent ? "true" : "false") << " (" << samples << " samples, seed "
              << seed << ")\n";
}

void run_grr_check(int max_n, int max_k) {
    if (max_n < 1) throw SchemaError("--max-n must be >= 1");
    Json rows = Json::array();
    bool all_ok = true;
    for (int n = 1; n <= max_n; ++n)
        for (int k = -max_k; k <= max_k; ++k) {
            auto [lhs, rhs] = grr_check(n, k);
            bool ok = (lhs == rhs);
            all_ok = all_ok && ok;
            rows.push_back(Json{{"n", n}, {"k", k}, {"chi", rat_str(lhs)},
                                {"expected", rat_str(rhs)}, {"ok", ok}});
        }
    if (!all_ok) g_status = 1;
    if (g_json) {
        emit_json(Json{{"rows", rows}, {"all_ok", all_ok}});
        return;
    }
    for (const auto& r : rows)
        std::cout << "n=" << r.at("n").get<int>() << " k=" << r.at("k").get<int>()
                  << " chi=" << r.at("chi").get<std::string>()
                  << " expected=" << r.at("expected").get<std::string>()
                  << (r.at("ok").get<bool>() ? " ok" : " MISMATCH") << "\n";
    std::cout << (all_ok ? "all checks passed" : "CHECK FAILED") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intersection-theory and DT-series calculator"};
    app.require_subcommand(1);
    app.fallthrough(true);
    std::string output = "text";
    app.add_option("--output", output, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    // series
    auto* series = app.add_subcommand("series", "generating series");
    series->require_subcommand(1);
    long order = 10;
    std::string c3c1 = "0", c3tk = "0", dtpt_spec;
    auto* mac = series->add_subcommand("macmahon", "MacMahon plane-partition series");
    mac->add_option("--order", order, "truncation order");
    auto* ck = series->add_subcommand("cao-kool", "degree-zero DT series M(-q)^{c3c1}");
    ck->add_option("--order", order, "truncation order");
    ck->add_option("--c3c1", c3c1, "exponent (rational string)");
    auto* dt3 = series->add_subcommand("dt3", "3-fold degree-zero DT series M(-q)^{c3TK}");
    dt3->add_option("--order", order, "truncation order");
    dt3->add_option("--c3tk", c3tk, "exponent (rational string)");
    auto* dtpt = series->add_subcommand("dtpt", "DT/PT quotient I / I0");
    dtpt->add_option("--spec", dtpt_spec, "JSON file with series I and I0")->required();
    mac->callback([&] {
        check_order(order);
        emit_series("macmahon", Json::object(), macmahon((int)order));
    });
    ck->callback([&] {
        check_order(order);
        emit_series("cao-kool", Json{{"c3c1", c3c1}}, cao_kool_series(parse_rat(c3c1), (int)order));
    });
    dt3->callback([&] {
        check_order(order);
        emit_series("dt3", Json{{"c3tk", c3tk}},
                    dt3_degree_zero_series(parse_rat(c3tk), (int)order));
    });
    dtpt->callback([&] { run_series_dtpt(dtpt_spec); });

    // push-forward
    auto* pf = app.add_subcommand("push-forward", "virtual projective bundle pushforward");
    std::string pf_spec;
    bool pf_oracle = false;
    int pf_self_test = 0;
    unsigned long pf_seed = 2026;
    pf->add_option("--spec", pf_spec, "PushforwardQuery JSON file");
    pf->add_flag("--check-oracle", pf_oracle, "also run the projective-bundle oracle");
    pf->add_option("--self-test", pf_self_test, "run N random formula-vs-oracle instances");
    pf->add_option("--seed", pf_seed, "seed for --self-test");
    pf->callback([&] { run_push_forward(pf_spec, pf_oracle, pf_self_test, pf_seed); });

    // pairs-sheaves
    auto* ps = app.add_subcommand("pairs-sheaves", "wall-crossing pushforward table");
    int ps_n = 1, ps_N = 1, ps_m = 0;
    std::string ps_me, ps_mo;
    long ps_beta = 0;
    ps->add_option("--n", ps_n, "pair count n")->required();
    ps->add_option("--N", ps_N, "rank N")->required();
    auto* ps_m_opt = ps->add_option("--m", ps_m, "Chern index (default: both n-1 and n)");
    ps->add_option("--me", ps_me, "sheaf-side invariant M(E) (rational string)");
    ps->add_option("--mo", ps_mo, "sheaf-side invariant M(O) (rational string)");
    auto* ps_beta_opt = ps->add_option("--beta-degree", ps_beta, "degree of beta for the gate");
    ps->callback([&] {
        run_pairs_sheaves(ps_n, ps_N, ps_m, ps_m_opt->count() > 0, ps_me, ps_mo, ps_beta,
                          ps_beta_opt->count() > 0);
    });

    // sqrt-euler
    auto* se = app.add_subcommand("sqrt-euler", "square-root Euler classes");
    std::string se_spec;
    se->add_option("--spec", se_spec, "bundle JSON file")->required();
    se->callback([&] { run_sqrt_euler(se_spec); });

    // quadform
    auto* qf = app.add_subcommand("quadform", "quadratic spaces and symmetric resolutions");
    qf->require_subcommand(1);
    std::string qf_spec;
    int qf_samples = 25;
    unsigned long qf_seed = 2026;
    auto* qred = qf->add_subcommand("reduce", "isotropic reduction");
    qred->add_option("--spec", qf_spec, "quadform JSON file")->required();
    qred->callback([&] { run_quadform_reduce(qf_spec); });
    auto* qchk = qf->add_subcommand("check", "symmetric resolution checks");
    qchk->add_option("--spec", qf_spec, "quadform JSON file")->required();
    qchk->add_option("--samples", qf_samples, "descent sample count");
    qchk->add_option("--seed", qf_seed, "descent seed");
    qchk->callback([&] { run_quadform_check(qf_spec, qf_samples, qf_seed); });

    // grr-check
    auto* grr = app.add_subcommand("grr-check", "Riemann-Roch numbers on projective spaces");
    int grr_n = 4, grr_k = 5;
    grr->add_option("--max-n", grr_n, "largest projective-space dimension");
    grr->add_option("--max-k", grr_k, "largest twist magnitude");
    grr->callback([&] { run_grr_check(grr_n, grr_k); });

    try {
        // --output may appear anywhere; peek before callbacks run
        for (int i = 1; i < argc; ++i) {
            std::string a = argv[i];
            if (a == "--output" && i + 1 < argc) g_json = (std::string(argv[i + 1]) == "json");
            if (a == "--output=json") g_json = true;
        }
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        if (g_json)
            std::cerr << Json{{"error", "schema"}, {"detail", e.what()}}.dump() << "\n";
        else
            std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        if (g_json)
            std::cerr << Json{{"error", "math"},
                              {"precondition", e.precondition},
                              {"detail", e.what()}}
                             .dump()
                      << "\n";
        else
            std::cerr << "math error: " << e.what() << "\n";
        return 3;
    }
    return g_status;
}
