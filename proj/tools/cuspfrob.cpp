#include <algorithm>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cuspfrob/cache.hpp"
#include "cuspfrob/cusp.hpp"
#include "cuspfrob/intersection.hpp"
#include "cuspfrob/verify.hpp"
#include "cuspfrob/wdvv.hpp"
#include "cuspfrob/weyl.hpp"

namespace {

using namespace cuspfrob;

Triplet parse_triplet(std::vector<int> a) {
    if (a.size() != 3) throw CLI::ValidationError("triplet", "expected three positive integers");
    std::vector<int> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != a)
        std::cerr << "note: triplet reordered ascending to (" << sorted[0] << "," << sorted[1]
                  << "," << sorted[2] << ")\n";
    return Triplet(sorted[0], sorted[1], sorted[2]);
}

nlohmann::json info_json(const Triplet& A) {
    nlohmann::json expo = nlohmann::json::array();
    for (const auto& e : exponents(A)) expo.push_back(rat_str(e));
    return nlohmann::json{
        {"A", {A.a1, A.a2, A.a3}}, {"mu", A.mu()}, {"chi", rat_str(A.chi())},
        {"exponents", expo}};
}

int effective_degree(const Triplet& A, int K, std::optional<int> user_d) {
    if (user_d) return *user_d;
    return std::max(8, required_degree(A, K));
}

Potential load_or_solve(const Triplet& A, int K, std::optional<int> user_d, bool use_cache,
                        bool& cached) {
    cached = false;
    const int D = effective_degree(A, K, user_d);
    ReconstructionConfig cfg;
    cfg.K = K;
    cfg.D = D;
    std::string key = cache_key(A.a1, A.a2, A.a3, K, D);
    if (use_cache) {
        if (auto bytes = cache_lookup(key)) {
            try {
                Potential P = Potential::from_json(nlohmann::json::parse(*bytes));
                if (P.ctx->A == A && P.K == K && P.D == D && P.canonical_bytes() == *bytes) {
                    cached = true;
                    return P;
                }
                std::cerr << "warning: cache entry did not validate; recomputing\n";
            } catch (const std::exception&) {
                std::cerr << "warning: corrupted cache entry; recomputing\n";
            }
        }
    }
    Potential P = solve(A, cfg);
    if (use_cache) cache_store(key, P.canonical_bytes());
    return P;
}

int run_verify(const std::string& which, const Triplet& A, const VerifyOptions& opts,
               bool as_json) {
    std::vector<VerifyReport> reports;
    if (which == "all")
        reports = verify_all(A, opts);
    else if (which == "invariants")
        reports = {verify_invariants(A, opts)};
    else if (which == "wdvv")
        reports = {verify_wdvv(A, opts)};
    else if (which == "intersection")
        reports = {verify_intersection(A, opts)};
    else if (which == "residue")
        reports = {verify_residue(A, opts)};
    else if (which == "weyl")
        reports = {verify_weyl(A, opts)};
    else if (which == "periods")
        reports = {verify_periods(A, opts)};
    else
        throw CLI::ValidationError("suite", "unknown suite '" + which + "'");

    bool ok = true;
    if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) {
            arr.push_back(r.to_json());
            ok = ok && r.ok();
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            r.print(std::cout);
            ok = ok && r.ok();
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact reconstruction and cross-verification of the rank-mu Frobenius "
                 "structure attached to a cusp polynomial triplet"};
    app.require_subcommand(1);

    std::vector<int> triplet_args;
    bool as_json = false;
    int q_order = 2;
    std::optional<int> t_degree;
    std::uint64_t seed = 9001;
    int points = 5;
    bool no_cache = false;
    std::string smu_text = "1";
    std::string suite = "all";

    auto add_triplet = [&](CLI::App* cmd) {
        cmd->add_option("triplet", triplet_args, "triplet a1 a2 a3")->expected(3)->required();
    };

    auto* info = app.add_subcommand("info", "invariants and exponents");
    add_triplet(info);
    info->add_flag("--json", as_json, "JSON output");

    auto* pot = app.add_subcommand("potential", "reconstruct the Frobenius potential");
    add_triplet(pot);
    pot->add_option("--q-order", q_order, "q-power truncation K")->capture_default_str();
    pot->add_option("--t-degree", t_degree, "t-degree truncation D (default: exact requirement)");
    pot->add_flag("--json", as_json, "JSON output (always JSON; kept for symmetry)");
    pot->add_flag("--no-cache", no_cache, "bypass the potential cache");

    auto* inter = app.add_subcommand("intersection", "intersection form and flat identities");
    add_triplet(inter);
    inter->add_option("--q-order", q_order)->capture_default_str();
    inter->add_option("--t-degree", t_degree);
    inter->add_flag("--json", as_json);
    inter->add_flag("--no-cache", no_cache);

    auto* res = app.add_subcommand("residue", "residue table of the cusp polynomial");
    add_triplet(res);
    res->add_option("--smu", smu_text, "parameter value p/q")->capture_default_str();
    res->add_flag("--json", as_json);

    auto* weyl = app.add_subcommand("weyl", "Cartan matrix, coweights, Gram blocks");
    add_triplet(weyl);
    weyl->add_flag("--json", as_json);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "all|invariants|wdvv|intersection|residue|weyl|periods")
        ->required();
    add_triplet(verify);
    verify->add_option("--q-order", q_order)->capture_default_str();
    verify->add_option("--t-degree", t_degree);
    verify->add_option("--seed", seed)->capture_default_str();
    verify->add_option("--points", points)->capture_default_str();
    verify->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Triplet A = parse_triplet(triplet_args);

        if (*info) {
            std::cout << info_json(A).dump() << "\n";
            return 0;
        }

        if (*pot) {
            bool cached = false;
            Potential P = load_or_solve(A, q_order, t_degree, !no_cache, cached);
            if (cached) std::cerr << "cached: true\n";
            std::cout << P.canonical_bytes();
            return 0;
        }

        if (*inter) {
            bool cached = false;
            Potential P = load_or_solve(A, q_order, t_degree, !no_cache, cached);
            auto g = intersection_form(P);
            auto violations = flat_identity_violations(g);
            if (as_json) {
                nlohmann::json entries = nlohmann::json::object();
                const int n = g.rank();
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j)
                        entries["g[" + g.ctx->idx.label(i) + "][" + g.ctx->idx.label(j) + "]"] =
                            g.at(i, j).to_json();
                nlohmann::json out{{"A", {A.a1, A.a2, A.a3}},
                                   {"K", P.K},
                                   {"D", P.D},
                                   {"entries", entries},
                                   {"identity_violations", violations}};
                std::cout << out.dump() << "\n";
            } else {
                const auto& idx = g.ctx->idx;
                std::cout << "intersection form of " << A.str() << " (K=" << P.K
                          << ", D=" << P.D << ")\n";
                for (int j = 0; j < g.rank(); ++j) {
                    auto series = g.at(idx.mu_index(), j);
                    std::cout << "  g[mu][" << idx.label(j) << "] = " << series.to_json().dump()
                              << "\n";
                }
                if (violations.empty())
                    std::cout << "flat identities: all hold exactly\n";
                else
                    for (const auto& v : violations) std::cout << "violated: " << v << "\n";
            }
            return violations.empty() ? 0 : 1;
        }

        if (*res) {
            Rational smu = rat_parse(smu_text);
            JacobianResidue R(A, smu);
            nlohmann::json rows = nlohmann::json::array();
            auto add_row = [&](const std::string& name, int e1, int e2, int e3) {
                rows.push_back({{"g", name}, {"raw", rat_str(R.raw_monomial(e1, e2, e3))}});
            };
            add_row("1", 0, 0, 0);
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= A.a(i) - 1; ++j) {
                    int e[3] = {0, 0, 0};
                    e[i - 1] = j;
                    add_row("x" + std::to_string(i) + "^" + std::to_string(j), e[0], e[1], e[2]);
                }
            add_row("x1*x2*x3", 1, 1, 1);
            nlohmann::json out{{"A", {A.a1, A.a2, A.a3}},
                               {"smu", rat_str(smu)},
                               {"dimension", R.algebra().dim()},
                               {"residues", rows},
                               {"note", "raw follows the point-sum convention; the quoted "
                                        "tables carry the opposite global sign"}};
            if (as_json) {
                out["algebra"] = R.algebra().to_json();
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "residues of f_" << A.str() << " at smu = " << rat_str(smu)
                          << " (dimension " << R.algebra().dim() << ")\n";
                for (const auto& row : out["residues"])
                    std::cout << "  " << row["g"].get<std::string>() << " -> "
                              << row["raw"].get<std::string>() << "\n";
                std::cout << "note: " << out["note"].get<std::string>() << "\n";
            }
            return 0;
        }

        if (*weyl) {
            auto C = cartan_matrix(A);
            auto om = fundamental_coweights(C);  // throws for chi = 0
            auto gram = gram_check(A);
            if (as_json) {
                nlohmann::json cw = nlohmann::json::array();
                for (const auto& w : om) {
                    nlohmann::json row = nlohmann::json::array();
                    for (const auto& x : w) row.push_back(rat_str(x));
                    cw.push_back(row);
                }
                nlohmann::json out{{"A", {A.a1, A.a2, A.a3}},
                                   {"cartan", C.to_json()},
                                   {"coweights", cw},
                                   {"gram", gram.to_json()}};
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "Cartan matrix of T_" << A.str() << " (det " << C.det().get_str()
                          << ")\n";
                for (int i = 0; i < C.size; ++i) {
                    std::cout << "  ";
                    for (int j = 0; j < C.size; ++j) std::cout << C.matrix[i][j] << " ";
                    std::cout << " // " << C.labels[i] << "\n";
                }
                std::cout << "fundamental coweights (coroot basis):\n";
                for (int j = 0; j < C.size; ++j) {
                    std::cout << "  omega[" << C.labels[j] << "] = (";
                    for (int m = 0; m < C.size; ++m)
                        std::cout << rat_str(om[j][m]) << (m + 1 < C.size ? " " : "");
                    std::cout << ")\n";
                }
                std::cout << "corner of the Gram block: " << rat_str(gram.corner)
                          << " relative to " << gram.tag << "\n";
            }
            return 0;
        }

        if (*verify) {
            VerifyOptions opts;
            opts.K = q_order;
            opts.D = t_degree;
            opts.seed = seed;
            opts.points = points;
            return run_verify(suite, A, opts, as_json);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
