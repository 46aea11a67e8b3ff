#include <CLI11.hpp>
#include <json.hpp>

#include "selfsim/config.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/functionals.hpp"
#include "selfsim/measure.hpp"

#include <fstream>
#include <iostream>

using nlohmann::json;
using namespace selfsim;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string preset;
    std::string format = "json";
    std::uint64_t budget = kDefaultWordBudget;
    bool no_normalize = false;
};

IFSModel resolve_model(const GlobalOpts& g) {
    if (!g.config_path.empty() && !g.preset.empty()) {
        throw InvalidInputError("--config and --preset are mutually exclusive");
    }
    IFSModel model = !g.config_path.empty() ? load_model(g.config_path)
                     : !g.preset.empty()    ? preset_model(g.preset)
                                            : throw InvalidInputError("need --config or --preset");
    return g.no_normalize ? model : normalize(model);
}

void emit(const GlobalOpts& g, const json& report) {
    if (g.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else {
        for (const auto& [k, v] : report.items()) {
            std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

json word_json(const Word& w) {
    json a = json::array();
    for (unsigned s : w) a.push_back(s);
    return a;
}

json field_matrix_json(const std::vector<std::vector<FieldElement>>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const FieldElement& e : r) row.push_back(e.to_string());
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-overlap analysis for self-similar iterated function systems"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags appear after the subcommand name

    GlobalOpts g;
    app.add_option("--config", g.config_path, "Model config JSON path");
    app.add_option("--preset", g.preset, "Bundled model preset name");
    app.add_option("--format", g.format, "Output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--budget", g.budget, "Word enumeration budget");
    app.add_flag("--no-normalize", g.no_normalize, "Skip conjugation to t_0 = 0");

    unsigned n = 1, max_depth = 8, rank_r = 1;
    std::string delta_str = "1/1024", q_str, cert_path;
    bool upper_bound = false, join_scaling = false;

    CLI::App* analyze = app.add_subcommand("analyze", "Rate statistics, similarity dimension, span check");
    CLI::App* overlaps = app.add_subcommand("overlaps", "Search for an exact overlap and certify it");
    overlaps->add_option("--max-depth", max_depth, "Deepest word length to search");
    CLI::App* delta = app.add_subcommand("delta", "Overlap gap Delta_n");
    delta->add_option("--n", n, "Word length")->required();
    CLI::App* dim = app.add_subcommand("dim", "Entropy-based dimension estimate");
    dim->add_option("--n", n, "Depth")->required();
    dim->add_flag("--upper-bound", upper_bound, "Also report the singleton-entropy upper bound");
    dim->add_option("--q", q_str, "Dyadic level rate for the joint diagnostic (rational)");
    dim->add_flag("--join-scaling", join_scaling, "Refine dyadic cells by scaling classes");
    CLI::App* rank = app.add_subcommand("rank", "Candidate-set Gram rank");
    rank->add_option("--n", n, "Word length")->required();
    rank->add_option("--delta", delta_str, "Threshold delta as p/q");
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "First-case translation reconstruction");
    reconstruct->add_option("--n", n, "Word length")->required();
    reconstruct->add_option("--delta", delta_str, "Threshold delta as p/q");
    CLI::App* lift = app.add_subcommand("lift", "Second-case lift to a higher-dimensional model");
    lift->add_option("--n", n, "Word length")->required();
    lift->add_option("--delta", delta_str, "Threshold delta as p/q");
    lift->add_option("--rank", rank_r, "Expected candidate-set rank r < m - d")->required();
    CLI::App* certify = app.add_subcommand("certify", "Verify an overlap certificate file");
    certify->add_option("--certificate", cert_path, "Certificate JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json report;
        if (analyze->parsed()) {
            IFSModel model = resolve_model(g);
            RateStats rs = rate_stats(model);
            report = {{"H_p", rs.entropy},
                      {"chi", rs.lyapunov},
                      {"beta", rs.beta},
                      {"similarity_dimension", similarity_dimension(model)},
                      {"span_check", span_check(model)},
                      {"normalized", model.is_normalized()}};
        } else if (overlaps->parsed()) {
            IFSModel model = resolve_model(g);
            auto cert = find_overlap(model, max_depth, g.budget);
            report = {{"found", cert.has_value()},
                      {"certificate", cert ? certificate_to_json(*cert) : json(nullptr)}};
            if (cert) {
                report["verified"] = verify_certificate(model, *cert);
                report["delta_n"] = "0";
            }
        } else if (delta->parsed()) {
            IFSModel model = resolve_model(g);
            DeltaResult d = delta_n(model, n, g.budget);
            json cert(nullptr);
            if (d.defined && d.value.sign() == 0) {
                if (auto c = find_overlap(model, n, g.budget)) cert = certificate_to_json(*c);
            }
            report = {{"delta_n", !d.defined           ? std::string("undefined")
                                  : d.value.is_rational() ? rational_string(d.value.rational())
                                                          : d.value.to_string()},
                      {"certificate", std::move(cert)}};
        } else if (dim->parsed()) {
            IFSModel model = resolve_model(g);
            RateStats rs = rate_stats(model);
            report = {{"n", n},
                      {"estimate", dim_estimate(model, n, g.budget)},
                      {"upper_bound", dim_upper_bound(model, n, g.budget)},
                      {"chi", rs.lyapunov},
                      {"H_p", rs.entropy},
                      {"beta", rs.beta}};
            if (join_scaling) {
                Rat q;
                if (q_str.empty()) {
                    // default q: a certified dyadic upper bound on chi
                    Interval chi = chi_enclosure(model);
                    q = dyadic_ceil(chi.hi, 20);
                } else {
                    q = parse_rational(q_str);
                }
                report["joint"] = hochman_diagnostic(model, n, q, g.budget);
                report["q"] = rational_string(q);
            }
        } else if (rank->parsed() || reconstruct->parsed() || lift->parsed()) {
            IFSModel model = resolve_model(g);
            CandidateSet s = build_candidate_set(model, parse_rational(delta_str), n, g.budget);
            RankReport rr = gram_rank(s);
            json members = json::array();
            for (const LinearFunctional& f : s.members) {
                members.push_back({{"w1", word_json(f.w1)}, {"w2", word_json(f.w2)}});
            }
            report = {{"n", n},
                      {"delta", delta_str},
                      {"members", std::move(members)},
                      {"coefficient_matrix", field_matrix_json(s.coefficient_rows())},
                      {"rank", rr.rank},
                      {"selected_rows", rr.row_indices},
                      {"entropy_deficit", s.entropy_deficit}};
            if (reconstruct->parsed()) {
                auto t = reconstruct_translations(s);
                report["reconstructed"] = t ? field_matrix_json(*t) : json(nullptr);
                report["consistent"] = t.has_value();
            } else if (lift->parsed()) {
                LiftResult lr = lift_to_higher_dim(s, rank_r);
                report["dprime"] = lr.dprime;
                report["base_columns"] = lr.base_columns;
                report["cramer_columns"] = lr.cramer_columns;
                report["lifted_translations"] = field_matrix_json(lr.s);
                report["verified"] = true;  // lift_to_higher_dim certifies L(s^l) = 0 or throws
            }
        } else if (certify->parsed()) {
            IFSModel model = resolve_model(g);
            std::ifstream in(cert_path);
            if (!in) throw InvalidInputError("cannot open certificate file: " + cert_path);
            json j;
            try {
                in >> j;
            } catch (const std::exception& e) {
                throw InvalidInputError(std::string("certificate is not valid JSON: ") + e.what());
            }
            OverlapCertificate cert = certificate_from_json(j, model.context()->var_count());
            report = {{"verified", verify_certificate(model, cert)},
                      {"n", cert.n},
                      {"w1", word_json(cert.w1)},
                      {"w2", word_json(cert.w2)}};
        }
        emit(g, report);
        return 0;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
