#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zitau/bounds.hpp"
#include "zitau/config.hpp"
#include "zitau/csv.hpp"
#include "zitau/errors.hpp"
#include "zitau/estimators.hpp"
#include "zitau/frechet.hpp"
#include "zitau/grid.hpp"
#include "zitau/montecarlo.hpp"
#include "zitau/oracle.hpp"
#include "zitau/zip.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_flag_double(const std::string& text, const std::string& flag) {
    double v = 0;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, v);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument(flag + ": expected a number, got '" + text + "'");
    return v;
}

zitau::ZipMargin parse_margin(const std::string& text, const std::string& flag) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw std::invalid_argument(flag + ": expected PI,LAMBDA, got '" + text + "'");
    zitau::ZipMargin m{parse_flag_double(text.substr(0, comma), flag),
                       parse_flag_double(text.substr(comma + 1), flag)};
    zitau::validate(m);
    return m;
}

const char* kind_name(zitau::BoundKind k) {
    switch (k) {
        case zitau::BoundKind::denuit_tauH: return "denuit_tauH";
        case zitau::BoundKind::exact_tauA: return "exact_tauA";
        case zitau::BoundKind::estimated_tauA: return "estimated_tauA";
    }
    return "?";
}

void print_bounds_text(const zitau::BoundsReport& r) {
    std::printf("bound_kind: %s\n", kind_name(r.kind));
    std::printf("lower: %s\n", fmt(r.lower).c_str());
    std::printf("upper: %s\n", fmt(r.upper).c_str());
    if (r.s_tilde) std::printf("s_tilde: %lld\n", *r.s_tilde);
    if (r.t_tilde) std::printf("t_tilde: %lld\n", *r.t_tilde);
    if (r.s_tilde_prime) std::printf("s_tilde_prime: %lld\n", *r.s_tilde_prime);
    if (r.t_tilde_prime) std::printf("t_tilde_prime: %lld\n", *r.t_tilde_prime);
    if (r.pU_t11) std::printf("tie_prob_upper: %s\n", fmt(*r.pU_t11).c_str());
    if (r.pL_t11) std::printf("tie_prob_lower: %s\n", fmt(*r.pL_t11).c_str());
    if (r.denuit_fallback)
        std::printf("warning: no rows with both counts positive, "
                    "fell back to the zero-probability-only bound\n");
}

json bounds_json(const zitau::BoundsReport& r) {
    json j{{"kind", kind_name(r.kind)}, {"lower", r.lower}, {"upper", r.upper}};
    if (r.s_tilde) j["s_tilde"] = *r.s_tilde;
    if (r.t_tilde) j["t_tilde"] = *r.t_tilde;
    if (r.s_tilde_prime) j["s_tilde_prime"] = *r.s_tilde_prime;
    if (r.t_tilde_prime) j["t_tilde_prime"] = *r.t_tilde_prime;
    if (r.pU_t11) j["tie_prob_upper"] = *r.pU_t11;
    if (r.pL_t11) j["tie_prob_lower"] = *r.pL_t11;
    j["denuit_fallback"] = r.denuit_fallback;
    return j;
}

int run_estimate(const std::string& input, bool header, bool json_out) {
    const zitau::PairedSample s = zitau::read_paired_csv(input, header);
    if (s.size() < 2)
        throw std::invalid_argument("insufficient data: " + input + " has " +
                                    std::to_string(s.size()) + " data rows, need at least 2");
    const zitau::EstimateReport rep = zitau::estimate(s);
    const zitau::BoundsReport b = zitau::estimate_bounds(s);

    const long long n10 = static_cast<long long>(rep.stats.x_pos_y_zero.size());
    const long long n01 = static_cast<long long>(rep.stats.y_pos_x_zero.size());
    const long long n11 = rep.stats.pos_pos_pairs.size();
    const long long n00 = rep.stats.n - n10 - n01 - n11;

    if (json_out) {
        json j;
        j["n"] = rep.stats.n;
        j["counts"] = {{"n00", n00}, {"n01", n01}, {"n10", n10}, {"n11", n11}};
        j["freq"] = {{"p00", rep.stats.p00},
                     {"p01", rep.stats.p01},
                     {"p10", rep.stats.p10},
                     {"p11", rep.stats.p11}};
        j["tau_hat"] = rep.tau_hat;
        j["tau_b"] = rep.tau_b; // NaN serializes as null when degenerate
        j["tau_11_hat"] = rep.tau_11_hat;
        j["tau_H_hat"] = rep.tau_H_hat;
        j["tau_A_hat"] = rep.tau_A_hat;
        j["cross"] = {{"p1_star", rep.cross.p1_star},
                      {"p1_dagger", rep.cross.p1_dagger},
                      {"p2_star", rep.cross.p2_star},
                      {"p2_dagger", rep.cross.p2_dagger}};
        j["flags"] = {{"tau_b_degenerate", rep.tau_b_degenerate},
                      {"tau11_fallback", rep.tau11_fallback}};
        j["bounds"] = bounds_json(b);
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }

    std::printf("n: %lld\n", rep.stats.n);
    std::printf("group_counts: n00=%lld n10=%lld n01=%lld n11=%lld\n", n00, n10, n01, n11);
    std::printf("tau_hat: %s\n", fmt(rep.tau_hat).c_str());
    std::printf("tau_b: %s\n", fmt(rep.tau_b).c_str());
    std::printf("tau_11_hat: %s\n", fmt(rep.tau_11_hat).c_str());
    std::printf("tau_H_hat: %s\n", fmt(rep.tau_H_hat).c_str());
    std::printf("tau_A_hat: %s\n", fmt(rep.tau_A_hat).c_str());
    print_bounds_text(b);
    std::string warnings;
    if (rep.tau_b_degenerate) warnings += " tau_b_degenerate";
    if (rep.tau11_fallback) warnings += " tau11_fallback";
    std::printf("warnings:%s\n", warnings.empty() ? " none" : warnings.c_str());
    return 0;
}

int run_bounds(const std::string& zx, const std::string& zy, bool has_p1, bool has_p2,
               double p1, double p2, const std::string& input, bool header, bool exact,
               bool denuit, double tail_tol, bool json_out) {
    const bool margins = !zx.empty() || !zy.empty();
    const bool zero_probs = has_p1 || has_p2;
    const bool file = !input.empty();
    if (static_cast<int>(margins) + static_cast<int>(zero_probs) + static_cast<int>(file) != 1) {
        std::fprintf(stderr, "usage error: give exactly one input source: "
                             "--zip-x/--zip-y, --p1/--p2, or --input\n");
        return 2;
    }

    zitau::BoundsReport r;
    if (margins) {
        if (zx.empty() || zy.empty()) {
            std::fprintf(stderr, "usage error: --zip-x and --zip-y must be given together\n");
            return 2;
        }
        const zitau::ZipMargin fx = parse_margin(zx, "--zip-x");
        const zitau::ZipMargin fy = parse_margin(zy, "--zip-y");
        r = denuit ? zitau::denuit_bounds(zitau::zero_probability(fx),
                                          zitau::zero_probability(fy))
                   : zitau::exact_tauA_bounds(fx, fy, tail_tol);
    } else if (zero_probs) {
        if (!has_p1 || !has_p2) {
            std::fprintf(stderr, "usage error: --p1 and --p2 must be given together\n");
            return 2;
        }
        if (exact) {
            std::fprintf(stderr,
                         "usage error: --exact needs parametric margins (--zip-x/--zip-y)\n");
            return 2;
        }
        r = zitau::denuit_bounds(p1, p2);
    } else {
        if (exact) {
            std::fprintf(stderr,
                         "usage error: --exact needs parametric margins (--zip-x/--zip-y)\n");
            return 2;
        }
        const zitau::PairedSample s = zitau::read_paired_csv(input, header);
        if (s.size() < 2)
            throw std::invalid_argument("insufficient data: " + input + " has " +
                                        std::to_string(s.size()) +
                                        " data rows, need at least 2");
        if (denuit) {
            double zx_freq = 0, zy_freq = 0;
            for (const auto& [x, y] : s.pairs) {
                zx_freq += x == 0;
                zy_freq += y == 0;
            }
            const double dn = static_cast<double>(s.size());
            r = zitau::denuit_bounds(zx_freq / dn, zy_freq / dn);
        } else {
            r = zitau::estimate_bounds(s);
        }
    }

    if (json_out) {
        std::printf("%s\n", bounds_json(r).dump(2).c_str());
    } else {
        print_bounds_text(r);
    }
    return 0;
}

int run_true_tau(const std::string& zx, const std::string& zy, double rho, double tail_tol,
                 bool json_out) {
    const zitau::ZipMargin fx = parse_margin(zx, "--zip-x");
    const zitau::ZipMargin fy = parse_margin(zy, "--zip-y");
    const zitau::FrechetCopula c{rho};
    zitau::validate(c);
    const zitau::JointPmfGrid g =
        zitau::joint_pmf_grid(fx, fy, zitau::frechet_joint_cdf(fx, fy, c), tail_tol);
    const double tau = zitau::true_tau(g);
    if (json_out) {
        const json j{{"true_tau", tau},
                     {"tail_tol", tail_tol},
                     {"truncation_order", g.truncation_order},
                     {"tail_mass", g.tail_mass}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("true_tau: %s\n", fmt(tau).c_str());
        std::printf("tail_tol: %s\n", fmt(tail_tol).c_str());
        std::printf("truncation_order: %lld\n", g.truncation_order);
    }
    return 0;
}

int run_simulate(const std::string& config_path) {
    const zitau::SimConfig cfg = zitau::parse_sim_config(config_path);
    if (!cfg.table1 && !cfg.table2 && cfg.extra.empty())
        throw std::invalid_argument(config_path +
                                    ": nothing to run (set tables or add scenarios)");
    std::filesystem::create_directories(cfg.out_dir);

    const auto run_set = [&cfg](std::vector<zitau::SimScenario> scenarios,
                                const std::string& name) {
        std::vector<zitau::SimResult> results;
        std::vector<std::vector<zitau::RepRecord>> reps;
        for (zitau::SimScenario& s : scenarios) {
            std::vector<zitau::RepRecord> r;
            results.push_back(zitau::run_scenario(s, cfg.threads, cfg.dump_reps ? &r : nullptr));
            if (cfg.dump_reps) reps.push_back(std::move(r));
        }
        const std::filesystem::path dir(cfg.out_dir);
        const std::string table_path = (dir / (name + ".csv")).string();
        zitau::write_results_csv(table_path, results);
        std::printf("wrote %s (%zu scenarios)\n", table_path.c_str(), results.size());
        if (cfg.dump_reps) {
            const std::string reps_path = (dir / (name + "_reps.csv")).string();
            zitau::write_reps_csv(reps_path, results, reps);
            std::printf("wrote %s\n", reps_path.c_str());
        }
    };

    if (cfg.table1) {
        std::vector<zitau::SimScenario> scenarios = zitau::table1_scenarios(cfg.seed);
        for (zitau::SimScenario& s : scenarios) {
            s.n = cfg.n;
            s.reps = cfg.reps;
        }
        run_set(std::move(scenarios), "table1");
    }
    if (cfg.table2) {
        std::vector<zitau::SimScenario> scenarios = zitau::table2_scenarios(cfg.seed);
        for (zitau::SimScenario& s : scenarios) {
            s.n = cfg.n;
            s.reps = cfg.reps;
        }
        run_set(std::move(scenarios), "table2");
    }
    if (!cfg.extra.empty()) {
        std::vector<zitau::SimScenario> scenarios;
        for (const auto& [name, sc] : cfg.extra) scenarios.push_back(sc);
        run_set(std::move(scenarios), "custom");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kendall's tau for zero-inflated bivariate count data"};
    app.require_subcommand(1);

    std::string est_input;
    bool est_header = false, est_json = false;
    CLI::App* est = app.add_subcommand("estimate", "Estimate tau from a two-column CSV");
    est->add_option("--input", est_input, "CSV with columns x,y of non-negative integers")
        ->required();
    est->add_flag("--header", est_header, "skip one header line");
    est->add_flag("--json", est_json, "JSON output");

    std::string b_zx, b_zy, b_input;
    double b_p1 = 0, b_p2 = 0, b_tail = 1e-10;
    bool b_exact = false, b_denuit = false, b_header = false, b_json = false;
    CLI::App* bnd = app.add_subcommand("bounds", "Attainable range of tau");
    bnd->add_option("--zip-x", b_zx, "x margin as PI,LAMBDA");
    bnd->add_option("--zip-y", b_zy, "y margin as PI,LAMBDA");
    CLI::Option* op1 = bnd->add_option("--p1", b_p1, "P(x = 0)");
    CLI::Option* op2 = bnd->add_option("--p2", b_p2, "P(y = 0)");
    bnd->add_option("--input", b_input, "two-column CSV sample");
    bnd->add_flag("--header", b_header, "skip one header line of --input");
    CLI::Option* oex = bnd->add_flag("--exact", b_exact, "sharp bounds (default with margins)");
    CLI::Option* ode = bnd->add_flag("--denuit", b_denuit, "zero-probability-only bounds");
    oex->excludes(ode);
    bnd->add_option("--tail-tol", b_tail, "truncation tail bound (default 1e-10)");
    bnd->add_flag("--json", b_json, "JSON output");

    std::string t_zx, t_zy;
    double t_rho = 0, t_tail = 1e-10;
    bool t_json = false;
    CLI::App* tru = app.add_subcommand("true-tau", "Population tau of a parametric model");
    tru->add_option("--zip-x", t_zx, "x margin as PI,LAMBDA")->required();
    tru->add_option("--zip-y", t_zy, "y margin as PI,LAMBDA")->required();
    tru->add_option("--rho", t_rho, "copula mixing weight in [0,1]")->required();
    tru->add_option("--tail-tol", t_tail, "truncation tail bound (default 1e-10)");
    tru->add_flag("--json", t_json, "JSON output");

    std::string sim_config;
    CLI::App* sim = app.add_subcommand("simulate", "Run a simulation campaign from a config");
    sim->add_option("--config", sim_config, "campaign configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (est->parsed()) return run_estimate(est_input, est_header, est_json);
        if (bnd->parsed())
            return run_bounds(b_zx, b_zy, op1->count() > 0, op2->count() > 0, b_p1, b_p2,
                              b_input, b_header, b_exact, b_denuit, b_tail, b_json);
        if (tru->parsed()) return run_true_tau(t_zx, t_zy, t_rho, t_tail, t_json);
        if (sim->parsed()) return run_simulate(sim_config);
    } catch (const zitau::degenerate_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const zitau::precision_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}
