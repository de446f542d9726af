#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "zitau/bounds.hpp"
#include "zitau/config.hpp"
#include "zitau/estimators.hpp"
#include "zitau/frechet.hpp"
#include "zitau/grid.hpp"
#include "zitau/oracle.hpp"
#include "zitau/rng.hpp"
#include "zitau/sample.hpp"
#include "zitau/zip.hpp"

using namespace zitau;
using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string output;
};

// Runs the installed binary with stderr folded into stdout.
CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ZITAU_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("estimate matches the in-process report exactly") {
    write_file("cli_est.csv", "0,0\n1,1\n2,2\n0,3\n");
    const CliResult r = run_cli("estimate --input cli_est.csv --json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.output);

    PairedSample s;
    s.pairs = {{0, 0}, {1, 1}, {2, 2}, {0, 3}};
    const EstimateReport rep = estimate(s);
    const BoundsReport b = estimate_bounds(s);

    CHECK(j["n"].get<long long>() == 4);
    CHECK(j["counts"]["n00"].get<long long>() == 1);
    CHECK(j["counts"]["n01"].get<long long>() == 1);
    CHECK(j["counts"]["n10"].get<long long>() == 0);
    CHECK(j["counts"]["n11"].get<long long>() == 2);
    CHECK(j["freq"]["p11"].get<double>() == rep.stats.p11);
    CHECK(j["tau_hat"].get<double>() == rep.tau_hat);
    CHECK(j["tau_b"].get<double>() == rep.tau_b);
    CHECK(j["tau_11_hat"].get<double>() == rep.tau_11_hat);
    CHECK(j["tau_H_hat"].get<double>() == rep.tau_H_hat);
    CHECK(j["tau_A_hat"].get<double>() == rep.tau_A_hat);
    CHECK(j["cross"]["p2_star"].get<double>() == rep.cross.p2_star);
    CHECK(j["flags"]["tau_b_degenerate"].get<bool>() == false);
    CHECK(j["flags"]["tau11_fallback"].get<bool>() == false);
    CHECK(j["bounds"]["kind"].get<std::string>() == "estimated_tauA");
    CHECK(j["bounds"]["lower"].get<double>() == b.lower);
    CHECK(j["bounds"]["upper"].get<double>() == b.upper);

    SUBCASE("text output carries the same numbers") {
        const CliResult t = run_cli("estimate --input cli_est.csv");
        CHECK(t.code == 0);
        CHECK(contains(t.output, "group_counts: n00=1 n10=0 n01=1 n11=2"));
        CHECK(contains(t.output, "warnings: none"));
    }
}

TEST_CASE("estimate round-trips a sampled csv through the command line") {
    const ZipMargin m{0.5, 3.0};
    RngStream rng = derive_stream(2024, 9, 0, 0);
    const PairedSample s = sample_pairs(m, m, FrechetCopula{0.4}, 100, rng);

    std::ostringstream csv;
    csv << "x,y\n";
    for (const auto& [x, y] : s.pairs) csv << x << "," << y << "\n";
    write_file("cli_roundtrip.csv", csv.str());

    const EstimateReport rep = estimate(s);
    const BoundsReport b = estimate_bounds(s);
    REQUIRE_FALSE(rep.tau_b_degenerate);
    REQUIRE_FALSE(rep.tau11_fallback);
    REQUIRE_FALSE(b.denuit_fallback);

    const CliResult r = run_cli("estimate --input cli_roundtrip.csv --header --json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.output);
    CHECK(j["n"].get<long long>() == 100);
    CHECK(j["freq"]["p00"].get<double>() == rep.stats.p00);
    CHECK(j["freq"]["p01"].get<double>() == rep.stats.p01);
    CHECK(j["freq"]["p10"].get<double>() == rep.stats.p10);
    CHECK(j["freq"]["p11"].get<double>() == rep.stats.p11);
    CHECK(j["tau_hat"].get<double>() == rep.tau_hat);
    CHECK(j["tau_b"].get<double>() == rep.tau_b);
    CHECK(j["tau_11_hat"].get<double>() == rep.tau_11_hat);
    CHECK(j["tau_H_hat"].get<double>() == rep.tau_H_hat);
    CHECK(j["tau_A_hat"].get<double>() == rep.tau_A_hat);
    CHECK(j["cross"]["p1_star"].get<double>() == rep.cross.p1_star);
    CHECK(j["cross"]["p1_dagger"].get<double>() == rep.cross.p1_dagger);
    CHECK(j["cross"]["p2_star"].get<double>() == rep.cross.p2_star);
    CHECK(j["cross"]["p2_dagger"].get<double>() == rep.cross.p2_dagger);
    CHECK(j["bounds"]["lower"].get<double>() == b.lower);
    CHECK(j["bounds"]["upper"].get<double>() == b.upper);
    CHECK(j["bounds"]["tie_prob_upper"].get<double>() == *b.pU_t11);

    SUBCASE("the header line is not optional silently") {
        const CliResult noflag = run_cli("estimate --input cli_roundtrip.csv --json");
        CHECK(noflag.code == 3);
        CHECK(contains(noflag.output, "data row 1"));
    }
}

TEST_CASE("estimate input validation") {
    write_file("cli_bad.csv", "-1,2\n3,4\n");
    const CliResult neg = run_cli("estimate --input cli_bad.csv");
    CHECK(neg.code == 3);
    CHECK(contains(neg.output, "data row 1"));

    write_file("cli_empty.csv", "");
    const CliResult empty = run_cli("estimate --input cli_empty.csv");
    CHECK(empty.code == 3);
    CHECK(contains(empty.output, "insufficient data"));

    const CliResult missing = run_cli("estimate --input cli_does_not_exist.csv");
    CHECK(missing.code == 3);
    CHECK(contains(missing.output, "cannot open"));

    write_file("cli_threecol.csv", "1,2,3\n");
    const CliResult cols = run_cli("estimate --input cli_threecol.csv");
    CHECK(cols.code == 3);
}

TEST_CASE("bounds subcommand sources") {
    SUBCASE("exactly one source") {
        CHECK(run_cli("bounds").code == 2);
        CHECK(run_cli("bounds --zip-x 0.8,2 --zip-y 0.8,2 --input cli_est.csv").code == 2);
        CHECK(run_cli("bounds --zip-x 0.8,2").code == 2);
        CHECK(run_cli("bounds --p1 0.5").code == 2);
        CHECK(run_cli("bounds --p1 0.3 --p2 0.3 --exact").code == 2);
        CHECK(run_cli("bounds --input cli_est.csv --exact").code == 2);
        CHECK(run_cli("bounds --zip-x 0.8,2 --zip-y 0.8,2 --exact --denuit").code == 2);
    }

    SUBCASE("zero probabilities only") {
        const CliResult r = run_cli("bounds --p1 0 --p2 0 --denuit --json");
        REQUIRE(r.code == 0);
        const json j = json::parse(r.output);
        CHECK(j["lower"].get<double>() == -1.0);
        CHECK(j["upper"].get<double>() == 1.0);
        CHECK(j["kind"].get<std::string>() == "denuit_tauH");
    }

    SUBCASE("parametric margins give the sharp bounds by default") {
        const BoundsReport want = exact_tauA_bounds({0.8, 2.0}, {0.8, 2.0}, 1e-10);
        for (const char* extra : {"", " --exact"}) {
            const CliResult r =
                run_cli(std::string("bounds --zip-x 0.8,2 --zip-y 0.8,2 --json") + extra);
            REQUIRE(r.code == 0);
            const json j = json::parse(r.output);
            CHECK(j["kind"].get<std::string>() == "exact_tauA");
            CHECK(j["lower"].get<double>() == want.lower);
            CHECK(j["upper"].get<double>() == want.upper);
            CHECK(j["s_tilde"].get<long long>() == *want.s_tilde);
            CHECK(j["tie_prob_upper"].get<double>() == *want.pU_t11);
            CHECK(j["tie_prob_lower"].get<double>() == *want.pL_t11);
        }
        const CliResult d = run_cli("bounds --zip-x 0.8,2 --zip-y 0.8,2 --denuit --json");
        REQUIRE(d.code == 0);
        const double p = zero_probability(ZipMargin{0.8, 2.0});
        const BoundsReport dz = denuit_bounds(p, p);
        const json jd = json::parse(d.output);
        CHECK(jd["lower"].get<double>() == dz.lower);
        CHECK(jd["upper"].get<double>() == dz.upper);
    }

    SUBCASE("sample plug-in") {
        write_file("cli_bounds.csv", "0,0\n1,0\n1,1\n2,3\n");
        PairedSample s;
        s.pairs = {{0, 0}, {1, 0}, {1, 1}, {2, 3}};
        const BoundsReport want = estimate_bounds(s);
        const CliResult r = run_cli("bounds --input cli_bounds.csv --json");
        REQUIRE(r.code == 0);
        const json j = json::parse(r.output);
        CHECK(j["kind"].get<std::string>() == "estimated_tauA");
        CHECK(j["lower"].get<double>() == want.lower);
        CHECK(j["upper"].get<double>() == want.upper);
        CHECK(j["s_tilde"].get<long long>() == 1);
        CHECK(j["s_tilde_prime"].get<long long>() == 1);
        CHECK(j["t_tilde_prime"].get<long long>() == 3);
        CHECK(j["denuit_fallback"].get<bool>() == false);
    }

    SUBCASE("invalid margin text") {
        CHECK(run_cli("bounds --zip-x 0.8 --zip-y 0.8,2").code == 3);
        CHECK(run_cli("bounds --zip-x 0.8,2,9 --zip-y 0.8,2").code == 3);
        CHECK(run_cli("bounds --zip-x 1.5,2 --zip-y 0.8,2").code == 3);
        CHECK(run_cli("bounds --p1 -0.2 --p2 0.5").code == 3);
    }
}

TEST_CASE("true-tau subcommand") {
    const ZipMargin fx{0.8, 2.0};
    const ZipMargin fy{0.8, 8.0};
    const JointPmfGrid g =
        joint_pmf_grid(fx, fy, frechet_joint_cdf(fx, fy, FrechetCopula{0.5}), 1e-10);
    const double want = true_tau(g);

    const CliResult r = run_cli("true-tau --zip-x 0.8,2 --zip-y 0.8,8 --rho 0.5 --json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.output);
    CHECK(j["true_tau"].get<double>() == want);
    CHECK(j["truncation_order"].get<long long>() == g.truncation_order);
    CHECK(j["tail_mass"].get<double>() <= 1e-10);

    const CliResult indep = run_cli("true-tau --zip-x 0.5,3 --zip-y 0.5,3 --rho 0 --json");
    REQUIRE(indep.code == 0);
    CHECK(std::abs(json::parse(indep.output)["true_tau"].get<double>()) <= 1e-12);

    CHECK(run_cli("true-tau --zip-x 0.8,2 --zip-y 0.8,2 --rho 1.5").code == 3);
    CHECK(run_cli("true-tau --zip-x 1.5,2 --zip-y 0.8,2 --rho 0.5").code == 3);
    CHECK(run_cli("true-tau --zip-x 0.8,2 --rho 0.5").code == 2); // missing required
}

TEST_CASE("simulate subcommand") {
    const std::string cfg =
        "seed = 7\nreps = 2\nn = 60\nthreads = 1\ntables = table1\n"
        "dump_reps = true\nout_dir = cli_sim_out\n";
    write_file("cli_sim.cfg", cfg);

    const CliResult first = run_cli("simulate --config cli_sim.cfg");
    REQUIRE(first.code == 0);
    CHECK(contains(first.output, "wrote"));
    const std::string table = read_file("cli_sim_out/table1.csv");
    const std::string reps = read_file("cli_sim_out/table1_reps.csv");
    CHECK(std::count(table.begin(), table.end(), '\n') == 19); // header + 18 scenarios
    CHECK(std::count(reps.begin(), reps.end(), '\n') == 37);   // header + 18 * 2 reps

    const CliResult second = run_cli("simulate --config cli_sim.cfg");
    REQUIRE(second.code == 0);
    CHECK(read_file("cli_sim_out/table1.csv") == table); // byte-identical rerun
    CHECK(read_file("cli_sim_out/table1_reps.csv") == reps);

    SUBCASE("scenario sections run as a custom set") {
        write_file("cli_sim_custom.cfg",
                   "seed = 11\nout_dir = cli_sim_out\n[scenario pilot]\n"
                   "pi_f = 0.8\npi_g = 0.8\nlambda_f = 2\nlambda_g = 2\n"
                   "rho = 0.5\nn = 40\nreps = 3\n");
        const CliResult r = run_cli("simulate --config cli_sim_custom.cfg");
        REQUIRE(r.code == 0);
        const std::string custom = read_file("cli_sim_out/custom.csv");
        CHECK(std::count(custom.begin(), custom.end(), '\n') == 2);
    }

    SUBCASE("config errors") {
        write_file("cli_sim_unknown.cfg", "seed = 7\ntables = table1\nrepz = 5\n");
        const CliResult unknown = run_cli("simulate --config cli_sim_unknown.cfg");
        CHECK(unknown.code == 3);
        CHECK(contains(unknown.output, "unknown configuration keys"));
        CHECK(contains(unknown.output, "repz"));

        write_file("cli_sim_empty.cfg", "seed = 7\n");
        const CliResult nothing = run_cli("simulate --config cli_sim_empty.cfg");
        CHECK(nothing.code == 3);
        CHECK(contains(nothing.output, "nothing to run"));

        write_file("cli_sim_missing.cfg",
                   "tables = table1\n[scenario broken]\npi_f = 0.5\n");
        const CliResult missing = run_cli("simulate --config cli_sim_missing.cfg");
        CHECK(missing.code == 3);

        CHECK(run_cli("simulate --config cli_no_such.cfg").code == 3);
    }
}

TEST_CASE("shipped configuration files parse") {
    const SimConfig smoke = parse_sim_config(std::string(ZITAU_CONFIG_DIR) + "/smoke.cfg");
    CHECK(smoke.seed == 42);
    CHECK(smoke.reps == 2);
    CHECK(smoke.n == 150);
    CHECK(smoke.threads == 1);
    CHECK(smoke.table1);
    CHECK(smoke.table2);
    CHECK(smoke.dump_reps);

    const SimConfig study = parse_sim_config(std::string(ZITAU_CONFIG_DIR) + "/study.cfg");
    CHECK(study.seed == 20240814);
    CHECK(study.reps == 1000);
    CHECK(study.n == 150);
    CHECK(study.threads == 0);
    CHECK(study.table1);
    CHECK(study.table2);
    CHECK_FALSE(study.dump_reps);
}

TEST_CASE("top-level command dispatch") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);        // a subcommand is required
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("estimate").code == 2); // --input is required
}
