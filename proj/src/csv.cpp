#include "zitau/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace zitau {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_count(std::string_view field, long long& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && out >= 0;
}

} // namespace

PairedSample read_paired_csv(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);

    PairedSample s;
    std::string line;
    long long row = 0;
    bool skip_next = header;
    while (std::getline(in, line)) {
        const std::string_view full = trim(line);
        if (full.empty()) continue;
        if (skip_next) {
            skip_next = false;
            continue;
        }
        ++row;
        const std::size_t comma = full.find(',');
        long long x = 0, y = 0;
        if (comma == std::string_view::npos ||
            full.find(',', comma + 1) != std::string_view::npos ||
            !parse_count(full.substr(0, comma), x) ||
            !parse_count(full.substr(comma + 1), y)) {
            throw std::invalid_argument(path + ": data row " + std::to_string(row) +
                                        ": expected two comma-separated non-negative integers");
        }
        s.pairs.emplace_back(x, y);
    }
    return s;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_results_csv(const std::string& path, const std::vector<SimResult>& results) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << "lambda_f,lambda_g,pi_f,pi_g,rho,n,reps,base_seed,true_tau,"
           "mean_tau_H,mse100_tau_H,mean_tau_A,mse100_tau_A,mean_tau_b,mse100_tau_b,"
           "est_bound_lower_H,est_bound_upper_H,est_bound_lower_A,est_bound_upper_A,"
           "exact_bound_lower_A,exact_bound_upper_A,flagged_reps\n";
    for (const SimResult& r : results) {
        const SimScenario& s = r.scenario;
        out << format_double(s.lambda_f) << ',' << format_double(s.lambda_g) << ','
            << format_double(s.pi_f) << ',' << format_double(s.pi_g) << ','
            << format_double(s.rho) << ',' << s.n << ',' << s.reps << ',' << s.base_seed << ','
            << format_double(r.true_tau) << ','
            << format_double(r.mean_tau_H) << ',' << format_double(r.mse100_tau_H) << ','
            << format_double(r.mean_tau_A) << ',' << format_double(r.mse100_tau_A) << ','
            << format_double(r.mean_tau_b) << ',' << format_double(r.mse100_tau_b) << ','
            << format_double(r.mean_bounds_H.lower) << ',' << format_double(r.mean_bounds_H.upper)
            << ',' << format_double(r.mean_bounds_A.lower) << ','
            << format_double(r.mean_bounds_A.upper) << ','
            << format_double(r.exact_bounds_A.lower) << ','
            << format_double(r.exact_bounds_A.upper) << ',' << r.flagged_reps << '\n';
    }
    if (!out) throw std::invalid_argument("failed while writing: " + path);
}

void write_reps_csv(const std::string& path,
                    const std::vector<SimResult>& results,
                    const std::vector<std::vector<RepRecord>>& reps) {
    if (results.size() != reps.size())
        throw std::invalid_argument("write_reps_csv: results and reps sizes differ");
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << "scenario_index,lambda_f,lambda_g,pi_f,pi_g,rho,replication,"
           "tau_hat,tau_b,tau_H,tau_A,"
           "bound_lower_H,bound_upper_H,bound_lower_A,bound_upper_A,flagged\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const SimScenario& s = results[i].scenario;
        for (std::size_t k = 0; k < reps[i].size(); ++k) {
            const RepRecord& r = reps[i][k];
            out << i << ',' << format_double(s.lambda_f) << ',' << format_double(s.lambda_g)
                << ',' << format_double(s.pi_f) << ',' << format_double(s.pi_g) << ','
                << format_double(s.rho) << ',' << k << ','
                << format_double(r.tau_hat) << ',' << format_double(r.tau_b) << ','
                << format_double(r.tau_H) << ',' << format_double(r.tau_A) << ','
                << format_double(r.bounds_H.lower) << ',' << format_double(r.bounds_H.upper)
                << ',' << format_double(r.bounds_A.lower) << ','
                << format_double(r.bounds_A.upper) << ',' << (r.flagged ? 1 : 0) << '\n';
        }
    }
    if (!out) throw std::invalid_argument("failed while writing: " + path);
}

} // namespace zitau
