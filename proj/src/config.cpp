#include "zitau/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

#include "zitau/rng.hpp"

namespace zitau {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), last, out);
    return ec == std::errc{} && ptr == last;
}

[[noreturn]] void fail(const std::string& path, long long line, const std::string& what) {
    throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + what);
}

struct PendingScenario {
    std::string name;
    SimScenario sc;
    bool has_pi_f = false, has_pi_g = false;
    bool has_lambda_f = false, has_lambda_g = false;
    bool has_rho = false;
    long long line = 0;
};

} // namespace

SimConfig parse_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);

    SimConfig cfg;
    std::vector<PendingScenario> pending;
    std::vector<std::string> unknown;
    bool in_section = false;

    std::string raw;
    long long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(path, line_no, "unterminated section header");
            const std::string_view inner = trim(line.substr(1, line.size() - 2));
            if (inner.substr(0, 9) != "scenario " )
                fail(path, line_no, "unknown section (only [scenario NAME] is supported)");
            const std::string_view name = trim(inner.substr(9));
            if (name.empty()) fail(path, line_no, "scenario section needs a name");
            PendingScenario p;
            p.name = std::string(name);
            p.sc.n = cfg.n;
            p.sc.reps = cfg.reps;
            p.line = line_no;
            pending.push_back(std::move(p));
            in_section = true;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(path, line_no, "expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) fail(path, line_no, "empty key");

        const auto bad_value = [&] { fail(path, line_no, "invalid value for " + key); };

        if (in_section) {
            PendingScenario& p = pending.back();
            double d = 0;
            if (key == "pi_f" || key == "pi_g" || key == "lambda_f" || key == "lambda_g" ||
                key == "rho") {
                if (!parse_number(value, d)) bad_value();
                if (key == "pi_f") p.sc.pi_f = d, p.has_pi_f = true;
                else if (key == "pi_g") p.sc.pi_g = d, p.has_pi_g = true;
                else if (key == "lambda_f") p.sc.lambda_f = d, p.has_lambda_f = true;
                else if (key == "lambda_g") p.sc.lambda_g = d, p.has_lambda_g = true;
                else p.sc.rho = d, p.has_rho = true;
            } else if (key == "n") {
                if (!parse_number(value, p.sc.n) || p.sc.n < 2) bad_value();
            } else if (key == "reps") {
                if (!parse_number(value, p.sc.reps) || p.sc.reps < 1) bad_value();
            } else {
                unknown.push_back(key + " (line " + std::to_string(line_no) + ")");
            }
            continue;
        }

        if (key == "seed") {
            if (!parse_number(value, cfg.seed)) bad_value();
        } else if (key == "reps") {
            if (!parse_number(value, cfg.reps) || cfg.reps < 1) bad_value();
        } else if (key == "n") {
            if (!parse_number(value, cfg.n) || cfg.n < 2) bad_value();
        } else if (key == "threads") {
            if (!parse_number(value, cfg.threads) || cfg.threads < 0) bad_value();
        } else if (key == "dump_reps") {
            if (value == "true") cfg.dump_reps = true;
            else if (value == "false") cfg.dump_reps = false;
            else bad_value();
        } else if (key == "out_dir") {
            if (value.empty()) bad_value();
            cfg.out_dir = std::string(value);
        } else if (key == "tables") {
            std::string_view rest = value;
            while (!rest.empty()) {
                const std::size_t comma = rest.find(',');
                const std::string_view item =
                    trim(comma == std::string_view::npos ? rest : rest.substr(0, comma));
                rest = comma == std::string_view::npos ? std::string_view{}
                                                       : rest.substr(comma + 1);
                if (item == "table1") cfg.table1 = true;
                else if (item == "table2") cfg.table2 = true;
                else if (!item.empty())
                    fail(path, line_no, "unknown table name: " + std::string(item));
            }
        } else {
            unknown.push_back(key + " (line " + std::to_string(line_no) + ")");
        }
    }

    if (!unknown.empty()) {
        std::string msg = path + ": unknown configuration keys:";
        for (const std::string& k : unknown) msg += " " + k + ";";
        msg.pop_back();
        throw std::invalid_argument(msg);
    }

    for (std::size_t i = 0; i < pending.size(); ++i) {
        PendingScenario& p = pending[i];
        if (!(p.has_pi_f && p.has_pi_g && p.has_lambda_f && p.has_lambda_g && p.has_rho))
            fail(path, p.line,
                 "scenario " + p.name + " needs pi_f, pi_g, lambda_f, lambda_g, rho");
        p.sc.base_seed = derive_seed(cfg.seed, 3, i, 0);
        cfg.extra.emplace_back(std::move(p.name), p.sc);
    }
    return cfg;
}

} // namespace zitau
