#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zitau/montecarlo.hpp"

namespace zitau {

// Simulation campaign description parsed from a flat key = value file.
//
//   # global keys, before any section
//   seed = 20240814
//   reps = 1000          # default 1000
//   n = 150              # default 150
//   threads = 1          # 0 = hardware count
//   tables = table1, table2
//   dump_reps = false    # also write per-replication CSVs
//   out_dir = .
//
//   [scenario my-extra]  # optional additional scenarios -> custom.csv
//   pi_f = 0.5
//   pi_g = 0.5
//   lambda_f = 3
//   lambda_g = 3
//   rho = 0.4
//   n = 300              # optional per-scenario overrides
//   reps = 500
//
// Unknown keys are rejected with an error listing them.
struct SimConfig {
    std::uint64_t seed = 0;
    long long reps = 1000;
    long long n = 150;
    int threads = 1;
    bool table1 = false;
    bool table2 = false;
    bool dump_reps = false;
    std::string out_dir = ".";
    std::vector<std::pair<std::string, SimScenario>> extra; // (name, scenario)
};

SimConfig parse_sim_config(const std::string& path);

} // namespace zitau
