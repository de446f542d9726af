#pragma once

#include <string>
#include <vector>

#include "zitau/montecarlo.hpp"
#include "zitau/sample.hpp"

namespace zitau {

// Reads a two-column CSV of non-negative integers. With header = true the
// first line is skipped. Malformed rows (wrong arity, non-integer, negative)
// raise std::invalid_argument naming the 1-based data row.
PairedSample read_paired_csv(const std::string& path, bool header);

// Simulation outputs. All doubles are written with enough digits to
// round-trip exactly, so identical results give byte-identical files.
void write_results_csv(const std::string& path, const std::vector<SimResult>& results);
void write_reps_csv(const std::string& path,
                    const std::vector<SimResult>& results,
                    const std::vector<std::vector<RepRecord>>& reps);

// %.17g rendering shared by the writers and the CLI.
std::string format_double(double v);

} // namespace zitau
