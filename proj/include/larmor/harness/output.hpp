#pragma once

#include <iosfwd>
#include <string>

#include "larmor/harness/sweep.hpp"

namespace larmor::harness {

/// Fixed CSV header of sweep tables.
const std::string& sweep_csv_header();

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

json row_to_json(const SweepRow& r);
SweepRow row_from_json(const json& j);

json result_to_json(const SweepResult& r);
SweepResult result_from_json(const json& j);

/// Metadata document: config, hash, version, tolerances, timings, notes.
json run_metadata(const RunConfig& cfg, const SweepResult& r);

/// Writes <dir>/<name>.csv and <dir>/<name>.json, each via temp file + rename.
void emit_outputs(const RunConfig& cfg, const SweepResult& r, const std::string& dir);

/// Atomic file write (temp file in the same directory, then rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// %.17g
std::string format_double(double x);

}  // namespace larmor::harness
