#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "etd/pd_core.hpp"

namespace etd::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kResource = 3 };

/// Runs one command line (args excludes the program name). Results go to
/// out, diagnostics to err prefixed with "error:".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a metric list entry such as "etd:4", "swd:256", "wd" or "ps".
/// The optional number is the angle count (etd, cosine-etd) or slice count (swd).
DistanceConfig parse_metric(const std::string& spec, double p);

/// JSON document printed by `dist`.
std::string dist_json(const DistanceConfig& config, double value, const std::vector<double>& per_dimension);

} // namespace etd::cli
