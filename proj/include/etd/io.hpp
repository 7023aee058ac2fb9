#pragma once

// File formats.
//
//   diagram   CSV  dim,birth,death        one row per point
//   matrix    CSV  ,label_1,...,label_n   then label_i,v_i1,...,v_in
//   labels    CSV  id,label
//   curves    CSV  metric,dimension,index,value
//   bench     CSV  metric,M,k,p,angles,median_ms,trials
//   gen spec  JSON {"classes": [{class_id, n_samples, n_points, center_lifetimes,
//                                birth_center, noise, seed}, ...]}

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "etd/ml_harness.hpp"
#include "etd/pd_core.hpp"

namespace etd::io {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

ExtendedDiagram parse_diagram(std::istream& in);
ExtendedDiagram read_diagram(const std::filesystem::path& path);

/// Rows sorted by (dim, birth, death); a multiplicity-m point gives m rows.
void format_diagram(std::ostream& out, const ExtendedDiagram& diagram);
void write_diagram(const ExtendedDiagram& diagram, const std::filesystem::path& path);

void format_matrix(std::ostream& out, const DistanceMatrix& matrix);
DistanceMatrix parse_matrix(std::istream& in);
DistanceMatrix read_matrix(const std::filesystem::path& path);

/// id -> label, in file order.
std::vector<std::pair<std::string, std::string>> read_labels(const std::filesystem::path& path);
void write_labels(const std::vector<std::pair<std::string, std::string>>& labels, const std::filesystem::path& path);

void format_curves(std::ostream& out, const std::vector<TopologicalCurve>& curves);
void format_bench(std::ostream& out, const std::vector<BenchRow>& rows);

std::vector<SyntheticClassSpec> parse_synthetic_spec(const std::string& json_text);
std::vector<SyntheticClassSpec> read_synthetic_spec(const std::filesystem::path& path);

/// Writes via a sibling temporary file renamed into place, so a failed
/// write never leaves a partial file at path.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

} // namespace etd::io
