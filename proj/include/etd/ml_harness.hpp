#pragma once

// Experiment harness: pairwise distance matrices, kNN over precomputed
// distances with randomized hyperparameter search, topological curves,
// synthetic labeled diagrams and a timing table.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "etd/distances.hpp"
#include "etd/pd_core.hpp"

namespace etd {

struct DistanceMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;
    std::string metric_tag;

    Eigen::Index size() const { return values.rows(); }
};

/// Short description of a configuration, e.g. "etd[p=2;A=4]"; never contains commas.
std::string metric_tag(const DistanceConfig& config);

/// Upper triangle evaluated pairwise (optionally on several threads), then
/// mirrored. Each cell depends only on its pair, so the result does not
/// depend on the thread count. Labels default to the row index.
DistanceMatrix distance_matrix(const std::vector<ExtendedDiagram>& diagrams, const DistanceConfig& config,
                               std::vector<std::string> labels = {}, unsigned threads = 0);

enum class Weighting { uniform, inverse_distance };

const char* weighting_name(Weighting w);

/// Predicts a class id for each query row from the k nearest training rows.
///
/// Vote weights are 1 (uniform) or 1/d (inverse_distance). Under inverse
/// weighting, neighbors at distance exactly 0 take over: the majority label
/// among them wins. Equal vote totals go to the lowest class id; equal
/// distances are ranked by training-row position.
std::vector<int> knn_classify(const DistanceMatrix& matrix, const std::vector<Eigen::Index>& train_rows,
                              const std::vector<int>& train_labels, const std::vector<Eigen::Index>& query_rows,
                              int k, Weighting weighting);

struct KnnConfig {
    std::vector<int> k_candidates{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<Weighting> weightings{Weighting::uniform, Weighting::inverse_distance};
    int n_search_trials = 20;
    std::uint64_t seed = 0;
    double validation_fraction = 0.2;
};

struct SearchResult {
    int k = 0;
    Weighting weighting = Weighting::uniform;
    double accuracy = 0.0;
};

/// Repeated stratified train/validation splits; returns the candidate with
/// the best mean validation accuracy (first candidate wins ties).
SearchResult randomized_search(const DistanceMatrix& matrix, const std::vector<int>& labels,
                               const KnnConfig& config);

/// One curve per metric: values[j][i] = log(dist_j(P_i, P_0) / WD_j(P_i, P_0)).
struct TopologicalCurve {
    std::string metric;
    std::vector<std::vector<double>> values;
};

using MetricFunction = std::function<DistanceResult(const ExtendedDiagram&, const ExtendedDiagram&)>;

struct NamedMetric {
    std::string name;
    MetricFunction metric;
};

/// Curves against exact W_p. Entries are 0 where both distances vanish and
/// +/-infinity where exactly one does.
std::vector<TopologicalCurve> topological_curves(const std::vector<ExtendedDiagram>& sequence,
                                                 const std::vector<DistanceConfig>& metrics,
                                                 std::size_t wd_size_guard = kDefaultWassersteinGuard);

/// As above with caller-supplied metrics; wd_p is the exponent of the normalizer.
std::vector<TopologicalCurve> topological_curves(const std::vector<ExtendedDiagram>& sequence,
                                                 const std::vector<NamedMetric>& metrics, double wd_p,
                                                 std::size_t wd_size_guard = kDefaultWassersteinGuard);

// ---------------------------------------------------------------------------
// Synthetic data

struct SyntheticClassSpec {
    int class_id = 0;
    std::size_t n_samples = 10;
    /// Points per homology dimension; its length fixes k + 1.
    std::vector<std::size_t> n_points{8};
    /// Template lifetime level per dimension (same length as n_points).
    std::vector<double> center_lifetimes{1.0};
    double birth_center = 0.5;
    double noise = 0.05;
    std::uint64_t seed = 0;

    void check() const;
};

struct LabeledDataset {
    std::vector<ExtendedDiagram> diagrams;
    std::vector<int> labels;
};

/// The noise-free diagram of a class. Point i of dimension j sits at
/// birth = birth_center * (1 + i / n_j), lifetime = center_lifetimes[j] * (1 + i / n_j).
ExtendedDiagram class_template(const SyntheticClassSpec& spec);

/// Template points with independent Gaussian noise on birth and lifetime,
/// clamped so that 0 <= birth <= death.
LabeledDataset generate_synthetic_dataset(const std::vector<SyntheticClassSpec>& specs);

// ---------------------------------------------------------------------------
// Benchmark

struct BenchRow {
    std::string metric;
    std::size_t M = 0;
    int k = 0;
    double p = 0.0;
    std::size_t angles = 0;
    double median_ms = 0.0;
    int trials = 0;
};

/// Median wall-clock per (size, config) over repetitions. M is the combined
/// point count of the two diagrams in each dimension (M / 2 points each);
/// k is the top homology dimension of the generated diagrams.
std::vector<BenchRow> bench_metrics(const std::vector<std::size_t>& sizes, const std::vector<DistanceConfig>& configs,
                                    int repetitions, std::uint64_t seed = 0, int k = 0);

/// Random diagram with n points in each dimension 0..k, coordinates in [0, 1].
ExtendedDiagram random_diagram(std::size_t n, int k, std::uint64_t seed);

} // namespace etd
