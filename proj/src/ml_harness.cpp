#include "etd/ml_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

namespace etd {

namespace {

std::string format_number(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

std::string angle_summary(const DistanceConfig& config) {
    if (config.per_dimension_angles.empty()) return std::to_string(config.angles.size());
    std::string s;
    for (std::size_t j = 0; j < config.per_dimension_angles.size(); ++j) {
        if (j) s += '/';
        s += std::to_string(config.per_dimension_angles[j].size());
    }
    return s;
}

} // namespace

std::string metric_tag(const DistanceConfig& config) {
    std::string tag = variant_name(config.variant);
    tag += "[p=" + format_number(config.p);
    switch (config.variant) {
    case Variant::etd:
    case Variant::cosine_etd: tag += ";A=" + angle_summary(config); break;
    case Variant::swd: tag += ";n=" + std::to_string(config.n_slices); break;
    default: break;
    }
    if (config.variant == Variant::etd && config.zero_birth_dim0) tag += ";d0";
    if (!config.weights.empty()) {
        tag += ";w=";
        for (std::size_t j = 0; j < config.weights.size(); ++j) {
            if (j) tag += '/';
            tag += format_number(config.weights[j]);
        }
    }
    return tag + "]";
}

DistanceMatrix distance_matrix(const std::vector<ExtendedDiagram>& diagrams, const DistanceConfig& config,
                               std::vector<std::string> labels, unsigned threads) {
    if (diagrams.empty()) throw InvalidArgument("distance_matrix: no diagrams");
    const Eigen::Index n = Eigen::Index(diagrams.size());
    if (labels.empty())
        for (Eigen::Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    if (labels.size() != diagrams.size()) throw InvalidArgument("distance_matrix: label count mismatch");

    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    DistanceMatrix out{std::move(labels), Eigen::MatrixXd::Zero(n, n), metric_tag(config)};
    std::vector<std::exception_ptr> errors(pairs.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t t = next++; t < pairs.size(); t = next++) {
            const auto [i, j] = pairs[t];
            try {
                out.values(i, j) = distance(diagrams[std::size_t(i)], diagrams[std::size_t(j)], config).value;
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(pairs.size(), 1)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    for (std::size_t t = 0; t < pairs.size(); ++t) {
        if (!errors[t]) continue;
        const std::string where =
            "pair (" + out.labels[std::size_t(pairs[t].first)] + ", " + out.labels[std::size_t(pairs[t].second)] + "): ";
        try {
            std::rethrow_exception(errors[t]);
        } catch (const ResourceLimit& e) {
            throw ResourceLimit(where + e.what());
        } catch (const InvalidArgument& e) {
            throw InvalidArgument(where + e.what());
        } catch (const DataError& e) {
            throw DataError(where + e.what());
        }
    }

    out.values.triangularView<Eigen::StrictlyLower>() = out.values.transpose().triangularView<Eigen::StrictlyLower>();
    return out;
}

const char* weighting_name(Weighting w) { return w == Weighting::uniform ? "uniform" : "distance"; }

std::vector<int> knn_classify(const DistanceMatrix& matrix, const std::vector<Eigen::Index>& train_rows,
                              const std::vector<int>& train_labels, const std::vector<Eigen::Index>& query_rows,
                              int k, Weighting weighting) {
    if (train_rows.size() != train_labels.size()) throw InvalidArgument("knn: train rows and labels differ in length");
    if (k < 1) throw InvalidArgument("knn: k must be at least 1");
    if (std::size_t(k) > train_rows.size()) throw InvalidArgument("knn: k exceeds the number of training rows");
    const Eigen::Index n = matrix.size();
    for (auto r : train_rows)
        if (r < 0 || r >= n) throw InvalidArgument("knn: training row out of range");

    std::vector<int> predicted;
    predicted.reserve(query_rows.size());
    std::vector<std::pair<double, std::size_t>> ranked(train_rows.size());
    for (Eigen::Index q : query_rows) {
        if (q < 0 || q >= n) throw InvalidArgument("knn: query row out of range");
        for (std::size_t t = 0; t < train_rows.size(); ++t) ranked[t] = {matrix.values(q, train_rows[t]), t};
        std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());

        std::map<int, double> votes;
        const bool zero_hit = weighting == Weighting::inverse_distance && ranked.front().first == 0.0;
        for (int i = 0; i < k; ++i) {
            const auto [d, t] = ranked[std::size_t(i)];
            double w = 1.0;
            if (zero_hit) {
                if (d != 0.0) continue;
            } else if (weighting == Weighting::inverse_distance) {
                w = 1.0 / d;
            }
            votes[train_labels[t]] += w;
        }
        int best = votes.begin()->first;
        double best_votes = votes.begin()->second;
        for (const auto& [label, v] : votes)
            if (v > best_votes) {
                best = label;
                best_votes = v;
            }
        predicted.push_back(best);
    }
    return predicted;
}

SearchResult randomized_search(const DistanceMatrix& matrix, const std::vector<int>& labels,
                               const KnnConfig& config) {
    if (labels.size() != std::size_t(matrix.size())) throw InvalidArgument("search: label count mismatch");
    if (config.k_candidates.empty() || config.weightings.empty())
        throw InvalidArgument("search: empty candidate set");
    for (int k : config.k_candidates)
        if (k < 1) throw InvalidArgument("search: k candidates must be >= 1");
    if (config.n_search_trials < 1) throw InvalidArgument("search: at least one trial required");
    if (!(config.validation_fraction > 0.0 && config.validation_fraction < 1.0))
        throw InvalidArgument("search: validation fraction must lie in (0, 1)");

    std::map<int, std::vector<Eigen::Index>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(Eigen::Index(i));
    if (by_class.size() < 2) throw InvalidArgument("search: at least two classes required");

    struct Candidate {
        int k;
        Weighting w;
        double total = 0.0;
        int runs = 0;
    };
    std::vector<Candidate> candidates;
    for (int k : config.k_candidates)
        for (Weighting w : config.weightings) candidates.push_back({k, w});

    std::mt19937_64 rng(config.seed);
    for (int trial = 0; trial < config.n_search_trials; ++trial) {
        std::vector<Eigen::Index> train, val;
        for (auto& [label, rows] : by_class) {
            std::vector<Eigen::Index> shuffled = rows;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            std::size_t n_val = 0;
            if (shuffled.size() >= 2)
                n_val = std::clamp<std::size_t>(
                    std::size_t(std::lround(config.validation_fraction * double(shuffled.size()))), 1,
                    shuffled.size() - 1);
            val.insert(val.end(), shuffled.begin(), shuffled.begin() + std::ptrdiff_t(n_val));
            train.insert(train.end(), shuffled.begin() + std::ptrdiff_t(n_val), shuffled.end());
        }
        std::sort(train.begin(), train.end());
        std::sort(val.begin(), val.end());
        if (val.empty()) throw InvalidArgument("search: classes too small for a validation split");
        std::vector<int> train_labels;
        for (auto r : train) train_labels.push_back(labels[std::size_t(r)]);

        for (auto& c : candidates) {
            if (std::size_t(c.k) > train.size()) continue;
            const auto pred = knn_classify(matrix, train, train_labels, val, c.k, c.w);
            std::size_t correct = 0;
            for (std::size_t i = 0; i < val.size(); ++i) correct += pred[i] == labels[std::size_t(val[i])];
            c.total += double(correct) / double(val.size());
            ++c.runs;
        }
    }

    const Candidate* best = nullptr;
    for (const auto& c : candidates) {
        if (c.runs == 0) continue;
        if (!best || c.total / c.runs > best->total / best->runs) best = &c;
    }
    if (!best) throw InvalidArgument("search: every k candidate exceeds the training set");
    return {best->k, best->w, best->total / double(best->runs)};
}

std::vector<TopologicalCurve> topological_curves(const std::vector<ExtendedDiagram>& sequence,
                                                 const std::vector<NamedMetric>& metrics, double wd_p,
                                                 std::size_t wd_size_guard) {
    if (sequence.size() < 2) throw InvalidArgument("curves: need at least two diagrams");
    std::size_t dims = 0;
    for (const auto& d : sequence) dims = std::max(dims, d.num_dimensions());

    DistanceConfig wd;
    wd.variant = Variant::exact_wd;
    wd.p = wd_p;
    wd.wd_size_guard = wd_size_guard;
    std::vector<DistanceResult> normalizer;
    for (const auto& d : sequence) normalizer.push_back(exact_wasserstein(d, sequence.front(), wd));

    const auto term = [](const DistanceResult& r, std::size_t j) {
        return j < r.per_dimension.size() ? r.per_dimension[j] : 0.0;
    };

    std::vector<TopologicalCurve> curves;
    for (const auto& m : metrics) {
        TopologicalCurve c{m.name, std::vector<std::vector<double>>(dims, std::vector<double>(sequence.size(), 0.0))};
        for (std::size_t i = 1; i < sequence.size(); ++i) {
            const auto r = m.metric(sequence[i], sequence.front());
            for (std::size_t j = 0; j < dims; ++j) {
                const double num = term(r, j);
                const double den = term(normalizer[i], j);
                double v = 0.0;
                if (num == 0.0 && den == 0.0) v = 0.0;
                else if (den == 0.0) v = std::numeric_limits<double>::infinity();
                else if (num == 0.0) v = -std::numeric_limits<double>::infinity();
                else v = std::log(num / den);
                c.values[j][i] = v;
            }
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

std::vector<TopologicalCurve> topological_curves(const std::vector<ExtendedDiagram>& sequence,
                                                 const std::vector<DistanceConfig>& metrics,
                                                 std::size_t wd_size_guard) {
    std::vector<TopologicalCurve> out;
    for (const auto& config : metrics) {
        NamedMetric m{metric_tag(config),
                      [config](const ExtendedDiagram& a, const ExtendedDiagram& b) { return distance(a, b, config); }};
        auto curves = topological_curves(sequence, std::vector<NamedMetric>{std::move(m)}, config.p, wd_size_guard);
        out.push_back(std::move(curves.front()));
    }
    return out;
}

} // namespace etd
