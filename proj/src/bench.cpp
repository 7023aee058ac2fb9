#include <algorithm>
#include <chrono>
#include <limits>

#include "etd/ml_harness.hpp"

namespace etd {

namespace {

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + std::ptrdiff_t(mid), v.end());
    if (v.size() % 2) return v[mid];
    const double upper = v[mid];
    const double lower = *std::max_element(v.begin(), v.begin() + std::ptrdiff_t(mid));
    return 0.5 * (lower + upper);
}

std::size_t angle_count(const DistanceConfig& config) {
    switch (config.variant) {
    case Variant::etd:
    case Variant::cosine_etd: return config.angles.size();
    case Variant::basic_etd: return 1;
    case Variant::swd: return config.n_slices;
    default: return 0;
    }
}

} // namespace

std::vector<BenchRow> bench_metrics(const std::vector<std::size_t>& sizes, const std::vector<DistanceConfig>& configs,
                                    int repetitions, std::uint64_t seed, int k) {
    if (repetitions < 1) throw InvalidArgument("bench: repetitions must be >= 1");
    std::vector<BenchRow> rows;
    for (std::size_t M : sizes) {
        const auto a = random_diagram(M / 2, k, seed);
        const auto b = random_diagram(M - M / 2, k, seed + 1);
        for (const auto& config : configs) {
            BenchRow row{metric_tag(config), M, k, config.p, angle_count(config),
                         std::numeric_limits<double>::quiet_NaN(), 0};
            try {
                volatile double sink = distance(a, b, config).value;
                std::vector<double> ms;
                for (int r = 0; r < repetitions; ++r) {
                    const auto t0 = std::chrono::steady_clock::now();
                    sink = distance(a, b, config).value;
                    const auto t1 = std::chrono::steady_clock::now();
                    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                }
                (void)sink;
                row.median_ms = median(std::move(ms));
                row.trials = repetitions;
            } catch (const ResourceLimit&) {
                // over the exact-solver guard: reported as NaN with zero trials
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace etd
