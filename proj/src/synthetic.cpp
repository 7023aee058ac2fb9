#include <algorithm>
#include <random>

#include "etd/ml_harness.hpp"

namespace etd {

void SyntheticClassSpec::check() const {
    if (center_lifetimes.size() != n_points.size())
        throw InvalidArgument("synthetic spec: center_lifetimes and n_points differ in length");
    if (n_points.empty()) throw InvalidArgument("synthetic spec: at least one dimension required");
    if (!(noise >= 0.0)) throw InvalidArgument("synthetic spec: noise scale must be >= 0");
    if (!(birth_center >= 0.0)) throw InvalidArgument("synthetic spec: birth_center must be >= 0");
    for (double l : center_lifetimes)
        if (!(l >= 0.0)) throw InvalidArgument("synthetic spec: center lifetimes must be >= 0");
}

ExtendedDiagram class_template(const SyntheticClassSpec& spec) {
    spec.check();
    std::vector<std::vector<Point>> by_dim(spec.n_points.size());
    for (std::size_t j = 0; j < spec.n_points.size(); ++j) {
        const double n = double(spec.n_points[j]);
        for (std::size_t i = 0; i < spec.n_points[j]; ++i) {
            const double spread = 1.0 + double(i) / n;
            const double birth = spec.birth_center * spread;
            by_dim[j].push_back({birth, birth + spec.center_lifetimes[j] * spread});
        }
    }
    return ExtendedDiagram(std::move(by_dim));
}

LabeledDataset generate_synthetic_dataset(const std::vector<SyntheticClassSpec>& specs) {
    LabeledDataset out;
    for (const auto& spec : specs) {
        const auto tmpl = class_template(spec);
        std::mt19937_64 rng(spec.seed);
        std::normal_distribution<double> gauss(0.0, spec.noise > 0.0 ? spec.noise : 1.0);
        const auto jitter = [&] { return spec.noise > 0.0 ? gauss(rng) : 0.0; };

        for (std::size_t s = 0; s < spec.n_samples; ++s) {
            std::vector<std::vector<Point>> by_dim(tmpl.num_dimensions());
            for (std::size_t j = 0; j < tmpl.num_dimensions(); ++j) {
                for (const auto& x : tmpl[j].points()) {
                    const double birth = std::max(0.0, x.birth + jitter());
                    const double life = std::max(0.0, x.lifetime() + jitter());
                    by_dim[j].push_back({birth, birth + life});
                }
            }
            out.diagrams.emplace_back(std::move(by_dim));
            out.labels.push_back(spec.class_id);
        }
    }
    return out;
}

ExtendedDiagram random_diagram(std::size_t n, int k, std::uint64_t seed) {
    if (k < 0) throw InvalidArgument("random_diagram: k must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<std::vector<Point>> by_dim(std::size_t(k) + 1);
    for (auto& pts : by_dim) {
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            double a = uniform(rng), b = uniform(rng);
            if (a > b) std::swap(a, b);
            pts.push_back({a, b});
        }
    }
    return ExtendedDiagram(std::move(by_dim));
}

} // namespace etd
