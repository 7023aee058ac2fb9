#pragma once

// Distances between persistence diagrams.
//
//  - wasserstein_1d       l_p distance of equal-length sorted vectors
//  - etd                  projection-set pseudodistance ETD_A (with weights,
//                         per-dimension angle sets, zero-birth D0 term)
//  - basic_etd            lifetime-vector form of ETD with A = {3pi/4}
//  - sliced_wasserstein   equally spaced Riemann sum of sliced W_p
//  - exact_wasserstein    W_p with l_inf ground metric via assignment
//  - ps_distance          l_p distance of Persistence Statistics vectors
//  - cosine_etd           |<V1, V2>| summed over angles and dimensions
//
// All diagram-level distances combine dimensions as
// (sum_j w_j D_j^p)^(1/p), except cosine_etd which sums w_j D_j.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "etd/assignment.hpp"
#include "etd/pd_core.hpp"
#include "etd/projections.hpp"
#include "etd/vectorizations.hpp"

namespace etd {

template <typename Scalar>
struct BasicDistanceResult {
    Scalar value{};
    /// D_j for j = 0..k.
    std::vector<Scalar> per_dimension;
    std::chrono::nanoseconds elapsed{};
};

using DistanceResult = BasicDistanceResult<double>;

namespace detail {

template <typename Scalar>
Scalar abs_pow(Scalar x, Scalar p) {
    x = std::abs(x);
    if (p == Scalar(1)) return x;
    if (p == Scalar(2)) return x * x;
    return std::pow(x, p);
}

template <typename Scalar>
Scalar root(Scalar x, Scalar p) {
    if (p == Scalar(1)) return x;
    if (p == Scalar(2)) return std::sqrt(x);
    return std::pow(x, Scalar(1) / p);
}

// sum_i |a_i - b_i|^p over equal-length sorted buffers.
template <typename Scalar>
Scalar sorted_cost(const std::vector<Scalar>& a, const std::vector<Scalar>& b, Scalar p) {
    Scalar s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += abs_pow(a[i] - b[i], p);
    return s;
}

template <typename Scalar>
void sort_desc(std::vector<Scalar>& v) {
    std::sort(v.begin(), v.end(), std::greater<>());
}

// Sorted pi_theta(P1 u diag P2) and pi_theta(P2 u diag P1).
template <typename Scalar>
std::pair<std::vector<Scalar>, std::vector<Scalar>>
balanced_projections(const BasicPersistenceDiagram<Scalar>& p1, const BasicPersistenceDiagram<Scalar>& p2,
                     const Direction<Scalar>& dir) {
    auto s1 = project_balanced(p1, p2, dir);
    auto s2 = project_balanced(p2, p1, dir);
    sort_desc(s1);
    sort_desc(s2);
    return {std::move(s1), std::move(s2)};
}

// sum over theta in A of W_p(...)^p for one dimension.
template <typename Scalar>
Scalar angle_sum(const BasicPersistenceDiagram<Scalar>& p1, const BasicPersistenceDiagram<Scalar>& p2,
                 const BasicAngleSet<Scalar>& angles, Scalar p) {
    if (p1.empty() && p2.empty()) return Scalar(0);
    Scalar s(0);
    for (Scalar theta : angles.angles()) {
        const auto [a, b] = balanced_projections(p1, p2, Direction<Scalar>(theta));
        s += sorted_cost(a, b, p);
    }
    return s;
}

// Death coordinates balanced by diagonal midpoints.
template <typename Scalar>
Scalar death_only_wasserstein(const BasicPersistenceDiagram<Scalar>& p1,
                              const BasicPersistenceDiagram<Scalar>& p2, Scalar p) {
    const auto collect = [](const auto& own, const auto& other) {
        std::vector<Scalar> v;
        v.reserve(own.size() + other.size());
        for (const auto& x : own.points()) v.push_back(x.death);
        for (const auto& x : other.points()) v.push_back(x.midpoint());
        sort_desc(v);
        return v;
    };
    return root(sorted_cost(collect(p1, p2), collect(p2, p1), p), p);
}

template <typename Scalar>
Scalar combine(const std::vector<Scalar>& per_dimension, const BasicDistanceConfig<Scalar>& config) {
    Scalar s(0);
    for (std::size_t j = 0; j < per_dimension.size(); ++j)
        s += config.weight(j) * abs_pow(per_dimension[j], config.p);
    return root(s, config.p);
}

template <typename Scalar>
std::size_t common_dimensions(const BasicExtendedDiagram<Scalar>& a, const BasicExtendedDiagram<Scalar>& b) {
    return std::max(a.num_dimensions(), b.num_dimensions());
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::chrono::nanoseconds elapsed() const {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
    }

private:
    std::chrono::steady_clock::time_point start_;
};

template <typename Scalar>
bool canonical_less(const BasicPersistenceDiagram<Scalar>& a, const BasicPersistenceDiagram<Scalar>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.sorted_points() < b.sorted_points();
}

} // namespace detail

// ---------------------------------------------------------------------------

/// Exact one-dimensional W_p between equal-length sorted vectors.
template <typename Scalar>
Scalar wasserstein_1d(const BasicSortedVector<Scalar>& a, const BasicSortedVector<Scalar>& b, Scalar p) {
    if (a.size() != b.size()) throw InvalidArgument("wasserstein_1d: vectors differ in length");
    if (!(p >= Scalar(1))) throw InvalidArgument("p must be >= 1");
    Scalar s(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) s += detail::abs_pow(a[i] - b[i], p);
    return detail::root(s, p);
}

template <typename Scalar>
BasicDistanceResult<Scalar> etd(const BasicExtendedDiagram<Scalar>& d1, const BasicExtendedDiagram<Scalar>& d2,
                                const BasicDistanceConfig<Scalar>& config) {
    detail::Stopwatch clock;
    config.check();
    const std::size_t dims = detail::common_dimensions(d1, d2);
    BasicDistanceResult<Scalar> r;
    r.per_dimension.resize(dims);
    for (std::size_t j = 0; j < dims; ++j) {
        const auto& angles = config.angles_for(j);
        const auto p1 = d1.at_or_empty(j);
        const auto p2 = d2.at_or_empty(j);
        if (j == 0 && config.zero_birth_dim0) {
            const Scalar count = Scalar(angles.size());
            const Scalar factor = config.d0_scaling == D0Scaling::angle_count ? count
                                                                              : detail::root(count, config.p);
            r.per_dimension[j] = factor * detail::death_only_wasserstein(p1, p2, config.p);
        } else {
            r.per_dimension[j] = detail::root(detail::angle_sum(p1, p2, angles, config.p), config.p);
        }
    }
    r.value = detail::combine(r.per_dimension, config);
    r.elapsed = clock.elapsed();
    return r;
}

template <typename Scalar>
BasicDistanceResult<Scalar> basic_etd_terms(const BasicExtendedDiagram<Scalar>& d1,
                                            const BasicExtendedDiagram<Scalar>& d2,
                                            const BasicDistanceConfig<Scalar>& config) {
    detail::Stopwatch clock;
    config.check();
    const std::size_t dims = detail::common_dimensions(d1, d2);
    const auto pad_dims = [dims](std::vector<BasicSortedVector<Scalar>> v) {
        v.resize(dims);
        return v;
    };
    const auto l1 = pad_dims(lifetime_vector(d1));
    const auto l2 = pad_dims(lifetime_vector(d2));
    BasicDistanceResult<Scalar> r;
    r.per_dimension.resize(dims);
    for (std::size_t j = 0; j < dims; ++j) {
        const auto [a, b] = pad_to_common_length(l1[j], l2[j]);
        r.per_dimension[j] = wasserstein_1d(a, b, config.p);
    }
    r.value = detail::combine(r.per_dimension, config);
    r.elapsed = clock.elapsed();
    return r;
}

/// Lifetime vectors, zero-padded, compared in l_p; dimensions combined in l_p.
template <typename Scalar>
Scalar basic_etd(const BasicExtendedDiagram<Scalar>& d1, const BasicExtendedDiagram<Scalar>& d2, Scalar p) {
    BasicDistanceConfig<Scalar> config;
    config.p = p;
    return basic_etd_terms(d1, d2, config).value;
}

template <typename Scalar>
Scalar sliced_wasserstein(const BasicPersistenceDiagram<Scalar>& d1, const BasicPersistenceDiagram<Scalar>& d2,
                          Scalar p, std::size_t n_slices) {
    if (n_slices == 0) throw InvalidArgument("slice count must be at least 1");
    if (!(p >= Scalar(1))) throw InvalidArgument("p must be >= 1");
    const auto angles = make_angle_set<Scalar>(n_slices);
    return detail::root(detail::angle_sum(d1, d2, angles, p) / Scalar(n_slices), p);
}

template <typename Scalar>
BasicDistanceResult<Scalar> sliced_wasserstein(const BasicExtendedDiagram<Scalar>& d1,
                                               const BasicExtendedDiagram<Scalar>& d2,
                                               const BasicDistanceConfig<Scalar>& config) {
    detail::Stopwatch clock;
    config.check();
    const std::size_t dims = detail::common_dimensions(d1, d2);
    BasicDistanceResult<Scalar> r;
    r.per_dimension.resize(dims);
    for (std::size_t j = 0; j < dims; ++j)
        r.per_dimension[j] = sliced_wasserstein(d1.at_or_empty(j), d2.at_or_empty(j), config.p, config.n_slices);
    r.value = detail::combine(r.per_dimension, config);
    r.elapsed = clock.elapsed();
    return r;
}

inline constexpr std::size_t kDefaultWassersteinGuard = 2000;

/// W_p with l_inf ground metric, points allowed to match the diagonal.
///
/// Solves the (n1 + n2)-square augmented assignment: P1 rows against P2
/// columns, each point's own diagonal slot at ((d - b) / 2)^p, and free
/// diagonal-to-diagonal pairs. Points are sorted first so the result does
/// not depend on input order or argument order.
template <typename Scalar>
Scalar exact_wasserstein(const BasicPersistenceDiagram<Scalar>& d1, const BasicPersistenceDiagram<Scalar>& d2,
                         Scalar p, std::size_t size_guard = kDefaultWassersteinGuard) {
    if (!(p >= Scalar(1)) || !std::isfinite(p)) throw InvalidArgument("p must be finite and >= 1");
    const bool swap = detail::canonical_less(d2, d1);
    const auto a = (swap ? d2 : d1).sorted_points();
    const auto b = (swap ? d1 : d2).sorted_points();
    const Eigen::Index n1 = Eigen::Index(a.size());
    const Eigen::Index n2 = Eigen::Index(b.size());
    const Eigen::Index n = n1 + n2;
    if (std::size_t(n) > size_guard)
        throw ResourceLimit("exact Wasserstein instance of " + std::to_string(n) +
                            " points exceeds the size guard of " + std::to_string(size_guard));
    if (n == 0) return Scalar(0);

    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    const auto to_diagonal = [p](const PersistencePoint<Scalar>& x) {
        return detail::abs_pow(x.lifetime() / Scalar(2), p);
    };
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cost =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, inf);
    for (Eigen::Index i = 0; i < n1; ++i) {
        for (Eigen::Index j = 0; j < n2; ++j) {
            const Scalar linf = std::max(std::abs(a[std::size_t(i)].birth - b[std::size_t(j)].birth),
                                         std::abs(a[std::size_t(i)].death - b[std::size_t(j)].death));
            cost(i, j) = detail::abs_pow(linf, p);
        }
        cost(i, n2 + i) = to_diagonal(a[std::size_t(i)]);
    }
    for (Eigen::Index j = 0; j < n2; ++j) cost(n1 + j, j) = to_diagonal(b[std::size_t(j)]);
    cost.bottomRightCorner(n2, n1).setZero();

    const auto assignment = solve_assignment(cost);
    Scalar total(0);
    for (Eigen::Index i = 0; i < n; ++i) total += cost(i, assignment.row_to_col[std::size_t(i)]);
    return detail::root(total, p);
}

template <typename Scalar>
BasicDistanceResult<Scalar> exact_wasserstein(const BasicExtendedDiagram<Scalar>& d1,
                                              const BasicExtendedDiagram<Scalar>& d2,
                                              const BasicDistanceConfig<Scalar>& config) {
    detail::Stopwatch clock;
    config.check();
    const std::size_t dims = detail::common_dimensions(d1, d2);
    BasicDistanceResult<Scalar> r;
    r.per_dimension.resize(dims);
    for (std::size_t j = 0; j < dims; ++j)
        r.per_dimension[j] = exact_wasserstein(d1.at_or_empty(j), d2.at_or_empty(j), config.p, config.wd_size_guard);
    r.value = detail::combine(r.per_dimension, config);
    r.elapsed = clock.elapsed();
    return r;
}

template <typename Scalar>
BasicDistanceResult<Scalar> ps_distance_terms(const BasicExtendedDiagram<Scalar>& d1,
                                              const BasicExtendedDiagram<Scalar>& d2,
                                              const BasicDistanceConfig<Scalar>& config) {
    detail::Stopwatch clock;
    config.check();
    const std::size_t dims = detail::common_dimensions(d1, d2);
    BasicDistanceResult<Scalar> r;
    r.per_dimension.resize(dims);
    for (std::size_t j = 0; j < dims; ++j) {
        const VectorX<Scalar> diff = ps_block(d1.at_or_empty(j)).flatten() - ps_block(d2.at_or_empty(j)).flatten();
        Scalar s(0);
        for (Eigen::Index i = 0; i < diff.size(); ++i) s += detail::abs_pow(diff[i], config.p);
        r.per_dimension[j] = detail::root(s, config.p);
    }
    r.value = detail::combine(r.per_dimension, config);
    r.elapsed = clock.elapsed();
    return r;
}

template <typename Scalar>
Scalar ps_distance(const BasicExtendedDiagram<Scalar>& d1, const BasicExtendedDiagram<Scalar>& d2, Scalar p) {
    BasicDistanceConfig<Scalar> config;
    config.p = p;
    return ps_distance_terms(d1, d2, config).value;
}

template <typename Scalar>
BasicDistanceResult<Scalar> cosine_etd_terms(const BasicExtendedDiagram<Scalar>& d1,
                                             const BasicExtendedDiagram<Scalar>& d2,
                                             const BasicDistanceConfig<Scalar>& config) {
    detail::Stopwatch clock;
    const std::size_t dims = detail::common_dimensions(d1, d2);
    BasicDistanceResult<Scalar> r;
    r.per_dimension.resize(dims);
    for (std::size_t j = 0; j < dims; ++j) {
        const auto p1 = d1.at_or_empty(j);
        const auto p2 = d2.at_or_empty(j);
        Scalar s(0);
        for (Scalar theta : config.angles_for(j).angles()) {
            const auto [a, b] = detail::balanced_projections(p1, p2, detail::Direction<Scalar>(theta));
            Scalar dot(0);
            for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
            s += std::abs(dot);
        }
        r.per_dimension[j] = s;
    }
    Scalar total(0);
    for (std::size_t j = 0; j < dims; ++j) total += config.weight(j) * r.per_dimension[j];
    r.value = total;
    r.elapsed = clock.elapsed();
    return r;
}

template <typename Scalar>
Scalar cosine_etd(const BasicExtendedDiagram<Scalar>& d1, const BasicExtendedDiagram<Scalar>& d2,
                  const BasicAngleSet<Scalar>& angles) {
    BasicDistanceConfig<Scalar> config;
    config.angles = angles;
    return cosine_etd_terms(d1, d2, config).value;
}

/// n angles drawn uniformly from [0, pi), sorted ascending.
template <typename Scalar = double>
BasicAngleSet<Scalar> random_angle_set(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("angle count must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<Scalar> uniform(Scalar(0), std::numbers::pi_v<Scalar>);
    std::vector<Scalar> angles;
    angles.reserve(n);
    while (angles.size() < n) {
        const Scalar a = uniform(rng);
        if (a >= std::numbers::pi_v<Scalar>) continue;
        if (std::find(angles.begin(), angles.end(), a) != angles.end()) continue;
        angles.push_back(a);
    }
    return BasicAngleSet<Scalar>(std::move(angles));
}

/// Evaluates the distance selected by config.variant.
template <typename Scalar>
BasicDistanceResult<Scalar> distance(const BasicExtendedDiagram<Scalar>& d1, const BasicExtendedDiagram<Scalar>& d2,
                                     const BasicDistanceConfig<Scalar>& config) {
    switch (config.variant) {
    case Variant::etd: return etd(d1, d2, config);
    case Variant::basic_etd: return basic_etd_terms(d1, d2, config);
    case Variant::swd: return sliced_wasserstein(d1, d2, config);
    case Variant::exact_wd: return exact_wasserstein(d1, d2, config);
    case Variant::ps: return ps_distance_terms(d1, d2, config);
    case Variant::cosine_etd: return cosine_etd_terms(d1, d2, config);
    }
    throw InvalidArgument("unknown distance variant");
}

} // namespace etd
