#pragma once

// Persistence Statistics: summary statistics of the birth, death, midpoint
// and lifetime collections of each dimension, plus the off-diagonal point
// count and the persistent entropy of lifetimes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "etd/pd_core.hpp"
#include "etd/projections.hpp"

namespace etd {

inline constexpr std::array<double, 5> kQuantileLevels{0.10, 0.25, 0.50, 0.75, 0.90};

template <typename Scalar>
struct PSCollections {
    std::vector<Scalar> births;
    std::vector<Scalar> deaths;
    std::vector<Scalar> midpoints;
    std::vector<Scalar> lifetimes;
};

template <typename Scalar>
PSCollections<Scalar> ps_collections(const BasicPersistenceDiagram<Scalar>& diagram) {
    PSCollections<Scalar> c;
    for (auto* v : {&c.births, &c.deaths, &c.midpoints, &c.lifetimes}) v->reserve(diagram.size());
    for (const auto& x : diagram.points()) {
        c.births.push_back(x.birth);
        c.deaths.push_back(x.death);
        c.midpoints.push_back(x.midpoint());
        c.lifetimes.push_back(x.lifetime());
    }
    return c;
}

template <typename Scalar>
struct CollectionStats {
    Scalar mean{};
    Scalar variance{};
    std::array<Scalar, kQuantileLevels.size()> quantiles{};
};

/// Statistics block of one dimension; 30 scalars when flattened.
template <typename Scalar>
struct PSBlock {
    static constexpr Eigen::Index kLength = 4 * (2 + Eigen::Index(kQuantileLevels.size())) + 2;

    // births, deaths, midpoints, lifetimes
    std::array<CollectionStats<Scalar>, 4> collections{};
    Scalar n_offdiagonal{};
    Scalar entropy{};

    VectorX<Scalar> flatten() const {
        VectorX<Scalar> out(kLength);
        Eigen::Index i = 0;
        for (const auto& c : collections) {
            out[i++] = c.mean;
            out[i++] = c.variance;
            for (Scalar q : c.quantiles) out[i++] = q;
        }
        out[i++] = n_offdiagonal;
        out[i++] = entropy;
        return out;
    }
};

template <typename Scalar>
struct PSVector {
    std::vector<PSBlock<Scalar>> blocks;

    /// Blocks for dimensions 0..k concatenated in order.
    VectorX<Scalar> flatten() const {
        VectorX<Scalar> out(Eigen::Index(blocks.size()) * PSBlock<Scalar>::kLength);
        for (std::size_t j = 0; j < blocks.size(); ++j)
            out.segment(Eigen::Index(j) * PSBlock<Scalar>::kLength, PSBlock<Scalar>::kLength) =
                blocks[j].flatten();
        return out;
    }
};

namespace detail {

// Linear interpolation between order statistics at h = (n - 1) q.
template <typename Scalar>
Scalar quantile_sorted(const std::vector<Scalar>& ascending, double level) {
    const double h = double(ascending.size() - 1) * level;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, ascending.size() - 1);
    const Scalar frac = Scalar(h - double(lo));
    return ascending[lo] + frac * (ascending[hi] - ascending[lo]);
}

template <typename Scalar>
CollectionStats<Scalar> collection_stats(std::vector<Scalar> values) {
    CollectionStats<Scalar> s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    const Scalar n = Scalar(values.size());
    Scalar sum(0);
    for (Scalar v : values) sum += v;
    s.mean = sum / n;
    Scalar ss(0);
    for (Scalar v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / n;
    for (std::size_t q = 0; q < kQuantileLevels.size(); ++q)
        s.quantiles[q] = quantile_sorted(values, kQuantileLevels[q]);
    return s;
}

} // namespace detail

/// Shannon entropy (natural log) of the lifetime shares l_i / sum(l);
/// zero-lifetime points are dropped. Zero for diagrams without positive lifetimes.
template <typename Scalar>
Scalar persistent_entropy(const BasicPersistenceDiagram<Scalar>& diagram) {
    std::vector<Scalar> l;
    for (const auto& x : diagram.points())
        if (x.lifetime() > Scalar(0)) l.push_back(x.lifetime());
    if (l.empty()) return Scalar(0);
    std::sort(l.begin(), l.end());
    Scalar total(0);
    for (Scalar v : l) total += v;
    Scalar e(0);
    for (Scalar v : l) {
        const Scalar share = v / total;
        e -= share * std::log(share);
    }
    return std::max(e, Scalar(0));
}

template <typename Scalar>
PSBlock<Scalar> ps_block(const BasicPersistenceDiagram<Scalar>& diagram) {
    PSBlock<Scalar> b;
    auto c = ps_collections(diagram);
    b.collections[0] = detail::collection_stats(std::move(c.births));
    b.collections[1] = detail::collection_stats(std::move(c.deaths));
    b.collections[2] = detail::collection_stats(std::move(c.midpoints));
    b.collections[3] = detail::collection_stats(std::move(c.lifetimes));
    std::size_t off = 0;
    for (const auto& x : diagram.points())
        if (x.death > x.birth) ++off;
    b.n_offdiagonal = Scalar(off);
    b.entropy = persistent_entropy(diagram);
    return b;
}

template <typename Scalar>
PSVector<Scalar> ps_vector(const BasicExtendedDiagram<Scalar>& diagram) {
    PSVector<Scalar> v;
    v.blocks.reserve(diagram.num_dimensions());
    for (const auto& pd : diagram.diagrams()) v.blocks.push_back(ps_block(pd));
    return v;
}

} // namespace etd
