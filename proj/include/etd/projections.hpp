#pragma once

// One-dimensional reductions of persistence diagrams: directional
// projection, orthogonal projection onto the diagonal, and the sorted
// lifetime / projection vectors the distances are built from.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "etd/pd_core.hpp"

namespace etd {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A vector of reals kept in non-increasing order.
template <typename Scalar>
class BasicSortedVector {
public:
    BasicSortedVector() = default;

    explicit BasicSortedVector(std::vector<Scalar> values) {
        std::sort(values.begin(), values.end(), std::greater<>());
        values_ = Eigen::Map<const VectorX<Scalar>>(values.data(), Eigen::Index(values.size()));
    }

    const VectorX<Scalar>& values() const { return values_; }
    Eigen::Index size() const { return values_.size(); }
    Scalar operator[](Eigen::Index i) const { return values_[i]; }

    friend bool operator==(const BasicSortedVector& a, const BasicSortedVector& b) {
        return a.values_.size() == b.values_.size() && a.values_ == b.values_;
    }

private:
    VectorX<Scalar> values_;
};

using SortedVector = BasicSortedVector<double>;

template <typename Scalar>
Scalar project(const PersistencePoint<Scalar>& x, Scalar theta) {
    return x.birth * std::cos(theta) + x.death * std::sin(theta);
}

namespace detail {

template <typename Scalar>
struct Direction {
    Scalar c, s;
    explicit Direction(Scalar theta) : c(std::cos(theta)), s(std::sin(theta)) {}
    Scalar operator()(const PersistencePoint<Scalar>& x) const { return x.birth * c + x.death * s; }
};

// pi_theta(P u diag(Q)) as an unsorted buffer.
template <typename Scalar>
std::vector<Scalar> project_balanced(const BasicPersistenceDiagram<Scalar>& own,
                                     const BasicPersistenceDiagram<Scalar>& other,
                                     const Direction<Scalar>& dir) {
    std::vector<Scalar> out;
    out.reserve(own.size() + other.size());
    for (const auto& x : own.points()) out.push_back(dir(x));
    for (const auto& x : other.points()) {
        const Scalar m = x.midpoint();
        out.push_back(dir(PersistencePoint<Scalar>{m, m}));
    }
    return out;
}

} // namespace detail

template <typename Scalar>
BasicPersistenceDiagram<Scalar> project_to_diagonal(const BasicPersistenceDiagram<Scalar>& diagram) {
    std::vector<PersistencePoint<Scalar>> out;
    out.reserve(diagram.size());
    for (const auto& x : diagram.points()) {
        const Scalar m = x.midpoint();
        out.push_back({m, m});
    }
    return BasicPersistenceDiagram<Scalar>(diagram.dimension(), std::move(out));
}

/// Sorted lifetimes d - b, one vector per dimension.
template <typename Scalar>
std::vector<BasicSortedVector<Scalar>> lifetime_vector(const BasicExtendedDiagram<Scalar>& diagram) {
    std::vector<BasicSortedVector<Scalar>> out;
    out.reserve(diagram.num_dimensions());
    for (const auto& pd : diagram.diagrams()) {
        std::vector<Scalar> v;
        v.reserve(pd.size());
        for (const auto& x : pd.points()) v.push_back(x.lifetime());
        out.emplace_back(std::move(v));
    }
    return out;
}

/// Sorted projections onto direction theta, one vector per dimension.
template <typename Scalar>
std::vector<BasicSortedVector<Scalar>> projection_vector(const BasicExtendedDiagram<Scalar>& diagram,
                                                         Scalar theta) {
    const detail::Direction<Scalar> dir(theta);
    std::vector<BasicSortedVector<Scalar>> out;
    out.reserve(diagram.num_dimensions());
    for (const auto& pd : diagram.diagrams()) {
        std::vector<Scalar> v;
        v.reserve(pd.size());
        for (const auto& x : pd.points()) v.push_back(dir(x));
        out.emplace_back(std::move(v));
    }
    return out;
}

/// Extends the shorter vector with zeros up to the common length. Zeros go to
/// their sorted position, so the result stays non-increasing for signed input.
template <typename Scalar>
std::pair<BasicSortedVector<Scalar>, BasicSortedVector<Scalar>>
pad_to_common_length(const BasicSortedVector<Scalar>& a, const BasicSortedVector<Scalar>& b) {
    const auto pad = [](const BasicSortedVector<Scalar>& v, Eigen::Index n) {
        std::vector<Scalar> out(v.values().data(), v.values().data() + v.size());
        out.resize(static_cast<std::size_t>(n), Scalar(0));
        return BasicSortedVector<Scalar>(std::move(out));
    };
    const Eigen::Index n = std::max(a.size(), b.size());
    return {a.size() == n ? a : pad(a, n), b.size() == n ? b : pad(b, n)};
}

} // namespace etd
