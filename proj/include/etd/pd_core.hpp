#pragma once

// Persistence diagram domain types.
//
// A PersistenceDiagram is a multiset of (birth, death) points for one
// homology dimension; an ExtendedDiagram is the dense family of diagrams for
// dimensions 0..k. Types are templated on the scalar like Eigen's dense
// types; the aliases at the bottom fix Scalar = double.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etd/errors.hpp"

namespace etd {

template <typename Scalar>
struct PersistencePoint {
    Scalar birth{};
    Scalar death{};

    Scalar lifetime() const { return death - birth; }
    Scalar midpoint() const { return (birth + death) / Scalar(2); }

    friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
    friend auto operator<=>(const PersistencePoint&, const PersistencePoint&) = default;
};

template <typename Scalar>
class BasicPersistenceDiagram {
public:
    using Point = PersistencePoint<Scalar>;

    BasicPersistenceDiagram() = default;
    explicit BasicPersistenceDiagram(int dimension, std::vector<Point> points = {})
        : dimension_(dimension), points_(std::move(points)) {
        if (dimension < 0) throw InvalidArgument("homology dimension must be non-negative");
    }

    int dimension() const { return dimension_; }
    std::span<const Point> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Points in lexicographic (birth, death) order. Multiplicities are kept.
    std::vector<Point> sorted_points() const {
        std::vector<Point> out(points_);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const BasicPersistenceDiagram& a, const BasicPersistenceDiagram& b) {
        return a.dimension_ == b.dimension_ && a.points_.size() == b.points_.size() &&
               a.sorted_points() == b.sorted_points();
    }

private:
    int dimension_ = 0;
    std::vector<Point> points_;
};

template <typename Scalar>
class BasicExtendedDiagram {
public:
    using Diagram = BasicPersistenceDiagram<Scalar>;
    using Point = PersistencePoint<Scalar>;

    /// A single empty diagram in dimension 0 (k = 0).
    BasicExtendedDiagram() : diagrams_{Diagram(0)} {}

    /// points_by_dim[j] holds the points of dimension j.
    explicit BasicExtendedDiagram(std::vector<std::vector<Point>> points_by_dim) {
        if (points_by_dim.empty()) points_by_dim.emplace_back();
        diagrams_.reserve(points_by_dim.size());
        for (std::size_t j = 0; j < points_by_dim.size(); ++j)
            diagrams_.emplace_back(static_cast<int>(j), std::move(points_by_dim[j]));
    }

    /// Builds from (dimension, point) pairs in any order; duplicates accumulate.
    static BasicExtendedDiagram from_pairs(std::span<const std::pair<int, Point>> pairs) {
        int top = 0;
        for (const auto& [dim, pt] : pairs) {
            if (dim < 0) throw InvalidArgument("homology dimension must be non-negative");
            top = std::max(top, dim);
        }
        std::vector<std::vector<Point>> by_dim(static_cast<std::size_t>(top) + 1);
        for (const auto& [dim, pt] : pairs) by_dim[static_cast<std::size_t>(dim)].push_back(pt);
        return BasicExtendedDiagram(std::move(by_dim));
    }

    int top_dimension() const { return static_cast<int>(diagrams_.size()) - 1; }
    std::size_t num_dimensions() const { return diagrams_.size(); }

    const Diagram& operator[](std::size_t j) const { return diagrams_[j]; }
    std::span<const Diagram> diagrams() const { return diagrams_; }

    /// Dimension j, or an empty diagram when j exceeds top_dimension().
    Diagram at_or_empty(std::size_t j) const {
        return j < diagrams_.size() ? diagrams_[j] : Diagram(static_cast<int>(j));
    }

    std::size_t total_points() const {
        std::size_t n = 0;
        for (const auto& d : diagrams_) n += d.size();
        return n;
    }

    /// Trailing empty dimensions are not significant.
    friend bool operator==(const BasicExtendedDiagram& a, const BasicExtendedDiagram& b) {
        const std::size_t n = std::max(a.num_dimensions(), b.num_dimensions());
        for (std::size_t j = 0; j < n; ++j)
            if (!(a.at_or_empty(j) == b.at_or_empty(j))) return false;
        return true;
    }

private:
    std::vector<Diagram> diagrams_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    int dimension = 0;
    std::size_t index = 0;
    std::string reason;
};

template <typename Scalar>
std::vector<Violation> validate(const BasicExtendedDiagram<Scalar>& diagram) {
    std::vector<Violation> report;
    for (const auto& pd : diagram.diagrams()) {
        const auto pts = pd.points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& pt = pts[i];
            if (!std::isfinite(pt.birth) || !std::isfinite(pt.death))
                report.push_back({pd.dimension(), i, "non-finite coordinate"});
            else if (pt.birth > pt.death)
                report.push_back({pd.dimension(), i, "birth > death"});
        }
    }
    return report;
}

/// Throws DataError describing the first violation, if any.
template <typename Scalar>
void require_valid(const BasicExtendedDiagram<Scalar>& diagram) {
    const auto report = validate(diagram);
    if (!report.empty()) {
        const auto& v = report.front();
        throw DataError("dimension " + std::to_string(v.dimension) + ", point " +
                        std::to_string(v.index) + ": " + v.reason);
    }
}

// ---------------------------------------------------------------------------
// Angle sets

/// Projection directions in [0, pi), distinct, stored in ascending order.
template <typename Scalar>
class BasicAngleSet {
public:
    explicit BasicAngleSet(std::vector<Scalar> angles) : angles_(std::move(angles)) {
        if (angles_.empty()) throw InvalidArgument("angle set must be non-empty");
        for (Scalar a : angles_)
            if (!(a >= Scalar(0) && a < std::numbers::pi_v<Scalar>))
                throw InvalidArgument("angles must lie in [0, pi)");
        std::sort(angles_.begin(), angles_.end());
        if (std::adjacent_find(angles_.begin(), angles_.end()) != angles_.end())
            throw InvalidArgument("angle set contains duplicates");
    }

    std::span<const Scalar> angles() const { return angles_; }
    std::size_t size() const { return angles_.size(); }
    bool contains(Scalar a) const { return std::binary_search(angles_.begin(), angles_.end(), a); }

    friend bool operator==(const BasicAngleSet&, const BasicAngleSet&) = default;

private:
    std::vector<Scalar> angles_;
};

/// The evenly spaced set {3pi/4 - i pi/n (mod pi) : i < n}.
///
/// Each angle is pi * m / (4n) with the integer m = 3n - 4i reduced into
/// [0, 4n); the fraction is cancelled before the multiply so that the four
/// quarter angles come out bit-identical to pi/4, pi/2, 3pi/4 and 0.
template <typename Scalar = double>
BasicAngleSet<Scalar> make_angle_set(std::size_t n) {
    if (n == 0) throw InvalidArgument("angle count must be at least 1");
    const long long den = 4 * static_cast<long long>(n);
    std::vector<Scalar> angles;
    angles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long m = 3 * static_cast<long long>(n) - 4 * static_cast<long long>(i);
        if (m < 0) m += den;
        const long long g = std::gcd(m, den);
        const long long num = m / g;
        const long long d = den / g;
        angles.push_back(num == 0 ? Scalar(0)
                                  : std::numbers::pi_v<Scalar> * Scalar(num) / Scalar(d));
    }
    return BasicAngleSet<Scalar>(std::move(angles));
}

// ---------------------------------------------------------------------------
// Distance configuration

enum class Variant { etd, basic_etd, swd, exact_wd, ps, cosine_etd };

/// How the zero-birth dimension-0 term is normalized: the literal #A factor,
/// or (#A)^(1/p), which agrees with the generic formula when every angle
/// yields the same one-dimensional distance.
enum class D0Scaling { angle_count, angle_count_root };

template <typename Scalar>
struct BasicDistanceConfig {
    Variant variant = Variant::etd;
    Scalar p = Scalar(2);
    BasicAngleSet<Scalar> angles = make_angle_set<Scalar>(1);
    /// When non-empty, dimension j uses per_dimension_angles[j] instead of angles.
    std::vector<BasicAngleSet<Scalar>> per_dimension_angles;
    /// w_0..w_k; empty means all ones.
    std::vector<Scalar> weights;
    bool zero_birth_dim0 = false;
    D0Scaling d0_scaling = D0Scaling::angle_count;
    /// Slice count for the sliced Wasserstein variant.
    std::size_t n_slices = 50;
    /// Largest |P1| + |P2| accepted by the exact Wasserstein solver.
    std::size_t wd_size_guard = 2000;

    void check() const {
        if (!(p >= Scalar(1)) || !std::isfinite(p)) throw InvalidArgument("p must be finite and >= 1");
        for (Scalar w : weights)
            if (!(w > Scalar(0)) || !std::isfinite(w)) throw InvalidArgument("weights must be positive");
        if (n_slices == 0) throw InvalidArgument("slice count must be at least 1");
    }

    const BasicAngleSet<Scalar>& angles_for(std::size_t dim) const {
        if (per_dimension_angles.empty()) return angles;
        if (dim >= per_dimension_angles.size())
            throw InvalidArgument("no angle set given for dimension " + std::to_string(dim));
        return per_dimension_angles[dim];
    }

    Scalar weight(std::size_t dim) const {
        if (weights.empty()) return Scalar(1);
        if (dim >= weights.size())
            throw InvalidArgument("weight count does not cover dimension " + std::to_string(dim));
        return weights[dim];
    }
};

inline const char* variant_name(Variant v) {
    switch (v) {
    case Variant::etd: return "etd";
    case Variant::basic_etd: return "basic-etd";
    case Variant::swd: return "swd";
    case Variant::exact_wd: return "wd";
    case Variant::ps: return "ps";
    case Variant::cosine_etd: return "cosine-etd";
    }
    return "?";
}

using Point = PersistencePoint<double>;
using PersistenceDiagram = BasicPersistenceDiagram<double>;
using ExtendedDiagram = BasicExtendedDiagram<double>;
using AngleSet = BasicAngleSet<double>;
using DistanceConfig = BasicDistanceConfig<double>;

} // namespace etd
