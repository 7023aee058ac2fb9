#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "etd/projections.hpp"
#include "etd/vectorizations.hpp"
#include "oracles.hpp"

using namespace etd;
using doctest::Approx;
constexpr double pi = std::numbers::pi;
const double half_sqrt2 = std::sqrt(2.0) / 2;

namespace {

std::vector<double> as_vec(const SortedVector& v) { return {v.values().data(), v.values().data() + v.size()}; }

} // namespace

TEST_CASE("project examples") {
    CHECK(project(Point{1, 3}, 0.0) == 1.0);
    CHECK(project(Point{0, 0}, 1.234) == 0.0);
    CHECK(project(Point{1, 3}, 3 * pi / 4) == Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("project_to_diagonal") {
    CHECK(project_to_diagonal(PersistenceDiagram(0, {{1, 3}})) == PersistenceDiagram(0, {{2, 2}}));
    CHECK(project_to_diagonal(PersistenceDiagram(0)).empty());
    CHECK(project_to_diagonal(PersistenceDiagram(1, {{0, 2}, {0, 2}})) == PersistenceDiagram(1, {{1, 1}, {1, 1}}));

    std::mt19937_64 rng(3);
    const auto d = oracle::random_pd(rng, 40);
    const auto projected = project_to_diagonal(d);
    for (const auto& x : projected.points()) CHECK(x.birth == x.death);
}

TEST_CASE("lifetime_vector") {
    const auto l = lifetime_vector(ExtendedDiagram({{}, {{0, 1}, {0, 3}}}));
    REQUIRE(l.size() == 2);
    CHECK(l[0].size() == 0);
    CHECK(as_vec(l[1]) == std::vector<double>{3, 1});
    CHECK(as_vec(lifetime_vector(ExtendedDiagram({{{2, 2}}}))[0]) == std::vector<double>{0});
}

TEST_CASE("projection_vector") {
    const ExtendedDiagram d({{}, {{0, 1}, {0, 3}}});
    CHECK(as_vec(projection_vector(d, pi / 2)[1]) == std::vector<double>{3, 1});
    CHECK(projection_vector(ExtendedDiagram{}, 0.3)[0].size() == 0);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto e = oracle::random_ed(rng, 15, 2);
        const auto v = projection_vector(e, 3 * pi / 4);
        const auto l = lifetime_vector(e);
        for (std::size_t j = 0; j < v.size(); ++j)
            for (Eigen::Index i = 0; i < v[j].size(); ++i)
                CHECK(std::abs(v[j][i] - half_sqrt2 * l[j][i]) <= 1e-12);
    }
}

TEST_CASE("pad_to_common_length") {
    const auto [a, b] = pad_to_common_length(SortedVector({3, 1}), SortedVector({2}));
    CHECK(as_vec(a) == std::vector<double>{3, 1});
    CHECK(as_vec(b) == std::vector<double>{2, 0});
    const auto [c, d] = pad_to_common_length(SortedVector(), SortedVector());
    CHECK(c.size() == 0);
    CHECK(d.size() == 0);
    const auto [e, f] = pad_to_common_length(SortedVector({1}), SortedVector({1}));
    CHECK(as_vec(e) == std::vector<double>{1});
    CHECK(as_vec(f) == std::vector<double>{1});
    // signed input: zeros land at their sorted position
    const auto [g, h] = pad_to_common_length(SortedVector({2, -1, -3}), SortedVector({-2}));
    CHECK(as_vec(h) == std::vector<double>{0, 0, -2});
}

TEST_CASE("projection properties") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0.0, pi), scale(0.1, 10.0);
    for (int t = 0; t < 500; ++t) {
        const auto pd = oracle::random_pd(rng, 1);
        const Point x = pd.points()[0];
        const double theta = angle(rng), s = scale(rng);
        // linearity
        CHECK(project(Point{s * x.birth, s * x.death}, theta) == Approx(s * project(x, theta)).epsilon(1e-12));
        // lifetime identity at 3pi/4
        CHECK(std::abs(project(x, 3 * pi / 4) - half_sqrt2 * (x.death - x.birth)) <= 1e-12);
        // diagonal points vanish at 3pi/4
        const double m = x.midpoint();
        CHECK(std::abs(project(Point{m, m}, 3 * pi / 4)) <= 1e-12);
    }
}

TEST_CASE("quarter-angle projections reproduce the statistics collections") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        const auto pd = oracle::random_pd(rng, 25);
        const ExtendedDiagram e({std::vector<Point>(pd.points().begin(), pd.points().end())});
        auto c = ps_collections(pd);
        const std::vector<std::pair<double, std::pair<std::vector<double>*, double>>> cases{
            {0.0, {&c.births, 1.0}},
            {pi / 2, {&c.deaths, 1.0}},
            {pi / 4, {&c.midpoints, half_sqrt2}},
            {3 * pi / 4, {&c.lifetimes, std::sqrt(2.0)}}};
        for (const auto& [theta, target] : cases) {
            auto expected = *target.first;
            std::sort(expected.begin(), expected.end(), std::greater<>());
            const auto v = projection_vector(e, theta)[0];
            REQUIRE(v.size() == Eigen::Index(expected.size()));
            for (Eigen::Index i = 0; i < v.size(); ++i)
                CHECK(std::abs(target.second * v[i] - expected[std::size_t(i)]) <= 1e-12);
        }
    }
}
