#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "etd/distances.hpp"
#include "oracles.hpp"

using namespace etd;
using doctest::Approx;
constexpr double pi = std::numbers::pi;
const double half_sqrt2 = std::sqrt(2.0) / 2;

namespace {

DistanceConfig etd_config(double p, std::size_t n_angles) {
    DistanceConfig c;
    c.p = p;
    c.angles = make_angle_set(n_angles);
    return c;
}

ExtendedDiagram dim1(std::vector<Point> pts) { return ExtendedDiagram({{}, std::move(pts)}); }

ExtendedDiagram shuffled(const ExtendedDiagram& d, std::mt19937_64& rng) {
    std::vector<std::vector<Point>> by_dim;
    for (const auto& pd : d.diagrams()) {
        std::vector<Point> pts(pd.points().begin(), pd.points().end());
        std::shuffle(pts.begin(), pts.end(), rng);
        by_dim.push_back(std::move(pts));
    }
    return ExtendedDiagram(std::move(by_dim));
}

ExtendedDiagram scaled(const ExtendedDiagram& d, double s) {
    std::vector<std::vector<Point>> by_dim;
    for (const auto& pd : d.diagrams()) {
        std::vector<Point> pts;
        for (const auto& x : pd.points()) pts.push_back({s * x.birth, s * x.death});
        by_dim.push_back(std::move(pts));
    }
    return ExtendedDiagram(std::move(by_dim));
}

} // namespace

TEST_CASE("wasserstein_1d examples") {
    CHECK(wasserstein_1d(SortedVector({3, 1}), SortedVector({4, 2}), 1.0) == 2.0);
    CHECK(wasserstein_1d(SortedVector({5, 2, 2}), SortedVector({5, 2, 2}), 3.0) == 0.0);
    CHECK(wasserstein_1d(SortedVector({1, 0}), SortedVector({0, 0}), 2.0) == 1.0);
    CHECK_THROWS_AS(wasserstein_1d(SortedVector({1}), SortedVector({1, 2}), 2.0), InvalidArgument);
}

TEST_CASE("wasserstein_1d matches brute force over bijections") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 10);
    std::uniform_int_distribution<int> size(0, 6);
    for (int t = 0; t < 200; ++t) {
        const int n = size(rng);
        std::vector<double> a(n), b(n);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng);
        for (double p : {1.0, 2.0, 3.0}) {
            const double got = wasserstein_1d(SortedVector(a), SortedVector(b), p);
            CHECK(oracle::rel_err(got, oracle::wasserstein_1d_bruteforce(a, b, p)) <= 1e-10);
        }
    }
}

TEST_CASE("etd examples") {
    const auto c = etd_config(2.0, 1);
    CHECK(etd::etd(dim1({{0, 2}}), dim1({{0, 1}}), c).value == Approx(half_sqrt2).epsilon(1e-14));
    // {(0,2)} projects to sqrt(2), its diagonal partner (1,1) to 0
    CHECK(etd::etd(dim1({{0, 2}}), dim1({}), c).value == Approx(std::sqrt(2.0)).epsilon(1e-14));
    std::mt19937_64 rng(2);
    const auto d = oracle::random_ed(rng, 20, 2);
    CHECK(etd::etd(d, d, etd_config(2.0, 8)).value == 0.0);

    const auto r = etd::etd(dim1({{0, 2}}), dim1({{0, 1}}), c);
    REQUIRE(r.per_dimension.size() == 2);
    CHECK(r.per_dimension[0] == 0.0);
    CHECK(r.per_dimension[1] == Approx(half_sqrt2).epsilon(1e-14));
}

TEST_CASE("etd errors") {
    auto c = etd_config(2.0, 2);
    c.weights = {1.0};
    CHECK_THROWS_AS(etd::etd(dim1({{0, 1}}), dim1({}), c), InvalidArgument);
    c.weights = {};
    c.per_dimension_angles = {make_angle_set(2)};
    CHECK_THROWS_AS(etd::etd(dim1({{0, 1}}), dim1({}), c), InvalidArgument);
    CHECK_THROWS_AS(make_angle_set(0), InvalidArgument);
}

TEST_CASE("etd weights and per-dimension angle sets") {
    std::mt19937_64 rng(9);
    const auto a = oracle::random_ed(rng, 10, 2);
    const auto b = oracle::random_ed(rng, 10, 2);

    auto plain = etd_config(2.0, 4);
    const auto base = etd::etd(a, b, plain);
    auto weighted = plain;
    weighted.weights = {0.5, 2.0, 3.0};
    const auto w = etd::etd(a, b, weighted);
    double s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += weighted.weights[j] * base.per_dimension[j] * base.per_dimension[j];
    CHECK(w.value == Approx(std::sqrt(s)).epsilon(1e-13));

    auto per_dim = plain;
    per_dim.per_dimension_angles = {make_angle_set(1), make_angle_set(4), make_angle_set(16)};
    const auto pd = etd::etd(a, b, per_dim);
    for (std::size_t j = 0; j < 3; ++j) {
        const auto single = etd::etd(ExtendedDiagram({std::vector<Point>(a[j].points().begin(), a[j].points().end())}),
                                ExtendedDiagram({std::vector<Point>(b[j].points().begin(), b[j].points().end())}),
                                etd_config(2.0, per_dim.per_dimension_angles[j].size()));
        CHECK(pd.per_dimension[j] == single.value);
    }
}

TEST_CASE("etd zero-birth dimension-0 term") {
    const ExtendedDiagram a({{{0, 2}}});
    const ExtendedDiagram b({{{0, 1}}});
    auto c = etd_config(2.0, 4);
    c.zero_birth_dim0 = true;
    // deaths balanced by midpoints: [2, 0.5] vs [1, 1]
    const double w = std::sqrt(1.0 + 0.25);
    CHECK(etd::etd(a, b, c).value == Approx(4 * w).epsilon(1e-14));
    c.d0_scaling = D0Scaling::angle_count_root;
    CHECK(etd::etd(a, b, c).value == Approx(2 * w).epsilon(1e-14));
    // unequal cardinalities stay well-defined
    CHECK(etd::etd(ExtendedDiagram({{{0, 2}, {0, 3}}}), b, c).value > 0.0);
}

TEST_CASE("basic_etd examples and proportionality") {
    CHECK(basic_etd(dim1({{0, 2}}), dim1({{0, 1}}), 2.0) == 1.0);
    CHECK(basic_etd(dim1({{0, 2}}), dim1({}), 1.0) == 2.0);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto a = oracle::random_ed(rng, 12, 2);
        const auto b = oracle::random_ed(rng, 12, 2);
        CHECK(basic_etd(a, a, 2.0) == 0.0);
        for (double p : {1.0, 2.0, 3.0}) {
            const double lhs = basic_etd(a, b, p);
            const double rhs = std::sqrt(2.0) * etd::etd(a, b, etd_config(p, 1)).value;
            CHECK(oracle::rel_err(lhs, rhs) <= 1e-12);
        }
    }
}

TEST_CASE("sliced_wasserstein") {
    const PersistenceDiagram a(0, {{0, 2}});
    CHECK(sliced_wasserstein(a, a, 2.0, 16) == 0.0);
    CHECK_THROWS_AS(sliced_wasserstein(a, a, 2.0, 0), InvalidArgument);
    const PersistenceDiagram empty(0);
    const double quad = oracle::sliced_wasserstein_quadrature(a, empty, 2.0);
    CHECK(oracle::rel_err(sliced_wasserstein(a, empty, 2.0, 4096), quad) <= 1e-3);
    CHECK(quad > 0.0);
}

TEST_CASE("sliced_wasserstein equals normalized etd over A_n") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const auto a = oracle::random_pd(rng, 8);
        const auto b = oracle::random_pd(rng, 5);
        for (std::size_t n : {1, 4, 32}) {
            const ExtendedDiagram ea({std::vector<Point>(a.points().begin(), a.points().end())});
            const ExtendedDiagram eb({std::vector<Point>(b.points().begin(), b.points().end())});
            const double d = etd::etd(ea, eb, etd_config(2.0, n)).value;
            CHECK(oracle::rel_err(sliced_wasserstein(a, b, 2.0, n), d / std::sqrt(double(n))) <= 1e-12);
        }
    }
}

TEST_CASE("exact_wasserstein examples") {
    const PersistenceDiagram a(0, {{0, 2}});
    const PersistenceDiagram empty(0);
    for (double p : {1.0, 2.0, 3.5}) CHECK(exact_wasserstein(a, empty, p) == Approx(1.0).epsilon(1e-14));
    CHECK(exact_wasserstein(a, PersistenceDiagram(0, {{0, 1}}), 1.0) == 1.0);
    CHECK(exact_wasserstein(empty, empty, 2.0) == 0.0);
    std::mt19937_64 rng(5);
    const auto d = oracle::random_pd(rng, 30);
    CHECK(exact_wasserstein(d, d, 2.0) == 0.0);
}

TEST_CASE("exact_wasserstein size guard") {
    std::mt19937_64 rng(6);
    const auto a = oracle::random_pd(rng, 8);
    const auto b = oracle::random_pd(rng, 8);
    CHECK_THROWS_AS(exact_wasserstein(a, b, 2.0, 15), ResourceLimit);
    CHECK_NOTHROW(exact_wasserstein(a, b, 2.0, 16));
}

TEST_CASE("exact_wasserstein matches brute-force matching") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> size(0, 3);
    for (int t = 0; t < 100; ++t) {
        const auto a = oracle::random_pd(rng, size(rng));
        const auto b = oracle::random_pd(rng, size(rng));
        for (double p : {1.0, 2.0}) {
            const double got = exact_wasserstein(a, b, p);
            CHECK(oracle::rel_err(got, oracle::wasserstein_bruteforce(a, b, p)) <= 1e-10);
        }
    }
}

TEST_CASE("assignment solver handles forbidden entries") {
    const double inf = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd c(3, 3);
    c << 4, 1, inf, inf, 2, 0, 3, inf, 5;
    const auto a = solve_assignment(c);
    // the only finite permutations are (0,1,2)->(0,1,2) cost 11 and (1,2,0) cost 4
    CHECK(a.row_to_col == std::vector<Eigen::Index>{1, 2, 0});
    Eigen::MatrixXd infeasible(2, 2);
    infeasible << inf, inf, 1, 1;
    CHECK_THROWS_AS(solve_assignment(infeasible), InvalidArgument);
}

TEST_CASE("ps_distance") {
    std::mt19937_64 rng(8);
    const auto d = oracle::random_ed(rng, 15, 2);
    CHECK(ps_distance(d, d, 2.0) == 0.0);
    CHECK(ps_distance(dim1({{0, 1}}), dim1({{0, 2}}), 2.0) > 0.0);

    const auto a = dim1({{0, 1}, {0, 3}});
    const auto b = dim1({{0, 2}, {0, 2}});
    const auto fa = oracle::ps_features(a[1]);
    const auto fb = oracle::ps_features(b[1]);
    double s = 0;
    for (std::size_t i = 0; i < fa.size(); ++i) s += (fa[i] - fb[i]) * (fa[i] - fb[i]);
    CHECK(oracle::rel_err(ps_distance(a, b, 2.0), std::sqrt(s)) <= 1e-12);
}

TEST_CASE("cosine_etd") {
    const auto one = make_angle_set(1);
    CHECK(cosine_etd(dim1({{0, 2}}), dim1({{0, 1}}), one) == Approx(1.0).epsilon(1e-14));
    CHECK(cosine_etd(ExtendedDiagram{}, ExtendedDiagram{}, make_angle_set(4)) == 0.0);
    // theta = pi/2 reads deaths: S1 = {(0,1), (1,1)} -> [1, 1], S2 = {(1,1), (.5,.5)} -> [1, .5]
    CHECK(cosine_etd(ExtendedDiagram({{{0, 1}}}), ExtendedDiagram({{{1, 1}}}), AngleSet({pi / 2})) ==
          Approx(1.5).epsilon(1e-14));
    // theta = 0 reads births: [0, 0] against [2, 0] is orthogonal
    CHECK(cosine_etd(ExtendedDiagram({{{0, 4}}}), ExtendedDiagram({{{0, 0}}}), AngleSet({0.0})) == 0.0);
}

TEST_CASE("random_angle_set") {
    CHECK(random_angle_set(16, 42) == random_angle_set(16, 42));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = random_angle_set(1, seed);
        CHECK(a.angles()[0] >= 0.0);
        CHECK(a.angles()[0] < pi);
    }
    const auto big = random_angle_set(1000, 7);
    double mean = 0;
    for (double t : big.angles()) mean += t;
    mean /= 1000.0;
    CHECK(std::abs(mean - pi / 2) <= 0.05);
    CHECK(std::is_sorted(big.angles().begin(), big.angles().end()));
}

TEST_CASE("metric properties on random diagrams") {
    std::mt19937_64 rng(10);
    std::vector<DistanceConfig> configs;
    for (auto v : {Variant::etd, Variant::basic_etd, Variant::swd, Variant::exact_wd, Variant::ps, Variant::cosine_etd}) {
        for (double p : {1.0, 2.0}) {
            DistanceConfig c;
            c.variant = v;
            c.p = p;
            c.angles = make_angle_set(4);
            c.n_slices = 32;
            configs.push_back(c);
        }
    }
    for (int t = 0; t < 40; ++t) {
        const auto a = oracle::random_ed(rng, 8, 1);
        const auto b = oracle::random_ed(rng, 8, 1);
        for (const auto& c : configs) {
            CAPTURE(variant_name(c.variant));
            const double ab = distance(a, b, c).value;
            CHECK(ab == distance(b, a, c).value);
            CHECK(ab >= 0.0);
            CHECK(distance(a, shuffled(a, rng), c).value == distance(a, a, c).value);
            CHECK(distance(shuffled(a, rng), shuffled(b, rng), c).value == ab);
            if (c.variant != Variant::cosine_etd) CHECK(distance(a, a, c).value == 0.0);
        }
    }
}

TEST_CASE("homogeneity") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> scale(0.1, 20.0);
    for (int t = 0; t < 50; ++t) {
        const auto a = oracle::random_ed(rng, 8, 1);
        const auto b = oracle::random_ed(rng, 8, 1);
        const double s = scale(rng);
        for (auto v : {Variant::etd, Variant::basic_etd, Variant::swd, Variant::exact_wd}) {
            DistanceConfig c;
            c.variant = v;
            c.angles = make_angle_set(4);
            c.n_slices = 16;
            const double base = distance(a, b, c).value;
            CHECK(oracle::rel_err(distance(scaled(a, s), scaled(b, s), c).value, s * base) <= 1e-12);
        }
    }
}

TEST_CASE("triangle inequality") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        const auto a = oracle::random_ed(rng, 6, 1);
        const auto b = oracle::random_ed(rng, 6, 1);
        const auto c = oracle::random_ed(rng, 6, 1);
        for (auto v : {Variant::etd, Variant::swd, Variant::exact_wd}) {
            for (double p : {1.0, 2.0}) {
                DistanceConfig cfg;
                cfg.variant = v;
                cfg.p = p;
                cfg.angles = make_angle_set(4);
                cfg.n_slices = 16;
                const double ab = distance(a, b, cfg).value, bc = distance(b, c, cfg).value,
                             ac = distance(a, c, cfg).value;
                CAPTURE(variant_name(v));
                CAPTURE(p);
                CHECK(ac <= (ab + bc) * (1 + 1e-9));
            }
        }
    }
}

TEST_CASE("sliced_wasserstein converges in the slice count") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 10; ++t) {
        const auto a = oracle::random_pd(rng, 30);
        const auto b = oracle::random_pd(rng, 20);
        const double coarse = sliced_wasserstein(a, b, 2.0, 256);
        const double fine = sliced_wasserstein(a, b, 2.0, 4096);
        CHECK(std::abs(coarse - fine) / fine <= 0.01);
    }
}

TEST_CASE("matching quarter-angle projections imply matching statistics") {
    std::mt19937_64 rng(15);
    const std::vector<double> quarter{0.0, pi / 4, pi / 2, 3 * pi / 4};
    int implications = 0;
    for (int t = 0; t < 100; ++t) {
        const auto a = oracle::random_ed(rng, 6, 1, 3.0);
        // half the pairs are reorderings of the same diagram
        const auto b = t % 2 ? shuffled(a, rng) : oracle::random_ed(rng, 6, 1, 3.0);
        bool same = true;
        for (double theta : quarter) same = same && projection_vector(a, theta) == projection_vector(b, theta);
        if (!same) continue;
        ++implications;
        CHECK(ps_vector(a).flatten() == ps_vector(b).flatten());
        CHECK(etd::etd(a, b, etd_config(2.0, 4)).value == 0.0);
    }
    CHECK(implications >= 50);
}
