#include <doctest.h>

#include <cmath>
#include <random>

#include "qcod/widths.hpp"
#include "test_util.hpp"

using namespace qcod;

TEST_CASE("ellipsoid width profile is sqrt(a_{n-k})") {
    const auto profile = width_profile(Ellipsoid({0.25, 1.0}));
    REQUIRE(profile.d.size() == 3);
    CHECK(profile.exact);
    CHECK(profile.d[0] == 1.0);
    CHECK(profile.d[1] == 0.5);
    CHECK(profile.d[2] == 0.0);
}

TEST_CASE("sobolev widths are (k+1)^(-alpha)") {
    const auto profile = width_profile(Ellipsoid::sobolev(1.0, 100));
    for (int k = 0; k < 100; ++k) {
        CHECK(profile.d[static_cast<std::size_t>(k)] ==
              doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
    CHECK(profile.d[100] == 0.0);
}

TEST_CASE("hyperrectangle width profile") {
    const auto profile = width_profile(Hyperrectangle({2.0, 1.0, 1.0}));
    CHECK_FALSE(profile.exact);
    CHECK(profile.d[0] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK(profile.d[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(profile.d[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(profile.d[3] == 0.0);
}

TEST_CASE("width profile is nonincreasing with d_n = 0") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 40);
        const auto profile = width_profile(Ellipsoid(testutil::random_axes(rng, n)));
        for (std::size_t k = 1; k < profile.d.size(); ++k) {
            CHECK(profile.d[k] <= profile.d[k - 1]);
        }
        CHECK(profile.d.back() == 0.0);
    }
}

TEST_CASE("brute force width oracle") {
    CHECK(brute_force_width(Ellipsoid({0.25, 1.0}), 1) == 0.5);
    CHECK(brute_force_width(Ellipsoid({0.25, 1.0}), 2) == 0.0);
    CHECK(brute_force_width(Hyperrectangle({2.0, 1.0, 1.0}), 1) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(brute_force_width(Hyperrectangle({2.0, 1.0, 1.0}), 3) == 0.0);
    CHECK_THROWS_AS(brute_force_width(Ellipsoid(std::vector<double>(21, 1.0)), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_width(Ellipsoid({1.0}), 2), std::invalid_argument);
}

TEST_CASE("width profile matches brute force on small random ellipsoids") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const Ellipsoid e(testutil::random_axes(rng, n));
        const auto profile = width_profile(ConstraintSet{e});
        for (int k = 0; k <= n; ++k) {
            CHECK(std::abs(profile.d[static_cast<std::size_t>(k)] -
                           brute_force_width(ConstraintSet{e}, k)) <= 1e-12);
        }
    }
}

TEST_CASE("hyperrectangle upper bound matches the coordinate oracle") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> c_dist(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        std::vector<double> c(static_cast<std::size_t>(n));
        for (double& ci : c) ci = c_dist(rng);
        const Hyperrectangle box(c);
        const auto profile = width_profile(ConstraintSet{box});
        for (int k = 0; k <= n; ++k) {
            CHECK(std::abs(profile.d[static_cast<std::size_t>(k)] -
                           brute_force_width(ConstraintSet{box}, k)) <= 1e-12);
        }
    }
}

TEST_CASE("projection deficiency") {
    const Ellipsoid e({0.25, 1.0});

    SUBCASE("identity projection gives zero") {
        CHECK(projection_deficiency(e, Eigen::MatrixXd::Identity(2, 2)) == 0.0);
    }
    SUBCASE("coordinate projection onto the big axis") {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
        p(1, 1) = 1.0;
        CHECK(projection_deficiency(e, p) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("zero projection gives d0") {
        CHECK(projection_deficiency(e, Eigen::MatrixXd::Zero(2, 2)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("non-projection rejected") {
        Eigen::MatrixXd p(2, 2);
        p << 0.5, 0.0, 0.0, 0.5;
        CHECK_THROWS_AS(projection_deficiency(e, p), std::invalid_argument);
    }
}

TEST_CASE("random projections never beat the coordinate width") {
    std::mt19937_64 rng(44);
    const Ellipsoid e = Ellipsoid::sobolev(1.0, 12);
    const auto profile = width_profile(ConstraintSet{e});
    for (int k : {1, 3, 5}) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto p = testutil::random_projection(rng, 12, k);
            CHECK(projection_deficiency(e, p) >=
                  profile.d[static_cast<std::size_t>(k)] - 1e-7);
        }
    }
}

TEST_CASE("testing index") {
    const auto sob1 = width_profile(Ellipsoid::sobolev(1.0, 100));
    const auto sob05 = width_profile(Ellipsoid::sobolev(0.5, 100));
    CHECK(testing_index(sob1, 0.25) == 3);
    CHECK(testing_index(sob05, 0.25) == 6);
    CHECK_FALSE(testing_index(width_profile(Ellipsoid({0.25, 1.0})), 1.5).has_value());
}

TEST_CASE("testing index minimality and max-crossing equivalence") {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> log_sigma(-2.0, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 60);
        const auto profile = width_profile(Ellipsoid(testutil::random_axes(rng, n, -3, 1)));
        const double sigma = std::pow(10.0, log_sigma(rng));
        const auto j = testing_index(profile, sigma);
        if (!j) continue;
        // Minimality, as in the paper's crossing condition.
        CHECK(profile.d[static_cast<std::size_t>(*j - 1)] >
              std::pow(static_cast<double>(*j), 0.25) * sigma);
        // Equivalence with max{j : d_{j-1} > j^(1/4) sigma}.
        int max_crossing = 0;
        for (int k = 1; k <= n; ++k) {
            if (profile.d[static_cast<std::size_t>(k - 1)] >
                std::pow(static_cast<double>(k), 0.25) * sigma) {
                max_crossing = k;
            }
        }
        CHECK(*j == max_crossing);
    }
}

TEST_CASE("estimation index") {
    CHECK(estimation_index(width_profile(Ellipsoid::sobolev(1.0, 100)), 0.25) == 2);
    CHECK(estimation_index(width_profile(Ellipsoid({0.25, 1.0})), 1.5) == 0);
    CHECK(estimation_index(width_profile(Ellipsoid({0.25, 1.0})), 0.1) == 2);
}

TEST_CASE("rate report") {
    SUBCASE("sobolev alpha=1") {
        const auto report = rate_report(Ellipsoid::sobolev(1.0, 100), 0.25);
        REQUIRE(report.testing_index.has_value());
        CHECK(*report.testing_index == 3);
        CHECK(report.testing_radius ==
              doctest::Approx(std::pow(3.0, 0.25) * 0.25).epsilon(1e-12));
        CHECK(report.estimation_index == 2);
        CHECK(report.estimation_risk == doctest::Approx(0.1875).epsilon(1e-12));
    }
    SUBCASE("untestable corner case") {
        const auto report = rate_report(Ellipsoid({0.25, 1.0}), 2.0);
        CHECK_FALSE(report.testing_index.has_value());
        CHECK(report.estimation_risk == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("testing always at least as easy as estimation") {
        std::mt19937_64 rng(46);
        std::uniform_real_distribution<double> log_sigma(-3.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 199);
            const auto set = Ellipsoid(testutil::random_axes(rng, n));
            const auto report = rate_report(ConstraintSet{set},
                                            std::pow(10.0, log_sigma(rng)));
            if (!report.testing_index) continue;
            const long j = *report.testing_index;
            const long k = report.estimation_index;
            CHECK((j + 1) <= (k + 1) * (k + 1));
        }
    }
}
