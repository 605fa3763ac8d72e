#include <doctest.h>

#include <cmath>
#include <random>

#include "qcod/sets.hpp"
#include "test_util.hpp"

using namespace qcod;

TEST_CASE("sobolev ellipsoid axes") {
    const auto e = Ellipsoid::sobolev(1.0, 3);
    REQUIRE(e.dim() == 3);
    CHECK(e.axes()[0] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(e.axes()[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(e.axes()[2] == doctest::Approx(1.0).epsilon(1e-15));

    const auto big = Ellipsoid::sobolev(0.5, 100);
    CHECK(big.axes().front() == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(big.axes().back() == 1.0);

    const auto single = Ellipsoid::sobolev(1.0, 1);
    REQUIRE(single.dim() == 1);
    CHECK(single.axes()[0] == 1.0);

    CHECK_THROWS_AS(Ellipsoid::sobolev(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(Ellipsoid::sobolev(1.0, 0), std::invalid_argument);
}

TEST_CASE("sobolev axes are nondecreasing for randomized (alpha, n)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> alpha_dist(1e-3, 4.0);
    std::uniform_int_distribution<int> n_dist(1, 1000);
    for (int trial = 0; trial < 50; ++trial) {
        const auto e = Ellipsoid::sobolev(alpha_dist(rng), n_dist(rng));
        CHECK(std::is_sorted(e.axes().begin(), e.axes().end()));
        CHECK(e.axes().back() == 1.0);
    }
}

TEST_CASE("ellipsoid constructor sorts and records the permutation") {
    const Ellipsoid e({1.0, 0.25, 4.0});
    CHECK(e.axes() == std::vector<double>{0.25, 1.0, 4.0});
    CHECK(e.permutation() == std::vector<int>{1, 0, 2});
}

TEST_CASE("membership") {
    const Ellipsoid e({1.0, 4.0});
    CHECK(contains(e, {1.0, 0.0}, 0.0));
    CHECK(contains(e, {0.8, 1.2}, 1e-12)); // 0.64 + 1.44/4 = 1.0
    CHECK_FALSE(contains(e, {1.0, 0.2}, 0.0));
    CHECK_THROWS_AS(contains(e, {1.0}, 0.0), std::invalid_argument);

    const Hyperrectangle box({1.0, 1.0});
    CHECK_FALSE(contains(box, {1.1, 0.0}, 0.0));
    CHECK(contains(box, {1.0, -1.0}, 0.0));
}

TEST_CASE("degenerate hyperrectangle directions require zero coordinates") {
    const Hyperrectangle box({0.0, 2.0});
    CHECK(contains(box, {0.0, 1.5}));
    CHECK(contains(box, {1e-10, 1.5})); // within default tol
    CHECK_FALSE(contains(box, {0.1, 1.5}));
}

TEST_CASE("contains is monotone under scalar shrinkage and sign flips") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> normal(0.0, 0.4);
    std::uniform_real_distribution<double> lambda_dist(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const ConstraintSet set =
            coin(rng) ? ConstraintSet{Ellipsoid(testutil::random_axes(rng, n, -1, 1))}
                      : ConstraintSet{Hyperrectangle(std::vector<double>(n, 0.7))};
        SignalVector theta(static_cast<std::size_t>(n));
        for (double& v : theta) v = normal(rng);
        if (!contains(set, theta)) continue;

        const double lambda = lambda_dist(rng);
        SignalVector shrunk = theta;
        SignalVector flipped = theta;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            shrunk[i] *= lambda;
            if (coin(rng)) flipped[i] = -flipped[i];
        }
        CHECK(contains(set, shrunk));
        CHECK(contains(set, flipped));
    }
}

TEST_CASE("d0") {
    CHECK(d0(Ellipsoid::sobolev(0.7, 40)) == 1.0);
    CHECK(d0(Ellipsoid({0.25, 1.0})) == 1.0);
    CHECK(d0(Hyperrectangle({3.0, 4.0})) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("derotate") {
    const SignalVector x{1.0, 0.0};

    SUBCASE("identity") {
        const auto y = derotate(x, Eigen::MatrixXd::Identity(2, 2));
        CHECK(y == x);
    }
    SUBCASE("90 degree rotation") {
        Eigen::MatrixXd u(2, 2);
        u << 0.0, -1.0, 1.0, 0.0; // columns (0,1) and (-1,0)
        const auto y = derotate(x, u);
        CHECK(y[0] == doctest::Approx(0.0));
        CHECK(y[1] == doctest::Approx(-1.0));
    }
    SUBCASE("non-orthogonal input rejected") {
        Eigen::MatrixXd u(2, 2);
        u << 1.0, 0.0, 0.0, 2.0;
        CHECK_THROWS_AS(derotate(x, u), std::invalid_argument);
    }
    SUBCASE("norm preserved under random rotations") {
        std::mt19937_64 rng(31);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int trial = 0; trial < 25; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 20);
            SignalVector v(static_cast<std::size_t>(n));
            for (double& vi : v) vi = normal(rng);
            const auto u = testutil::random_orthogonal(rng, n);
            const auto w = derotate(v, u);
            CHECK(std::sqrt(testutil::norm_sq(w)) ==
                  doctest::Approx(std::sqrt(testutil::norm_sq(v))).epsilon(1e-10));
        }
    }
}
