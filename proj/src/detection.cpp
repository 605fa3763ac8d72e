#include "qcod/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcod/rng.hpp"

namespace qcod {

CoordinateProjection optimal_projection(const ConstraintSet& set, int k) {
    const int n = dim(set);
    if (k < 0 || k > n) {
        throw std::invalid_argument("optimal_projection: k out of range");
    }
    CoordinateProjection p;
    p.n = n;
    p.indices.reserve(static_cast<std::size_t>(k));
    if (std::holds_alternative<Ellipsoid>(set)) {
        // Axes ascending, so the top-k block is {n-k+1, ..., n}.
        for (int i = n - k + 1; i <= n; ++i) p.indices.push_back(i);
    } else {
        const auto& c = std::get<Hyperrectangle>(set).half_widths();
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 1);
        std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
            return c[static_cast<std::size_t>(i - 1)] > c[static_cast<std::size_t>(j - 1)];
        });
        p.indices.assign(order.begin(), order.begin() + k);
        std::sort(p.indices.begin(), p.indices.end());
    }
    return p;
}

std::pair<SignalVector, SignalVector> split_sample_with_noise(
    const SignalVector& x, const SignalVector& eta) {
    if (x.size() != eta.size()) {
        throw std::invalid_argument("split_sample: dimension mismatch");
    }
    SignalVector plus(x.size());
    SignalVector minus(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        plus[i] = x[i] + eta[i];
        minus[i] = x[i] - eta[i];
    }
    return {std::move(plus), std::move(minus)};
}

std::pair<SignalVector, SignalVector> split_sample(const SignalVector& x,
                                                   double sigma,
                                                   std::mt19937_64& rng) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("split_sample: sigma must be positive");
    }
    std::normal_distribution<double> normal(0.0, sigma);
    SignalVector eta(x.size());
    for (double& e : eta) e = normal(rng);
    return split_sample_with_noise(x, eta);
}

double statistic_zprime(const SignalVector& x, const SignalVector& y,
                        const CoordinateProjection& p) {
    if (x.size() != static_cast<std::size_t>(p.n) ||
        y.size() != static_cast<std::size_t>(p.n)) {
        throw std::invalid_argument("statistic_zprime: dimension mismatch");
    }
    double sum = 0.0;
    for (int idx : p.indices) {
        sum += x[static_cast<std::size_t>(idx - 1)] * y[static_cast<std::size_t>(idx - 1)];
    }
    return sum;
}

double apply_statistic(StatisticKind kind, double zprime) {
    return kind == StatisticKind::AbsZ ? std::abs(zprime) : std::max(zprime, 0.0);
}

double theoretical_threshold(double level, double sample_variance, int k) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("theoretical_threshold: level must be in (0,1)");
    }
    if (!(sample_variance > 0.0)) {
        throw std::invalid_argument("theoretical_threshold: sample variance must be positive");
    }
    if (k < 1) {
        throw std::invalid_argument("theoretical_threshold: k must be at least 1");
    }
    return std::sqrt(1.0 / level) * sample_variance * std::sqrt(static_cast<double>(k));
}

CalibratedTest theoretical_test(const CoordinateProjection& p,
                                double sample_variance, double level,
                                StatisticKind kind) {
    CalibratedTest test;
    test.projection = p;
    test.sample_variance = sample_variance;
    test.level = level;
    test.statistic_kind = kind;
    test.threshold = theoretical_threshold(level, sample_variance, p.rank());
    return test;
}

CalibratedTest mc_calibrate(const CoordinateProjection& p,
                            double sample_variance, double level, long reps,
                            StatisticKind kind, std::uint64_t seed) {
    if (reps < 1000) {
        throw std::invalid_argument("mc_calibrate: need at least 1000 replications");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("mc_calibrate: level must be in (0,1)");
    }
    if (!(sample_variance > 0.0)) {
        throw std::invalid_argument("mc_calibrate: sample variance must be positive");
    }
    const int k = p.rank();
    const double sd = std::sqrt(sample_variance);
    std::vector<double> stats(static_cast<std::size_t>(reps));
    // Only the projected coordinates enter Z', so simulate just those.
    for (long i = 0; i < reps; ++i) {
        auto rng = rng::stream(seed, static_cast<std::uint64_t>(i));
        std::normal_distribution<double> normal(0.0, sd);
        double z = 0.0;
        for (int j = 0; j < k; ++j) {
            const double xi = normal(rng);
            const double yi = normal(rng);
            z += xi * yi;
        }
        stats[static_cast<std::size_t>(i)] = apply_statistic(kind, z);
    }
    std::sort(stats.begin(), stats.end());
    const long index = static_cast<long>(
        std::ceil((1.0 - level) * static_cast<double>(reps))); // 1-based
    const double threshold = stats[static_cast<std::size_t>(std::clamp(index, 1L, reps)) - 1];

    CalibratedTest test;
    test.projection = p;
    test.sample_variance = sample_variance;
    test.level = level;
    test.statistic_kind = kind;
    test.threshold = threshold;
    test.monte_carlo = MonteCarloProvenance{reps, seed};
    return test;
}

TestOutcome run_test(const CalibratedTest& test, const SignalVector& x,
                     const SignalVector& y) {
    const double z = statistic_zprime(x, y, test.projection);
    TestOutcome outcome;
    outcome.statistic = apply_statistic(test.statistic_kind, z);
    outcome.reject = outcome.statistic > test.threshold;
    return outcome;
}

double radius_bound(int k, double sigma, double level, double type2,
                    double cw_constant) {
    if (k < 1 || !(sigma > 0.0) || !(level > 0.0 && level < 1.0) ||
        !(type2 > 0.0 && type2 <= 1.0) || !(cw_constant > 0.0)) {
        throw std::invalid_argument("radius_bound: invalid parameters");
    }
    const double chebyshev = 2.0 * std::sqrt(1.0 / level) * sigma * sigma *
                             std::sqrt(static_cast<double>(k));
    return cw_constant * cw_constant / (type2 * type2) * chebyshev;
}

} // namespace qcod
