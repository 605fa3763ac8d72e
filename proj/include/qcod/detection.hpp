#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "qcod/sets.hpp"

namespace qcod {

/// Projection onto a set of coordinates (1-based indices, sorted, unique).
struct CoordinateProjection {
    std::vector<int> indices;
    int n = 0;

    int rank() const { return static_cast<int>(indices.size()); }
};

enum class StatisticKind { AbsZ, TPlus };

struct MonteCarloProvenance {
    long reps = 0;
    std::uint64_t seed = 0;
};

struct CalibratedTest {
    CoordinateProjection projection;
    double sample_variance = 0.0; // per-sample noise variance (2*sigma^2 after splitting)
    double level = 0.0;
    double threshold = 0.0;
    StatisticKind statistic_kind = StatisticKind::TPlus;
    // nullopt: theoretical Chebyshev threshold.
    std::optional<MonteCarloProvenance> monte_carlo;
};

struct TestOutcome {
    bool reject = false;
    double statistic = 0.0;
};

/// Width-achieving rank-k coordinate projection: the last k coordinates for
/// an ellipsoid (axes ascending), the k largest half-widths for a
/// hyperrectangle (ties broken by smallest index).
CoordinateProjection optimal_projection(const ConstraintSet& set, int k);

/// Deterministic core of the sample split: (x + eta, x - eta).
std::pair<SignalVector, SignalVector> split_sample_with_noise(
    const SignalVector& x, const SignalVector& eta);

/// Splits one observation X = mu + xi into two independent observations with
/// per-sample variance 2*sigma^2, by drawing eta ~ N(0, sigma^2 I).
std::pair<SignalVector, SignalVector> split_sample(const SignalVector& x,
                                                   double sigma,
                                                   std::mt19937_64& rng);

/// Z' = x^T P y = sum over projected coordinates of x_i y_i.
double statistic_zprime(const SignalVector& x, const SignalVector& y,
                        const CoordinateProjection& p);

/// AbsZ -> |z'|, TPlus -> max(z', 0).
double apply_statistic(StatisticKind kind, double zprime);

/// Chebyshev threshold sqrt(1/level) * sample_variance * sqrt(k). The null
/// standard deviation of Z' is sample_variance * sqrt(k).
double theoretical_threshold(double level, double sample_variance, int k);

CalibratedTest theoretical_test(const CoordinateProjection& p,
                                double sample_variance, double level,
                                StatisticKind kind);

/// Calibrates the threshold as the empirical (1-level)-quantile of the
/// statistic over `reps` independent null pairs. Quantile convention:
/// ascending order statistic at ceil((1-level)*reps), 1-based. Deterministic
/// given (seed, reps, p, sample_variance, level).
CalibratedTest mc_calibrate(const CoordinateProjection& p,
                            double sample_variance, double level, long reps,
                            StatisticKind kind, std::uint64_t seed);

/// Rejects iff statistic > threshold (strict).
TestOutcome run_test(const CalibratedTest& test, const SignalVector& x,
                     const SignalVector& y);

/// The additive radius term C*^2 * delta^-2 * (2 sqrt(1/level) sigma^2
/// sqrt(k)) from the Carbery-Wright type II bound; the caller adds d_k^2.
/// cw_constant has no certified value and must be supplied.
double radius_bound(int k, double sigma, double level, double type2,
                    double cw_constant);

} // namespace qcod
