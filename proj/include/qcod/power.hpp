#pragma once

#include <cstdint>
#include <string>

#include "qcod/detection.hpp"
#include "qcod/sets.hpp"

namespace qcod {

struct PowerCurveConfig {
    std::string set_description;
    double sigma = 0.0;
    double level = 0.0;
    int k = 0; // projection rank (the testing index)
    long reps = 0;
    long calib_reps = 0;
    std::uint64_t seed = 0;
    StatisticKind statistic_kind = StatisticKind::TPlus;
};

struct PowerCurve {
    std::vector<double> norms;   // signal norms ||mu||_2, nondecreasing
    std::vector<double> powers;  // rejection frequencies in [0, 1]
    std::vector<double> stderrs; // binomial MC standard errors
    PowerCurveConfig config;
};

struct PowerEstimate {
    double power = 0.0;
    double stderr_ = 0.0;
};

struct DominanceReport {
    double c_low = 0.0;
    double c_high = 0.0;
    PowerEstimate low;
    PowerEstimate high;
    bool pass = false;
};

/// The mu in K with ||mu||_2^2 = c minimizing ||P*_k mu||_2 (three-case
/// closed form). Requires 0 <= c <= a_n. When a_{n-k} = a_n the case split
/// degenerates and sqrt(c) is placed in the last coordinate.
SignalVector minimal_power_vector(const Ellipsoid& set, int k, double c);

/// ||P*_k mu||_2^2 of the minimal-power vector, by the same case split.
double minimal_projected_norm_sq(const Ellipsoid& set, int k, double c);

/// Rejection frequency over `reps` replicates of X = mu + xi, Y = mu + eta
/// with xi, eta ~ N(0, test.sample_variance * I). Deterministic given seed.
PowerEstimate mc_power(const CalibratedTest& test, const SignalVector& mu,
                       long reps, std::uint64_t seed);

/// The full minimal-power pipeline: testing index, MC calibration, norm grid
/// equispaced on [0, sqrt(a_n)], per-point minimal-power vectors and MC power.
PowerCurve power_curve(const Ellipsoid& set, double sigma, double level,
                       int grid_size, long reps, long calib_reps,
                       StatisticKind kind, std::uint64_t seed);

/// Checks the stochastic-dominance ordering empirically: power at c_high
/// must not fall more than 3 combined standard errors below power at c_low.
DominanceReport dominance_check(const Ellipsoid& set, int k, double c_low,
                                double c_high, const CalibratedTest& test,
                                long reps, std::uint64_t seed);

} // namespace qcod
