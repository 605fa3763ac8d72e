#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "qcod/sets.hpp"

namespace qcod {

/// Extremal vector theta with ||theta||_2^2 = sqrt(k) sigma^2 and
/// ||theta||_inf <= sigma / k^(1/4), plus the Rademacher-prior scale kappa.
struct ExtremalPrior {
    SignalVector theta;
    SignalVector t; // theta squared entrywise, element of K^2
    double kappa = 0.5;
    int k = 0;
    double sigma = 0.0;
};

/// Greedy exact solver for max sum t_i subject to t in K^2 and
/// 0 <= t_i <= sigma^2/sqrt(k). Returns nullopt when the cap-constrained
/// optimum falls short of sqrt(k) sigma^2; guaranteed feasible whenever
/// d_{k-1}(K) > k^(1/4) sigma.
std::optional<ExtremalPrior> extremal_vector(const ConstraintSet& set, int k,
                                             double sigma,
                                             double kappa = 0.5);

/// Value of the capped knapsack max sum t_i s.t. t in K^2, 0 <= t_i <= cap,
/// as achieved by the greedy fill (exact for ellipsoids and hyperrectangles).
double capped_sum_optimum(const ConstraintSet& set, double cap);

/// prod_i cosh(kappa^2 theta_i^2 / sigma^2) - 1, evaluated in log-space.
double chi_square_divergence(const ExtremalPrior& prior);

/// 1 - level - (1/2) sqrt(exp(kappa^4/2) - 1); may be negative (vacuous).
double risk_lower_bound(double level, double kappa);

/// One draw (kappa * gamma_i * theta_i)_i with i.i.d. Rademacher signs.
SignalVector sample_prior(const ExtremalPrior& prior, std::mt19937_64& rng);

} // namespace qcod
