#pragma once

#include <optional>

#include "qcod/sets.hpp"

namespace qcod {

/// Kolmogorov widths d_0 >= d_1 >= ... >= d_n = 0. `exact` is true for
/// ellipsoids; hyperrectangle values are coordinate-projection upper bounds.
struct WidthProfile {
    std::vector<double> d; // length n + 1
    bool exact = true;

    int dim() const { return static_cast<int>(d.size()) - 1; }
};

WidthProfile width_profile(const ConstraintSet& set);

/// Exhaustive coordinate-subspace oracle: min over all (n choose k) index
/// sets S of sqrt(sup_{theta in K} sum_{i not in S} theta_i^2). Guarded to
/// n <= 20.
double brute_force_width(const ConstraintSet& set, int k);

/// sup_{theta in K} ||theta - P theta||_2 for an arbitrary orthogonal
/// projection P, i.e. the dominant singular value of (I - P) diag(sqrt(a_i)),
/// computed by power iteration.
double projection_deficiency(const Ellipsoid& set, const Eigen::MatrixXd& p,
                             double rel_tol = 1e-9);

/// Smallest k >= 1 with d_k <= (k+1)^(1/4) * sigma, or nullopt when
/// d_0 <= sigma (testing impossible).
std::optional<int> testing_index(const WidthProfile& profile, double sigma);

/// Smallest k >= 0 with d_k <= sqrt(k+1) * sigma.
int estimation_index(const WidthProfile& profile, double sigma);

struct RateReport {
    std::optional<int> testing_index; // nullopt = untestable
    double testing_radius = 0.0;      // (j*)^(1/4) * sigma when testable
    int estimation_index = 0;
    double estimation_risk = 0.0;     // (k*+1) sigma^2 /\ d_0^2
    double sigma = 0.0;
};

RateReport rate_report(const ConstraintSet& set, double sigma);

} // namespace qcod
