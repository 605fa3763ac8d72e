#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

namespace qcod {

using SignalVector = std::vector<double>;

inline constexpr double kDefaultMembershipTol = 1e-9;

/// Axis-aligned ellipsoid {theta : sum theta_i^2 / a_i <= 1} with the
/// semi-axes squared a_i stored in nondecreasing order. The constructor
/// sorts and records the permutation so callers can map back to the
/// original coordinate order.
class Ellipsoid {
public:
    explicit Ellipsoid(std::vector<double> semi_axes_sq);

    /// Sobolev ellipsoid a_i = (n - i + 1)^(-2*alpha); already nondecreasing,
    /// a_n = 1.
    static Ellipsoid sobolev(double alpha, int n);

    int dim() const { return static_cast<int>(a_.size()); }
    const std::vector<double>& axes() const { return a_; }
    // axes()[i] was semi_axes_sq[permutation()[i]] in the constructor input.
    const std::vector<int>& permutation() const { return perm_; }

private:
    std::vector<double> a_;
    std::vector<int> perm_;
};

/// Hyperrectangle {theta : |theta_i| <= c_i}. Half-widths may be zero
/// (degenerate flat directions).
class Hyperrectangle {
public:
    explicit Hyperrectangle(std::vector<double> half_widths);

    int dim() const { return static_cast<int>(c_.size()); }
    const std::vector<double>& half_widths() const { return c_; }

private:
    std::vector<double> c_;
};

using ConstraintSet = std::variant<Ellipsoid, Hyperrectangle>;

int dim(const ConstraintSet& set);

bool contains(const Ellipsoid& set, const SignalVector& theta,
              double tol = kDefaultMembershipTol);
bool contains(const Hyperrectangle& set, const SignalVector& theta,
              double tol = kDefaultMembershipTol);
bool contains(const ConstraintSet& set, const SignalVector& theta,
              double tol = kDefaultMembershipTol);

/// sup of ||theta||_2 over the set: sqrt(a_n) for ellipsoids, ||c||_2 for
/// hyperrectangles.
double d0(const Ellipsoid& set);
double d0(const Hyperrectangle& set);
double d0(const ConstraintSet& set);

/// Preprocessing for rotated sets K = U K': returns U^T x. Requires
/// U^T U = I within 1e-8 (max absolute deviation).
SignalVector derotate(const SignalVector& x, const Eigen::MatrixXd& u);

} // namespace qcod
