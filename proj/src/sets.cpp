#include "qcod/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcod {

namespace {

void check_dim(std::size_t expected, std::size_t got) {
    if (expected != got) {
        std::ostringstream msg;
        msg << "dimension mismatch: expected " << expected << ", got " << got;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

Ellipsoid::Ellipsoid(std::vector<double> semi_axes_sq) : a_(std::move(semi_axes_sq)) {
    if (a_.empty()) {
        throw std::invalid_argument("Ellipsoid: empty axis list");
    }
    for (double ai : a_) {
        if (!(ai > 0.0) || !std::isfinite(ai)) {
            throw std::invalid_argument("Ellipsoid: semi-axes squared must be positive and finite");
        }
    }
    perm_.resize(a_.size());
    std::iota(perm_.begin(), perm_.end(), 0);
    std::stable_sort(perm_.begin(), perm_.end(),
                     [&](int i, int j) { return a_[i] < a_[j]; });
    std::vector<double> sorted(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) sorted[i] = a_[perm_[i]];
    a_ = std::move(sorted);
}

Ellipsoid Ellipsoid::sobolev(double alpha, int n) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("sobolev: alpha must be positive");
    }
    if (n < 1) {
        throw std::invalid_argument("sobolev: n must be at least 1");
    }
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        a[static_cast<std::size_t>(i - 1)] =
            std::pow(static_cast<double>(n - i + 1), -2.0 * alpha);
    }
    return Ellipsoid(std::move(a));
}

Hyperrectangle::Hyperrectangle(std::vector<double> half_widths)
    : c_(std::move(half_widths)) {
    if (c_.empty()) {
        throw std::invalid_argument("Hyperrectangle: empty half-width list");
    }
    for (double ci : c_) {
        if (ci < 0.0 || !std::isfinite(ci)) {
            throw std::invalid_argument("Hyperrectangle: half-widths must be nonnegative and finite");
        }
    }
}

int dim(const ConstraintSet& set) {
    return std::visit([](const auto& s) { return s.dim(); }, set);
}

bool contains(const Ellipsoid& set, const SignalVector& theta, double tol) {
    check_dim(set.axes().size(), theta.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        sum += theta[i] * theta[i] / set.axes()[i];
    }
    return sum <= 1.0 + tol;
}

bool contains(const Hyperrectangle& set, const SignalVector& theta, double tol) {
    check_dim(set.half_widths().size(), theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (std::abs(theta[i]) > set.half_widths()[i] + tol) return false;
    }
    return true;
}

bool contains(const ConstraintSet& set, const SignalVector& theta, double tol) {
    return std::visit([&](const auto& s) { return contains(s, theta, tol); }, set);
}

double d0(const Ellipsoid& set) { return std::sqrt(set.axes().back()); }

double d0(const Hyperrectangle& set) {
    double sum = 0.0;
    for (double ci : set.half_widths()) sum += ci * ci;
    return std::sqrt(sum);
}

double d0(const ConstraintSet& set) {
    return std::visit([](const auto& s) { return d0(s); }, set);
}

SignalVector derotate(const SignalVector& x, const Eigen::MatrixXd& u) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument("derotate: matrix must be square");
    }
    check_dim(static_cast<std::size_t>(u.rows()), x.size());
    const Eigen::MatrixXd gram = u.transpose() * u;
    const double deviation =
        (gram - Eigen::MatrixXd::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
    if (deviation > 1e-8) {
        std::ostringstream msg;
        msg << "derotate: matrix is not orthogonal, max |U^T U - I| = " << deviation;
        throw std::invalid_argument(msg.str());
    }
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(),
                                               static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd y = u.transpose() * xv;
    return SignalVector(y.data(), y.data() + y.size());
}

} // namespace qcod
