#include "qcod/widths.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcod {

namespace {

WidthProfile ellipsoid_profile(const Ellipsoid& set) {
    // d_k = sqrt(a_{n-k}) with a_0 := 0.
    const auto& a = set.axes();
    const int n = set.dim();
    WidthProfile profile;
    profile.exact = true;
    profile.d.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        profile.d[static_cast<std::size_t>(k)] =
            (k == n) ? 0.0 : std::sqrt(a[static_cast<std::size_t>(n - k - 1)]);
    }
    return profile;
}

WidthProfile hyperrectangle_profile(const Hyperrectangle& set) {
    // Coordinate-projection upper bound: drop the k largest half-widths.
    std::vector<double> c = set.half_widths();
    std::sort(c.begin(), c.end(), std::greater<double>());
    const int n = set.dim();
    WidthProfile profile;
    profile.exact = false;
    profile.d.resize(static_cast<std::size_t>(n) + 1);
    double suffix = 0.0;
    profile.d[static_cast<std::size_t>(n)] = 0.0;
    for (int k = n - 1; k >= 0; --k) {
        suffix += c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];
        profile.d[static_cast<std::size_t>(k)] = std::sqrt(suffix);
    }
    return profile;
}

} // namespace

WidthProfile width_profile(const ConstraintSet& set) {
    if (const auto* e = std::get_if<Ellipsoid>(&set)) return ellipsoid_profile(*e);
    return hyperrectangle_profile(std::get<Hyperrectangle>(set));
}

double brute_force_width(const ConstraintSet& set, int k) {
    const int n = dim(set);
    if (n > 20) {
        std::ostringstream msg;
        msg << "brute_force_width: refused, n = " << n << " exceeds the combinatorial guard (20)";
        throw std::invalid_argument(msg.str());
    }
    if (k < 0 || k > n) {
        throw std::invalid_argument("brute_force_width: k out of range");
    }
    const auto* ellipsoid = std::get_if<Ellipsoid>(&set);
    const auto* box = std::get_if<Hyperrectangle>(&set);

    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (std::popcount(mask) != k) continue;
        // sup over K of the residual energy outside the kept coordinates.
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) continue;
            if (ellipsoid) {
                residual = std::max(residual, ellipsoid->axes()[static_cast<std::size_t>(i)]);
            } else {
                const double ci = box->half_widths()[static_cast<std::size_t>(i)];
                residual += ci * ci;
            }
        }
        best = std::min(best, residual);
    }
    return std::sqrt(best);
}

double projection_deficiency(const Ellipsoid& set, const Eigen::MatrixXd& p,
                             double rel_tol) {
    const int n = set.dim();
    if (p.rows() != n || p.cols() != n) {
        throw std::invalid_argument("projection_deficiency: dimension mismatch");
    }
    const double asym = (p - p.transpose()).cwiseAbs().maxCoeff();
    const double nonidem = (p * p - p).cwiseAbs().maxCoeff();
    if (asym > 1e-8 || nonidem > 1e-8) {
        std::ostringstream msg;
        msg << "projection_deficiency: input is not an orthogonal projection"
            << " (|P - P^T| = " << asym << ", |P^2 - P| = " << nonidem << ")";
        throw std::invalid_argument(msg.str());
    }

    Eigen::VectorXd sqrt_a(n);
    for (int i = 0; i < n; ++i) sqrt_a[i] = std::sqrt(set.axes()[static_cast<std::size_t>(i)]);
    const Eigen::MatrixXd m =
        (Eigen::MatrixXd::Identity(n, n) - p) * sqrt_a.asDiagonal();
    const Eigen::MatrixXd gram = m.transpose() * m; // symmetric PSD

    // Power iteration for the dominant eigenvalue of M^T M.
    Eigen::VectorXd v(n);
    std::uint64_t state = 0x853c49e6748fea9bULL;
    for (int i = 0; i < n; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        v[i] = 0.5 + static_cast<double>(state >> 11) / 9007199254740992.0;
    }
    v.normalize();
    double lambda = 0.0;
    const int max_iter = 100000;
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd w = gram * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0; // M = 0 (P = identity)
        const double next = v.dot(w);
        v = w / norm;
        if (iter > 0 && std::abs(next - lambda) <= rel_tol * std::max(next, 1e-300)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

std::optional<int> testing_index(const WidthProfile& profile, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("testing_index: sigma must be positive");
    }
    if (profile.d.front() <= sigma) return std::nullopt; // d_0 <= sigma corner case
    const int n = profile.dim();
    for (int k = 1; k <= n; ++k) {
        if (profile.d[static_cast<std::size_t>(k)] <=
            std::pow(static_cast<double>(k + 1), 0.25) * sigma) {
            return k;
        }
    }
    // Unreachable: d_n = 0 always satisfies the crossing condition.
    return n;
}

int estimation_index(const WidthProfile& profile, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("estimation_index: sigma must be positive");
    }
    const int n = profile.dim();
    for (int k = 0; k <= n; ++k) {
        if (profile.d[static_cast<std::size_t>(k)] <=
            std::sqrt(static_cast<double>(k + 1)) * sigma) {
            return k;
        }
    }
    return n;
}

RateReport rate_report(const ConstraintSet& set, double sigma) {
    const WidthProfile profile = width_profile(set);
    RateReport report;
    report.sigma = sigma;
    report.testing_index = testing_index(profile, sigma);
    if (report.testing_index) {
        report.testing_radius =
            std::pow(static_cast<double>(*report.testing_index), 0.25) * sigma;
    }
    report.estimation_index = estimation_index(profile, sigma);
    const double sup = d0(set);
    report.estimation_risk =
        std::min(static_cast<double>(report.estimation_index + 1) * sigma * sigma,
                 sup * sup);
    if (report.testing_index) {
        const long j = *report.testing_index;
        const long k = report.estimation_index;
        if ((j + 1) > (k + 1) * (k + 1)) {
            throw std::logic_error("rate_report: testing/estimation index inequality violated");
        }
    }
    return report;
}

} // namespace qcod
