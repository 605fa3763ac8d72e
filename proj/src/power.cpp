#include "qcod/power.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qcod/rng.hpp"
#include "qcod/widths.hpp"

namespace qcod {

namespace {

struct MinimalCase {
    SignalVector mu;
    double projected_norm_sq = 0.0;
};

MinimalCase minimal_case(const Ellipsoid& set, int k, double c) {
    const int n = set.dim();
    if (k < 0 || k > n) {
        throw std::invalid_argument("minimal_power_vector: k out of range");
    }
    const auto& a = set.axes();
    const double a_n = a.back();
    if (c < 0.0 || c > a_n * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "minimal_power_vector: c = " << c << " exceeds a_n = " << a_n
            << "; no vector in K has that norm";
        throw std::invalid_argument(msg.str());
    }
    c = std::min(c, a_n);

    MinimalCase out;
    out.mu.assign(static_cast<std::size_t>(n), 0.0);
    if (k == n) {
        out.mu.back() = std::sqrt(c);
        out.projected_norm_sq = c;
        return out;
    }
    const double a_nk = a[static_cast<std::size_t>(n - k - 1)]; // a_{n-k}, 1-based
    if (c < a_nk) {
        out.mu[static_cast<std::size_t>(n - k - 1)] = std::sqrt(c);
        out.projected_norm_sq = 0.0;
        return out;
    }
    if (a_nk == a_n) {
        // Degenerate top block: all axes from n-k on are equal, the case-(iii)
        // denominators vanish and any top-block placement is equivalent.
        out.mu.back() = std::sqrt(c);
        out.projected_norm_sq = c;
        return out;
    }
    const double denom = 1.0 / a_nk - 1.0 / a_n;
    const double low_sq = std::max((1.0 - c / a_n) / denom, 0.0);
    const double top_sq = std::max((c / a_nk - 1.0) / denom, 0.0);
    out.mu[static_cast<std::size_t>(n - k - 1)] = std::sqrt(low_sq);
    out.mu.back() = std::sqrt(top_sq);
    out.projected_norm_sq = top_sq;
    return out;
}

} // namespace

SignalVector minimal_power_vector(const Ellipsoid& set, int k, double c) {
    return minimal_case(set, k, c).mu;
}

double minimal_projected_norm_sq(const Ellipsoid& set, int k, double c) {
    return minimal_case(set, k, c).projected_norm_sq;
}

PowerEstimate mc_power(const CalibratedTest& test, const SignalVector& mu,
                       long reps, std::uint64_t seed) {
    if (reps < 100) {
        throw std::invalid_argument("mc_power: need at least 100 replications");
    }
    if (mu.size() != static_cast<std::size_t>(test.projection.n)) {
        throw std::invalid_argument("mc_power: dimension mismatch");
    }
    const double sd = std::sqrt(test.sample_variance);
    // Z' only sees the projected coordinates; simulating just those keeps the
    // distribution identical.
    const auto& idx = test.projection.indices;
    long rejections = 0;
    for (long i = 0; i < reps; ++i) {
        auto rng = rng::stream(seed, static_cast<std::uint64_t>(i));
        std::normal_distribution<double> normal(0.0, sd);
        double z = 0.0;
        for (int j : idx) {
            const double m = mu[static_cast<std::size_t>(j - 1)];
            const double xi = m + normal(rng);
            const double yi = m + normal(rng);
            z += xi * yi;
        }
        if (apply_statistic(test.statistic_kind, z) > test.threshold) ++rejections;
    }
    PowerEstimate estimate;
    estimate.power = static_cast<double>(rejections) / static_cast<double>(reps);
    estimate.stderr_ =
        std::sqrt(estimate.power * (1.0 - estimate.power) / static_cast<double>(reps));
    return estimate;
}

PowerCurve power_curve(const Ellipsoid& set, double sigma, double level,
                       int grid_size, long reps, long calib_reps,
                       StatisticKind kind, std::uint64_t seed) {
    if (grid_size < 2) {
        throw std::invalid_argument("power_curve: grid must have at least 2 points");
    }
    const WidthProfile profile = width_profile(ConstraintSet{set});
    const auto j_star = testing_index(profile, sigma);
    if (!j_star) {
        std::ostringstream msg;
        msg << "untestable: d0 <= sigma (d0 = " << profile.d.front()
            << ", sigma = " << sigma << ")";
        throw std::runtime_error(msg.str());
    }
    const int k = *j_star;
    const double sample_variance = 2.0 * sigma * sigma;
    const CalibratedTest test =
        mc_calibrate(optimal_projection(ConstraintSet{set}, k), sample_variance,
                     level, calib_reps, kind, rng::derive(seed, 0));

    const double top = std::sqrt(set.axes().back());
    PowerCurve curve;
    curve.config.sigma = sigma;
    curve.config.level = level;
    curve.config.k = k;
    curve.config.reps = reps;
    curve.config.calib_reps = calib_reps;
    curve.config.seed = seed;
    curve.config.statistic_kind = kind;
    {
        std::ostringstream desc;
        desc << "ellipsoid n=" << set.dim() << " a_n=" << set.axes().back();
        curve.config.set_description = desc.str();
    }
    for (int g = 0; g < grid_size; ++g) {
        const double norm =
            top * static_cast<double>(g) / static_cast<double>(grid_size - 1);
        const SignalVector mu = minimal_power_vector(set, k, norm * norm);
        const PowerEstimate estimate =
            mc_power(test, mu, reps, rng::derive(seed, static_cast<std::uint64_t>(g + 1)));
        curve.norms.push_back(norm);
        curve.powers.push_back(estimate.power);
        curve.stderrs.push_back(estimate.stderr_);
    }
    return curve;
}

DominanceReport dominance_check(const Ellipsoid& set, int k, double c_low,
                                double c_high, const CalibratedTest& test,
                                long reps, std::uint64_t seed) {
    DominanceReport report;
    report.c_low = c_low;
    report.c_high = c_high;
    if (minimal_projected_norm_sq(set, k, c_low) >
        minimal_projected_norm_sq(set, k, c_high) + 1e-12) {
        throw std::invalid_argument(
            "dominance_check: c_low projects larger than c_high");
    }
    const SignalVector mu_low = minimal_power_vector(set, k, c_low);
    const SignalVector mu_high = minimal_power_vector(set, k, c_high);
    report.low = mc_power(test, mu_low, reps, rng::derive(seed, 1));
    report.high = mc_power(test, mu_high, reps, rng::derive(seed, 2));
    report.pass = report.high.power >=
                  report.low.power - 3.0 * (report.low.stderr_ + report.high.stderr_);
    return report;
}

} // namespace qcod
