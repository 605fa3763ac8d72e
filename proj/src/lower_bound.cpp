#include "qcod/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qcod {

namespace {

// log cosh(x) without overflow: |x| + log1p(exp(-2|x|)) - log 2.
double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// Greedy fill of max sum t_i subject to t in K^2 and t_i <= cap.
// Returns t in the set's coordinate order together with the fill order
// (needed for the truncation rule).
struct GreedyFill {
    std::vector<double> t;
    std::vector<std::size_t> fill_order;
    double total = 0.0;
};

GreedyFill greedy_ellipsoid(const Ellipsoid& set, double cap) {
    const auto& a = set.axes();
    GreedyFill fill;
    fill.t.assign(a.size(), 0.0);
    double budget = 1.0; // sum t_i / a_i <= 1
    // Descending a_i: each unit of t costs 1/a_i of budget, cheapest first.
    for (std::size_t idx = a.size(); idx-- > 0;) {
        if (budget <= 0.0) break;
        const double ti = std::min(cap, budget * a[idx]);
        if (ti <= 0.0) continue;
        fill.t[idx] = ti;
        fill.fill_order.push_back(idx);
        fill.total += ti;
        budget -= ti / a[idx];
    }
    return fill;
}

GreedyFill greedy_hyperrectangle(const Hyperrectangle& set, double cap) {
    const auto& c = set.half_widths();
    GreedyFill fill;
    fill.t.assign(c.size(), 0.0);
    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return c[i] > c[j]; });
    for (std::size_t idx : order) {
        const double ti = std::min(c[idx] * c[idx], cap);
        if (ti <= 0.0) continue;
        fill.t[idx] = ti;
        fill.fill_order.push_back(idx);
        fill.total += ti;
    }
    return fill;
}

} // namespace

std::optional<ExtremalPrior> extremal_vector(const ConstraintSet& set, int k,
                                             double sigma, double kappa) {
    const int n = dim(set);
    if (k < 1 || k > n) {
        throw std::invalid_argument("extremal_vector: k out of range");
    }
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("extremal_vector: sigma must be positive");
    }
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw std::invalid_argument("extremal_vector: kappa must be in (0,1]");
    }
    const double sqrt_k = std::sqrt(static_cast<double>(k));
    const double cap = sigma * sigma / sqrt_k;
    const double target = sqrt_k * sigma * sigma;

    GreedyFill fill = std::holds_alternative<Ellipsoid>(set)
                          ? greedy_ellipsoid(std::get<Ellipsoid>(set), cap)
                          : greedy_hyperrectangle(std::get<Hyperrectangle>(set), cap);
    // The accumulated total can land an ulp short of an exactly attainable
    // target, so compare with relative slack.
    if (fill.total < target * (1.0 - 1e-12)) return std::nullopt;

    // Truncate the overshoot starting from the last-filled coordinate; K^2 is
    // downward closed on the nonnegative orthant so the result stays inside.
    double excess = fill.total - target;
    for (auto it = fill.fill_order.rbegin();
         it != fill.fill_order.rend() && excess > 0.0; ++it) {
        const double cut = std::min(excess, fill.t[*it]);
        fill.t[*it] -= cut;
        excess -= cut;
    }

    ExtremalPrior prior;
    prior.t = std::move(fill.t);
    prior.theta.resize(prior.t.size());
    for (std::size_t i = 0; i < prior.t.size(); ++i) {
        prior.theta[i] = std::sqrt(std::max(prior.t[i], 0.0));
    }
    prior.kappa = kappa;
    prior.k = k;
    prior.sigma = sigma;
    return prior;
}

double capped_sum_optimum(const ConstraintSet& set, double cap) {
    if (!(cap >= 0.0)) {
        throw std::invalid_argument("capped_sum_optimum: cap must be nonnegative");
    }
    const GreedyFill fill = std::holds_alternative<Ellipsoid>(set)
                                ? greedy_ellipsoid(std::get<Ellipsoid>(set), cap)
                                : greedy_hyperrectangle(std::get<Hyperrectangle>(set), cap);
    return fill.total;
}

double chi_square_divergence(const ExtremalPrior& prior) {
    const double scale = prior.kappa * prior.kappa / (prior.sigma * prior.sigma);
    double log_product = 0.0;
    for (double ti : prior.t) log_product += log_cosh(scale * ti);
    return std::expm1(log_product);
}

double risk_lower_bound(double level, double kappa) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("risk_lower_bound: level must be in (0,1)");
    }
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("risk_lower_bound: kappa must be positive");
    }
    const double kappa4 = std::pow(kappa, 4.0);
    return 1.0 - level - 0.5 * std::sqrt(std::expm1(kappa4 / 2.0));
}

SignalVector sample_prior(const ExtremalPrior& prior, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    SignalVector draw(prior.theta.size());
    for (std::size_t i = 0; i < draw.size(); ++i) {
        const double sign = coin(rng) ? 1.0 : -1.0;
        draw[i] = prior.kappa * sign * prior.theta[i];
    }
    return draw;
}

} // namespace qcod
