#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qcod/detection.hpp"
#include "qcod/lower_bound.hpp"
#include "qcod/power.hpp"
#include "qcod/report.hpp"
#include "qcod/rng.hpp"
#include "qcod/sets.hpp"
#include "qcod/widths.hpp"

using json = nlohmann::json;

namespace {

// Set-definition file: one positive real per line, `#` starts a comment line.
std::vector<double> read_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        values.push_back(std::stod(line.substr(first)));
    }
    if (values.empty()) throw std::invalid_argument("no values in file: " + path);
    return values;
}

std::vector<double> read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (values.empty()) throw std::invalid_argument("no values in file: " + path);
    return values;
}

struct SetSpec {
    double sobolev_alpha = 0.0;
    int n = 0;
    std::string ellipsoid_file;
    std::string hyperrectangle_file;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--sobolev-alpha", sobolev_alpha, "Sobolev ellipsoid smoothness");
        cmd->add_option("--n", n, "Dimension (with --sobolev-alpha)");
        cmd->add_option("--ellipsoid-file", ellipsoid_file,
                        "File of semi-axes squared, one per line");
        cmd->add_option("--hyperrectangle-file", hyperrectangle_file,
                        "File of half-widths, one per line");
    }

    qcod::ConstraintSet build() const {
        const int given = (sobolev_alpha > 0.0 ? 1 : 0) +
                          (!ellipsoid_file.empty() ? 1 : 0) +
                          (!hyperrectangle_file.empty() ? 1 : 0);
        if (given != 1) {
            throw std::invalid_argument(
                "exactly one set spec required: --sobolev-alpha/--n, "
                "--ellipsoid-file, or --hyperrectangle-file");
        }
        if (sobolev_alpha > 0.0) {
            if (n < 1) throw std::invalid_argument("--n required with --sobolev-alpha");
            return qcod::Ellipsoid::sobolev(sobolev_alpha, n);
        }
        if (!ellipsoid_file.empty()) {
            return qcod::Ellipsoid(read_value_file(ellipsoid_file));
        }
        return qcod::Hyperrectangle(read_value_file(hyperrectangle_file));
    }
};

qcod::StatisticKind parse_stat(const std::string& s) {
    if (s == "tplus") return qcod::StatisticKind::TPlus;
    if (s == "absz") return qcod::StatisticKind::AbsZ;
    throw std::invalid_argument("unknown statistic kind: " + s);
}

json rate_json(const qcod::RateReport& report) {
    json out;
    out["untestable"] = !report.testing_index.has_value();
    if (report.testing_index) {
        out["testing_index"] = *report.testing_index;
        out["testing_radius"] = report.testing_radius;
    } else {
        out["testing_index"] = nullptr;
        out["testing_radius"] = nullptr;
    }
    out["estimation_index"] = report.estimation_index;
    out["estimation_risk"] = report.estimation_risk;
    return out;
}

json calibrated_json(const qcod::CalibratedTest& test) {
    json out;
    out["threshold"] = test.threshold;
    out["k"] = test.projection.rank();
    out["level"] = test.level;
    if (test.monte_carlo) {
        out["provenance"] = {{"type", "monte_carlo"},
                             {"reps", test.monte_carlo->reps},
                             {"seed", test.monte_carlo->seed}};
    } else {
        out["provenance"] = {{"type", "theoretical"}};
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        qcod::report::write_file(out_path, text);
    }
}

std::string figure2_title(double alpha, int n, double sigma, double level) {
    std::ostringstream title;
    title << "Minimal power, Sobolev alpha=" << alpha << " n=" << n
          << " sigma=" << sigma << " level=" << level;
    return title.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcod: minimax signal detection under QCO constraints"};
    app.require_subcommand(1);
    app.footer("All commands are deterministic given --seed.");

    // widths
    auto* cmd_widths = app.add_subcommand("widths", "Kolmogorov width profile as CSV");
    SetSpec widths_set;
    widths_set.add_flags(cmd_widths);
    std::string widths_out;
    cmd_widths->add_option("--out", widths_out, "Output file (default stdout)");

    // rate
    auto* cmd_rate = app.add_subcommand("rate", "Testing/estimation indices and rates as JSON");
    SetSpec rate_set;
    rate_set.add_flags(cmd_rate);
    double rate_sigma = 0.0;
    cmd_rate->add_option("--sigma", rate_sigma, "Noise standard deviation")->required();
    double rate_type2 = 0.0, rate_cw = 1.0;
    cmd_rate->add_option("--type2", rate_type2,
                         "Target type II error; adds a radius_bound field");
    cmd_rate->add_option("--cw-constant", rate_cw,
                         "Carbery-Wright constant (not certified; default 1.0)");

    // compare-rates
    auto* cmd_compare = app.add_subcommand("compare-rates",
                                           "Testing vs estimation rate comparison as JSON");
    SetSpec compare_set;
    compare_set.add_flags(cmd_compare);
    double compare_sigma = 0.0;
    cmd_compare->add_option("--sigma", compare_sigma, "Noise standard deviation")->required();

    // calibrate
    auto* cmd_calibrate = app.add_subcommand("calibrate", "Monte Carlo threshold calibration");
    int cal_k = 0;
    double cal_sigma = 0.0, cal_level = 0.05;
    long cal_reps = 100000;
    std::uint64_t cal_seed = 0;
    std::string cal_stat = "tplus";
    cmd_calibrate->add_option("--k", cal_k, "Projection rank")->required();
    cmd_calibrate->add_option("--sigma", cal_sigma, "Noise sd before splitting")->required();
    cmd_calibrate->add_option("--level", cal_level, "Type I error level");
    cmd_calibrate->add_option("--reps", cal_reps, "Null replications");
    cmd_calibrate->add_option("--seed", cal_seed, "RNG seed");
    cmd_calibrate->add_option("--stat", cal_stat, "tplus|absz");

    // test
    auto* cmd_test = app.add_subcommand("test", "Run the projection test on data files");
    SetSpec test_set;
    test_set.add_flags(cmd_test);
    std::string test_x, test_y, test_stat = "tplus";
    double test_sigma = 0.0, test_level = 0.05;
    int test_k = -1;
    long test_calib_reps = 0;
    std::uint64_t test_seed = 0;
    cmd_test->add_option("--x", test_x, "First split sample (whitespace-separated reals)")
        ->required();
    cmd_test->add_option("--y", test_y, "Second split sample")->required();
    cmd_test->add_option("--sigma", test_sigma, "Noise sd before splitting")->required();
    cmd_test->add_option("--level", test_level, "Type I error level");
    cmd_test->add_option("--k", test_k, "Projection rank (default: testing index)");
    cmd_test->add_option("--calib-reps", test_calib_reps,
                         "Calibrate threshold by Monte Carlo instead of Chebyshev");
    cmd_test->add_option("--seed", test_seed, "RNG seed for calibration");
    cmd_test->add_option("--stat", test_stat, "tplus|absz");

    // extremal
    auto* cmd_extremal = app.add_subcommand("extremal", "Lemma-style extremal prior vector");
    SetSpec extremal_set;
    extremal_set.add_flags(cmd_extremal);
    int ext_k = 0;
    double ext_sigma = 0.0, ext_kappa = 0.5;
    cmd_extremal->add_option("--k", ext_k, "Target index")->required();
    cmd_extremal->add_option("--sigma", ext_sigma, "Noise sd")->required();
    cmd_extremal->add_option("--kappa", ext_kappa, "Prior scale in (0,1]");

    // lower-bound
    auto* cmd_lb = app.add_subcommand("lower-bound", "Information-theoretic risk floor");
    double lb_kappa = 0.5, lb_level = 0.05;
    cmd_lb->add_option("--kappa", lb_kappa, "Prior scale");
    cmd_lb->add_option("--level", lb_level, "Type I error level");

    // power-curve
    auto* cmd_power = app.add_subcommand("power-curve", "Minimal-power curve as CSV");
    double pc_alpha = 0.0, pc_sigma = 0.25, pc_level = 0.05;
    int pc_n = 100, pc_grid = 10;
    long pc_reps = 1000, pc_calib = 100000;
    std::uint64_t pc_seed = 0;
    std::string pc_out, pc_svg, pc_stat = "tplus";
    cmd_power->add_option("--sobolev-alpha", pc_alpha, "Sobolev smoothness")->required();
    cmd_power->add_option("--n", pc_n, "Dimension");
    cmd_power->add_option("--sigma", pc_sigma, "Noise sd");
    cmd_power->add_option("--level", pc_level, "Type I error level");
    cmd_power->add_option("--grid", pc_grid, "Number of norm grid points");
    cmd_power->add_option("--reps", pc_reps, "Power replications per grid point");
    cmd_power->add_option("--calib-reps", pc_calib, "Calibration replications");
    cmd_power->add_option("--seed", pc_seed, "RNG seed");
    cmd_power->add_option("--out", pc_out, "CSV output file (default stdout)");
    cmd_power->add_option("--svg", pc_svg, "Optional SVG chart file");
    cmd_power->add_option("--stat", pc_stat, "tplus|absz");

    // reproduce-figure2
    auto* cmd_fig2 = app.add_subcommand(
        "reproduce-figure2", "Both minimal-power curves (alpha 0.5 and 1) plus a summary");
    std::string fig2_dir = ".";
    std::uint64_t fig2_seed = 0;
    bool fig2_svg = false;
    cmd_fig2->add_option("--out-dir", fig2_dir, "Output directory");
    cmd_fig2->add_option("--seed", fig2_seed, "RNG seed");
    cmd_fig2->add_flag("--svg", fig2_svg, "Also emit SVG charts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_widths) {
            const auto set = widths_set.build();
            emit(qcod::report::widths_csv(qcod::width_profile(set)), widths_out);
        } else if (*cmd_rate) {
            const auto set = rate_set.build();
            const auto report = qcod::rate_report(set, rate_sigma);
            json out = rate_json(report);
            if (rate_type2 > 0.0 && report.testing_index) {
                const int k = *report.testing_index;
                const double dk = qcod::width_profile(set).d[static_cast<std::size_t>(k)];
                out["radius_bound_sq"] =
                    dk * dk + qcod::radius_bound(k, rate_sigma, 0.05, rate_type2, rate_cw);
                out["cw_constant"] = rate_cw;
                std::cerr << "warning: the Carbery-Wright constant is not a certified value\n";
            }
            if (!report.testing_index) {
                std::cerr << R"({"error":"untestable: d0 <= sigma"})" << "\n";
                std::cout << out.dump(2) << "\n";
                return 1;
            }
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_compare) {
            const auto set = compare_set.build();
            const auto report = qcod::rate_report(set, compare_sigma);
            json out = rate_json(report);
            if (report.testing_index) {
                const long j = *report.testing_index;
                const long k = report.estimation_index;
                out["inequality_holds"] = (j + 1) <= (k + 1) * (k + 1);
            }
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_calibrate) {
            qcod::CoordinateProjection p;
            p.n = cal_k;
            for (int i = 1; i <= cal_k; ++i) p.indices.push_back(i);
            const auto test =
                qcod::mc_calibrate(p, 2.0 * cal_sigma * cal_sigma, cal_level, cal_reps,
                                   parse_stat(cal_stat), cal_seed);
            std::cout << calibrated_json(test).dump(2) << "\n";
        } else if (*cmd_test) {
            const auto set = test_set.build();
            const auto x = read_signal_file(test_x);
            const auto y = read_signal_file(test_y);
            int k = test_k;
            if (k < 0) {
                const auto j_star = qcod::testing_index(qcod::width_profile(set), test_sigma);
                if (!j_star) throw std::runtime_error("untestable: d0 <= sigma");
                k = *j_star;
            }
            const auto p = qcod::optimal_projection(set, k);
            const double sample_variance = 2.0 * test_sigma * test_sigma;
            const auto kind = parse_stat(test_stat);
            const qcod::CalibratedTest test =
                test_calib_reps > 0
                    ? qcod::mc_calibrate(p, sample_variance, test_level, test_calib_reps,
                                         kind, test_seed)
                    : qcod::theoretical_test(p, sample_variance, test_level, kind);
            const auto outcome = qcod::run_test(test, x, y);
            json out;
            out["statistic"] = outcome.statistic;
            out["threshold"] = test.threshold;
            out["reject"] = outcome.reject;
            out["k"] = k;
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_extremal) {
            const auto set = extremal_set.build();
            const auto profile = qcod::width_profile(set);
            const bool precondition =
                ext_k >= 1 && ext_k <= qcod::dim(set) &&
                profile.d[static_cast<std::size_t>(ext_k - 1)] >
                    std::pow(static_cast<double>(ext_k), 0.25) * ext_sigma;
            const auto prior = qcod::extremal_vector(set, ext_k, ext_sigma, ext_kappa);
            json out;
            out["feasible"] = prior.has_value();
            out["precondition_holds"] = precondition;
            if (prior) {
                double norm_sq = 0.0, sup = 0.0;
                for (double v : prior->theta) {
                    norm_sq += v * v;
                    sup = std::max(sup, std::abs(v));
                }
                out["theta"] = prior->theta;
                out["norm_sq"] = norm_sq;
                out["sup_norm"] = sup;
                out["chi_square_divergence"] = qcod::chi_square_divergence(*prior);
            }
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_lb) {
            json out;
            out["kappa"] = lb_kappa;
            out["level"] = lb_level;
            out["risk_lower_bound"] = qcod::risk_lower_bound(lb_level, lb_kappa);
            std::cout << out.dump(2) << "\n";
        } else if (*cmd_power) {
            const auto set = qcod::Ellipsoid::sobolev(pc_alpha, pc_n);
            const auto curve =
                qcod::power_curve(set, pc_sigma, pc_level, pc_grid, pc_reps, pc_calib,
                                  parse_stat(pc_stat), pc_seed);
            emit(qcod::report::power_curve_csv(curve), pc_out);
            if (!pc_svg.empty()) {
                qcod::report::write_file(
                    pc_svg, qcod::report::power_curve_svg(
                                curve, figure2_title(pc_alpha, pc_n, pc_sigma, pc_level)));
            }
        } else if (*cmd_fig2) {
            const double sigma = 0.25, level = 0.05;
            const int n = 100, grid = 10;
            const long reps = 1000, calib = 100000;
            json summary;
            const std::pair<double, std::string> configs[] = {
                {0.5, "figure2_alpha05"}, {1.0, "figure2_alpha1"}};
            for (const auto& [alpha, stem] : configs) {
                const auto set = qcod::Ellipsoid::sobolev(alpha, n);
                const auto curve =
                    qcod::power_curve(set, sigma, level, grid, reps, calib,
                                      qcod::StatisticKind::TPlus, fig2_seed);
                qcod::report::write_file(fig2_dir + "/" + stem + ".csv",
                                         qcod::report::power_curve_csv(curve));
                if (fig2_svg) {
                    qcod::report::write_file(
                        fig2_dir + "/" + stem + ".svg",
                        qcod::report::power_curve_svg(
                            curve, figure2_title(alpha, n, sigma, level)));
                }
                json entry;
                entry["alpha"] = alpha;
                entry["testing_index"] = curve.config.k;
                entry["power_at_zero"] = curve.powers.front();
                entry["power_at_top"] = curve.powers.back();
                summary["curves"].push_back(entry);
            }
            qcod::report::write_file(fig2_dir + "/figure2_summary.json",
                                     summary.dump(2) + "\n");
            std::cout << summary.dump(2) << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
