#include "cubesep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubesep/analytic.hpp"
#include "cubesep/batch.hpp"
#include "cubesep/errors.hpp"
#include "cubesep/montecarlo.hpp"
#include "cubesep/quadrature.hpp"

namespace cubesep::cli {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt8(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

// Interior comparison grid: points spread over the three regimes, never on a
// boundary.
std::vector<double> interior_grid(int total) {
    const double cuts[4] = {0.0, 1.0, kSqrt2, kSqrt3};
    std::vector<double> grid;
    grid.reserve(total);
    const int base = total / 3;
    for (int r = 0; r < 3; ++r) {
        const int n = base + (r < total % 3 ? 1 : 0);
        for (int j = 0; j < n; ++j)
            grid.push_back(cuts[r] + (j + 0.5) * (cuts[r + 1] - cuts[r]) / n);
    }
    return grid;
}

int cmd_table(const TableRequest& req, std::ostream& out, std::ostream& err) {
    std::ofstream file;
    const bool to_stdout = req.output_path == "-";
    if (!to_stdout) {
        file.open(req.output_path);
        if (!file) {
            err << "table: cannot open '" << req.output_path << "' for writing\n";
            return kExitIo;
        }
    }
    std::ostream& os = to_stdout ? out : file;

    const bool want_pdf = req.quantity != TableRequest::Quantity::cdf;
    const bool want_cdf = req.quantity != TableRequest::Quantity::pdf;

    std::vector<double> grid(req.points);
    for (int i = 0; i < req.points; ++i)
        grid[i] = kSqrt3 * (static_cast<double>(i) / (req.points - 1));

    std::vector<double> cdf_vals;
    if (want_cdf) cdf_vals = analytic::cdf_prefix(grid);

    os << "lambda";
    if (want_pdf) os << ",a_pdf";
    if (want_cdf) os << ",cdf";
    os << "\n";
    for (int i = 0; i < req.points; ++i) {
        os << fmt12(grid[i]);
        if (want_pdf)
            os << ',' << fmt12(analytic::pdf_scaled(grid[i] * req.side_length, req.side_length));
        if (want_cdf) os << ',' << fmt12(cdf_vals[i]);
        os << "\n";
    }
    os.flush();
    if (!os) {
        err << "table: write failed\n";
        return kExitIo;
    }
    return kExitOk;
}

struct CheckLog {
    std::ostream& out;
    bool all_pass = true;

    void report(const std::string& name, bool pass, const std::string& detail) {
        out << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        all_pass &= pass;
    }
};

int cmd_verify(double tol, int grid_points, std::ostream& out) {
    CheckLog log{out};

    // Normalization over the three panels of the piecewise density.
    try {
        const auto p = [](double t) { return analytic::pdf(ScaledLength(t)); };
        const double mass = integrate_adaptive(p, 0.0, 1.0, tol).value +
                            integrate_adaptive(p, 1.0, kSqrt2, tol).value +
                            integrate_adaptive(p, kSqrt2, kSqrt3, tol).value;
        log.report("normalization", std::fabs(mass - 1.0) < 1e-8,
                   "three-panel integral = " + fmt12(mass));
    } catch (const quadrature_error& e) {
        log.report("normalization", false,
                   std::string("quadrature failed to converge: ") + e.what() +
                       " (best estimate " + fmt12(e.best_estimate()) + ", achieved error " +
                       fmt12(e.achieved_error()) + ")");
    }

    // Closed form against the angular-integral oracle across all regimes.
    try {
        const std::vector<double> grid = interior_grid(grid_points);
        const std::vector<double> closed = batch::pdf_grid_parallel(grid);
        const std::vector<double> oracle = batch::oracle_grid_parallel(grid, tol);
        double worst = 0.0;
        double worst_at = grid.front();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double d = std::fabs(closed[i] - oracle[i]);
            if (d > worst) {
                worst = d;
                worst_at = grid[i];
            }
        }
        const double threshold = std::max(tol, 1e-7);
        log.report("oracle equivalence", worst < threshold,
                   std::to_string(grid.size()) + " points, max |closed - oracle| = " +
                       fmt12(worst) + " at lambda = " + fmt12(worst_at) + " (threshold " +
                       fmt12(threshold) + ")");
    } catch (const quadrature_error& e) {
        log.report("oracle equivalence", false,
                   std::string("quadrature failed to converge: ") + e.what());
    } catch (const std::domain_error& e) {
        log.report("oracle equivalence", false, std::string("rejected: ") + e.what());
    }

    // Branch agreement at the regime boundaries, on the closed forms
    // themselves.
    {
        const double at_one = std::fabs(analytic::near_branch(1.0) - analytic::mid_branch(1.0));
        const double at_sqrt2 =
            std::fabs(analytic::mid_branch(kSqrt2) - analytic::far_branch(kSqrt2));
        log.report("branch continuity", at_one < 1e-9 && at_sqrt2 < 1e-9,
                   "|gap(1)| = " + fmt12(at_one) + ", |gap(sqrt2)| = " + fmt12(at_sqrt2));
    }

    // One-sided first derivatives agree across both boundaries.
    {
        bool ok = true;
        std::ostringstream detail;
        for (const double x : {1.0, kSqrt2}) {
            for (const double h : {1e-3, 1e-4, 1e-5}) {
                const auto d = analytic::derivative_probe(ScaledLength(x), 1, h);
                const double gap = std::fabs(d.right - d.left);
                ok &= gap < 10.0 * h;
                detail << " gap(" << fmt8(x) << ", h=" << fmt8(h) << ") = " << fmt8(gap);
            }
        }
        log.report("first-derivative continuity", ok, detail.str());
    }

    // Second derivative: a stable finite jump at 1, none at sqrt2.
    {
        const auto gap_at = [](double x, double h) {
            const auto d = analytic::derivative_probe(ScaledLength(x), 2, h);
            return d.right - d.left;
        };
        const double j3 = gap_at(1.0, 1e-3);
        const double j4 = gap_at(1.0, 1e-4);
        const bool jump_stable = std::fabs(j3 - j4) < 0.05 * std::fabs(j4);
        const bool jump_nonzero = std::fabs(j4) > 1.0;
        const double s3 = gap_at(kSqrt2, 1e-3);
        const double s4 = gap_at(kSqrt2, 1e-4);
        const bool smooth_sqrt2 = std::fabs(s3) < 0.05 && std::fabs(s4) < 0.05;
        log.report("second-derivative jump", jump_stable && jump_nonzero && smooth_sqrt2,
                   "jump(1) = " + fmt8(j4) + " (h-variation " +
                       fmt8(std::fabs(j3 - j4) / std::fabs(j4)) + "), gap(sqrt2) = " + fmt8(s4));
    }

    // Fifth-power endpoint law.
    {
        const auto f1 = analytic::tail_check(0.01);
        const auto f2 = analytic::tail_check(0.001);
        const bool ok = f1.relative_error < 0.02 && f2.relative_error < 0.002 &&
                        f2.relative_error < f1.relative_error;
        log.report("tail law", ok,
                   "fitted(0.01) = " + fmt8(f1.fitted_coefficient) + ", fitted(0.001) = " +
                       fmt8(f2.fitted_coefficient));
    }

    // Probability mass of each regime.
    {
        const auto m = analytic::regime_masses();
        const double exact_near = 43.0 / 30.0 - kPi / 6.0;
        const bool ok = std::fabs(m.near - 0.91) <= 0.005 && std::fabs(m.mid - 0.09) <= 0.005 &&
                        m.far < 0.001 && std::fabs(m.near - exact_near) < 1e-8 &&
                        std::fabs(m.near + m.mid + m.far - 1.0) < 1e-8;
        log.report("regime masses", ok,
                   "near = " + fmt8(m.near) + ", mid = " + fmt8(m.mid) +
                       ", far = " + fmt8(m.far));
    }

    out << (log.all_pass ? "verify: all checks passed\n" : "verify: CHECKS FAILED\n");
    return log.all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const mc::SimConfig& config, int threads, const std::string& out_prefix,
                 std::ostream& out, std::ostream& err) {
    std::vector<double> samples = threads > 1 ? mc::sample_separations_parallel(config, threads)
                                              : mc::sample_separations(config);
    const mc::Histogram hist = mc::build_histogram(samples, config.bin_count);

    std::sort(samples.begin(), samples.end());
    const mc::GofReport report = mc::ks_test(samples, config.bin_count, config.seed);

    const std::string csv_path = out_prefix + ".csv";
    const std::string json_path = out_prefix + ".json";

    {
        std::ofstream csv(csv_path);
        if (!csv) {
            err << "simulate: cannot open '" << csv_path << "' for writing\n";
            return kExitIo;
        }
        const std::vector<double> edge_cdf = analytic::cdf_prefix(hist.edges);
        const double n = static_cast<double>(hist.total);
        csv << "bin_lo,bin_hi,count,normalized_height,expected_height\n";
        for (std::size_t i = 0; i < hist.counts.size(); ++i) {
            const double w = hist.edges[i + 1] - hist.edges[i];
            csv << fmt12(hist.edges[i]) << ',' << fmt12(hist.edges[i + 1]) << ','
                << hist.counts[i] << ',' << fmt12(hist.counts[i] / (n * w)) << ','
                << fmt12((edge_cdf[i + 1] - edge_cdf[i]) / w) << "\n";
        }
        csv.flush();
        if (!csv) {
            err << "simulate: write failed on '" << csv_path << "'\n";
            return kExitIo;
        }
    }
    {
        nlohmann::json j;
        j["ks_statistic"] = report.ks_statistic;
        j["ks_threshold_1pct"] = report.ks_threshold_1pct;
        j["chi_square"] = report.chi_square;
        j["chi_square_dof"] = report.chi_square_dof;
        j["sample_count"] = report.sample_count;
        j["seed"] = report.seed;
        j["pass"] = report.pass;
        j["generator"] = mc::kGeneratorName;
        j["config"] = {{"samples", config.sample_count},
                       {"bins", config.bin_count},
                       {"seed", config.seed},
                       {"threads", threads}};
        std::ofstream jf(json_path);
        if (!jf) {
            err << "simulate: cannot open '" << json_path << "' for writing\n";
            return kExitIo;
        }
        jf << j.dump(2) << "\n";
        jf.flush();
        if (!jf) {
            err << "simulate: write failed on '" << json_path << "'\n";
            return kExitIo;
        }
    }

    out << "simulate: N = " << report.sample_count << ", seed = " << report.seed
        << ", KS = " << fmt8(report.ks_statistic) << " (1% threshold "
        << fmt8(report.ks_threshold_1pct) << ") -> " << (report.pass ? "pass" : "FAIL") << "\n"
        << "wrote " << csv_path << " and " << json_path << "\n";
    return report.pass ? kExitOk : kExitCheckFailed;
}

int cmd_masses(std::ostream& out) {
    const auto m = analytic::regime_masses();
    out << "p_near = " << fmt8(m.near) << "  (reference: 91%)\n"
        << "p_mid  = " << fmt8(m.mid) << "  (reference: 9%)\n"
        << "p_far  = " << fmt8(m.far) << "  (reference: 0.04%)\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"separation statistics of random point pairs inside a cube"};
    app.require_subcommand(1);

    TableRequest table_req;
    std::string quantity = "both";
    auto* table = app.add_subcommand("table", "emit a lambda/density/CDF table as CSV");
    table->add_option("--points", table_req.points, "number of grid rows")
        ->check(CLI::Range(2, 10000000))
        ->capture_default_str();
    table->add_option("--quantity", quantity, "pdf, cdf or both")
        ->check(CLI::IsMember({"pdf", "cdf", "both"}))
        ->capture_default_str();
    table->add_option("--side", table_req.side_length, "cube side length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    table->add_option("--out", table_req.output_path, "output file, or - for stdout")
        ->capture_default_str();

    double verify_tol = 1e-9;
    int verify_grid = 300;
    auto* verify = app.add_subcommand("verify", "run the full verification battery");
    verify->add_option("--tol", verify_tol, "quadrature tolerance for the battery")
        ->capture_default_str();
    verify->add_option("--grid", verify_grid, "points in the oracle comparison grid")
        ->check(CLI::Range(3, 1000000))
        ->capture_default_str();

    mc::SimConfig sim;
    int threads = 1;
    std::string sim_out = "simulation";
    auto* simulate = app.add_subcommand("simulate", "sample separations and test the fit");
    simulate->add_option("--samples", sim.sample_count, "number of point pairs")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
        ->capture_default_str();
    simulate->add_option("--bins", sim.bin_count, "histogram bins")
        ->check(CLI::Range(2, 10000000))
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
    simulate
        ->add_option("--threads", threads,
                     "sampling partitions run in parallel; 1 = single sequential stream")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();
    simulate->add_option("--out", sim_out, "output path prefix (.csv and .json appended)")
        ->capture_default_str();

    auto* masses = app.add_subcommand("masses", "report the probability mass of each regime");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (table->parsed()) {
            if (quantity == "pdf") table_req.quantity = TableRequest::Quantity::pdf;
            else if (quantity == "cdf") table_req.quantity = TableRequest::Quantity::cdf;
            else table_req.quantity = TableRequest::Quantity::both;
            return cmd_table(table_req, out, err);
        }
        if (verify->parsed()) return cmd_verify(verify_tol, verify_grid, out);
        if (simulate->parsed()) return cmd_simulate(sim, threads, sim_out, out, err);
        if (masses->parsed()) return cmd_masses(out);
    } catch (const quadrature_error& e) {
        err << "error: " << e.what() << " (best estimate " << e.best_estimate()
            << ", achieved error " << e.achieved_error() << ")\n";
        return kExitCheckFailed;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace cubesep::cli
