// crlab: build immersion maps, run verification suites, export sweeps and
// b-plane grids. See README.md for the file formats.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "crlab/serialize.hpp"
#include "crlab/suites.hpp"

namespace {

// Writes to --out when given, stdout otherwise.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw crlab::Error("cannot open output file: " + path);
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_report(const crlab::VerificationReport& report, const std::string& out_path,
                  const std::string& format) {
    OutputTarget out(out_path);
    if (format == "csv") {
        out.stream() << "id,anchor,status,margin\n";
        out.stream().precision(17);
        for (const auto& c : report.checks)
            out.stream() << c.id << ",\"" << c.anchor << "\","
                         << (c.skipped ? "skip" : (c.pass ? "pass" : "fail")) << ',' << c.margin
                         << '\n';
        return;
    }
    out.stream() << report.to_json().dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"immersion maps of the level hypersurfaces of the affine quadric: "
                 "construction and numerical verification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    crlab::SuiteConfig cfg;
    std::string out_path;
    std::string format = "json";

    app.add_option("--seed", cfg.seed, "sampler seed")->envname("CRLAB_SEED");
    app.add_option("--out", out_path, "output path (stdout if omitted)");
    app.add_option("--format", format, "output format for reports")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* build = app.add_subcommand("build", "construct an immersion map and print a_n, t_n");
    int build_n = 1;
    build->add_option("--n", build_n, "map index n >= 1")->required()->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    verify->add_option("--suite", suite, "construction|nondegeneracy|fibers|phi|witnesses|all")
        ->check(CLI::IsMember({"construction", "nondegeneracy", "fibers", "phi", "witnesses", "all"}));
    verify->add_option("--t", cfg.extra_witness_t, "extra level for the witnesses suite");
    verify->add_option("--n-max", cfg.n_max, "construction identity range");
    verify->add_option("--samples", cfg.samples, "samples per hypersurface check");
    verify->add_option("--scan-samples", cfg.scan_samples, "samples per injectivity scan");
    verify->add_option("--fiber-samples", cfg.fiber_samples, "samples per fiber check");
    verify->add_option("--grid", cfg.grid, "phi minimization grid resolution");
    verify->add_option("--refine-iters", cfg.refine_iters, "phi refinement iterations");
    verify->add_option("--tol-construction", cfg.tol_construction, "coefficient residual tolerance");
    verify->add_option("--tol-anchor", cfg.tol_anchor, "closed-form anchor tolerance");
    verify->add_option("--tol-arg", cfg.tol_arg, "arg-condition tolerance");
    verify->add_option("--tol-witness", cfg.tol_witness, "degeneracy witness tolerance");
    verify->add_option("--tol-fiber-roots", cfg.tol_fiber_roots, "fiber root match tolerance");
    verify->add_option("--tol-fiber-values", cfg.tol_fiber_values, "fiber value equality tolerance");
    verify->add_option("--tol-phi", cfg.tol_phi, "phi minimum tolerance");
    verify->add_option("--tol-argmin", cfg.tol_argmin, "phi argmin tolerance");
    verify->add_option("--tol-restrict", cfg.tol_restrict, "restriction consistency tolerance");
    verify->add_option("--level-gap", cfg.level_gap, "sibling level gap threshold");

    auto* sweep = app.add_subcommand("sweep", "per-t criterion and fiber margins as CSV");
    int sweep_n = 1, sweep_steps = 15, sweep_samples = 200;
    double t_min = 1.01, t_max = 1.15;
    sweep->add_option("--n", sweep_n, "map index")->check(CLI::PositiveNumber);
    sweep->add_option("--t-min", t_min, "lower level bound (> 1)");
    sweep->add_option("--t-max", t_max, "upper level bound");
    sweep->add_option("--steps", sweep_steps, "number of t steps")->check(CLI::PositiveNumber);
    sweep->add_option("--samples", sweep_samples, "samples per step")->check(CLI::PositiveNumber);

    auto* grid = app.add_subcommand("grid", "b-plane membership / phi grid as CSV");
    std::string what = "phi";
    int resolution = 501;
    grid->add_option("--what", what, "phi|D")->check(CLI::IsMember({"phi", "D"}));
    grid->add_option("--resolution", resolution, "grid resolution (>= 101)");

    auto* sample = app.add_subcommand("sample", "sample hypersurface points as CSV");
    double sample_t = 1.1;
    int sample_count = 1000;
    sample->add_option("--t", sample_t, "level t >= 1");
    sample->add_option("--count", sample_count, "number of points")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            const auto m = crlab::build_immersion(build_n);
            std::cout.precision(12);
            std::cout << "n = " << m.n << ", a = " << m.a << ", t = " << m.t_threshold
                      << ", K = " << m.K << '\n';
            if (!out_path.empty()) {
                OutputTarget out(out_path);
                out.stream() << crlab::immersion_to_json(m).dump(2) << '\n';
            }
            return 0;
        }
        if (*verify) {
            const auto report = crlab::run_suite(suite, cfg);
            write_report(report, out_path, format);
            int failed = 0;
            for (const auto& c : report.checks)
                if (!c.pass && !c.skipped) ++failed;
            std::cerr << "suite " << suite << ": " << report.checks.size() << " checks, " << failed
                      << " failed\n";
            return report.all_pass() ? 0 : 1;
        }
        if (*sweep) {
            OutputTarget out(out_path);
            crlab::write_sweep_csv(out.stream(), sweep_n, t_min, t_max, sweep_steps, sweep_samples,
                                   cfg.seed);
            return 0;
        }
        if (*grid) {
            OutputTarget out(out_path);
            crlab::write_grid_csv(out.stream(), what, resolution);
            return 0;
        }
        if (*sample) {
            OutputTarget out(out_path);
            crlab::write_points_csv(out.stream(),
                                    crlab::sample_level(crlab::LevelSpec(sample_t), sample_count,
                                                        cfg.seed));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
