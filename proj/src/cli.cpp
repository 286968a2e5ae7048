#include "roucir/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>

#include "roucir/convergence.hpp"
#include "roucir/io.hpp"
#include "roucir/models.hpp"
#include "roucir/noise.hpp"
#include "roucir/reflection.hpp"
#include "roucir/schemes.hpp"
#include "roucir/verify.hpp"

namespace roucir::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string>& known_schemes() {
    static const std::vector<std::string> names{"cir-euler", "sqrt-implicit", "rou-projected",
                                                "ou", "ou-squared-sum"};
    return names;
}

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

models::SimulationConfig load_config(const CommonOptions& options) {
    models::SimulationConfig config;
    if (options.config) config = models::parse_config_file(*options.config);
    if (options.horizon) config.horizon = *options.horizon;
    if (options.dt) {
        if (!(*options.dt > 0.0) || !(*options.dt <= config.horizon))
            throw models::ConfigError("config: --dt must lie in (0, T]");
        config.n_steps = static_cast<std::size_t>(std::llround(config.horizon / *options.dt));
    }
    if (options.seed) config.seed = *options.seed;
    return config;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    writer(out);
    if (!out) throw std::runtime_error("failed while writing '" + path.string() + "'");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::uint64_t elapsed_ms() const {
        return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
    }
};

void echo_config(io::RunManifest& manifest, const models::SimulationConfig& config) {
    manifest.set("config.y0", config.params.y0);
    manifest.set("config.a", config.params.a);
    manifest.set("config.b", config.params.b);
    manifest.set("config.sigma", config.params.sigma);
    manifest.set("config.epsilon", config.params.epsilon);
    manifest.set("config.hurst", config.params.hurst);
    manifest.set("config.T", config.horizon);
    manifest.set("config.n_steps", static_cast<std::uint64_t>(config.n_steps));
    manifest.set("config.seed", config.seed);
    manifest.set("config.replications", static_cast<std::uint64_t>(config.replications));
}

// Builds per-replication driving noise and records the generator actually
// used (Davies-Harte fallbacks must show up in the manifest).
class NoiseSource {
public:
    NoiseSource(const models::ModelParams& params, const noise::TimeGrid& grid) {
        if (params.hurst != 0.5)
            sampler_ = std::make_unique<noise::FbmSampler>(grid, params.hurst);
        grid_ = grid;
    }

    noise::NoisePath make(noise::RngSeed seed) const {
        if (sampler_) return sampler_->sample(seed);
        return noise::generate_bm_increments(grid_, seed);
    }

    void describe(io::RunManifest& manifest, const std::string& prefix = "noise") const {
        if (!sampler_) {
            manifest.set(prefix + ".kind", "brownian");
            return;
        }
        manifest.set(prefix + ".kind", "fractional");
        manifest.set(prefix + ".method", noise::to_string(sampler_->method_used()));
        if (sampler_->padding_doublings() > 0)
            manifest.add_warning("davies-harte padding doubled before eigenvalues turned "
                                 "nonnegative");
        if (sampler_->hosking_fallback())
            manifest.add_warning("davies-harte embedding failed; fell back to hosking");
    }

private:
    noise::TimeGrid grid_;
    std::unique_ptr<noise::FbmSampler> sampler_;
};

int guard(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const models::ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const models::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

void add_regime_warning(io::RunManifest& manifest, const models::ModelParams& params) {
    if (models::regime(params) == models::Regime::Subcritical)
        manifest.add_warning(
            "subcritical regime (a < sigma^2/4): no convergence guarantees apply");
}

}  // namespace

int run_simulate(const std::string& scheme, const CommonOptions& options, std::ostream& err) {
    if (std::find(known_schemes().begin(), known_schemes().end(), scheme) ==
        known_schemes().end()) {
        err << "error: unknown scheme '" << scheme << "'; valid schemes:";
        for (const auto& s : known_schemes()) err << ' ' << s;
        err << '\n';
        return kExitUsage;
    }
    return guard(err, [&]() -> int {
        Timer timer;
        const auto config = load_config(options);
        const noise::TimeGrid grid(config.horizon, config.n_steps);
        const auto& params = config.params;

        if ((scheme == "cir-euler" || scheme == "ou-squared-sum") && params.hurst != 0.5)
            throw std::invalid_argument(scheme + ": requires hurst = 0.5 (Brownian noise)");

        std::size_t dim = 1;
        if (scheme == "ou-squared-sum") {
            const double d = models::derive(params).d;
            const double rounded = std::round(d);
            if (!(rounded >= 1.0) || std::abs(d - rounded) > 1e-9)
                throw std::invalid_argument(
                    "ou-squared-sum: d = 4a/sigma^2 must be a positive integer, got " +
                    io::format_number(d));
            dim = static_cast<std::size_t>(rounded);
        }

        fs::create_directories(options.out_dir);
        io::RunManifest manifest;
        manifest.set("command", "simulate");
        manifest.set("version", kVersion);
        manifest.set("scheme", scheme);
        echo_config(manifest, config);
        manifest.set("grid.dt", grid.dt());

        const NoiseSource source(params, grid);
        source.describe(manifest);
        add_regime_warning(manifest, params);

        write_file(fs::path(options.out_dir) / "config.echo",
                   [&](std::ostream& out) { out << models::write_config(config); });
        manifest.add_file("config.echo");

        for (std::size_t rep = 0; rep < config.replications; ++rep) {
            const std::string name =
                config.replications == 1 ? "path.csv"
                                         : "path_" + std::to_string(rep) + ".csv";
            const noise::RngSeed seed{config.seed, rep};
            if (scheme == "rou-projected") {
                const auto out = schemes::simulate_rou_projected(params, source.make(seed));
                write_file(fs::path(options.out_dir) / name,
                           [&](std::ostream& os) { io::write_scheme_output_csv(os, out); });
                if (rep == 0) {
                    const auto hit = reflection::hitting_time(out.path, 0.0);
                    manifest.set("hitting.threshold", hit.threshold);
                    manifest.set("hitting.tau_time",
                                 hit.tau_time ? io::format_number(*hit.tau_time)
                                              : std::string("none"));
                }
            } else {
                models::SamplePath path;
                if (scheme == "cir-euler") {
                    path = schemes::euler_cir_full_truncation(params, source.make(seed));
                } else if (scheme == "sqrt-implicit") {
                    path = schemes::simulate_sqrt_process(params, source.make(seed));
                } else if (scheme == "ou") {
                    path = schemes::simulate_ou(params, source.make(seed));
                } else {  // ou-squared-sum
                    std::vector<noise::NoisePath> noises;
                    noises.reserve(dim);
                    for (std::size_t i = 0; i < dim; ++i)
                        noises.push_back(source.make({config.seed, rep * dim + i}));
                    path = schemes::ou_squared_sum(dim, params, noises);
                }
                write_file(fs::path(options.out_dir) / name,
                           [&](std::ostream& os) { io::write_sample_path_csv(os, path); });
                if (rep == 0 && (scheme == "cir-euler" || scheme == "sqrt-implicit")) {
                    const auto hit = reflection::hitting_time(path, 0.0);
                    manifest.set("hitting.threshold", hit.threshold);
                    manifest.set("hitting.tau_time",
                                 hit.tau_time ? io::format_number(*hit.tau_time)
                                              : std::string("none"));
                }
            }
            manifest.add_file(name);
        }

        manifest.set("wall_time_ms", timer.elapsed_ms());
        write_file(fs::path(options.out_dir) / "manifest.txt",
                   [&](std::ostream& os) { manifest.write(os); });
        return kExitOk;
    });
}

int run_figure1(const std::vector<double>& hurst_list, std::optional<double> epsilon,
                const CommonOptions& options, std::ostream& err) {
    const std::vector<double> hursts =
        hurst_list.empty() ? std::vector<double>{0.6, 0.7, 0.8, 0.9} : hurst_list;
    for (double h : hursts) {
        if (!(h >= 0.5 && h < 1.0)) {
            err << "error: hurst " << h << " outside [0.5, 1)\n";
            return kExitUsage;
        }
    }
    return guard(err, [&]() -> int {
        Timer timer;
        auto config = load_config(options);
        const noise::TimeGrid grid(config.horizon, config.n_steps);
        const double eps = epsilon.value_or(1e-4);

        fs::create_directories(options.out_dir);
        io::RunManifest manifest;
        manifest.set("command", "figure1");
        manifest.set("version", kVersion);
        manifest.set("epsilon", eps);
        manifest.set("grid.dt", grid.dt());
        manifest.set("seed", config.seed);

        for (double h : hursts) {
            models::ModelParams params;
            params.y0 = 0.25;
            params.b = 1.0;
            params.sigma = 1.0;
            params.hurst = h;
            params.a = h == 0.5 ? 0.25 : 0.0;
            params.epsilon = eps;
            models::validate(params);

            const NoiseSource source(params, grid);
            source.describe(manifest, "hurst." + fmt_g(h) + ".noise");
            const auto y = schemes::simulate_sqrt_process(params, source.make({config.seed, 0}));
            const auto l = reflection::epsilon_integral_reflection(y, eps);

            std::vector<double> times(grid.n_steps + 1);
            for (std::size_t k = 0; k <= grid.n_steps; ++k) times[k] = grid.time(k);

            const std::string stem = "figure1_H" + fmt_g(h);
            write_file(fs::path(options.out_dir) / (stem + ".csv"), [&](std::ostream& os) {
                io::write_columns_csv(os, {"t", "Y", "L_epsilon_integral"},
                                      {times, y.values, l.values});
            });
            write_file(fs::path(options.out_dir) / (stem + ".svg"), [&](std::ostream& os) {
                io::write_svg_chart(
                    os,
                    {{times, y.values, "black", 1.2, "Y (sqrt FCIR, eps=" + fmt_g(eps) + ")"},
                     {times, l.values, "red", 1.2, "eps-integral"}},
                    "H = " + fmt_g(h), "t", "value");
            });
            manifest.add_file(stem + ".csv");
            manifest.add_file(stem + ".svg");
            manifest.set("hurst." + fmt_g(h) + ".terminal_L", l.values.back());
        }
        manifest.set("wall_time_ms", timer.elapsed_ms());
        write_file(fs::path(options.out_dir) / "manifest.txt",
                   [&](std::ostream& os) { manifest.write(os); });
        return kExitOk;
    });
}

int run_figure2(const std::vector<double>& eps_ladder, const CommonOptions& options,
                std::ostream& err) {
    return guard(err, [&]() -> int {
        Timer timer;
        auto config = load_config(options);
        const noise::TimeGrid grid(config.horizon, config.n_steps);
        const std::vector<double> ladder =
            eps_ladder.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.1, 1e-4} : eps_ladder;

        models::ModelParams base;
        base.y0 = 0.25;
        base.b = 1.0;
        base.sigma = 1.0;
        base.hurst = 0.6;
        base.a = 0.0;
        models::validate(base);

        fs::create_directories(options.out_dir);
        io::RunManifest manifest;
        manifest.set("command", "figure2");
        manifest.set("version", kVersion);
        manifest.set("grid.dt", grid.dt());
        manifest.set("seed", config.seed);
        manifest.set("hurst", base.hurst);

        const NoiseSource source(base, grid);
        source.describe(manifest);
        const auto report =
            convergence::epsilon_ladder(base, ladder, source.make({config.seed, 0}));

        std::vector<double> times(grid.n_steps + 1);
        for (std::size_t k = 0; k <= grid.n_steps; ++k) times[k] = grid.time(k);

        static const std::vector<std::string> palette{"red",    "orange", "green",
                                                      "blue",   "purple", "brown"};
        std::vector<io::Curve> curves;
        const std::string run_tag = "_seed" + std::to_string(config.seed) + "_dt" +
                                    fmt_g(grid.dt());
        for (std::size_t i = 0; i < report.rungs.size(); ++i) {
            const auto& rung = report.rungs[i];
            const std::string name = "rung_eps" + fmt_g(rung.epsilon) + run_tag + ".csv";
            write_file(fs::path(options.out_dir) / name, [&](std::ostream& os) {
                io::write_columns_csv(os, {"t", "Y", "L_epsilon_integral"},
                                      {times, rung.y.values, rung.l.values});
            });
            manifest.add_file(name);
            curves.push_back({times, rung.y.values, palette[i % palette.size()], 1.0,
                              "eps = " + fmt_g(rung.epsilon)});

            const auto comparison = reflection::compare_estimators(
                "eps-integral(eps=" + fmt_g(rung.epsilon) + ")", rung.l.values,
                "clamp-accumulator", report.reference.reflection.values);
            manifest.set("estimator_gap.eps" + fmt_g(rung.epsilon), comparison.sup_gap);
        }
        curves.push_back({times, report.reference.path.values, "black", 2.5, "RFOU reference"});

        const std::string ref_name = "reference_rfou" + run_tag + ".csv";
        write_file(fs::path(options.out_dir) / ref_name, [&](std::ostream& os) {
            io::write_scheme_output_csv(os, report.reference);
        });
        manifest.add_file(ref_name);

        write_file(fs::path(options.out_dir) / "figure2.svg", [&](std::ostream& os) {
            io::write_svg_chart(os, curves, "sqrt FCIR vs RFOU, H = " + fmt_g(base.hurst), "t",
                                "Y");
        });
        manifest.add_file("figure2.svg");

        for (std::size_t i = 0; i < report.epsilons.size(); ++i) {
            manifest.set("sup_gap_Y.eps" + fmt_g(report.epsilons[i]), report.sup_gap_y[i]);
            manifest.set("sup_gap_L.eps" + fmt_g(report.epsilons[i]), report.sup_gap_l[i]);
        }
        manifest.set("ladder_ordering_held", report.monotone_y ? "true" : "false");
        manifest.set("max_ordering_violation", report.max_ordering_violation);
        manifest.set("wall_time_ms", timer.elapsed_ms());
        write_file(fs::path(options.out_dir) / "manifest.txt",
                   [&](std::ostream& os) { manifest.write(os); });
        return kExitOk;
    });
}

int run_verify(const std::string& suite, std::ostream& out, std::ostream& err, bool verbose) {
    if (!verify::known_suite(suite)) {
        err << "error: unknown suite '" << suite
            << "'; valid suites: noise schemes reflection convergence all\n";
        return kExitUsage;
    }
    const auto results = verify::run_suite(suite);
    // Single-suite runs print their per-case tables; `all` stays compact
    // unless asked.
    const bool detailed = verbose || suite != "all";
    return verify::print_results(out, results, detailed) ? kExitOk : kExitVerifyFailed;
}

}  // namespace roucir::cli
