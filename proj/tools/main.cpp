#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fftseso/config.hpp"
#include "fftseso/io.hpp"
#include "fftseso/lyapunov.hpp"
#include "fftseso/observer.hpp"
#include "fftseso/sim.hpp"

namespace {

using namespace fftseso;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    std::map<std::string, std::string> overrides;
};

SimConfig resolve_config(const CommonFlags& flags) {
    SimConfig cfg = flags.config_path.empty() ? SimConfig::defaults()
                                              : load_config(flags.config_path);
    if (!flags.overrides.empty()) {
        // CLI flags win over the config file: render, merge, rebuild.
        std::map<std::string, std::string> merged;
        // config_from_overrides starts from defaults, so re-apply the file
        // values first when a file was given.
        if (!flags.config_path.empty()) {
            std::istringstream rendered(config_to_string(cfg));
            std::string line;
            while (std::getline(rendered, line)) {
                const auto hash = line.find('#');
                if (hash != std::string::npos) {
                    line = line.substr(0, hash);
                }
                const auto eq = line.find('=');
                if (eq == std::string::npos) {
                    continue;
                }
                auto trim = [](std::string s) {
                    const auto b = s.find_first_not_of(" \t");
                    const auto e = s.find_last_not_of(" \t");
                    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
                };
                merged[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
            }
        }
        for (const auto& [k, v] : flags.overrides) {
            merged[k] = v;
        }
        cfg = config_from_overrides(merged);
    }
    return cfg;
}

std::string run_basename(const SimConfig& cfg, bool baseline_suffix) {
    std::string name = std::string(scenario_name(cfg.scenario)) +
                       (cfg.noise_on ? "_noisy" : "_noisefree");
    if (baseline_suffix && cfg.baselines_on) {
        name += "_baselines";
    }
    return name;
}

RunSummary execute_run(const SimConfig& cfg, const std::string& out_dir, bool baseline_suffix) {
    const SimRecord rec = run_scenario(cfg);
    const std::string base = run_basename(cfg, baseline_suffix);
    std::filesystem::create_directories(out_dir);
    emit_csv(rec, out_dir + "/" + base + ".csv");
    emit_plots(rec, out_dir + "/" + base + ".svg");
    return summarize(base, rec);
}

void print_certificate(const char* label, const EsoGainReport& report, double p) {
    std::printf("%s\n", label);
    std::printf("  P = [[%.12g, %.12g], [%.12g, %.12g]]  (Q = I)\n", report.certificate.P(0, 0),
                report.certificate.P(0, 1), report.certificate.P(1, 0),
                report.certificate.P(1, 1));
    std::printf("  lambda(P): min %.12g, max %.12g; lambda_min(Q) = %.12g\n",
                report.certificate.lambda_min_P, report.certificate.lambda_max_P,
                report.certificate.lambda_min_Q);
    std::printf("  gamma1 = %.12g, gamma2 = %.12g\n", report.gamma1, report.gamma2);
    std::printf("  lmax/lmin ratio = %.12g; gamma1 %s the robustness-corollary ratio%s\n",
                report.certificate.eigenvalue_ratio(),
                report.gamma1_meets_ratio ? "meets" : "does not meet",
                report.gamma1_ratio_tight ? " (tight)" : "");
    std::printf("  mu = %.12g in window ]0, %.12g[\n", report.mu, report.mu_upper);
    std::printf("  Gamma1 = %.12g, Gamma2 = %.12g\n", report.Gamma1, report.Gamma2);
    std::printf("  settling bound at V0 = 1: %.6g s (two-term), %.6g s (single-term)\n",
                settling_time_ffts(report.Gamma1, report.Gamma2, 1.0 / p, 1.0),
                settling_time_fts(report.Gamma2, 1.0 / p, 1.0));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SE(3) fast finite-time extended state observer simulator"};
    app.set_help_flag("--help", "print help"); // frees -h; --h is the step size
    app.require_subcommand(1);

    CommonFlags flags;
    std::string scenario, noise, baselines, reject, seed, step, duration;

    auto add_common = [&](CLI::App* cmd, bool with_run_flags) {
        cmd->add_option("--config", flags.config_path, "flat key = value config file");
        cmd->add_option("--out", flags.out_dir, "output directory");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--h", step, "integrator step size (s)");
        cmd->add_option("--duration", duration, "simulated duration (s)");
        if (with_run_flags) {
            cmd->add_option("--scenario", scenario,
                            "hover | slow_swing | fast_swing | high_pitch");
            cmd->add_option("--noise", noise, "on | off");
            cmd->add_option("--baselines", baselines, "on | off");
            cmd->add_option("--reject", reject, "on | off (controller feedforward)");
        }
    };

    CLI::App* cmd_run = app.add_subcommand("run", "run one scenario");
    add_common(cmd_run, true);
    CLI::App* cmd_suite = app.add_subcommand(
        "suite", "all four scenarios x {noise-free, noisy} x {plain, +baselines}");
    add_common(cmd_suite, false);

    CLI::App* cmd_gains = app.add_subcommand("gains", "gain tooling");
    CLI::App* cmd_gains_check =
        cmd_gains->add_subcommand("check", "print certificates and constraint windows");
    cmd_gains_check->add_option("--config", flags.config_path, "config file");

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force oracles");
    CLI::App* cmd_lemma5 = cmd_oracle->add_subcommand(
        "lemma5", "grid argmax of the noise-gap function");
    std::string mu_text = "1 0 0";
    double alpha = 0.3;
    double grid_step = 1e-3;
    cmd_lemma5->add_option("--mu", mu_text, "noise vector, e.g. \"1 0 0\"");
    cmd_lemma5->add_option("--alpha", alpha, "exponent in ]0, 1/2[");
    cmd_lemma5->add_option("--step", grid_step, "grid resolution");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!scenario.empty()) flags.overrides["scenario"] = scenario;
        if (!noise.empty()) flags.overrides["noise"] = noise;
        if (!baselines.empty()) flags.overrides["baselines"] = baselines;
        if (!reject.empty()) flags.overrides["reject"] = reject;
        if (!seed.empty()) flags.overrides["seed"] = seed;
        if (!step.empty()) flags.overrides["h"] = step;
        if (!duration.empty()) flags.overrides["duration"] = duration;

        if (cmd_run->parsed()) {
            const SimConfig cfg = resolve_config(flags);
            const RunSummary summary = execute_run(cfg, flags.out_dir, false);
            emit_summary({summary}, flags.out_dir + "/summary.json");
            std::printf("%s: max |e_phi| %.6g N, max |e_tau| %.6g N m, terminal %.3g / %.3g\n",
                        summary.name.c_str(), summary.max_e_phi, summary.max_e_tau,
                        summary.terminal_e_phi, summary.terminal_e_tau);
            std::printf("wrote %s/%s.{csv,svg} and summary.json\n", flags.out_dir.c_str(),
                        summary.name.c_str());
            return 0;
        }

        if (cmd_suite->parsed()) {
            const SimConfig base = resolve_config(flags);
            std::vector<SimConfig> configs;
            for (const ScenarioKind kind :
                 {ScenarioKind::Hovering, ScenarioKind::SlowSwing, ScenarioKind::FastSwing,
                  ScenarioKind::HighPitch}) {
                for (const bool with_noise : {false, true}) {
                    for (const bool with_baselines : {false, true}) {
                        SimConfig cfg = base;
                        cfg.scenario = kind;
                        cfg.noise_on = with_noise;
                        cfg.baselines_on = with_baselines;
                        configs.push_back(cfg);
                    }
                }
            }
            // Runs own their state and RNG; order of results is fixed.
            std::vector<std::future<RunSummary>> jobs;
            jobs.reserve(configs.size());
            for (const SimConfig& cfg : configs) {
                jobs.push_back(std::async(std::launch::async, [cfg, &flags] {
                    return execute_run(cfg, flags.out_dir, true);
                }));
            }
            std::vector<RunSummary> summaries;
            summaries.reserve(jobs.size());
            for (auto& job : jobs) {
                summaries.push_back(job.get());
            }
            emit_summary(summaries, flags.out_dir + "/summary.json");
            for (const RunSummary& s : summaries) {
                std::printf("%-28s max |e_phi| %10.4g N  max |e_tau| %10.4g N m%s%s\n",
                            s.name.c_str(), s.max_e_phi, s.max_e_tau,
                            s.leso_singularity ? "  [leso-singularity]" : "",
                            s.nonfinite ? "  [non-finite]" : "");
            }
            std::printf("wrote %zu runs to %s (summary.json)\n", summaries.size(),
                        flags.out_dir.c_str());
            return 0;
        }

        if (cmd_gains_check->parsed()) {
            const SimConfig cfg = resolve_config(flags);
            int status = 0;
            try {
                print_certificate("translational observer", validate_gains_t(cfg.gains_t),
                                  cfg.gains_t.p.p);
            } catch (const InvalidGains& e) {
                std::printf("translational observer: INVALID (%s)\n", e.what());
                status = 1;
            }
            try {
                print_certificate("rotational observer", validate_gains_a(cfg.gains_a),
                                  cfg.gains_a.p.p);
            } catch (const InvalidGains& e) {
                std::printf("rotational observer: INVALID (%s)\n", e.what());
                status = 1;
            }
            return status;
        }

        if (cmd_lemma5->parsed()) {
            std::stringstream ss(mu_text);
            std::vector<double> parts;
            double value = 0.0;
            while (ss >> value) {
                parts.push_back(value);
            }
            if (parts.empty()) {
                throw DomainError("oracle lemma5: --mu needs at least one number");
            }
            VecN mu(static_cast<Eigen::Index>(parts.size()));
            for (std::size_t i = 0; i < parts.size(); ++i) {
                mu(static_cast<Eigen::Index>(i)) = parts[i];
            }
            GridSpec grid;
            grid.step = grid_step;
            const VecN found = noise_gap_argmax_oracle(mu, alpha, grid);
            const VecN expected = -0.5 * mu;
            std::printf("grid argmax:");
            for (Eigen::Index i = 0; i < found.size(); ++i) {
                std::printf(" %.9g", found(i));
            }
            std::printf("\nanalytic -mu/2:");
            for (Eigen::Index i = 0; i < expected.size(); ++i) {
                std::printf(" %.9g", expected(i));
            }
            const double err = (found - expected).norm();
            const double tol = 2.0 * grid_step * mu.norm();
            std::printf("\ndistance %.3g (tolerance %.3g): %s\n", err, tol,
                        err <= tol ? "consistent" : "INCONSISTENT");
            return err <= tol ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
