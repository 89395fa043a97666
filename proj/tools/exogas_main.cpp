#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "exogas/diagnostics.hpp"
#include "exogas/runner.hpp"
#include "exogas/verification.hpp"

namespace {

std::string read_config_text(const std::string& path) {
    if (path.empty() || path == "default") return "";
    std::ifstream in(path);
    if (!in)
        throw exogas::ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(exogas::kVersion) +
                 " - spherically symmetric viscous radiative reactive gas "
                 "simulator (exterior domain, Lagrangian mass coordinates)"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path = "default";
    std::optional<std::string> out_dir;
    bool quiet = false;
    int threads = 1;
    app.add_option("--config", config_path, "run configuration file");
    app.add_option("--out", out_dir, "output directory override");
    app.add_flag("--quiet", quiet, "suppress progress output");
    app.add_option("--threads", threads,
                   "worker threads (sweep fan-out, MMS levels)");

    auto* cmd_run = app.add_subcommand("run", "integrate a configuration");
    std::string run_config = "default";
    cmd_run->add_option("config", run_config, "configuration file");

    auto* cmd_verify =
        app.add_subcommand("verify", "run and print the identity table");
    std::string verify_config = "default";
    cmd_verify->add_option("config", verify_config, "configuration file");

    auto* cmd_mms = app.add_subcommand("mms", "manufactured-solution study");
    std::string mms_case = "standard";
    int mms_levels = 3;
    cmd_mms->add_option("case", mms_case, "mms case name (standard)");
    cmd_mms->add_option("levels", mms_levels, "refinement levels");

    auto* cmd_roots = app.add_subcommand("roots", "entropy roots a1, a2");
    double roots_value = 0.0;
    cmd_roots->add_option("value", roots_value, "right-hand side C/min(R,c_v)")
        ->required();

    auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep");
    std::string sweep_config = "default";
    std::string sweep_param;
    std::vector<std::string> sweep_values;
    cmd_sweep->add_option("config", sweep_config, "configuration file");
    cmd_sweep->add_option("param", sweep_param, "config key to vary")
        ->required();
    cmd_sweep->add_option("values", sweep_values, "values to run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const std::string path =
                run_config != "default" ? run_config : config_path;
            auto cfg = exogas::parse_config(read_config_text(path));
            cfg.stepper.threads = threads;
            const auto report = exogas::run(cfg, out_dir, quiet);
            return report.exit_code;
        }
        if (cmd_verify->parsed()) {
            const std::string path =
                verify_config != "default" ? verify_config : config_path;
            auto cfg = exogas::parse_config(read_config_text(path));
            cfg.stepper.threads = threads;
            const auto rows = exogas::verify(cfg, out_dir, quiet);
            for (const auto& row : rows)
                if (!row.pass) return 1;
            return 0;
        }
        if (cmd_mms->parsed()) {
            exogas::PhysParams p;
            exogas::StepperConfig cfg;
            exogas::MmsCase mms(p);
            const auto study = exogas::convergence_study(
                mms, p, cfg, mms_levels, 32, 12.0, 0.4, 0.02, true, true,
                threads);
            std::cout << study.table_csv();
            if (out_dir) {
                std::filesystem::create_directories(*out_dir);
                std::ofstream of(std::filesystem::path(*out_dir) /
                                 "convergence.csv");
                of << study.table_csv();
            }
            return 0;
        }
        if (cmd_roots->parsed()) {
            const auto roots = exogas::entropy_roots(roots_value);
            std::printf("a1=%.12f a2=%.12f\n", roots.first, roots.second);
            return 0;
        }
        if (cmd_sweep->parsed()) {
            const std::string path =
                sweep_config != "default" ? sweep_config : config_path;
            const std::string text = read_config_text(path);
            for (const auto& value : sweep_values) {
                auto cfg = exogas::parse_config(text);
                exogas::apply_override(cfg, sweep_param, value);
                cfg.stepper.threads = 1;
                std::string sub = sweep_param + "=" + value;
                for (auto& ch : sub)
                    if (ch == '/' || ch == ' ') ch = '_';
                const std::string base =
                    exogas::resolve_out_dir(cfg, out_dir);
                const auto report = exogas::run(
                    cfg, (std::filesystem::path(base) / sub).string(), quiet);
                if (report.exit_code != 0) return report.exit_code;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
