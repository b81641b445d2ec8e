// Command-line front end. Talks to the solver only through the C interface.
//
// Exit codes: 0 all checks pass, 2 a check failed, 1 runtime error, 64 usage.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "bksim/bksim.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitUsage = 64;

int report_error(bksim_status s) {
    std::fprintf(stderr, "bksim: %s: %s\n", bksim_status_name(s), bksim_last_error());
    return kExitError;
}

// Owns a string handed out by the library.
struct OwnedText {
    char* p = nullptr;
    ~OwnedText() { bksim_string_free(p); }
    void print() const {
        if (p) std::fputs(p, stdout);
    }
};

struct ConfigHandle {
    bksim_config* p = nullptr;
    ~ConfigHandle() { bksim_config_free(p); }
};

int print_defaults() {
    OwnedText text;
    if (bksim_status s = bksim_default_config(&text.p)) return report_error(s);
    text.print();
    return kExitPass;
}

int run_command(const std::string& config_path, const std::string& out_dir) {
    ConfigHandle cfg;
    if (bksim_status s = bksim_config_load(config_path.c_str(), &cfg.p)) return report_error(s);
    int pass = 0;
    OwnedText report;
    if (bksim_status s = bksim_run(cfg.p, out_dir.empty() ? nullptr : out_dir.c_str(), &pass, &report.p))
        return report_error(s);
    report.print();
    return pass ? kExitPass : kExitCheckFailed;
}

int mms_command(const std::string& config_path, int levels, bool temporal) {
    ConfigHandle cfg;
    if (bksim_status s = bksim_config_load(config_path.c_str(), &cfg.p)) return report_error(s);
    int pass = 0;
    OwnedText table;
    if (bksim_status s = bksim_mms(cfg.p, levels, temporal ? 1 : 0, &pass, &table.p)) return report_error(s);
    table.print();
    std::printf("%s\n", pass ? "orders: PASS" : "orders: FAIL");
    return pass ? kExitPass : kExitCheckFailed;
}

int check_command(const std::string& csv_path, const std::string& config_path) {
    ConfigHandle cfg;
    if (!config_path.empty())
        if (bksim_status s = bksim_config_load(config_path.c_str(), &cfg.p)) return report_error(s);
    int pass = 0;
    OwnedText report;
    if (bksim_status s = bksim_check_timeseries(csv_path.c_str(), cfg.p, &pass, &report.p))
        return report_error(s);
    report.print();
    return pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Darcy-Brinkman-Korteweg reactive displacement simulator"};
    app.set_version_flag("--version", std::string(bksim_version()));
    bool defaults_flag = false;
    app.add_flag("--print-defaults", defaults_flag, "Print every config key with its default and exit");

    std::string config_path, out_dir, csv_path, check_config;
    int levels = 3;
    bool temporal = false;

    CLI::App* run = app.add_subcommand("run", "Run a configured simulation and check the estimates");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides BKSIM_OUT and run.out_dir)");

    CLI::App* mms = app.add_subcommand("mms", "Manufactured-solution convergence study");
    mms->add_option("config", config_path, "Config file")->required();
    mms->add_option("--levels", levels, "Number of refinement levels")->check(CLI::Range(3, 8));
    mms->add_flag("--temporal", temporal, "Also run a dt-refinement study at the finest grid");

    CLI::App* check = app.add_subcommand("check", "Re-check the estimates on a timeseries CSV");
    check->add_option("timeseries", csv_path, "timeseries.csv")->required();
    check->add_option("--config", check_config, "Config supplying d, hmin and the decay regime");

    CLI::App* defaults = app.add_subcommand("print-defaults", "Print every config key with its default");

    app.require_subcommand(0, 1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (defaults_flag || defaults->parsed()) return print_defaults();
    if (run->parsed()) return run_command(config_path, out_dir);
    if (mms->parsed()) return mms_command(config_path, levels, temporal);
    if (check->parsed()) return check_command(csv_path, check_config);
    std::fputs(app.help().c_str(), stderr);
    return kExitUsage;
}
