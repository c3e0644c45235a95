// Command line front end for the GRANIT AC-mode spectroscopy simulator.
// Uses only the public C API so it doubles as an integration test of
// the shared library boundary.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "granit.h"

namespace {

using ConfigPtr =
    std::unique_ptr<granit_config, decltype(&granit_config_destroy)>;

int fail(const granit_config* cfg, granit_status status) {
    const char* msg = cfg ? granit_config_error(cfg) : granit_last_error();
    std::fprintf(stderr, "error: %s\n", (msg && *msg) ? msg : "unknown failure");
    return status == GRANIT_ERROR_USAGE ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRANIT AC-mode gravitational resonance spectroscopy simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // allow the shared flags after the subcommand

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    std::string format;
    int workers = -1;

    app.add_option("--config", config_path, "Configuration file (KEY = VALUE lines)")
        ->check(CLI::ExistingFile);
    app.add_option("--set", overrides, "Override a single key, e.g. --set excitation.B1_mT=0.8")
        ->take_all();
    app.add_option("--out", out_dir, "Output directory (created if missing)");
    app.add_option("--workers", workers, "Worker thread count (0 = all cores)");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* eigen = app.add_subcommand("eigen", "Bouncer eigensystem and preparation tables");
    auto* fieldmap = app.add_subcommand("fieldmap", "Wire-array field profile along the mirror");
    auto* adiab = app.add_subcommand("adiabaticity", "Spin depolarization scan over (B0y, f)");
    auto* resonance = app.add_subcommand("resonance", "Resonant transition curve and line splitting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // command line misuse
    }

    ConfigPtr cfg(granit_config_create(), &granit_config_destroy);
    if (!cfg) {
        std::fprintf(stderr, "error: out of memory\n");
        return 1;
    }

    if (!config_path.empty()) {
        if (auto s = granit_config_load(cfg.get(), config_path.c_str())) {
            return fail(cfg.get(), s);
        }
    }
    for (const auto& kv : overrides) {
        if (auto s = granit_config_set(cfg.get(), kv.c_str())) {
            return fail(cfg.get(), s);
        }
    }
    if (workers < 0) {
        // Environment default applies only when neither the flag nor the
        // config file pins a worker count.
        if (const char* env = std::getenv("GRANIT_WORKERS")) {
            if (auto s = granit_config_set(
                    cfg.get(), ("run.workers=" + std::string(env)).c_str())) {
                return fail(cfg.get(), s);
            }
        }
    } else {
        const std::string kv = "run.workers=" + std::to_string(workers);
        if (auto s = granit_config_set(cfg.get(), kv.c_str())) {
            return fail(cfg.get(), s);
        }
    }
    if (!format.empty()) {
        const std::string kv = "run.output_format=" + format;
        if (auto s = granit_config_set(cfg.get(), kv.c_str())) {
            return fail(cfg.get(), s);
        }
    }
    if (auto s = granit_config_validate(cfg.get())) return fail(cfg.get(), s);

    std::string report(1 << 16, '\0');
    granit_status s = GRANIT_OK;
    if (*eigen) {
        s = granit_run_eigen(cfg.get(), out_dir.c_str(), report.data(),
                             report.size());
    } else if (*fieldmap) {
        s = granit_run_fieldmap(cfg.get(), out_dir.c_str(), report.data(),
                                report.size());
    } else if (*adiab) {
        s = granit_run_adiabaticity(cfg.get(), out_dir.c_str(), report.data(),
                                    report.size());
    } else if (*resonance) {
        s = granit_run_resonance(cfg.get(), out_dir.c_str(), report.data(),
                                 report.size());
    }
    if (s != GRANIT_OK) return fail(cfg.get(), s);

    std::fputs(report.c_str(), stdout);
    std::printf("outputs written to %s\n", out_dir.c_str());
    return 0;
}
