#include "cechlap/pipeline.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Čech nerves, combinatorial Hodge Laplacians and their bound audits"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::size_t treves_m = 4;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "experiment config file");
        if (config_required) opt->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    };

    auto* net = app.add_subcommand("net", "build epsilon-nets");
    auto* nerve = app.add_subcommand("nerve", "build nets and nerves");
    auto* spectrum = app.add_subcommand("spectrum", "nerve Laplacian spectra");
    auto* audit = app.add_subcommand("audit", "run every quantitative bound audit");
    auto* treves = app.add_subcommand("treves", "bidiagonal counterexample report");
    auto* whitney = app.add_subcommand("whitney-check", "Whitney-form identity residuals");
    auto* compare = app.add_subcommand("compare-torus", "nerve vs analytic torus spectrum");
    auto* run = app.add_subcommand("run", "full pipeline: net, nerve, spectra, audits");
    for (auto* sub : {net, nerve, spectrum, audit, whitney, compare, run}) add_common(sub, true);
    add_common(treves, false);
    treves->add_option("--m", treves_m, "number of columns of the bidiagonal matrix")
        ->check(CLI::Range(std::size_t(2), std::size_t(100000)));

    CLI11_PARSE(app, argc, argv);

    try {
        if (treves->parsed()) return cechlap::cmd_treves(treves_m, out_dir);
        cechlap::ExperimentConfig cfg = cechlap::load_config(config_path);
        if (net->parsed()) return cechlap::cmd_net(cfg, out_dir);
        if (nerve->parsed()) return cechlap::cmd_nerve(cfg, out_dir);
        if (spectrum->parsed()) return cechlap::cmd_spectrum(cfg, out_dir);
        if (audit->parsed()) return cechlap::cmd_audit(cfg, out_dir);
        if (whitney->parsed()) return cechlap::cmd_whitney_check(cfg, out_dir);
        if (compare->parsed()) return cechlap::cmd_compare_torus(cfg, out_dir);
        if (run->parsed()) return cechlap::cmd_run(cfg, out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
