#ifndef CECHLAP_PIPELINE_HPP
#define CECHLAP_PIPELINE_HPP

#include "cechlap/config.hpp"
#include "cechlap/whitney.hpp"

#include <string>
#include <vector>

namespace cechlap {

struct ComparisonRow {
    std::string epsilon;
    std::size_t k = 0;
    double lambda_x = 0.0;
    double lambda_m = 0.0;
    double ratio = 0.0; // lambda_M / lambda_X, meaningful off the harmonic rows
    bool harmonic = false;
};

struct CompareTorusResult {
    std::vector<ComparisonRow> rows;
    double ratio_min = 0.0, ratio_max = 0.0, spread = 0.0;
    bool harmonic_match = true; // nerve zero multiplicity == b_p at every epsilon
    std::string csv;
    std::string band_json;
};

/// Theorem-style two-sided comparison on the flat 2-torus: positive nerve
/// eigenvalues at degree p paired by rank with the analytic Hodge spectrum.
CompareTorusResult compare_torus(const ExperimentConfig& cfg);

struct PipelineResult {
    bool audits_passed = true;
    std::vector<std::string> aborted_epsilons; // guard-radius violations
    std::vector<std::string> files;
    std::string summary_json;
};

/// net -> nerve -> spectra -> audits for every epsilon; reports land under
/// out_dir/eps_<value>/. Byte-identical reruns for a fixed config and seed
/// (wall-clock metadata goes to a separate run_meta.json).
PipelineResult run_pipeline(const ExperimentConfig& cfg, const std::string& out_dir_override = "");

int cmd_net(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_nerve(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_spectrum(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_audit(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_whitney_check(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_compare_torus(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_run(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_treves(std::size_t m, const std::string& out_dir);

void write_text_file(const std::string& path, const std::string& content);

} // namespace cechlap

#endif
