#ifndef CECHLAP_CONFIG_HPP
#define CECHLAP_CONFIG_HPP

#include "cechlap/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cechlap {

/// Flat key/value experiment description. Epsilons and torus lengths stay as
/// the decimal strings they were written as, so exact thresholds survive.
struct ExperimentConfig {
    std::string space_kind = "flat_torus"; // flat_torus | sphere | point_cloud
    std::vector<std::string> lengths = {"1.0", "1.0"};
    double radius = 1.0;
    std::string points_file;

    std::vector<std::string> epsilons;
    std::size_t resolution = 200;
    std::string net_method = "greedy"; // greedy | lattice

    int qmax = 2;
    int degree_p = 1;
    std::size_t k_max = 10;

    std::vector<std::size_t> whitney_grids = {64, 128};
    std::size_t whitney_trials = 200;

    std::string output_dir = "out";
    std::uint64_t seed = 42;

    ModelSpace make_space() const;
    void validate() const; // throws std::invalid_argument on bad values
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::string& path);

} // namespace cechlap

#endif
