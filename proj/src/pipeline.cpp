#include "cechlap/pipeline.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cechlap {

namespace fs = std::filesystem;

void write_text_file(const std::string& path, const std::string& content) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

namespace {

std::string out_base(const ExperimentConfig& cfg, const std::string& override_dir) {
    return override_dir.empty() ? cfg.output_dir : override_dir;
}

EpsilonNet make_net(const ModelSpace& space, const ExperimentConfig& cfg, const std::string& eps) {
    if (cfg.net_method == "lattice") return build_lattice_net(space, eps);
    return build_epsilon_net(space, eps, cfg.resolution);
}

std::string net_json(const EpsilonNet& net) {
    nlohmann::json j;
    j["epsilon"] = net.epsilon;
    j["method"] = net.method;
    j["resolution"] = net.resolution;
    j["count"] = net.centers.size();
    nlohmann::json centers = nlohmann::json::array();
    for (const auto& c : net.centers) centers.push_back(c.coords);
    j["centers"] = centers;
    j["grid_indices"] = net.grid_indices;
    return j.dump(2);
}

void write_run_meta(const std::string& dir, const ExperimentConfig& cfg) {
    nlohmann::json meta;
    auto now = std::chrono::system_clock::now();
    meta["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    meta["seed"] = cfg.seed;
    meta["output_dir"] = dir;
    write_text_file(dir + "/run_meta.json", meta.dump(2) + "\n");
}

std::vector<BoundReport> nerve_audits(const Nerve& nerve, const NerveStats& stats,
                                      const ExperimentConfig& cfg, std::size_t eps_idx) {
    std::vector<BoundReport> reports;
    const std::uint64_t base_seed = cfg.seed + 7919 * eps_idx;
    for (int q = 0; q <= cfg.qmax && q <= nerve.qmax; ++q) {
        reports.push_back(delta_norm_audit(nerve, stats, q));
        reports.push_back(rayleigh_delta_audit(nerve, stats, q, 100, base_seed + 2 * q));
        reports.push_back(rayleigh_coexact_audit(nerve, q, 100, base_seed + 2 * q + 1));
        reports.push_back(delta_sparsity_audit(nerve, stats, q));
    }
    reports.push_back(lower_bound_audit(nerve, stats, cfg.degree_p));
    return reports;
}

struct EpsilonBundle {
    Nerve nerve;
    NerveStats stats;
};

EpsilonBundle build_bundle(const ModelSpace& space, const ExperimentConfig& cfg,
                           const std::string& eps, int tuple_depth) {
    EpsilonNet net = make_net(space, cfg, eps);
    Nerve nerve = build_nerve(space, net, tuple_depth);
    NerveStats stats = nerve_stats(nerve);
    if (!stats.all_ok())
        throw std::runtime_error("nerve cardinality bound |S_q| <= nu^q/(q+1)! |X| violated");
    return {std::move(nerve), std::move(stats)};
}

} // namespace

CompareTorusResult compare_torus(const ExperimentConfig& cfg) {
    ModelSpace space = cfg.make_space();
    if (space.kind() != ModelSpace::Kind::FlatTorus || space.dim() != 2)
        throw std::invalid_argument("compare_torus: flat 2-torus only");
    const int p = cfg.degree_p;
    auto analytic_zero = torus_hodge_spectrum(space.torus().lengths[0], space.torus().lengths[1], p, 1);

    CompareTorusResult out;
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const auto& eps : cfg.epsilons) {
        EpsilonNet net = make_net(space, cfg, eps);
        Nerve nerve = build_nerve(space, net, p + 1);
        SpectrumReport spec = laplacian_spectrum(nerve, p);
        std::vector<double> positive;
        double lmax = spec.eigenvalues.empty() ? 1.0 : std::max(spec.eigenvalues.back(), 0.0);
        if (lmax <= 0) lmax = 1.0;
        for (double v : spec.eigenvalues)
            if (v >= spec.tau * lmax) positive.push_back(v);

        if (spec.betti != analytic_zero.zero_multiplicity) out.harmonic_match = false;
        for (int k = 0; k < spec.betti; ++k)
            out.rows.push_back({eps, std::size_t(k + 1), 0.0, 0.0, 0.0, true});

        std::size_t kcap = std::min(cfg.k_max, positive.size());
        auto analytic = torus_hodge_spectrum(space.torus().lengths[0], space.torus().lengths[1], p,
                                             std::max<std::size_t>(kcap, 1));
        for (std::size_t k = 0; k < kcap; ++k) {
            double lx = positive[k];
            double lm = analytic.eigenvalues[k];
            double ratio = lm / lx;
            out.rows.push_back({eps, k + 1, lx, lm, ratio, false});
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
    }
    if (rmax > 0) {
        out.ratio_min = rmin;
        out.ratio_max = rmax;
        out.spread = rmax / rmin;
    }

    std::ostringstream csv;
    csv.precision(17);
    csv << "epsilon,k,lambda_X,lambda_M,ratio,harmonic_flag\n";
    for (const auto& r : out.rows) {
        csv << r.epsilon << "," << r.k << "," << r.lambda_x << "," << r.lambda_m << ",";
        if (r.harmonic) csv << ",1\n";
        else csv << r.ratio << ",0\n";
    }
    out.csv = csv.str();

    nlohmann::json band;
    band["ratio_min"] = out.ratio_min;
    band["ratio_max"] = out.ratio_max;
    band["spread"] = out.spread;
    band["harmonic_match"] = out.harmonic_match;
    band["p"] = p;
    band["epsilons"] = cfg.epsilons;
    out.band_json = band.dump(2);
    return out;
}

PipelineResult run_pipeline(const ExperimentConfig& cfg, const std::string& out_dir_override) {
    ModelSpace space = cfg.make_space();
    PipelineResult result;
    const std::string base = out_base(cfg, out_dir_override);
    nlohmann::json summary;
    summary["epsilons"] = cfg.epsilons;
    nlohmann::json per_eps = nlohmann::json::array();

    for (std::size_t idx = 0; idx < cfg.epsilons.size(); ++idx) {
        const std::string& eps = cfg.epsilons[idx];
        const std::string dir = base + "/eps_" + eps;
        nlohmann::json entry;
        entry["epsilon"] = eps;
        try {
            EpsilonBundle bundle = build_bundle(space, cfg, eps, cfg.qmax + 1);
            const Nerve& nerve = bundle.nerve;

            write_text_file(dir + "/net.json", net_json(nerve.net) + "\n");
            result.files.push_back(dir + "/net.json");
            write_text_file(dir + "/nerve.json", nerve_to_json(nerve, bundle.stats) + "\n");
            write_text_file(dir + "/nerve.csv", nerve_to_csv(nerve));
            result.files.push_back(dir + "/nerve.json");

            nlohmann::json betti_row = nlohmann::json::array();
            for (int q = 0; q <= cfg.qmax && q <= nerve.qmax; ++q) {
                SpectrumReport spec = laplacian_spectrum(nerve, q);
                write_text_file(dir + "/spectrum_q" + std::to_string(q) + ".json",
                                spectrum_to_json(spec) + "\n");
                write_text_file(dir + "/spectrum_q" + std::to_string(q) + ".csv", spectrum_to_csv(spec));
                write_text_file(dir + "/delta_q" + std::to_string(q) + ".txt",
                                coboundary_to_coo(coboundary_matrix(nerve, q)));
                betti_row.push_back(spec.betti);
                result.files.push_back(dir + "/spectrum_q" + std::to_string(q) + ".json");
            }
            entry["betti"] = betti_row;
            entry["nu"] = bundle.stats.nu;
            entry["counts"] = bundle.stats.counts;

            auto reports = nerve_audits(nerve, bundle.stats, cfg, idx);
            bool pass = true;
            for (const auto& r : reports) pass = pass && r.pass;
            write_text_file(dir + "/audits.json", bound_reports_to_json(reports) + "\n");
            result.files.push_back(dir + "/audits.json");
            entry["audits_pass"] = pass;
            result.audits_passed = result.audits_passed && pass;
        } catch (const std::invalid_argument& e) {
            entry["aborted"] = e.what();
            result.aborted_epsilons.push_back(eps);
        }
        per_eps.push_back(entry);
    }
    summary["runs"] = per_eps;
    summary["audits_passed"] = result.audits_passed;
    result.summary_json = summary.dump(2);
    write_text_file(base + "/summary.json", result.summary_json + "\n");
    write_run_meta(base, cfg);
    return result;
}

int cmd_net(const ExperimentConfig& cfg, const std::string& out_dir) {
    ModelSpace space = cfg.make_space();
    const std::string base = out_base(cfg, out_dir);
    for (const auto& eps : cfg.epsilons) {
        EpsilonNet net = make_net(space, cfg, eps);
        write_text_file(base + "/eps_" + eps + "/net.json", net_json(net) + "\n");
        std::cout << "eps=" << eps << " centers=" << net.centers.size() << "\n";
    }
    write_run_meta(base, cfg);
    return 0;
}

int cmd_nerve(const ExperimentConfig& cfg, const std::string& out_dir) {
    ModelSpace space = cfg.make_space();
    const std::string base = out_base(cfg, out_dir);
    for (const auto& eps : cfg.epsilons) {
        EpsilonBundle bundle = build_bundle(space, cfg, eps, cfg.qmax + 1);
        const std::string dir = base + "/eps_" + eps;
        write_text_file(dir + "/net.json", net_json(bundle.nerve.net) + "\n");
        write_text_file(dir + "/nerve.json", nerve_to_json(bundle.nerve, bundle.stats) + "\n");
        write_text_file(dir + "/nerve.csv", nerve_to_csv(bundle.nerve));
        std::cout << "eps=" << eps << " counts=";
        for (std::size_t q = 0; q < bundle.stats.counts.size(); ++q)
            std::cout << (q ? "," : "") << bundle.stats.counts[q];
        std::cout << " nu=" << bundle.stats.nu << "\n";
    }
    write_run_meta(base, cfg);
    return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg, const std::string& out_dir) {
    ModelSpace space = cfg.make_space();
    const std::string base = out_base(cfg, out_dir);
    for (const auto& eps : cfg.epsilons) {
        EpsilonBundle bundle = build_bundle(space, cfg, eps, cfg.qmax + 1);
        const std::string dir = base + "/eps_" + eps;
        for (int q = 0; q <= cfg.qmax && q <= bundle.nerve.qmax; ++q) {
            SpectrumReport spec = laplacian_spectrum(bundle.nerve, q);
            write_text_file(dir + "/spectrum_q" + std::to_string(q) + ".json",
                            spectrum_to_json(spec) + "\n");
            write_text_file(dir + "/spectrum_q" + std::to_string(q) + ".csv", spectrum_to_csv(spec));
            write_text_file(dir + "/delta_q" + std::to_string(q) + ".txt",
                            coboundary_to_coo(coboundary_matrix(bundle.nerve, q)));
            write_text_file(dir + "/laplacian_q" + std::to_string(q) + ".txt",
                            laplacian_to_coo(laplacian_matrix(bundle.nerve, q)));
            std::cout << "eps=" << eps << " q=" << q << " betti=" << spec.betti << "\n";
        }
    }
    write_run_meta(base, cfg);
    return 0;
}

int cmd_audit(const ExperimentConfig& cfg, const std::string& out_dir) {
    ModelSpace space = cfg.make_space();
    const std::string base = out_base(cfg, out_dir);
    bool all_pass = true;
    for (std::size_t idx = 0; idx < cfg.epsilons.size(); ++idx) {
        const std::string& eps = cfg.epsilons[idx];
        EpsilonBundle bundle = build_bundle(space, cfg, eps, cfg.qmax + 1);
        auto reports = nerve_audits(bundle.nerve, bundle.stats, cfg, idx);
        for (const auto& r : reports) {
            all_pass = all_pass && r.pass;
            std::cout << (r.pass ? "pass " : "FAIL ") << r.bound << " eps=" << eps
                      << (r.vacuous ? " (vacuous)" : "") << "\n";
        }
        write_text_file(base + "/eps_" + eps + "/audits.json", bound_reports_to_json(reports) + "\n");
    }

    // Lemma 4.2 sweep over random sign matrices plus the bidiagonal counterexample
    std::mt19937_64 rng(cfg.seed);
    std::vector<BoundReport> sweep;
    for (int t = 0; t < 100; ++t) {
        auto a = random_sign_matrix(rng, 16, 4);
        auto inst = treves_operator(a);
        sweep.push_back(treves_norm_audit(inst));
        if (inst.r <= 10) sweep.push_back(gram_minor_audit(inst, 3));
    }
    for (const auto& r : sweep) all_pass = all_pass && r.pass;
    write_text_file(base + "/treves_sweep.json", bound_reports_to_json(sweep) + "\n");

    std::vector<CounterexampleReport> ce;
    for (std::size_t m : {std::size_t(2), std::size_t(4), std::size_t(10), std::size_t(50)}) {
        ce.push_back(treves_counterexample(m));
        all_pass = all_pass && ce.back().exact;
    }
    write_text_file(base + "/counterexample.csv", counterexample_csv(ce));
    write_run_meta(base, cfg);
    std::cout << (all_pass ? "all audits passed" : "AUDIT FAILURES") << "\n";
    return all_pass ? 0 : 2;
}

int cmd_whitney_check(const ExperimentConfig& cfg, const std::string& out_dir) {
    ModelSpace space = cfg.make_space();
    const std::string base = out_base(cfg, out_dir);
    bool all_pass = true;
    for (const auto& eps : cfg.epsilons) {
        EpsilonNet net = make_net(space, cfg, eps);
        Nerve nerve = build_nerve(space, net, 2);
        auto rows = whitney_residual_study(nerve, cfg.whitney_grids, cfg.seed);
        const std::string dir = base + "/eps_" + eps;
        write_text_file(dir + "/whitney_residuals.csv", residual_study_csv(rows));

        PartitionOfUnity pou = build_partition(space, net, cfg.whitney_grids.back());
        std::vector<BoundReport> reports;
        reports.push_back(check_lemma_A5(nerve, pou, 0, cfg.whitney_trials, cfg.seed));
        reports.push_back(check_lemma_A5(nerve, pou, 1, cfg.whitney_trials, cfg.seed + 1));
        double worst_leak = 0.0;
        for (int q = 0; q <= std::min(nerve.qmax, 2); ++q)
            for (const auto& s : nerve.simplices[q])
                worst_leak = std::max(worst_leak, support_leak(nerve, s, pou));
        double partition_dev = 0.0;
        {
            GridForm sum = GridForm::zero(0, pou.n, pou.lx, pou.ly);
            for (const auto& f : pou.phi) sum += f;
            for (double v : sum.a) partition_dev = std::max(partition_dev, std::abs(v - 1.0));
        }
        nlohmann::json j;
        j["epsilon"] = eps;
        j["support_leak_max"] = worst_leak;
        j["partition_sum_dev"] = partition_dev;
        j["lemma_a5"] = nlohmann::json::parse(bound_reports_to_json(reports));
        write_text_file(dir + "/whitney.json", j.dump(2) + "\n");
        for (const auto& r : reports) all_pass = all_pass && r.pass;
        all_pass = all_pass && worst_leak < 1e-10 && partition_dev < 1e-12;
        for (const auto& r : rows)
            std::cout << "eps=" << eps << " " << r.check << " N=" << r.n << " residual=" << r.residual
                      << (r.observed_order != 0.0 ? " order=" + std::to_string(r.observed_order) : "")
                      << "\n";
    }
    write_run_meta(base, cfg);
    return all_pass ? 0 : 2;
}

int cmd_compare_torus(const ExperimentConfig& cfg, const std::string& out_dir) {
    const std::string base = out_base(cfg, out_dir);
    auto result = compare_torus(cfg);
    write_text_file(base + "/compare.csv", result.csv);
    write_text_file(base + "/band.json", result.band_json + "\n");
    write_run_meta(base, cfg);
    std::cout << "band ratio_min=" << result.ratio_min << " ratio_max=" << result.ratio_max
              << " spread=" << result.spread << " harmonic_match=" << result.harmonic_match << "\n";
    return 0;
}

int cmd_run(const ExperimentConfig& cfg, const std::string& out_dir) {
    auto result = run_pipeline(cfg, out_dir);
    std::cout << result.summary_json << "\n";
    return result.audits_passed ? 0 : 2;
}

int cmd_treves(std::size_t m, const std::string& out_dir) {
    std::vector<CounterexampleReport> rows;
    rows.push_back(treves_counterexample(m));
    const auto& r = rows.back();
    nlohmann::json j;
    j["m"] = r.m;
    j["norm_av2"] = r.norm_av2.convert_to<double>();
    j["ratio_num"] = boost::multiprecision::numerator(r.ratio).convert_to<double>();
    j["ratio_den"] = boost::multiprecision::denominator(r.ratio).convert_to<double>();
    j["ratio"] = to_double(r.ratio);
    j["linear_reference"] = r.linear_reference;
    j["exact"] = r.exact;
    if (!out_dir.empty()) {
        write_text_file(out_dir + "/treves_m" + std::to_string(m) + ".json", j.dump(2) + "\n");
        write_text_file(out_dir + "/counterexample.csv", counterexample_csv(rows));
    }
    std::cout << j.dump(2) << "\n";
    return r.exact ? 0 : 2;
}

} // namespace cechlap
