#include "cechlap/bounds_audit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cechlap {

std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; i += 2) {
        double u1 = (double(rng() >> 11) + 0.5) * 0x1p-53; // in (0,1)
        double u2 = (double(rng() >> 11) + 0.5) * 0x1p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        out[i] = r * std::cos(2.0 * std::numbers::pi * u2);
        if (i + 1 < n) out[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    return out;
}

BoundReport delta_norm_audit(const Nerve& nerve, const NerveStats& stats, int q) {
    BoundReport rep;
    rep.bound = "lemma3.8_delta_norm";
    rep.comparison = "le_linear";
    rep.instance = {{"q", double(q)}, {"nu", double(stats.nu)},
                    {"epsilon", nerve.net.epsilon}, {"centers", double(nerve.net.centers.size())}};
    double rhs = double(q + 2) * double(stats.nu);
    rep.rhs_log = std::log(std::max(rhs, 1e-300));
    if (nerve.count(q) == 0 || q + 1 > nerve.qmax || nerve.count(q + 1) == 0) {
        rep.lhs = 0.0;
        rep.vacuous = nerve.count(q) == 0;
        rep.pass = true;
        return rep;
    }
    auto d = coboundary_matrix(nerve, q);
    std::size_t n = 0;
    auto g = gram_up(d, &n);
    std::vector<double> gd(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gd[i] = double(g[i]);
    auto eig = symmetric_eigen(gd, n);
    rep.lhs = eig.values.empty() ? 0.0 : std::max(0.0, eig.values.back());
    rep.pass = rep.lhs <= rhs + 1e-9 * rhs;
    return rep;
}

BoundReport rayleigh_delta_audit(const Nerve& nerve, const NerveStats& stats, int q,
                                 std::size_t trials, std::uint64_t seed) {
    BoundReport rep;
    rep.bound = "lemma3.8_rayleigh";
    rep.comparison = "le_linear";
    rep.instance = {{"q", double(q)}, {"nu", double(stats.nu)}, {"trials", double(trials)}};
    double rhs = double(q + 2) * double(stats.nu);
    rep.rhs_log = std::log(std::max(rhs, 1e-300));
    if (nerve.count(q) == 0 || q + 1 > nerve.qmax || nerve.count(q + 1) == 0) {
        rep.vacuous = nerve.count(q) == 0;
        rep.pass = true;
        return rep;
    }
    auto d = coboundary_matrix(nerve, q);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Cochain b{q, gaussian_vector(rng, d.cols)};
        double nb = inner_product(b, b);
        if (nb == 0.0) continue;
        Cochain db = apply_delta(d, b);
        worst = std::max(worst, inner_product(db, db) / nb);
    }
    rep.lhs = worst;
    rep.pass = worst <= rhs + 1e-9 * rhs;
    return rep;
}

BoundReport rayleigh_coexact_audit(const Nerve& nerve, int q, std::size_t trials,
                                   std::uint64_t seed) {
    BoundReport rep;
    rep.bound = "variational_coexact";
    rep.comparison = "ge_linear";
    rep.instance = {{"q", double(q)}, {"trials", double(trials)}};
    auto spectrum = laplacian_spectrum(nerve, q);
    if (spectrum.coexact.empty()) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    double lambda1 = spectrum.coexact.front();
    rep.rhs_log = std::log(std::max(lambda1, 1e-300));
    auto d = coboundary_matrix(nerve, q);
    std::mt19937_64 rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        // a coexact cochain: delta^T applied to a random (q+1)-cochain
        auto r = gaussian_vector(rng, d.rows);
        Cochain c{q, std::vector<double>(d.cols, 0.0)};
        for (const auto& e : d.entries) c.values[e.col] += double(e.value) * r[e.row];
        double nc = inner_product(c, c);
        if (nc < 1e-250) continue;
        Cochain dc = apply_delta(d, c);
        worst = std::min(worst, inner_product(dc, dc) / nc);
    }
    rep.lhs = worst;
    rep.pass = worst >= lambda1 - 1e-8;
    return rep;
}

BoundReport lower_bound_audit(const Nerve& nerve, const NerveStats& stats, int p) {
    BoundReport rep;
    rep.bound = "theorem4.4_lower";
    rep.comparison = "ge_log";
    double k = std::max(double(stats.nu), double(p + 2));
    double s = p + 1 <= nerve.qmax ? double(nerve.count(p + 1)) : 0.0;
    rep.instance = {{"p", double(p)}, {"nu", double(stats.nu)}, {"K", k}, {"S_p1", s}};
    if (s == 0.0) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    rep.rhs_log = -(std::log(s) + s * std::log(k));
    auto spectrum = laplacian_spectrum(nerve, p);
    if (spectrum.coexact.empty()) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    rep.lhs = spectrum.coexact.front();
    rep.pass = rep.lhs > 0 && std::log(rep.lhs) >= rep.rhs_log - 1e-9;
    rep.instance["log_gap"] = std::log(rep.lhs) - rep.rhs_log;
    return rep;
}

BoundReport delta_sparsity_audit(const Nerve& nerve, const NerveStats& stats, int q) {
    BoundReport rep;
    rep.bound = "theorem4.4_sparsity";
    rep.comparison = "exact";
    rep.instance = {{"q", double(q)}, {"nu", double(stats.nu)}};
    if (nerve.count(q) == 0 || q + 1 > nerve.qmax || nerve.count(q + 1) == 0) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    auto d = coboundary_matrix(nerve, q);
    std::vector<int> row_nnz(d.rows, 0), col_nnz(d.cols, 0);
    for (const auto& e : d.entries) {
        ++row_nnz[e.row];
        ++col_nnz[e.col];
    }
    int k_bound = std::max(stats.nu, q + 2);
    bool pass = true;
    int worst = 0;
    for (int c : row_nnz) {
        pass = pass && c == q + 2 && c <= k_bound;
        worst = std::max(worst, c);
    }
    for (int c : col_nnz) {
        pass = pass && c <= stats.nu && c <= k_bound;
        worst = std::max(worst, c);
    }
    rep.lhs = double(worst);
    rep.rhs_log = std::log(double(k_bound));
    rep.pass = pass;
    return rep;
}

} // namespace cechlap
