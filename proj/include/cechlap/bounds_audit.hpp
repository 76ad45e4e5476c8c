#ifndef CECHLAP_BOUNDS_AUDIT_HPP
#define CECHLAP_BOUNDS_AUDIT_HPP

#include "cechlap/spectra.hpp"
#include "cechlap/treves.hpp"

namespace cechlap {

/// Deterministic standard normals (Box-Muller over the raw engine), so audit
/// sweeps reproduce bit-identically across platforms.
std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t n);

/// lambda_max(delta_q^T delta_q) <= (q+2) nu.
BoundReport delta_norm_audit(const Nerve& nerve, const NerveStats& stats, int q);

/// Rayleigh sweep form of the same bound: ||delta b||^2 <= (q+2) nu ||b||^2
/// over random cochains b.
BoundReport rayleigh_delta_audit(const Nerve& nerve, const NerveStats& stats, int q,
                                 std::size_t trials, std::uint64_t seed);

/// Coexact Rayleigh quotients dominate the smallest positive eigenvalue:
/// for c = delta^T r, ||delta c||^2 / ||c||^2 >= lambda_1^{delta*} - 1e-8.
BoundReport rayleigh_coexact_audit(const Nerve& nerve, int q, std::size_t trials,
                                   std::uint64_t seed);

/// lambda_1^{delta*}(p) >= 1 / (|S_{p+1}| K^{|S_{p+1}|}) with K = max(nu, p+2),
/// compared in log space; vacuous when S_{p+1} is empty.
BoundReport lower_bound_audit(const Nerve& nerve, const NerveStats& stats, int p);

/// Every row of delta_q holds exactly q+2 signs and every column at most nu,
/// the sparsity hypothesis the constructive lower bound needs.
BoundReport delta_sparsity_audit(const Nerve& nerve, const NerveStats& stats, int q);

} // namespace cechlap

#endif
