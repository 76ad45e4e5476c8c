#ifndef CECHLAP_WHITNEY_HPP
#define CECHLAP_WHITNEY_HPP

#include "cechlap/bounds_audit.hpp"
#include "cechlap/grid_form.hpp"

namespace cechlap {

/// Normalized bump partition subordinate to the ball cover of a torus net.
/// phi_j is exp(1 - 1/(1 - t^2)) at t = d/epsilon < 1 (zero beyond), divided
/// by the sum over centers; a grid node covered by no ball is a hard error.
struct PartitionOfUnity {
    std::size_t n = 0;
    double lx = 1.0, ly = 1.0, epsilon = 0.0;
    std::vector<GridForm> phi;
    std::vector<GridForm> dphi;
    std::vector<double> dphi_sup;
};

PartitionOfUnity build_partition(const ModelSpace& space, const EpsilonNet& net, std::size_t n);

/// W_I = sum_j (-1)^j phi_{i_j} dphi_{i_0} ^ ... omitting j ... ^ dphi_{i_q}.
GridForm whitney_form(const Nerve& nerve, const std::vector<int>& simplex,
                      const PartitionOfUnity& pou);

/// W(c) = sum_I c(I) W_I over S_q.
GridForm whitney_map(const Nerve& nerve, const Cochain& c, const PartitionOfUnity& pou);

/// Quadrature residual of dW(c) = (q+1) W(delta c) for a scalar cochain.
double check_lemma_A4(const Nerve& nerve, const Cochain& c, const PartitionOfUnity& pou);

/// Quadrature residual of dW_I = (q+1) dphi_{i_0} ^ ... ^ dphi_{i_q}.
double remark_A2_residual(const Nerve& nerve, const std::vector<int>& simplex,
                          const PartitionOfUnity& pou);

struct IdentityA1Result {
    double residual = 0.0;
    bool vacuous = false; // no extending ball: empty sum, residual = |dphi_I|
};

/// Quadrature residual of sum_j W_{{j} u I} = dphi_I with the insertion-sign
/// convention matching the coboundary.
IdentityA1Result check_identity_A1(const Nerve& nerve, const std::vector<int>& simplex,
                                   const PartitionOfUnity& pou);

/// Empirical Whitney-map energy bound against the certified Cauchy-Schwarz
/// constant N_loc * max_I (|W_I|_inf^2 vol(U_I)).
BoundReport check_lemma_A5(const Nerve& nerve, const PartitionOfUnity& pou, int q,
                           std::size_t trials, std::uint64_t seed);

/// Largest component of W_I found outside the (one-cell-inflated) support U_I.
double support_leak(const Nerve& nerve, const std::vector<int>& simplex,
                    const PartitionOfUnity& pou);

struct ResidualStudyRow {
    std::string check;
    std::size_t n = 0;
    double residual = 0.0;
    double observed_order = 0.0; // log2 ratio to the previous grid, 0 on the first
};

/// Residual refinement study over the given grid sizes on one fixed nerve.
std::vector<ResidualStudyRow> whitney_residual_study(const Nerve& nerve,
                                                     const std::vector<std::size_t>& grid_sizes,
                                                     std::uint64_t seed);

std::string residual_study_csv(const std::vector<ResidualStudyRow>& rows);

} // namespace cechlap

#endif
