#ifndef CECHLAP_SPECTRA_HPP
#define CECHLAP_SPECTRA_HPP

#include "cechlap/cochain.hpp"

#include <string>
#include <vector>

namespace cechlap {

struct EigenResult {
    std::size_t n = 0;
    std::vector<double> values;  // ascending
    std::vector<double> vectors; // row k = eigenvector of values[k], row-major n x n
    int sweeps = 0;
};

/// Cyclic Jacobi rotations on a dense symmetric matrix (row-major), until the
/// off-diagonal Frobenius mass drops below tol * ||A||_F. Throws when the
/// input is not symmetric to 1e-12 relative or the sweep cap is hit.
EigenResult symmetric_eigen(const std::vector<double>& a, std::size_t n, double tol = 1e-14);

struct SpectrumReport {
    int q = 0;
    std::vector<double> eigenvalues; // ascending, one per basis element of C^q
    int betti = 0;                   // zero multiplicity at threshold tau
    double tau = 1e-8;
    std::vector<double> coexact;     // nonzero spectrum of delta_q^T delta_q
    double residual_max = 0.0;       // max ||L v - lambda v||
};

SpectrumReport laplacian_spectrum(const Nerve& nerve, int q, double tau = 1e-8);

/// Zero multiplicity of the degree-q Laplacian, cross-checked against
/// |S_q| - rank delta_q - rank delta_{q-1}; a disagreement is a hard error.
int betti(const Nerve& nerve, int q, double tau = 1e-8);

struct AnalyticSpectrum {
    int p = 0;
    std::vector<double> eigenvalues; // positive part, ascending with multiplicity
    int zero_multiplicity = 0;       // b_p of the 2-torus: (1, 2, 1)
};

/// Hodge Laplacian spectrum of the flat 2-torus with side lengths L1, L2:
/// functions carry 4 pi^2 (m^2/L1^2 + n^2/L2^2); 1-forms double every
/// multiplicity; 2-forms mirror functions.
AnalyticSpectrum torus_hodge_spectrum(double L1, double L2, int p, std::size_t count);

std::string spectrum_to_json(const SpectrumReport& r);
std::string spectrum_to_csv(const SpectrumReport& r);

} // namespace cechlap

#endif
