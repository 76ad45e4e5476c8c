#ifndef CECHLAP_TREVES_HPP
#define CECHLAP_TREVES_HPP

#include "cechlap/rational.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace cechlap {

/// Outcome of one quantitative bound check. Right-hand sides that overflow
/// doubles are carried in natural-log space; pass flags are decided exactly
/// whenever the underlying claim is algebraic.
struct BoundReport {
    std::string bound;
    double lhs = 0.0;
    double rhs_log = 0.0;
    bool pass = false;
    bool vacuous = false;
    std::string comparison; // "le_log", "ge_log", "le_linear", "exact"
    std::map<std::string, double> instance;
};

/// Pseudo-inverse-style operator B for a sign matrix A (entries in {-1,0,1}):
/// A B A = A exactly, B vanishes on the orthogonal complement of Im(A).
/// kept lists the lexicographically first independent columns; P is their
/// integer Gram matrix and Q is P without its first row and column.
struct TrevesInstance {
    std::vector<std::vector<int>> A;
    std::size_t n = 0, m = 0;
    int k = 1;
    std::size_t r = 0;
    std::vector<std::size_t> kept;
    RatMatrix B;
    std::vector<std::vector<BigInt>> P;
    std::vector<std::vector<BigInt>> Q;
};

TrevesInstance treves_operator(const std::vector<std::vector<int>>& A);

/// ||B||^2 <= n k^{2n}, spectral norm vs the log-space bound.
BoundReport treves_norm_audit(const TrevesInstance& inst);

/// All l x l minors of P bounded by k^{2l-1} for l = 1..lmax (exact integers),
/// |det P| >= 1, and |det P| / |det Q| >= k^{-2n}.
BoundReport gram_minor_audit(const TrevesInstance& inst, std::size_t lmax);

/// The bidiagonal counterexample: v = (1, ..., m) gives ||Av||^2 = m - 1 and
/// ||BAv||^2 / ||Av||^2 = m (2m - 1) / 6 exactly, quadratic in m.
struct CounterexampleReport {
    std::size_t m = 0;
    BigInt norm_av2;      // m - 1
    Rat norm_bav2;        // (m-1) m (2m-1) / 6
    Rat ratio;            // m (2m-1) / 6
    double linear_reference = 0.0; // 10 m, the slope a linear bound would need
    bool exact = false;   // all identities verified in rational arithmetic
};

CounterexampleReport treves_counterexample(std::size_t m);

std::string counterexample_csv(const std::vector<CounterexampleReport>& rows);

/// Sparse random sign matrix with at most max_k nonzeros per row and column.
std::vector<std::vector<int>> random_sign_matrix(std::mt19937_64& rng, int max_dim, int max_k);

std::string bound_reports_to_json(const std::vector<BoundReport>& reports);

} // namespace cechlap

#endif
