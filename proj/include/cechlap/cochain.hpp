#ifndef CECHLAP_COCHAIN_HPP
#define CECHLAP_COCHAIN_HPP

#include "cechlap/net_nerve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cechlap {

/// Real-valued Čech cochain; values follow the lexicographic order of S_q.
struct Cochain {
    int q = 0;
    std::vector<double> values;
};

/// Signed incidence matrix of the coboundary delta_q : C^q -> C^{q+1},
/// shape |S_{q+1}| x |S_q|, entries in {-1, 0, +1}, exact integers.
struct CoboundaryMatrix {
    int q = 0;
    std::size_t rows = 0, cols = 0;
    struct Entry {
        std::uint32_t row, col;
        std::int8_t value;
    };
    std::vector<Entry> entries; // sorted by (row, col)
};

/// Dense integer matrix of the combinatorial Laplacian at degree q,
/// with its up (delta^T delta) and down (delta delta^T) parts kept.
struct LaplacianMatrix {
    int q = 0;
    std::size_t n = 0;
    std::vector<std::int64_t> values; // row-major, symmetric
    std::vector<std::int64_t> up;     // delta_q^T delta_q
    std::vector<std::int64_t> down;   // delta_{q-1} delta_{q-1}^T

    std::int64_t at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

CoboundaryMatrix coboundary_matrix(const Nerve& nerve, int q);

Cochain apply_delta(const CoboundaryMatrix& mat, const Cochain& c);

double inner_product(const Cochain& a, const Cochain& b);

LaplacianMatrix laplacian_matrix(const Nerve& nerve, int q);

/// Exact integer product check: delta_{q+1} * delta_q == 0.
bool coboundary_squares_to_zero(const CoboundaryMatrix& next, const CoboundaryMatrix& prev);

/// Gram matrix delta^T delta as dense int64 (the "up" Laplacian block).
std::vector<std::int64_t> gram_up(const CoboundaryMatrix& d, std::size_t* n_out);

/// Coordinate-list text: "q nrows ncols" header then "row col value" lines.
std::string coboundary_to_coo(const CoboundaryMatrix& m);
std::string laplacian_to_coo(const LaplacianMatrix& m);

} // namespace cechlap

#endif
