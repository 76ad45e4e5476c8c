#include "cechlap/cochain.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cechlap {

CoboundaryMatrix coboundary_matrix(const Nerve& nerve, int q) {
    if (q < 0 || q > nerve.qmax) throw std::invalid_argument("coboundary_matrix: degree out of range");
    CoboundaryMatrix m;
    m.q = q;
    m.cols = nerve.count(q);
    m.rows = q + 1 <= nerve.qmax ? nerve.count(q + 1) : 0;
    if (m.rows == 0) return m;

    const auto& rows = nerve.simplices[q + 1];
    const auto& cols = nerve.simplices[q];
    for (std::uint32_t r = 0; r < m.rows; ++r) {
        const auto& tup = rows[r];
        std::vector<int> face(tup.size() - 1);
        for (std::size_t j = 0; j < tup.size(); ++j) {
            face.clear();
            for (std::size_t a = 0; a < tup.size(); ++a)
                if (a != j) face.push_back(tup[a]);
            auto it = std::lower_bound(cols.begin(), cols.end(), face);
            if (it == cols.end() || *it != face)
                throw std::runtime_error("coboundary_matrix: face missing from S_q (downward closure broken)");
            m.entries.push_back({r, static_cast<std::uint32_t>(it - cols.begin()),
                                 static_cast<std::int8_t>(j % 2 == 0 ? 1 : -1)});
        }
    }
    std::sort(m.entries.begin(), m.entries.end(), [](const auto& a, const auto& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return m;
}

Cochain apply_delta(const CoboundaryMatrix& mat, const Cochain& c) {
    if (c.q != mat.q || c.values.size() != mat.cols)
        throw std::invalid_argument("apply_delta: degree or length mismatch");
    Cochain out;
    out.q = mat.q + 1;
    out.values.assign(mat.rows, 0.0);
    for (const auto& e : mat.entries) out.values[e.row] += e.value * c.values[e.col];
    return out;
}

double inner_product(const Cochain& a, const Cochain& b) {
    if (a.q != b.q || a.values.size() != b.values.size())
        throw std::invalid_argument("inner_product: degree mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    return s;
}

std::vector<std::int64_t> gram_up(const CoboundaryMatrix& d, std::size_t* n_out) {
    const std::size_t n = d.cols;
    if (n_out) *n_out = n;
    std::vector<std::int64_t> g(n * n, 0);
    std::size_t k = 0;
    while (k < d.entries.size()) {
        std::size_t end = k;
        while (end < d.entries.size() && d.entries[end].row == d.entries[k].row) ++end;
        for (std::size_t a = k; a < end; ++a)
            for (std::size_t b = k; b < end; ++b)
                g[std::size_t(d.entries[a].col) * n + d.entries[b].col] +=
                    std::int64_t(d.entries[a].value) * d.entries[b].value;
        k = end;
    }
    return g;
}

namespace {

std::vector<std::int64_t> gram_down(const CoboundaryMatrix& d) {
    // delta_{q-1} delta_{q-1}^T on C^q: group entries by column of delta_{q-1}
    const std::size_t n = d.rows;
    std::vector<std::int64_t> g(n * n, 0);
    auto by_col = d.entries;
    std::sort(by_col.begin(), by_col.end(), [](const auto& a, const auto& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    std::size_t k = 0;
    while (k < by_col.size()) {
        std::size_t end = k;
        while (end < by_col.size() && by_col[end].col == by_col[k].col) ++end;
        for (std::size_t a = k; a < end; ++a)
            for (std::size_t b = k; b < end; ++b)
                g[std::size_t(by_col[a].row) * n + by_col[b].row] +=
                    std::int64_t(by_col[a].value) * by_col[b].value;
        k = end;
    }
    return g;
}

} // namespace

LaplacianMatrix laplacian_matrix(const Nerve& nerve, int q) {
    if (q < 0 || q > nerve.qmax) throw std::invalid_argument("laplacian_matrix: degree out of range");
    LaplacianMatrix L;
    L.q = q;
    L.n = nerve.count(q);
    L.up.assign(L.n * L.n, 0);
    L.down.assign(L.n * L.n, 0);
    if (q + 1 <= nerve.qmax) {
        auto d = coboundary_matrix(nerve, q);
        L.up = gram_up(d, nullptr);
    }
    if (q >= 1) {
        auto d = coboundary_matrix(nerve, q - 1);
        L.down = gram_down(d);
    }
    L.values.resize(L.n * L.n);
    for (std::size_t i = 0; i < L.values.size(); ++i) L.values[i] = L.up[i] + L.down[i];
    return L;
}

bool coboundary_squares_to_zero(const CoboundaryMatrix& next, const CoboundaryMatrix& prev) {
    if (next.cols != prev.rows) throw std::invalid_argument("coboundary chain: shape mismatch");
    // rows of prev grouped for random access
    std::vector<std::size_t> row_start(prev.rows + 1, 0);
    for (const auto& e : prev.entries) ++row_start[e.row + 1];
    for (std::size_t i = 0; i < prev.rows; ++i) row_start[i + 1] += row_start[i];

    std::size_t k = 0;
    while (k < next.entries.size()) {
        std::size_t end = k;
        while (end < next.entries.size() && next.entries[end].row == next.entries[k].row) ++end;
        std::map<std::uint32_t, std::int64_t> acc;
        for (std::size_t a = k; a < end; ++a) {
            const auto& e = next.entries[a];
            for (std::size_t b = row_start[e.col]; b < row_start[e.col + 1]; ++b)
                acc[prev.entries[b].col] += std::int64_t(e.value) * prev.entries[b].value;
        }
        for (const auto& [col, v] : acc)
            if (v != 0) return false;
        k = end;
    }
    return true;
}

std::string coboundary_to_coo(const CoboundaryMatrix& m) {
    std::ostringstream os;
    os << m.q << " " << m.rows << " " << m.cols << "\n";
    for (const auto& e : m.entries) os << e.row << " " << e.col << " " << int(e.value) << "\n";
    return os.str();
}

std::string laplacian_to_coo(const LaplacianMatrix& m) {
    std::ostringstream os;
    os << m.q << " " << m.n << " " << m.n << "\n";
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            if (m.at(i, j) != 0) os << i << " " << j << " " << m.at(i, j) << "\n";
    return os.str();
}

} // namespace cechlap
