#ifndef CECHLAP_GRID_FORM_HPP
#define CECHLAP_GRID_FORM_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace cechlap {

/// Differential form of degree 0..2 on a staggered periodic grid over the
/// flat 2-torus. 0-forms live at nodes, the two 1-form components at x- and
/// y-edge midpoints, 2-forms at cell centers; indices wrap mod n.
struct GridForm {
    int p = 0;
    std::size_t n = 0;
    double lx = 1.0, ly = 1.0;
    std::vector<double> a; // nodes (p=0) or cells (p=2)
    std::vector<double> x; // x-edge component (p=1)
    std::vector<double> y; // y-edge component (p=1)

    static GridForm zero(int p, std::size_t n, double lx, double ly);

    double hx() const { return lx / double(n); }
    double hy() const { return ly / double(n); }
    std::size_t idx(std::size_t i, std::size_t j) const { return (i % n) * n + (j % n); }

    GridForm& operator+=(const GridForm& rhs);
    GridForm& operator-=(const GridForm& rhs);
    GridForm& operator*=(double s);
};

GridForm operator+(GridForm a, const GridForm& b);
GridForm operator-(GridForm a, const GridForm& b);
GridForm operator*(double s, GridForm f);

/// Forward-difference exterior derivative; d of a 2-form is rejected.
/// d(d f) vanishes exactly by telescoping.
GridForm exterior_derivative(const GridForm& f);

/// Wedge product. Factors are averaged to a common staggering before the
/// pointwise product (1-forms through nodes), which keeps the product
/// antisymmetric but leaves the Leibniz rule accurate only to O(h).
GridForm wedge(const GridForm& f, const GridForm& g);

/// Quadrature inner product: node/midpoint/cell sums scaled by cell measure.
double quad_inner(const GridForm& f, const GridForm& g);
double quad_norm(const GridForm& f);

/// Largest component magnitude.
double sup_norm(const GridForm& f);

/// Binary-free text dump, row-major, one component block per section header.
std::string grid_form_dump(const GridForm& f);

} // namespace cechlap

#endif
