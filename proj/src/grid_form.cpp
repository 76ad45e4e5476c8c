#include "cechlap/grid_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cechlap {

GridForm GridForm::zero(int p, std::size_t n, double lx, double ly) {
    if (p < 0 || p > 2) throw std::invalid_argument("GridForm: degree must be 0, 1 or 2");
    if (n < 2) throw std::invalid_argument("GridForm: grid size must be >= 2");
    GridForm f;
    f.p = p;
    f.n = n;
    f.lx = lx;
    f.ly = ly;
    if (p == 1) {
        f.x.assign(n * n, 0.0);
        f.y.assign(n * n, 0.0);
    } else {
        f.a.assign(n * n, 0.0);
    }
    return f;
}

namespace {

void check_compatible(const GridForm& a, const GridForm& b, const char* what) {
    if (a.p != b.p || a.n != b.n || a.lx != b.lx || a.ly != b.ly)
        throw std::invalid_argument(std::string(what) + ": incompatible grid forms");
}

void axpy(std::vector<double>& a, const std::vector<double>& b, double s) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

} // namespace

GridForm& GridForm::operator+=(const GridForm& rhs) {
    check_compatible(*this, rhs, "operator+=");
    axpy(a, rhs.a, 1.0);
    axpy(x, rhs.x, 1.0);
    axpy(y, rhs.y, 1.0);
    return *this;
}

GridForm& GridForm::operator-=(const GridForm& rhs) {
    check_compatible(*this, rhs, "operator-=");
    axpy(a, rhs.a, -1.0);
    axpy(x, rhs.x, -1.0);
    axpy(y, rhs.y, -1.0);
    return *this;
}

GridForm& GridForm::operator*=(double s) {
    for (double& v : a) v *= s;
    for (double& v : x) v *= s;
    for (double& v : y) v *= s;
    return *this;
}

GridForm operator+(GridForm a, const GridForm& b) { return a += b; }
GridForm operator-(GridForm a, const GridForm& b) { return a -= b; }
GridForm operator*(double s, GridForm f) { return f *= s; }

GridForm exterior_derivative(const GridForm& f) {
    if (f.p >= 2) throw std::invalid_argument("exterior_derivative: degree 2 input");
    const std::size_t n = f.n;
    if (f.p == 0) {
        GridForm d = GridForm::zero(1, n, f.lx, f.ly);
        const double ihx = 1.0 / f.hx(), ihy = 1.0 / f.hy();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                d.x[f.idx(i, j)] = (f.a[f.idx(i + 1, j)] - f.a[f.idx(i, j)]) * ihx;
                d.y[f.idx(i, j)] = (f.a[f.idx(i, j + 1)] - f.a[f.idx(i, j)]) * ihy;
            }
        return d;
    }
    GridForm d = GridForm::zero(2, n, f.lx, f.ly);
    const double ihx = 1.0 / f.hx(), ihy = 1.0 / f.hy();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d.a[f.idx(i, j)] = (f.y[f.idx(i + 1, j)] - f.y[f.idx(i, j)]) * ihx -
                               (f.x[f.idx(i, j + 1)] - f.x[f.idx(i, j)]) * ihy;
    return d;
}

namespace {

// 0-form averaged onto x-edge midpoints / y-edge midpoints / cell centers
std::vector<double> to_x_edges(const GridForm& f) {
    std::vector<double> out(f.n * f.n);
    for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t j = 0; j < f.n; ++j)
            out[f.idx(i, j)] = 0.5 * (f.a[f.idx(i, j)] + f.a[f.idx(i + 1, j)]);
    return out;
}

std::vector<double> to_y_edges(const GridForm& f) {
    std::vector<double> out(f.n * f.n);
    for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t j = 0; j < f.n; ++j)
            out[f.idx(i, j)] = 0.5 * (f.a[f.idx(i, j)] + f.a[f.idx(i, j + 1)]);
    return out;
}

std::vector<double> to_cells(const GridForm& f) {
    std::vector<double> out(f.n * f.n);
    for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t j = 0; j < f.n; ++j)
            out[f.idx(i, j)] = 0.25 * (f.a[f.idx(i, j)] + f.a[f.idx(i + 1, j)] +
                                       f.a[f.idx(i, j + 1)] + f.a[f.idx(i + 1, j + 1)]);
    return out;
}

GridForm wedge01(const GridForm& f, const GridForm& g) {
    GridForm out = GridForm::zero(1, f.n, f.lx, f.ly);
    auto fx = to_x_edges(f);
    auto fy = to_y_edges(f);
    for (std::size_t t = 0; t < f.n * f.n; ++t) {
        out.x[t] = fx[t] * g.x[t];
        out.y[t] = fy[t] * g.y[t];
    }
    return out;
}

GridForm wedge02(const GridForm& f, const GridForm& g) {
    GridForm out = GridForm::zero(2, f.n, f.lx, f.ly);
    auto fc = to_cells(f);
    for (std::size_t t = 0; t < f.n * f.n; ++t) out.a[t] = fc[t] * g.a[t];
    return out;
}

GridForm wedge11(const GridForm& f, const GridForm& g) {
    const std::size_t n = f.n;
    GridForm out = GridForm::zero(2, n, f.lx, f.ly);
    // both components of both factors staged at nodes, antisymmetric product
    // there, then averaged onto cell centers
    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t t = i * n + j;
            double fxn = 0.5 * (f.x[f.idx(i + n - 1, j)] + f.x[t]);
            double fyn = 0.5 * (f.y[f.idx(i, j + n - 1)] + f.y[t]);
            double gxn = 0.5 * (g.x[f.idx(i + n - 1, j)] + g.x[t]);
            double gyn = 0.5 * (g.y[f.idx(i, j + n - 1)] + g.y[t]);
            w[t] = fxn * gyn - fyn * gxn;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.a[i * n + j] = 0.25 * (w[f.idx(i, j)] + w[f.idx(i + 1, j)] + w[f.idx(i, j + 1)] +
                                       w[f.idx(i + 1, j + 1)]);
    return out;
}

} // namespace

GridForm wedge(const GridForm& f, const GridForm& g) {
    if (f.n != g.n || f.lx != g.lx || f.ly != g.ly)
        throw std::invalid_argument("wedge: incompatible grids");
    if (f.p + g.p > 2) throw std::invalid_argument("wedge: degree overflow");
    if (f.p == 0 && g.p == 0) {
        GridForm out = GridForm::zero(0, f.n, f.lx, f.ly);
        for (std::size_t t = 0; t < f.a.size(); ++t) out.a[t] = f.a[t] * g.a[t];
        return out;
    }
    if (f.p == 0 && g.p == 1) return wedge01(f, g);
    if (f.p == 1 && g.p == 0) return wedge01(g, f);
    if (f.p == 0 && g.p == 2) return wedge02(f, g);
    if (f.p == 2 && g.p == 0) return wedge02(g, f);
    return wedge11(f, g);
}

double quad_inner(const GridForm& f, const GridForm& g) {
    check_compatible(f, g, "quad_inner");
    const double w = f.hx() * f.hy();
    double s = 0.0;
    for (std::size_t t = 0; t < f.a.size(); ++t) s += f.a[t] * g.a[t];
    for (std::size_t t = 0; t < f.x.size(); ++t) s += f.x[t] * g.x[t] + f.y[t] * g.y[t];
    return s * w;
}

double quad_norm(const GridForm& f) { return std::sqrt(quad_inner(f, f)); }

double sup_norm(const GridForm& f) {
    double m = 0.0;
    for (double v : f.a) m = std::max(m, std::abs(v));
    for (double v : f.x) m = std::max(m, std::abs(v));
    for (double v : f.y) m = std::max(m, std::abs(v));
    return m;
}

std::string grid_form_dump(const GridForm& f) {
    std::ostringstream os;
    os.precision(17);
    os << "degree " << f.p << "\n";
    os << "grid " << f.n << "\n";
    os << "lengths " << f.lx << " " << f.ly << "\n";
    auto block = [&](const char* name, const std::vector<double>& v) {
        if (v.empty()) return;
        os << "component " << name << "\n";
        for (std::size_t i = 0; i < f.n; ++i) {
            for (std::size_t j = 0; j < f.n; ++j) os << (j ? " " : "") << v[i * f.n + j];
            os << "\n";
        }
    };
    block(f.p == 2 ? "cells" : "nodes", f.a);
    block("x", f.x);
    block("y", f.y);
    return os.str();
}

} // namespace cechlap
