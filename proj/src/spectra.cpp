#include "cechlap/spectra.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cechlap {

namespace {

double frobenius(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

double off_diagonal_mass(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

} // namespace

EigenResult symmetric_eigen(const std::vector<double>& a_in, std::size_t n, double tol) {
    if (a_in.size() != n * n) throw std::invalid_argument("symmetric_eigen: size mismatch");
    EigenResult out;
    out.n = n;
    if (n == 0) return out;

    double amax = 0.0;
    for (double v : a_in) amax = std::max(amax, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a_in[i * n + j] - a_in[j * n + i]) > 1e-12 * std::max(1.0, amax))
                throw std::invalid_argument("symmetric_eigen: input is not symmetric");

    std::vector<double> a = a_in;
    std::vector<double> w(n * n, 0.0); // row k accumulates eigenvector k
    for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;

    const double fro = frobenius(a);
    const double target = tol * (fro > 0 ? fro : 1.0);
    const double skip = target / (10.0 * double(n));
    const int sweep_cap = 60;

    int sweep = 0;
    for (; sweep < sweep_cap; ++sweep) {
        if (off_diagonal_mass(a, n) <= target) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) <= skip) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                double* rp = &a[p * n];
                double* rq = &a[q * n];
                for (std::size_t r = 0; r < n; ++r) {
                    double x = rp[r], y = rq[r];
                    rp[r] = c * x - s * y;
                    rq[r] = s * x + c * y;
                }
                // restore the 2x2 block analytically, then mirror the rows into columns
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    a[r * n + p] = rp[r];
                    a[r * n + q] = rq[r];
                }
                double* vp = &w[p * n];
                double* vq = &w[q * n];
                for (std::size_t r = 0; r < n; ++r) {
                    double x = vp[r], y = vq[r];
                    vp[r] = c * x - s * y;
                    vq[r] = s * x + c * y;
                }
            }
        }
    }
    if (sweep == sweep_cap && off_diagonal_mass(a, n) > target)
        throw std::runtime_error("symmetric_eigen: Jacobi sweeps did not converge");
    out.sweeps = sweep;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a[order[k] * n + order[k]];
        std::copy_n(&w[order[k] * n], n, &out.vectors[k * n]);
    }
    return out;
}

namespace {

std::vector<double> to_doubles(const std::vector<std::int64_t>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = double(v[i]);
    return out;
}

double eigen_residual_max(const std::vector<double>& a, const EigenResult& e) {
    const std::size_t n = e.n;
    double worst = 0.0;
    std::vector<double> av(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double* v = &e.vectors[k * n];
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            const double* row = &a[i * n];
            for (std::size_t j = 0; j < n; ++j) s += row[j] * v[j];
            av[i] = s - e.values[k] * v[i];
        }
        double r2 = 0.0;
        for (double x : av) r2 += x * x;
        worst = std::max(worst, std::sqrt(r2));
    }
    return worst;
}

int count_zeros(const std::vector<double>& values, double tau) {
    if (values.empty()) return 0;
    double lmax = values.back();
    if (lmax <= 0) lmax = 1.0;
    int z = 0;
    for (double v : values)
        if (v < tau * lmax) ++z;
    return z;
}

} // namespace

SpectrumReport laplacian_spectrum(const Nerve& nerve, int q, double tau) {
    SpectrumReport rep;
    rep.q = q;
    rep.tau = tau;
    auto L = laplacian_matrix(nerve, q);
    if (L.n == 0) return rep;

    auto a = to_doubles(L.values);
    auto eig = symmetric_eigen(a, L.n);
    rep.eigenvalues = eig.values;
    rep.betti = count_zeros(eig.values, tau);
    rep.residual_max = eigen_residual_max(a, eig);

    if (q + 1 <= nerve.qmax && nerve.count(q + 1) > 0) {
        auto up = symmetric_eigen(to_doubles(L.up), L.n);
        double lmax = up.values.empty() ? 1.0 : std::max(up.values.back(), 0.0);
        if (lmax <= 0) lmax = 1.0;
        for (double v : up.values)
            if (v >= tau * lmax) rep.coexact.push_back(v);
    }
    return rep;
}

namespace {

std::size_t gram_rank(const Nerve& nerve, int q, double tau) {
    if (q < 0 || q > nerve.qmax || nerve.count(q) == 0 || q + 1 > nerve.qmax) return 0;
    auto d = coboundary_matrix(nerve, q);
    if (d.rows == 0) return 0;
    std::size_t n = 0;
    auto g = gram_up(d, &n);
    auto eig = symmetric_eigen(to_doubles(g), n);
    double lmax = eig.values.empty() ? 1.0 : std::max(eig.values.back(), 0.0);
    if (lmax <= 0) lmax = 1.0;
    std::size_t rank = 0;
    for (double v : eig.values)
        if (v >= tau * lmax) ++rank;
    return rank;
}

} // namespace

int betti(const Nerve& nerve, int q, double tau) {
    auto rep = laplacian_spectrum(nerve, q, tau);
    std::size_t rank_q = gram_rank(nerve, q, tau);
    std::size_t rank_qm1 = q >= 1 ? gram_rank(nerve, q - 1, tau) : 0;
    long by_rank = long(nerve.count(q)) - long(rank_q) - long(rank_qm1);
    if (by_rank != rep.betti)
        throw std::runtime_error("betti: kernel multiplicity and rank-nullity disagree");
    return rep.betti;
}

AnalyticSpectrum torus_hodge_spectrum(double L1, double L2, int p, std::size_t count) {
    if (p < 0 || p > 2) throw std::invalid_argument("torus_hodge_spectrum: degree must be 0, 1 or 2");
    if (count < 1) throw std::invalid_argument("torus_hodge_spectrum: count must be >= 1");
    if (!(L1 > 0 && L2 > 0)) throw std::invalid_argument("torus_hodge_spectrum: lengths must be positive");
    AnalyticSpectrum out;
    out.p = p;
    out.zero_multiplicity = (p == 1) ? 2 : 1;

    const double pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
    const double lmax = std::max(L1, L2);
    std::size_t box = 4;
    std::vector<double> vals;
    while (true) {
        vals.clear();
        const double safe = pi2 * double(box) * double(box) / (lmax * lmax);
        for (long m = -long(box); m <= long(box); ++m)
            for (long n = -long(box); n <= long(box); ++n) {
                double v = pi2 * (double(m * m) / (L1 * L1) + double(n * n) / (L2 * L2));
                if (v > 0 && v <= safe) vals.push_back(v);
            }
        std::size_t have = vals.size() * (p == 1 ? 2 : 1);
        if (have >= count) break;
        box *= 2;
        if (box > 1u << 16) throw std::runtime_error("torus_hodge_spectrum: enumeration bound overflow");
    }
    std::sort(vals.begin(), vals.end());
    for (double v : vals) {
        out.eigenvalues.push_back(v);
        if (p == 1) out.eigenvalues.push_back(v);
        if (out.eigenvalues.size() >= count) break;
    }
    out.eigenvalues.resize(std::min(out.eigenvalues.size(), count));
    return out;
}

std::string spectrum_to_json(const SpectrumReport& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["eigenvalues"] = r.eigenvalues;
    j["betti"] = r.betti;
    j["tau"] = r.tau;
    j["coexact"] = r.coexact;
    j["residual_max"] = r.residual_max;
    return j.dump(2);
}

std::string spectrum_to_csv(const SpectrumReport& r) {
    std::ostringstream os;
    os << "k,lambda,is_zero\n";
    os.precision(17);
    double lmax = r.eigenvalues.empty() ? 1.0 : std::max(r.eigenvalues.back(), 0.0);
    if (lmax <= 0) lmax = 1.0;
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
        os << k << "," << r.eigenvalues[k] << "," << (r.eigenvalues[k] < r.tau * lmax ? 1 : 0) << "\n";
    return os.str();
}

} // namespace cechlap
