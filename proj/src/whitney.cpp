#include "cechlap/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cechlap {

namespace {

double wrapped_dist2(double ax, double ay, double bx, double by, double lx, double ly) {
    double dx = torus_axis_delta(ax, bx, lx);
    double dy = torus_axis_delta(ay, by, ly);
    return dx * dx + dy * dy;
}

} // namespace

PartitionOfUnity build_partition(const ModelSpace& space, const EpsilonNet& net, std::size_t n) {
    if (space.kind() != ModelSpace::Kind::FlatTorus || space.dim() != 2)
        throw std::invalid_argument("build_partition: flat 2-torus only");
    const auto& L = space.torus().lengths;
    const double eps = net.epsilon;
    if (!(L[0] / double(n) <= eps / 8.0 && L[1] / double(n) <= eps / 8.0))
        throw std::invalid_argument("build_partition: grid spacing must be at most epsilon/8");

    PartitionOfUnity pou;
    pou.n = n;
    pou.lx = L[0];
    pou.ly = L[1];
    pou.epsilon = eps;
    const std::size_t nc = net.centers.size();
    const double hx = L[0] / double(n), hy = L[1] / double(n);

    // bump exponents, normalized by log-sum-exp so thin coverage margins
    // cannot underflow the shared denominator
    std::vector<std::vector<double>> expo(nc, std::vector<double>(n * n));
    std::vector<double> emax(n * n, -std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < nc; ++c) {
        const double cx = net.centers[c].coords[0], cy = net.centers[c].coords[1];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t t = i * n + j;
                double t2 = wrapped_dist2(double(i) * hx, double(j) * hy, cx, cy, L[0], L[1]) / (eps * eps);
                double e = t2 < 1.0 ? 1.0 - 1.0 / (1.0 - t2) : -std::numeric_limits<double>::infinity();
                expo[c][t] = e;
                emax[t] = std::max(emax[t], e);
            }
    }
    for (std::size_t t = 0; t < n * n; ++t)
        if (!std::isfinite(emax[t]))
            throw std::runtime_error("build_partition: grid node covered by no ball of the net");

    std::vector<double> denom(n * n, 0.0);
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t t = 0; t < n * n; ++t)
            if (std::isfinite(expo[c][t])) denom[t] += std::exp(expo[c][t] - emax[t]);

    pou.phi.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        GridForm f = GridForm::zero(0, n, L[0], L[1]);
        for (std::size_t t = 0; t < n * n; ++t)
            f.a[t] = std::isfinite(expo[c][t]) ? std::exp(expo[c][t] - emax[t]) / denom[t] : 0.0;
        pou.phi.push_back(std::move(f));
    }
    pou.dphi.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        pou.dphi.push_back(exterior_derivative(pou.phi[c]));
        pou.dphi_sup.push_back(sup_norm(pou.dphi[c]));
    }
    return pou;
}

namespace {

bool simplex_in_nerve(const Nerve& nerve, const std::vector<int>& s) {
    int q = int(s.size()) - 1;
    if (q < 0 || q > nerve.qmax) return false;
    const auto& list = nerve.simplices[q];
    return std::binary_search(list.begin(), list.end(), s);
}

GridForm whitney_of(const std::vector<int>& s, const PartitionOfUnity& pou) {
    const int q = int(s.size()) - 1;
    if (q == 0) return pou.phi[s[0]];
    if (q == 1)
        return wedge(pou.phi[s[0]], pou.dphi[s[1]]) - wedge(pou.phi[s[1]], pou.dphi[s[0]]);
    GridForm w = wedge(pou.phi[s[0]], wedge(pou.dphi[s[1]], pou.dphi[s[2]]));
    w -= wedge(pou.phi[s[1]], wedge(pou.dphi[s[0]], pou.dphi[s[2]]));
    w += wedge(pou.phi[s[2]], wedge(pou.dphi[s[0]], pou.dphi[s[1]]));
    return w;
}

GridForm dphi_wedge(const std::vector<int>& s, const PartitionOfUnity& pou) {
    if (s.size() == 1) return pou.dphi[s[0]];
    return wedge(pou.dphi[s[0]], pou.dphi[s[1]]);
}

} // namespace

GridForm whitney_form(const Nerve& nerve, const std::vector<int>& simplex,
                      const PartitionOfUnity& pou) {
    if (simplex.size() > 3) throw std::invalid_argument("whitney_form: grid holds degrees up to 2");
    if (!simplex_in_nerve(nerve, simplex))
        throw std::invalid_argument("whitney_form: simplex not in the nerve");
    return whitney_of(simplex, pou);
}

GridForm whitney_map(const Nerve& nerve, const Cochain& c, const PartitionOfUnity& pou) {
    if (c.q > 2) throw std::invalid_argument("whitney_map: degree overflow");
    if (c.q > nerve.qmax || c.values.size() != nerve.count(c.q))
        throw std::invalid_argument("whitney_map: cochain does not match the nerve");
    GridForm acc = GridForm::zero(c.q, pou.n, pou.lx, pou.ly);
    for (std::size_t k = 0; k < c.values.size(); ++k) {
        if (c.values[k] == 0.0) continue;
        GridForm w = whitney_of(nerve.simplices[c.q][k], pou);
        w *= c.values[k];
        acc += w;
    }
    return acc;
}

double check_lemma_A4(const Nerve& nerve, const Cochain& c, const PartitionOfUnity& pou) {
    if (c.q + 1 > 2) throw std::invalid_argument("check_lemma_A4: needs degree q with q+1 <= 2");
    GridForm lhs = exterior_derivative(whitney_map(nerve, c, pou));
    auto d = coboundary_matrix(nerve, c.q);
    Cochain dc = apply_delta(d, c);
    GridForm rhs = whitney_map(nerve, dc, pou);
    rhs *= double(c.q + 1);
    return quad_norm(lhs - rhs);
}

double remark_A2_residual(const Nerve& nerve, const std::vector<int>& simplex,
                          const PartitionOfUnity& pou) {
    const int q = int(simplex.size()) - 1;
    if (q > 1) throw std::invalid_argument("remark_A2_residual: dW_I exceeds degree 2");
    GridForm lhs = exterior_derivative(whitney_form(nerve, simplex, pou));
    GridForm rhs = dphi_wedge(simplex, pou);
    rhs *= double(q + 1);
    return quad_norm(lhs - rhs);
}

IdentityA1Result check_identity_A1(const Nerve& nerve, const std::vector<int>& simplex,
                                   const PartitionOfUnity& pou) {
    if (simplex.size() > 2) throw std::invalid_argument("check_identity_A1: |I| <= 2");
    const int q_ext = int(simplex.size()); // degree of the extended simplices
    if (q_ext > nerve.qmax)
        throw std::invalid_argument("check_identity_A1: nerve too shallow for extensions");

    IdentityA1Result out;
    GridForm rhs = dphi_wedge(simplex, pou);
    GridForm acc = GridForm::zero(rhs.p, pou.n, pou.lx, pou.ly);
    bool any = false;
    for (std::size_t j = 0; j < nerve.net.centers.size(); ++j) {
        int ji = int(j);
        if (std::find(simplex.begin(), simplex.end(), ji) != simplex.end()) continue;
        std::vector<int> ext = simplex;
        auto pos = std::lower_bound(ext.begin(), ext.end(), ji);
        const int insert_at = int(pos - ext.begin());
        ext.insert(pos, ji);
        if (!simplex_in_nerve(nerve, ext)) continue;
        GridForm w = whitney_of(ext, pou);
        w *= (insert_at % 2 == 0 ? 1.0 : -1.0); // sign of moving j to the front
        acc += w;
        any = true;
    }
    if (!any) {
        out.vacuous = true;
        out.residual = quad_norm(rhs);
        return out;
    }
    out.residual = quad_norm(acc - rhs);
    return out;
}

double support_leak(const Nerve& nerve, const std::vector<int>& simplex,
                    const PartitionOfUnity& pou) {
    GridForm w = whitney_form(nerve, simplex, pou);
    const std::size_t n = pou.n;
    const double hx = w.hx(), hy = w.hy();
    const double margin = pou.epsilon + std::hypot(hx, hy);
    double leak = 0.0;
    auto outside = [&](double px, double py) {
        for (int v : simplex) {
            const auto& c = nerve.net.centers[v].coords;
            if (wrapped_dist2(px, py, c[0], c[1], w.lx, w.ly) >= margin * margin) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t t = i * n + j;
            if (!w.a.empty() && outside((double(i) + (w.p == 2 ? 0.5 : 0.0)) * hx,
                                        (double(j) + (w.p == 2 ? 0.5 : 0.0)) * hy))
                leak = std::max(leak, std::abs(w.a[t]));
            if (!w.x.empty()) {
                if (outside((double(i) + 0.5) * hx, double(j) * hy))
                    leak = std::max(leak, std::abs(w.x[t]));
                if (outside(double(i) * hx, (double(j) + 0.5) * hy))
                    leak = std::max(leak, std::abs(w.y[t]));
            }
        }
    return leak;
}

BoundReport check_lemma_A5(const Nerve& nerve, const PartitionOfUnity& pou, int q,
                           std::size_t trials, std::uint64_t seed) {
    BoundReport rep;
    rep.bound = "lemmaA.5_whitney_energy";
    rep.comparison = "le_linear";
    rep.instance = {{"q", double(q)}, {"trials", double(trials)}, {"grid", double(pou.n)}};
    if (q < 0 || q > 2 || q > nerve.qmax) throw std::invalid_argument("check_lemma_A5: bad degree");
    const std::size_t count = nerve.count(q);
    if (count == 0) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }

    std::vector<GridForm> forms;
    forms.reserve(count);
    for (const auto& s : nerve.simplices[q]) forms.push_back(whitney_of(s, pou));

    // N_loc: how many W_I are simultaneously nonzero at any staggered sample
    const std::size_t nn = pou.n * pou.n;
    std::vector<int> loc_a(nn, 0), loc_x(nn, 0), loc_y(nn, 0);
    for (const auto& w : forms) {
        for (std::size_t t = 0; t < w.a.size(); ++t)
            if (w.a[t] != 0.0) ++loc_a[t];
        for (std::size_t t = 0; t < w.x.size(); ++t) {
            if (w.x[t] != 0.0) ++loc_x[t];
            if (w.y[t] != 0.0) ++loc_y[t];
        }
    }
    int n_loc = 0;
    for (std::size_t t = 0; t < nn; ++t)
        n_loc = std::max({n_loc, loc_a[t], loc_x[t], loc_y[t]});

    const double hx = pou.lx / double(pou.n), hy = pou.ly / double(pou.n);
    const double margin = pou.epsilon + std::hypot(hx, hy);
    double worst_energy = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const auto& s = nerve.simplices[q][k];
        // grid measure of the inflated intersection U_I
        std::size_t cells = 0;
        for (std::size_t i = 0; i < pou.n; ++i)
            for (std::size_t j = 0; j < pou.n; ++j) {
                bool in = true;
                for (int v : s) {
                    const auto& c = nerve.net.centers[v].coords;
                    if (wrapped_dist2(double(i) * hx, double(j) * hy, c[0], c[1], pou.lx, pou.ly) >=
                        margin * margin) {
                        in = false;
                        break;
                    }
                }
                cells += in;
            }
        double vol = double(cells) * hx * hy;
        const auto& w = forms[k];
        double inf2 = 0.0;
        double ma = 0.0, mx = 0.0, my = 0.0;
        for (double v : w.a) ma = std::max(ma, std::abs(v));
        for (double v : w.x) mx = std::max(mx, std::abs(v));
        for (double v : w.y) my = std::max(my, std::abs(v));
        inf2 = ma * ma + mx * mx + my * my;
        worst_energy = std::max(worst_energy, inf2 * vol);
    }
    const double k_bound = double(n_loc) * worst_energy;

    std::mt19937_64 rng(seed);
    double k_emp = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto vals = gaussian_vector(rng, count);
        double norm = 0.0;
        for (double v : vals) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        GridForm acc = GridForm::zero(forms[0].p, pou.n, pou.lx, pou.ly);
        for (std::size_t k = 0; k < count; ++k) {
            GridForm w = forms[k];
            w *= vals[k] / norm;
            acc += w;
        }
        k_emp = std::max(k_emp, quad_inner(acc, acc));
    }
    rep.lhs = k_emp;
    rep.rhs_log = std::log(std::max(k_bound, 1e-300));
    rep.instance["k_emp"] = k_emp;
    rep.instance["k_bound"] = k_bound;
    rep.instance["n_loc"] = double(n_loc);
    rep.pass = k_emp <= k_bound * (1.0 + 1e-12);
    return rep;
}

std::vector<ResidualStudyRow> whitney_residual_study(const Nerve& nerve,
                                                     const std::vector<std::size_t>& grid_sizes,
                                                     std::uint64_t seed) {
    std::vector<ResidualStudyRow> rows;
    std::map<std::string, double> prev;
    for (std::size_t gi = 0; gi < grid_sizes.size(); ++gi) {
        const std::size_t n = grid_sizes[gi];
        PartitionOfUnity pou = build_partition(nerve.space, nerve.net, n);

        std::map<std::string, double> current;
        double worst = 0.0;
        for (const auto& s : nerve.simplices[1]) worst = std::max(worst, remark_A2_residual(nerve, s, pou));
        current["remark_A2"] = worst;

        std::mt19937_64 rng(seed); // same cochains at every grid size
        Cochain c0{0, gaussian_vector(rng, nerve.count(0))};
        current["lemma_A4_q0"] = check_lemma_A4(nerve, c0, pou);
        Cochain c1{1, gaussian_vector(rng, nerve.count(1))};
        current["lemma_A4_q1"] = check_lemma_A4(nerve, c1, pou);

        worst = 0.0;
        for (const auto& s : nerve.simplices[0]) {
            auto r = check_identity_A1(nerve, s, pou);
            if (!r.vacuous) worst = std::max(worst, r.residual);
        }
        current["identity_A1_vertices"] = worst;
        worst = 0.0;
        for (const auto& s : nerve.simplices[1]) {
            auto r = check_identity_A1(nerve, s, pou);
            if (!r.vacuous) worst = std::max(worst, r.residual);
        }
        current["identity_A1_edges"] = worst;

        for (const auto& [name, value] : current) {
            ResidualStudyRow row{name, n, value, 0.0};
            if (gi > 0 && prev.count(name) && value > 0)
                row.observed_order = std::log2(prev[name] / value);
            rows.push_back(row);
        }
        prev = current;
    }
    return rows;
}

std::string residual_study_csv(const std::vector<ResidualStudyRow>& rows) {
    std::ostringstream os;
    os << "check_name,N,residual,observed_order\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.check << "," << r.n << "," << r.residual << "," << r.observed_order << "\n";
    return os.str();
}

} // namespace cechlap
