#include "cechlap/net_nerve.hpp"

#include "cechlap/miniball.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cechlap {

bool NerveStats::all_ok() const {
    for (bool b : cardinality_bound_ok)
        if (!b) return false;
    return true;
}

namespace {

long wrapped_index_delta(long a, long b, long res) {
    long d = (b - a) % res;
    if (d < 0) d += res;
    if (2 * d >= res) d -= res;
    return d;
}

std::int64_t ceil_of(const Rat& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt fl = num / den; // toward zero; q > 0 in every use here
    if (fl * den < num) ++fl;
    return static_cast<std::int64_t>(fl);
}

/// Largest integer strictly below q.
std::int64_t strict_floor(const Rat& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt fl = num / den;
    if (fl * den == num) --fl;
    return static_cast<std::int64_t>(fl);
}

/// Ball-intersection tester. Torus nets built on a sample grid run in exact
/// rational arithmetic, so tangent configurations (radius exactly epsilon)
/// resolve as the open-ball convention demands. Sphere nets use chart lifts
/// in doubles; point clouds search witnesses among their own points.
class TupleTester {
public:
    TupleTester(const ModelSpace& space, const EpsilonNet& net) : space_(space), net_(net) {
        exact_ = space.kind() == ModelSpace::Kind::FlatTorus && !net.grid_indices.empty();
        if (exact_) {
            res_ = static_cast<long>(net.resolution);
            eps2_ = net.epsilon_exact * net.epsilon_exact;
            for (const Rat& l : space.torus().lengths_exact) spacing_.push_back(l / res_);
            equal_axes_ = std::all_of(spacing_.begin(), spacing_.end(),
                                      [&](const Rat& v) { return v == spacing_[0]; });
            if (equal_axes_) {
                Rat t2 = eps2_ / (spacing_[0] * spacing_[0]);
                sep_min_int_ = ceil_of(t2);           // sum m^2 >= this  <=>  d >= eps
                pair_max_int_ = strict_floor(4 * t2); // sum m^2 <= this  <=>  d < 2 eps
            }
        }
        name_ = exact_ ? "torus-grid-exact"
                       : (space.kind() == ModelSpace::Kind::PointCloud ? "cloud-witness" : "chart-float");
    }

    const std::string& name() const { return name_; }

    bool separated(std::size_t i, std::size_t j) const {
        if (exact_) {
            if (equal_axes_) return index_dist2(i, j) >= sep_min_int_;
            return scaled_dist2(i, j) >= eps2_;
        }
        return !(space_.distance(net_.centers[i], net_.centers[j]) < net_.epsilon);
    }

    bool balls_intersect(std::size_t i, std::size_t j) const {
        if (exact_) {
            if (equal_axes_) return index_dist2(i, j) <= pair_max_int_;
            return scaled_dist2(i, j) < Rat(4) * eps2_;
        }
        return space_.distance(net_.centers[i], net_.centers[j]) < 2.0 * net_.epsilon;
    }

    /// Minimax witness radius of a tuple; second value = radius < epsilon.
    std::pair<double, bool> tuple_radius(const std::vector<int>& tuple) const {
        if (tuple.size() == 1) return {0.0, true};
        if (tuple.size() == 2) {
            double d = space_.distance(net_.centers[tuple[0]], net_.centers[tuple[1]]);
            return {d / 2.0, balls_intersect(tuple[0], tuple[1])};
        }
        if (exact_) {
            std::vector<std::vector<Rat>> pts;
            pts.reserve(tuple.size());
            const auto& base = net_.grid_indices[tuple[0]];
            for (int v : tuple) {
                const auto& g = net_.grid_indices[v];
                std::vector<Rat> c(g.size());
                for (std::size_t a = 0; a < g.size(); ++a) {
                    long m = wrapped_index_delta(base[a], g[a], res_);
                    c[a] = equal_axes_ ? Rat(m) : Rat(m) * spacing_[a];
                }
                pts.push_back(std::move(c));
            }
            auto ball = minimum_enclosing_ball<Rat>(pts);
            Rat r2 = ball.radius2;
            if (equal_axes_) r2 *= spacing_[0] * spacing_[0];
            return {std::sqrt(to_double(r2)), r2 < eps2_};
        }
        std::vector<PointRef> pts;
        pts.reserve(tuple.size());
        for (int v : tuple) pts.push_back(net_.centers[v]);
        double r = space_.minimax_center_radius(pts);
        return {r, r < net_.epsilon};
    }

private:
    std::int64_t index_dist2(std::size_t i, std::size_t j) const {
        const auto& a = net_.grid_indices[i];
        const auto& b = net_.grid_indices[j];
        std::int64_t s = 0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            long m = wrapped_index_delta(a[k], b[k], res_);
            s += static_cast<std::int64_t>(m) * m;
        }
        return s;
    }

    Rat scaled_dist2(std::size_t i, std::size_t j) const {
        const auto& a = net_.grid_indices[i];
        const auto& b = net_.grid_indices[j];
        Rat s = 0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            long m = wrapped_index_delta(a[k], b[k], res_);
            s += spacing_[k] * spacing_[k] * m * m;
        }
        return s;
    }

    const ModelSpace& space_;
    const EpsilonNet& net_;
    bool exact_ = false, equal_axes_ = true;
    long res_ = 0;
    Rat eps2_;
    std::vector<Rat> spacing_;
    std::int64_t sep_min_int_ = 0, pair_max_int_ = 0;
    std::string name_;
};

double sphere_sample_spacing(double radius, std::size_t res) {
    double a = std::numbers::pi * radius / double(res - 1);
    double b = 2.0 * std::numbers::pi * radius / double(res);
    return std::max(a, b);
}

std::vector<long> unflatten(std::size_t flat, std::size_t n, std::size_t res) {
    std::vector<long> g(n);
    for (std::size_t a = n; a-- > 0;) {
        g[a] = static_cast<long>(flat % res);
        flat /= res;
    }
    return g;
}

EpsilonNet greedy_net(const ModelSpace& space, double eps, Rat eps_exact, std::size_t resolution) {
    if (!(eps > 0)) throw std::invalid_argument("build_epsilon_net: epsilon must be positive");
    EpsilonNet net;
    net.epsilon = eps;
    net.epsilon_exact = eps_exact;
    net.resolution = resolution;
    net.method = "greedy";

    const bool torus = space.kind() == ModelSpace::Kind::FlatTorus;
    if (torus) {
        for (const Rat& l : space.torus().lengths_exact)
            if (!(l * 4 < eps_exact * long(resolution)))
                throw std::invalid_argument("build_epsilon_net: resolution too coarse for epsilon/4 spacing");
    } else if (space.kind() == ModelSpace::Kind::RoundSphere &&
               !(sphere_sample_spacing(space.sphere_data().radius, resolution) < eps / 4.0)) {
        throw std::invalid_argument("build_epsilon_net: resolution too coarse for epsilon/4 spacing");
    }

    auto candidates = space.dense_sample(resolution);
    if (torus) {
        const std::size_t n = space.dim();
        const long res = static_cast<long>(resolution);
        std::vector<Rat> spacing;
        for (const Rat& l : space.torus().lengths_exact) spacing.push_back(l / res);
        const bool equal_axes = std::all_of(spacing.begin(), spacing.end(),
                                            [&](const Rat& v) { return v == spacing[0]; });
        const Rat eps2 = eps_exact * eps_exact;
        std::int64_t sep_min_int = 0;
        if (equal_axes) sep_min_int = ceil_of(eps2 / (spacing[0] * spacing[0]));

        for (const auto& cand : candidates) {
            auto g = unflatten(cand.index, n, resolution);
            bool ok = true;
            for (const auto& c : net.grid_indices) {
                if (equal_axes) {
                    std::int64_t s = 0;
                    for (std::size_t a = 0; a < n; ++a) {
                        long m = wrapped_index_delta(c[a], g[a], res);
                        s += static_cast<std::int64_t>(m) * m;
                    }
                    ok = s >= sep_min_int;
                } else {
                    Rat s = 0;
                    for (std::size_t a = 0; a < n; ++a) {
                        long m = wrapped_index_delta(c[a], g[a], res);
                        s += spacing[a] * spacing[a] * m * m;
                    }
                    ok = s >= eps2;
                }
                if (!ok) break;
            }
            if (ok) {
                net.centers.push_back(cand);
                net.grid_indices.push_back(std::move(g));
            }
        }
        return net;
    }

    for (const auto& cand : candidates) {
        bool ok = true;
        for (const auto& c : net.centers)
            if (space.distance(cand, c) < eps) {
                ok = false;
                break;
            }
        if (ok) net.centers.push_back(cand);
    }
    return net;
}

EpsilonNet lattice_net_impl(const ModelSpace& space, double eps, Rat eps_exact) {
    if (space.kind() != ModelSpace::Kind::FlatTorus)
        throw std::invalid_argument("build_lattice_net: flat torus only");
    if (!(eps > 0)) throw std::invalid_argument("build_lattice_net: epsilon must be positive");
    const auto& t = space.torus();
    const std::size_t n = t.lengths.size();

    std::vector<long> cells(n);
    for (std::size_t a = 0; a < n; ++a) {
        Rat q = t.lengths_exact[a] / eps_exact;
        cells[a] = static_cast<long>(BigInt(boost::multiprecision::numerator(q) /
                                            boost::multiprecision::denominator(q)));
        if (cells[a] < 2) throw std::invalid_argument("build_lattice_net: epsilon too large for a lattice net");
    }
    Rat cover2 = 0;
    for (std::size_t a = 0; a < n; ++a) {
        Rat s = t.lengths_exact[a] / cells[a];
        cover2 += s * s / 4;
    }
    if (!(cover2 < eps_exact * eps_exact))
        throw std::invalid_argument("build_lattice_net: lattice pitch cannot cover at this epsilon");

    long res = 1;
    for (long c : cells) res = std::lcm(res, c);
    const long res0 = res;
    for (std::size_t a = 0; a < n; ++a)
        while (!(t.lengths_exact[a] * 4 < eps_exact * res)) res += res0;

    EpsilonNet net;
    net.epsilon = eps;
    net.epsilon_exact = eps_exact;
    net.resolution = static_cast<std::size_t>(res);
    net.method = "lattice";

    std::size_t total = 1;
    for (long c : cells) total *= static_cast<std::size_t>(c);
    std::vector<long> idx(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<long> g(n);
        std::vector<double> coords(n);
        for (std::size_t a = 0; a < n; ++a) {
            g[a] = idx[a] * (res / cells[a]);
            coords[a] = double(idx[a]) * t.lengths[a] / double(cells[a]);
        }
        net.centers.push_back({flat, std::move(coords)});
        net.grid_indices.push_back(std::move(g));
        for (std::size_t a = n; a-- > 0;) {
            if (++idx[a] < cells[a]) break;
            idx[a] = 0;
        }
    }
    return net;
}

} // namespace

EpsilonNet build_epsilon_net(const ModelSpace& space, const std::string& epsilon_decimal,
                             std::size_t resolution) {
    Rat e = rat_from_decimal(epsilon_decimal);
    return greedy_net(space, to_double(e), e, resolution);
}

EpsilonNet build_epsilon_net(const ModelSpace& space, double epsilon, std::size_t resolution) {
    return greedy_net(space, epsilon, rat_from_double(epsilon), resolution);
}

EpsilonNet build_lattice_net(const ModelSpace& space, const std::string& epsilon_decimal) {
    Rat e = rat_from_decimal(epsilon_decimal);
    return lattice_net_impl(space, to_double(e), e);
}

EpsilonNet build_lattice_net(const ModelSpace& space, double epsilon) {
    return lattice_net_impl(space, epsilon, rat_from_double(epsilon));
}

Nerve build_nerve(const ModelSpace& space, const EpsilonNet& net, int qmax) {
    if (qmax < 0) throw std::invalid_argument("build_nerve: qmax must be >= 0");
    if (space.kind() != ModelSpace::Kind::PointCloud &&
        !(3.0 * net.epsilon < space.nerve_guard_radius()))
        throw std::invalid_argument("build_nerve: 3*epsilon exceeds the space's chart guard radius");

    Nerve nerve{space, net};
    const int n = static_cast<int>(net.centers.size());
    nerve.qmax = qmax;
    if (qmax > n - 1) {
        nerve.qmax = n - 1;
        nerve.qmax_clamped = true;
    }
    TupleTester tester(space, nerve.net);
    nerve.intersection_test = tester.name();

    nerve.simplices.assign(nerve.qmax + 1, {});
    nerve.witness_radii.assign(nerve.qmax + 1, {});
    for (int i = 0; i < n; ++i) {
        nerve.simplices[0].push_back({i});
        nerve.witness_radii[0].push_back(0.0);
    }
    if (nerve.qmax == 0) return nerve;

    std::vector<std::set<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (tester.balls_intersect(i, j)) {
                nerve.simplices[1].push_back({i, j});
                double d = space.distance(net.centers[i], net.centers[j]);
                nerve.witness_radii[1].push_back(d / 2.0);
                adj[i].insert(j);
                adj[j].insert(i);
            }

    for (int q = 2; q <= nerve.qmax; ++q) {
        for (const auto& tup : nerve.simplices[q - 1]) {
            for (int j : adj[tup.back()]) {
                if (j <= tup.back()) continue;
                bool clique = true;
                for (std::size_t a = 0; a + 1 < tup.size() && clique; ++a)
                    clique = adj[tup[a]].count(j) > 0;
                if (!clique) continue;
                std::vector<int> ext = tup;
                ext.push_back(j);
                auto [radius, hit] = tester.tuple_radius(ext);
                if (hit) {
                    nerve.simplices[q].push_back(std::move(ext));
                    nerve.witness_radii[q].push_back(radius);
                }
            }
        }
    }
    return nerve;
}

NerveStats nerve_stats(const Nerve& nerve) {
    NerveStats stats;
    const auto& net = nerve.net;
    const int n = static_cast<int>(net.centers.size());
    TupleTester tester(nerve.space, net);

    std::vector<std::set<int>> adj(n);
    if (nerve.qmax >= 1) {
        for (const auto& e : nerve.simplices[1]) {
            adj[e[0]].insert(e[1]);
            adj[e[1]].insert(e[0]);
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (tester.balls_intersect(i, j)) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
    }

    int nu = 0;
    for (int q = 0; q <= nerve.qmax; ++q) {
        for (const auto& tup : nerve.simplices[q]) {
            int count = static_cast<int>(tup.size()); // members meet their own intersection
            for (int j : adj[tup[0]]) {
                if (std::binary_search(tup.begin(), tup.end(), j)) continue;
                bool near_all = true;
                for (std::size_t a = 1; a < tup.size() && near_all; ++a)
                    near_all = adj[tup[a]].count(j) > 0;
                if (!near_all) continue;
                std::vector<int> ext = tup;
                ext.insert(std::lower_bound(ext.begin(), ext.end(), j), j);
                if (tester.tuple_radius(ext).second) ++count;
            }
            nu = std::max(nu, count);
        }
    }
    stats.nu = nu;

    for (int q = 0; q <= nerve.qmax; ++q) {
        stats.counts.push_back(nerve.count(q));
        double fact = 1.0;
        for (int t = 2; t <= q + 1; ++t) fact *= t;
        double bound = std::pow(double(nu), q) / fact * n;
        stats.cardinality_bound_ok.push_back(double(nerve.count(q)) <= bound + 1e-9);
    }
    return stats;
}

std::string nerve_to_json(const Nerve& nerve, const NerveStats& stats) {
    nlohmann::json j;
    j["epsilon"] = nerve.net.epsilon;
    j["intersection_test"] = nerve.intersection_test;
    nlohmann::json centers = nlohmann::json::array();
    for (const auto& c : nerve.net.centers) centers.push_back(c.coords);
    j["centers"] = centers;
    nlohmann::json S;
    for (int q = 0; q <= nerve.qmax; ++q) S[std::to_string(q)] = nerve.simplices[q];
    j["S"] = S;
    j["nu"] = stats.nu;
    j["counts"] = stats.counts;
    return j.dump(2);
}

std::string nerve_to_csv(const Nerve& nerve) {
    std::ostringstream os;
    os << "q,tuple,witness_radius\n";
    os.precision(17);
    for (int q = 0; q <= nerve.qmax; ++q) {
        for (std::size_t k = 0; k < nerve.simplices[q].size(); ++k) {
            os << q << ",";
            const auto& tup = nerve.simplices[q][k];
            for (std::size_t a = 0; a < tup.size(); ++a) os << (a ? " " : "") << tup[a];
            os << "," << nerve.witness_radii[q][k] << "\n";
        }
    }
    return os.str();
}

} // namespace cechlap
