#include "cechlap/geometry.hpp"

#include "cechlap/miniball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cechlap {

namespace {

constexpr double kPi = std::numbers::pi;

void check_index(const PointRef& p, std::size_t limit, const char* what) {
    if (limit && p.index >= limit)
        throw std::out_of_range(std::string(what) + ": point index out of range");
}

double dot3(const std::vector<double>& a, const std::vector<double>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

} // namespace

ModelSpace::ModelSpace(FlatTorus t) : data_(std::move(t)) {
    const auto& tor = std::get<FlatTorus>(data_);
    if (tor.lengths.empty()) throw std::invalid_argument("flat torus needs at least one side length");
    for (double l : tor.lengths)
        if (!(l > 0)) throw std::invalid_argument("flat torus side lengths must be positive");
}

ModelSpace::ModelSpace(RoundSphere s) : data_(s) {
    if (!(s.radius > 0)) throw std::invalid_argument("sphere radius must be positive");
}

ModelSpace::ModelSpace(PointCloud c) : data_(std::move(c)) {
    const auto& pc = std::get<PointCloud>(data_);
    const std::size_t n = pc.dist.size();
    if (n == 0) throw std::invalid_argument("point cloud needs at least one point");
    for (const auto& row : pc.dist)
        if (row.size() != n) throw std::invalid_argument("point cloud distance table must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (pc.dist[i][i] != 0.0) throw std::invalid_argument("point cloud distance table: nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (pc.dist[i][j] < 0 || pc.dist[i][j] != pc.dist[j][i])
                throw std::invalid_argument("point cloud distance table must be symmetric nonnegative");
        }
    }
    if (!pc.points.empty() && pc.points.size() != n)
        throw std::invalid_argument("point cloud coordinates do not match the distance table");
}

ModelSpace ModelSpace::flat_torus(std::vector<double> lengths) {
    FlatTorus t;
    t.lengths = std::move(lengths);
    for (double l : t.lengths) t.lengths_exact.push_back(rat_from_double(l));
    return ModelSpace(std::move(t));
}

ModelSpace ModelSpace::flat_torus_decimal(const std::vector<std::string>& lengths) {
    FlatTorus t;
    for (const auto& s : lengths) {
        Rat q = rat_from_decimal(s);
        t.lengths_exact.push_back(q);
        t.lengths.push_back(to_double(q));
    }
    return ModelSpace(std::move(t));
}

ModelSpace ModelSpace::sphere(double radius) { return ModelSpace(RoundSphere{radius}); }

ModelSpace ModelSpace::point_cloud(std::vector<std::vector<double>> points,
                                   std::vector<std::vector<double>> dist) {
    return ModelSpace(PointCloud{std::move(points), std::move(dist)});
}

ModelSpace::Kind ModelSpace::kind() const {
    if (std::holds_alternative<FlatTorus>(data_)) return Kind::FlatTorus;
    if (std::holds_alternative<RoundSphere>(data_)) return Kind::RoundSphere;
    return Kind::PointCloud;
}

std::string ModelSpace::kind_name() const {
    switch (kind()) {
        case Kind::FlatTorus: return "flat_torus";
        case Kind::RoundSphere: return "sphere";
        default: return "point_cloud";
    }
}

std::size_t ModelSpace::dim() const {
    switch (kind()) {
        case Kind::FlatTorus: return torus().lengths.size();
        case Kind::RoundSphere: return 2;
        default: return 0;
    }
}

std::optional<double> ModelSpace::volume() const {
    switch (kind()) {
        case Kind::FlatTorus: {
            double v = 1.0;
            for (double l : torus().lengths) v *= l;
            return v;
        }
        case Kind::RoundSphere: {
            double r = sphere_data().radius;
            return 4.0 * kPi * r * r;
        }
        default:
            return std::nullopt;
    }
}

double torus_axis_delta(double a, double b, double length) {
    double d = std::fmod(b - a, length);
    if (d < -length / 2) d += length;
    if (d >= length / 2) d -= length;
    return d;
}

double ModelSpace::distance(const PointRef& a, const PointRef& b) const {
    switch (kind()) {
        case Kind::FlatTorus: {
            const auto& L = torus().lengths;
            if (a.coords.size() != L.size() || b.coords.size() != L.size())
                throw std::invalid_argument("distance: coordinate dimension mismatch");
            double s = 0.0;
            for (std::size_t i = 0; i < L.size(); ++i) {
                double d = std::abs(a.coords[i] - b.coords[i]);
                d = std::min(d, L[i] - d);
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Kind::RoundSphere: {
            double r = sphere_data().radius;
            double c = dot3(a.coords, b.coords) / (r * r);
            c = std::clamp(c, -1.0, 1.0);
            return r * std::acos(c);
        }
        default: {
            const auto& pc = cloud();
            check_index(a, pc.dist.size(), "distance");
            check_index(b, pc.dist.size(), "distance");
            return pc.dist[a.index][b.index];
        }
    }
}

double ModelSpace::diameter_upper_bound() const {
    switch (kind()) {
        case Kind::FlatTorus: {
            double s = 0.0;
            for (double l : torus().lengths) s += l * l / 4.0;
            return std::sqrt(s);
        }
        case Kind::RoundSphere:
            return kPi * sphere_data().radius;
        default: {
            double m = 0.0;
            for (const auto& row : cloud().dist)
                for (double d : row) m = std::max(m, d);
            return m;
        }
    }
}

std::vector<PointRef> ModelSpace::dense_sample(std::size_t resolution) const {
    if (kind() == Kind::PointCloud) {
        const auto& pc = cloud();
        std::vector<PointRef> out;
        out.reserve(pc.dist.size());
        for (std::size_t i = 0; i < pc.dist.size(); ++i)
            out.push_back({i, pc.points.empty() ? std::vector<double>{} : pc.points[i]});
        return out;
    }
    if (resolution < 2) throw std::invalid_argument("dense_sample: resolution must be >= 2");
    std::vector<PointRef> out;
    if (kind() == Kind::FlatTorus) {
        const auto& L = torus().lengths;
        const std::size_t n = L.size();
        std::vector<std::size_t> idx(n, 0);
        std::size_t count = 1;
        for (std::size_t i = 0; i < n; ++i) count *= resolution;
        out.reserve(count);
        for (std::size_t flat = 0; flat < count; ++flat) {
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = double(idx[i]) * L[i] / double(resolution);
            out.push_back({flat, std::move(c)});
            for (std::size_t i = n; i-- > 0;) {
                if (++idx[i] < resolution) break;
                idx[i] = 0;
            }
        }
        return out;
    }
    // latitude-longitude grid, poles kept once
    const double r = sphere_data().radius;
    std::size_t index = 0;
    for (std::size_t i = 0; i < resolution; ++i) {
        double theta = kPi * double(i) / double(resolution - 1);
        bool pole = (i == 0 || i + 1 == resolution);
        std::size_t jmax = pole ? 1 : resolution;
        for (std::size_t j = 0; j < jmax; ++j) {
            double phi = 2.0 * kPi * double(j) / double(resolution);
            out.push_back({index++,
                           {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                            r * std::cos(theta)}});
        }
    }
    return out;
}

double ModelSpace::chart_radius() const {
    switch (kind()) {
        case Kind::FlatTorus: {
            double m = torus().lengths[0];
            for (double l : torus().lengths) m = std::min(m, l);
            return m / 3.0;
        }
        case Kind::RoundSphere:
            return kPi * sphere_data().radius / 3.0;
        default:
            throw std::invalid_argument("point cloud has no charts");
    }
}

double ModelSpace::nerve_guard_radius() const {
    switch (kind()) {
        case Kind::FlatTorus: {
            double m = torus().lengths[0];
            for (double l : torus().lengths) m = std::min(m, l);
            return 0.75 * m;
        }
        case Kind::RoundSphere:
            return kPi * sphere_data().radius / 2.0;
        default:
            return std::numeric_limits<double>::infinity();
    }
}

namespace sphere_chart {

void tangent_frame(const std::vector<double>& u, std::vector<double>& e1, std::vector<double>& e2) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(u[i]) < std::abs(u[k])) k = i;
    std::vector<double> a(3, 0.0);
    a[k] = 1.0;
    double au = dot3(a, u);
    e1 = {a[0] - au * u[0], a[1] - au * u[1], a[2] - au * u[2]};
    double n = std::sqrt(dot3(e1, e1));
    for (double& v : e1) v /= n;
    e2 = {u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2], u[0] * e1[1] - u[1] * e1[0]};
}

std::vector<double> log_map(const std::vector<double>& base, const std::vector<double>& p, double radius) {
    std::vector<double> u = {base[0] / radius, base[1] / radius, base[2] / radius};
    std::vector<double> v = {p[0] / radius, p[1] / radius, p[2] / radius};
    double c = std::clamp(dot3(u, v), -1.0, 1.0);
    double theta = std::acos(c);
    std::vector<double> e1, e2;
    tangent_frame(u, e1, e2);
    if (theta < 1e-15) return {0.0, 0.0};
    std::vector<double> w = {v[0] - c * u[0], v[1] - c * u[1], v[2] - c * u[2]};
    double wn = std::sqrt(dot3(w, w));
    if (wn == 0.0) throw std::invalid_argument("log map undefined at the antipode");
    double scale = radius * theta / wn;
    return {scale * dot3(w, e1), scale * dot3(w, e2)};
}

std::vector<double> exp_map(const std::vector<double>& base, const std::vector<double>& t, double radius) {
    std::vector<double> u = {base[0] / radius, base[1] / radius, base[2] / radius};
    std::vector<double> e1, e2;
    tangent_frame(u, e1, e2);
    double norm = std::hypot(t[0], t[1]);
    if (norm == 0.0) return base;
    double theta = norm / radius;
    std::vector<double> dir(3);
    for (std::size_t i = 0; i < 3; ++i) dir[i] = (t[0] * e1[i] + t[1] * e2[i]) / norm;
    std::vector<double> out(3);
    for (std::size_t i = 0; i < 3; ++i) out[i] = radius * (std::cos(theta) * u[i] + std::sin(theta) * dir[i]);
    return out;
}

} // namespace sphere_chart

std::vector<std::vector<double>> ModelSpace::lift_to_chart(const PointRef& base,
                                                           const std::vector<PointRef>& pts) const {
    if (kind() == Kind::PointCloud) throw std::invalid_argument("lift_to_chart: point cloud has no charts");
    const double rmax = chart_radius();
    for (const auto& p : pts)
        if (!(distance(base, p) < rmax))
            throw std::invalid_argument("lift_to_chart: point outside the chart radius");
    std::vector<std::vector<double>> out;
    out.reserve(pts.size());
    if (kind() == Kind::FlatTorus) {
        const auto& L = torus().lengths;
        for (const auto& p : pts) {
            std::vector<double> c(L.size());
            for (std::size_t i = 0; i < L.size(); ++i)
                c[i] = torus_axis_delta(base.coords[i], p.coords[i], L[i]);
            out.push_back(std::move(c));
        }
        return out;
    }
    const double r = sphere_data().radius;
    for (const auto& p : pts) out.push_back(sphere_chart::log_map(base.coords, p.coords, r));
    return out;
}

double ModelSpace::minimax_center_radius(const std::vector<PointRef>& pts) const {
    if (pts.empty()) throw std::invalid_argument("minimax_center_radius: empty point set");
    switch (kind()) {
        case Kind::FlatTorus: {
            auto lifted = lift_to_chart(pts[0], pts);
            double scale2 = 0.0;
            for (const auto& p : lifted)
                for (double c : p) scale2 = std::max(scale2, c * c);
            auto ball = minimum_enclosing_ball<double>(lifted, 1e-14 * (scale2 + 1.0), 1e-12 * (scale2 + 1.0));
            return std::sqrt(std::max(0.0, ball.radius2));
        }
        case Kind::RoundSphere: {
            const double r = sphere_data().radius;
            auto radius_from = [&](const PointRef& center_base) {
                auto lifted = lift_to_chart(center_base, pts);
                auto ball = minimum_enclosing_ball<double>(lifted, 1e-14 * r * r, 1e-12 * r * r);
                PointRef w{0, sphere_chart::exp_map(center_base.coords, ball.center, r)};
                double worst = 0.0;
                for (const auto& p : pts) worst = std::max(worst, distance(w, p));
                return std::pair<double, PointRef>(worst, w);
            };
            auto [r1, w1] = radius_from(pts[0]);
            // one projection-refinement pass: re-solve in a chart at the witness
            try {
                auto [r2, w2] = radius_from(w1);
                return std::min(r1, r2);
            } catch (const std::invalid_argument&) {
                return r1; // witness chart would not hold all points
            }
        }
        default: {
            const auto& pc = cloud();
            for (const auto& p : pts) check_index(p, pc.dist.size(), "minimax_center_radius");
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t w = 0; w < pc.dist.size(); ++w) {
                double worst = 0.0;
                for (const auto& p : pts) worst = std::max(worst, pc.dist[w][p.index]);
                best = std::min(best, worst);
            }
            return best;
        }
    }
}

} // namespace cechlap
