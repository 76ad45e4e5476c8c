#ifndef CECHLAP_GEOMETRY_HPP
#define CECHLAP_GEOMETRY_HPP

#include "cechlap/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cechlap {

/// A point of a model space: index into the canonical sample list plus
/// coordinates in the parameter domain (torus: fundamental cell; sphere:
/// ambient triple of norm R; point cloud: stored coordinates, may be empty).
struct PointRef {
    std::size_t index = 0;
    std::vector<double> coords;
};

struct FlatTorus {
    std::vector<double> lengths;       // side lengths L_1..L_n, all positive
    std::vector<Rat> lengths_exact;    // decimal-exact mirrors when known
};

struct RoundSphere {
    double radius = 1.0; // round 2-sphere of radius R in R^3
};

struct PointCloud {
    std::vector<std::vector<double>> points; // optional coordinates, may be empty vectors
    std::vector<std::vector<double>> dist;   // symmetric distance table
};

/// Model space with exact distances: flat torus, round sphere, or a finite
/// metric space given by a distance table.
class ModelSpace {
public:
    explicit ModelSpace(FlatTorus t);
    explicit ModelSpace(RoundSphere s);
    explicit ModelSpace(PointCloud c);

    static ModelSpace flat_torus(std::vector<double> lengths);
    static ModelSpace flat_torus_decimal(const std::vector<std::string>& lengths);
    static ModelSpace sphere(double radius);
    static ModelSpace point_cloud(std::vector<std::vector<double>> points,
                                  std::vector<std::vector<double>> dist);

    enum class Kind { FlatTorus, RoundSphere, PointCloud };
    Kind kind() const;
    std::string kind_name() const;

    const FlatTorus& torus() const { return std::get<FlatTorus>(data_); }
    const RoundSphere& sphere_data() const { return std::get<RoundSphere>(data_); }
    const PointCloud& cloud() const { return std::get<PointCloud>(data_); }

    /// Dimension of the parameter domain (torus: n; sphere: 2; cloud: 0).
    std::size_t dim() const;

    /// Total volume; the point cloud has none.
    std::optional<double> volume() const;

    double distance(const PointRef& a, const PointRef& b) const;
    double diameter_upper_bound() const;

    /// Deterministic lattice on the fundamental domain, lexicographic order.
    /// The point cloud returns its own points whatever the resolution.
    std::vector<PointRef> dense_sample(std::size_t resolution) const;

    /// Euclidean coordinates of pts in a normal chart at base. Valid while all
    /// pts stay within chart_radius() of base; the point cloud has no charts.
    std::vector<std::vector<double>> lift_to_chart(const PointRef& base,
                                                   const std::vector<PointRef>& pts) const;

    /// Largest base distance accepted by lift_to_chart.
    double chart_radius() const;

    /// Guard for nerve building: requires 3*epsilon < nerve_guard_radius().
    /// Torus: 3/4 min L_i (ball tests in a chart stay exact for eps < min L/4);
    /// sphere: pi R / 2; point cloud: unbounded (witness search needs no chart).
    double nerve_guard_radius() const;

    /// Smallest r such that some point of the space lies within r of every pt.
    /// Torus/sphere: minimum enclosing ball of the chart lift (sphere gets one
    /// projection-refinement pass); cloud: witness search over its own points.
    double minimax_center_radius(const std::vector<PointRef>& pts) const;

private:
    std::variant<FlatTorus, RoundSphere, PointCloud> data_;
};

/// Wrapped representative of b-a on one torus axis, in [-L/2, L/2).
double torus_axis_delta(double a, double b, double length);

namespace sphere_chart {
/// Deterministic orthonormal tangent frame at a unit vector.
void tangent_frame(const std::vector<double>& unit, std::vector<double>& e1, std::vector<double>& e2);
std::vector<double> log_map(const std::vector<double>& base, const std::vector<double>& p, double radius);
std::vector<double> exp_map(const std::vector<double>& base, const std::vector<double>& tangent2, double radius);
} // namespace sphere_chart

} // namespace cechlap

#endif
