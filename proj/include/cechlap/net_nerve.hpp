#ifndef CECHLAP_NET_NERVE_HPP
#define CECHLAP_NET_NERVE_HPP

#include "cechlap/geometry.hpp"

#include <string>
#include <vector>

namespace cechlap {

/// Maximal epsilon-separated center set on a model space, together with the
/// candidate grid it was built from. When the centers sit on a torus sample
/// grid the integer indices are kept so ball-intersection tests can run in
/// exact rational arithmetic (tangent configurations resolve exactly).
struct EpsilonNet {
    double epsilon = 0.0;
    Rat epsilon_exact;
    std::vector<PointRef> centers;
    std::size_t resolution = 0;
    std::string method; // "greedy" or "lattice"
    std::vector<std::vector<long>> grid_indices; // empty unless torus-grid built
};

struct NerveStats {
    int nu = 0;
    std::vector<std::size_t> counts;            // |S_q| for q = 0..qmax
    std::vector<bool> cardinality_bound_ok;     // |S_q| <= nu^q/(q+1)! |X|
    bool all_ok() const;
};

/// Nerve of the open ball cover of an EpsilonNet: for each q the
/// lexicographically sorted list of strictly increasing index tuples whose
/// balls intersect, with the witness radius of each intersection.
struct Nerve {
    ModelSpace space;
    EpsilonNet net;
    int qmax = 0;
    bool qmax_clamped = false;
    std::string intersection_test; // "torus-grid-exact" | "chart-float" | "cloud-witness"
    std::vector<std::vector<std::vector<int>>> simplices; // [q][k] = sorted tuple
    std::vector<std::vector<double>> witness_radii;       // aligned with simplices

    std::size_t count(int q) const {
        return q >= 0 && q <= qmax ? simplices[q].size() : 0;
    }
};

/// Greedy maximal epsilon-separated subset of the dense sample, scanned in
/// lexicographic order. The epsilon given as a decimal string is honored
/// exactly (0.12 means 3/25, not the nearest double).
EpsilonNet build_epsilon_net(const ModelSpace& space, const std::string& epsilon_decimal,
                             std::size_t resolution);
EpsilonNet build_epsilon_net(const ModelSpace& space, double epsilon, std::size_t resolution);

/// Axis-aligned lattice net on a flat torus: pitch L_i/floor(L_i/epsilon).
/// Also a maximal epsilon-separated set, with covering radius well below
/// epsilon, which keeps partition-of-unity derivatives moderate.
EpsilonNet build_lattice_net(const ModelSpace& space, const std::string& epsilon_decimal);
EpsilonNet build_lattice_net(const ModelSpace& space, double epsilon);

/// Nerve of the ball cover up to dimension qmax (clamped to |X|-1). A tuple
/// enters S_q exactly when the minimax witness radius of its centers is
/// strictly below epsilon; faces are tested before any extension.
Nerve build_nerve(const ModelSpace& space, const EpsilonNet& net, int qmax);

/// nu = max over simplices I of #{j : U_j meets U_I} (members included),
/// the |S_q| counts and the Bishop-Gromov style cardinality check bits.
NerveStats nerve_stats(const Nerve& nerve);

std::string nerve_to_json(const Nerve& nerve, const NerveStats& stats);
std::string nerve_to_csv(const Nerve& nerve);

} // namespace cechlap

#endif
