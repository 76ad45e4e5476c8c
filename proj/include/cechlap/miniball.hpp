#ifndef CECHLAP_MINIBALL_HPP
#define CECHLAP_MINIBALL_HPP

#include <cstddef>
#include <list>
#include <stdexcept>
#include <vector>

namespace cechlap {

/// Minimum enclosing ball of a small point set, Welzl's move-to-front recursion
/// with the input order kept as given (no shuffling, bit-reproducible output).
/// Scalar is double or an exact rational type; Point is a coordinate vector.
template <typename Scalar>
struct Ball {
    std::vector<Scalar> center;
    Scalar radius2{};
    bool valid = false;
};

namespace detail {

template <typename Scalar>
Scalar dist2(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    Scalar s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        Scalar d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

template <typename Scalar>
bool solve_linear(std::vector<std::vector<Scalar>> m, std::vector<Scalar>& rhs, Scalar zero_tol) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if ((m[i][k] < Scalar(0) ? -m[i][k] : m[i][k]) > (m[piv][k] < Scalar(0) ? -m[piv][k] : m[piv][k]))
                piv = i;
        if ((m[piv][k] < Scalar(0) ? -m[piv][k] : m[piv][k]) <= zero_tol) return false;
        std::swap(m[k], m[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            Scalar f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Scalar s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * rhs[j];
        rhs[i] = s / m[i][i];
    }
    return true;
}

/// Smallest ball with all support points on its boundary (circumball).
/// Returns an invalid ball when the support is affinely dependent.
template <typename Scalar>
Ball<Scalar> circumball(const std::vector<const std::vector<Scalar>*>& support, Scalar zero_tol) {
    Ball<Scalar> b;
    if (support.empty()) return b;
    const std::size_t dim = support[0]->size();
    const std::size_t k = support.size() - 1;
    if (k == 0) {
        b.center = *support[0];
        b.radius2 = Scalar(0);
        b.valid = true;
        return b;
    }
    std::vector<std::vector<Scalar>> gram(k, std::vector<Scalar>(k));
    std::vector<Scalar> rhs(k);
    const auto& p0 = *support[0];
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            Scalar dot{};
            for (std::size_t c = 0; c < dim; ++c)
                dot += ((*support[i + 1])[c] - p0[c]) * ((*support[j + 1])[c] - p0[c]);
            gram[i][j] = Scalar(2) * dot;
        }
        rhs[i] = gram[i][i] / Scalar(2);
    }
    if (!solve_linear(gram, rhs, zero_tol)) return b;
    b.center = p0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < dim; ++c)
            b.center[c] += rhs[i] * ((*support[i + 1])[c] - p0[c]);
    b.radius2 = dist2(b.center, p0);
    b.valid = true;
    return b;
}

template <typename Scalar>
class WelzlSolver {
public:
    WelzlSolver(const std::vector<std::vector<Scalar>>& pts, Scalar zero_tol, Scalar slack)
        : pts_(pts), zero_tol_(zero_tol), slack_(slack) {
        for (std::size_t i = 0; i < pts.size(); ++i) order_.push_back(i);
    }

    Ball<Scalar> solve() {
        if (pts_.empty()) throw std::invalid_argument("miniball: empty point set");
        std::vector<const std::vector<Scalar>*> support;
        return mtf(order_.end(), support);
    }

private:
    bool inside(const Ball<Scalar>& b, const std::vector<Scalar>& p) const {
        if (!b.valid) return false;
        return dist2(p, b.center) <= b.radius2 + slack_;
    }

    Ball<Scalar> ball_of(std::vector<const std::vector<Scalar>*>& support) const {
        Ball<Scalar> b = circumball(support, zero_tol_);
        if (b.valid || support.size() < 3) return b;
        // affinely dependent support: smallest ball through a maximal
        // independent subset that still carries the remaining points
        Ball<Scalar> best;
        for (std::size_t drop = 0; drop < support.size(); ++drop) {
            std::vector<const std::vector<Scalar>*> sub;
            for (std::size_t i = 0; i < support.size(); ++i)
                if (i != drop) sub.push_back(support[i]);
            Ball<Scalar> cb = ball_of(sub);
            if (cb.valid && inside(cb, *support[drop]) && (!best.valid || cb.radius2 < best.radius2))
                best = cb;
        }
        return best;
    }

    Ball<Scalar> mtf(typename std::list<std::size_t>::iterator end,
                     std::vector<const std::vector<Scalar>*>& support) {
        Ball<Scalar> b = ball_of(support);
        if (support.size() == pts_[0].size() + 1) return b;
        for (auto it = order_.begin(); it != end;) {
            auto cur = it++;
            if (!inside(b, pts_[*cur])) {
                support.push_back(&pts_[*cur]);
                b = mtf(cur, support);
                support.pop_back();
                order_.splice(order_.begin(), order_, cur);
            }
        }
        return b;
    }

    const std::vector<std::vector<Scalar>>& pts_;
    std::list<std::size_t> order_;
    Scalar zero_tol_, slack_;
};

} // namespace detail

/// Minimum enclosing ball; points given as coordinate vectors of equal dimension.
template <typename Scalar>
Ball<Scalar> minimum_enclosing_ball(const std::vector<std::vector<Scalar>>& pts,
                                    Scalar zero_tol = Scalar(0), Scalar slack = Scalar(0)) {
    detail::WelzlSolver<Scalar> solver(pts, zero_tol, slack);
    return solver.solve();
}

} // namespace cechlap

#endif
