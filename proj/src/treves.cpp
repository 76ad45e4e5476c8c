#include "cechlap/treves.hpp"

#include "cechlap/spectra.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cechlap {

namespace {

int sparsity_budget(const std::vector<std::vector<int>>& a) {
    std::size_t n = a.size(), m = a[0].size();
    int k = 1;
    for (std::size_t i = 0; i < n; ++i) {
        int c = 0;
        for (std::size_t j = 0; j < m; ++j) c += a[i][j] != 0;
        k = std::max(k, c);
    }
    for (std::size_t j = 0; j < m; ++j) {
        int c = 0;
        for (std::size_t i = 0; i < n; ++i) c += a[i][j] != 0;
        k = std::max(k, c);
    }
    return k;
}

RatMatrix columns_as_matrix(const std::vector<std::vector<int>>& a, const std::vector<std::size_t>& cols) {
    RatMatrix m(a.size(), cols.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a[i][cols[j]];
    return m;
}

} // namespace

TrevesInstance treves_operator(const std::vector<std::vector<int>>& A) {
    if (A.empty() || A[0].empty()) throw std::invalid_argument("treves_operator: empty matrix");
    TrevesInstance inst;
    inst.A = A;
    inst.n = A.size();
    inst.m = A[0].size();
    for (const auto& row : A) {
        if (row.size() != inst.m) throw std::invalid_argument("treves_operator: ragged matrix");
        for (int v : row)
            if (v < -1 || v > 1) throw std::invalid_argument("treves_operator: entries must be in {-1, 0, 1}");
    }
    inst.k = sparsity_budget(A);

    // lexicographically first independent column set
    for (std::size_t j = 0; j < inst.m; ++j) {
        std::vector<std::size_t> trial = inst.kept;
        trial.push_back(j);
        if (rational_rank(columns_as_matrix(A, trial)) == trial.size()) inst.kept = std::move(trial);
    }
    inst.r = inst.kept.size();

    inst.B = RatMatrix(inst.m, inst.n);
    if (inst.r > 0) {
        RatMatrix ak = columns_as_matrix(A, inst.kept);
        RatMatrix akt = ak.transposed();
        RatMatrix p = akt * ak;
        inst.P.assign(inst.r, std::vector<BigInt>(inst.r));
        for (std::size_t i = 0; i < inst.r; ++i)
            for (std::size_t j = 0; j < inst.r; ++j)
                inst.P[i][j] = boost::multiprecision::numerator(p(i, j));
        if (inst.r > 1) {
            inst.Q.assign(inst.r - 1, std::vector<BigInt>(inst.r - 1));
            for (std::size_t i = 1; i < inst.r; ++i)
                for (std::size_t j = 1; j < inst.r; ++j) inst.Q[i - 1][j - 1] = inst.P[i][j];
        }
        RatMatrix x = rational_solve(p, akt); // coordinates in the kept-column basis
        for (std::size_t i = 0; i < inst.r; ++i)
            for (std::size_t j = 0; j < inst.n; ++j) inst.B(inst.kept[i], j) = x(i, j);

        RatMatrix a_full(inst.n, inst.m);
        for (std::size_t i = 0; i < inst.n; ++i)
            for (std::size_t j = 0; j < inst.m; ++j) a_full(i, j) = A[i][j];
        RatMatrix aba = (a_full * inst.B) * a_full;
        if (!(aba == a_full)) throw std::runtime_error("treves_operator: A B A != A");
        // B must vanish off Im(A): B == B (A_k P^{-1} A_k^T) = (B A_k) X
        RatMatrix reproj = (inst.B * ak) * x;
        if (!(reproj == inst.B)) throw std::runtime_error("treves_operator: B does not vanish on Im(A)^perp");
    }
    return inst;
}

BoundReport treves_norm_audit(const TrevesInstance& inst) {
    BoundReport rep;
    rep.bound = "lemma4.2_norm";
    rep.comparison = "le_log";
    rep.instance = {{"n", double(inst.n)}, {"m", double(inst.m)}, {"k", double(inst.k)},
                    {"r", double(inst.r)}};
    rep.rhs_log = std::log(double(inst.n)) + 2.0 * double(inst.n) * std::log(double(inst.k));
    if (inst.r == 0) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    auto bd = inst.B.to_doubles();
    const std::size_t n = inst.n;
    std::vector<double> g(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < inst.m; ++t) s += bd[t][i] * bd[t][j];
            g[i * n + j] = s;
        }
    auto eig = symmetric_eigen(g, n);
    rep.lhs = eig.values.empty() ? 0.0 : std::max(0.0, eig.values.back());
    rep.pass = rep.lhs <= 0.0 || std::log(rep.lhs) <= rep.rhs_log + 1e-9;
    return rep;
}

BoundReport gram_minor_audit(const TrevesInstance& inst, std::size_t lmax) {
    BoundReport rep;
    rep.bound = "lemma4.2_gram_minors";
    rep.comparison = "exact";
    rep.instance = {{"n", double(inst.n)}, {"k", double(inst.k)}, {"r", double(inst.r)}};
    if (inst.r == 0) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    if (inst.r > 12) throw std::invalid_argument("gram_minor_audit: rank too large for minor enumeration");
    lmax = std::min(lmax, inst.r);

    bool pass = true;
    double worst_ratio = 0.0;
    for (std::size_t l = 1; l <= lmax; ++l) {
        BigInt bound = 1;
        for (std::size_t t = 0; t < 2 * l - 1; ++t) bound *= inst.k;
        BigInt max_minor = 0;

        std::vector<std::size_t> rows(l), cols(l);
        for (std::size_t i = 0; i < l; ++i) rows[i] = i;
        auto next_comb = [&](std::vector<std::size_t>& c) {
            std::size_t i = l;
            while (i-- > 0) {
                if (c[i] + (l - i) < inst.r + 0) {
                    ++c[i];
                    for (std::size_t j = i + 1; j < l; ++j) c[j] = c[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        do {
            for (std::size_t i = 0; i < l; ++i) cols[i] = i;
            do {
                std::vector<std::vector<BigInt>> sub(l, std::vector<BigInt>(l));
                for (std::size_t i = 0; i < l; ++i)
                    for (std::size_t j = 0; j < l; ++j) sub[i][j] = inst.P[rows[i]][cols[j]];
                BigInt d = bareiss_determinant(sub);
                if (d < 0) d = -d;
                if (d > max_minor) max_minor = d;
            } while (next_comb(cols));
        } while (next_comb(rows));

        if (max_minor > bound) pass = false;
        double ratio = max_minor.convert_to<double>() / bound.convert_to<double>();
        worst_ratio = std::max(worst_ratio, ratio);
        rep.instance["max_minor_l" + std::to_string(l)] = max_minor.convert_to<double>();
    }

    BigInt det_p = bareiss_determinant(inst.P);
    if (det_p < 0) det_p = -det_p;
    if (det_p < 1) pass = false;
    rep.instance["det_p"] = det_p.convert_to<double>();

    BigInt det_q = inst.r > 1 ? bareiss_determinant(inst.Q) : BigInt(1);
    if (det_q < 0) det_q = -det_q;
    rep.instance["det_q"] = det_q.convert_to<double>();
    // ||P_1(a_1)||^2 = det P / det Q >= k^{-2n}
    BigInt k2n = 1;
    for (std::size_t t = 0; t < 2 * inst.n; ++t) k2n *= inst.k;
    if (det_p * k2n < det_q) pass = false;
    rep.instance["p1a1_norm2"] = det_p.convert_to<double>() / det_q.convert_to<double>();

    rep.lhs = worst_ratio;
    rep.rhs_log = 0.0;
    rep.pass = pass;
    return rep;
}

CounterexampleReport treves_counterexample(std::size_t m) {
    if (m < 2) throw std::invalid_argument("treves_counterexample: m must be >= 2");
    CounterexampleReport rep;
    rep.m = m;

    std::vector<std::vector<int>> a(m - 1, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m - 1; ++i) {
        a[i][i] = 1;
        a[i][i + 1] = -1;
    }
    auto inst = treves_operator(a);

    RatMatrix v(m, 1);
    for (std::size_t i = 0; i < m; ++i) v(i, 0) = Rat(BigInt(i + 1));
    RatMatrix a_full(m - 1, m);
    for (std::size_t i = 0; i < m - 1; ++i)
        for (std::size_t j = 0; j < m; ++j) a_full(i, j) = a[i][j];
    RatMatrix av = a_full * v;

    Rat norm_av2 = 0;
    for (std::size_t i = 0; i < m - 1; ++i) norm_av2 += av(i, 0) * av(i, 0);
    RatMatrix bav = inst.B * av;
    Rat norm_bav2 = 0;
    for (std::size_t i = 0; i < m; ++i) norm_bav2 += bav(i, 0) * bav(i, 0);

    rep.norm_av2 = BigInt(m - 1);
    rep.norm_bav2 = norm_bav2;
    rep.ratio = norm_bav2 / norm_av2;
    rep.linear_reference = 10.0 * double(m);

    Rat expect_ratio = Rat(BigInt(m) * BigInt(2 * m - 1), BigInt(6));
    Rat expect_bav2 = Rat(BigInt(m - 1) * BigInt(m) * BigInt(2 * m - 1), BigInt(6));
    rep.exact = norm_av2 == Rat(BigInt(m - 1)) && norm_bav2 == expect_bav2 && rep.ratio == expect_ratio;
    return rep;
}

std::string counterexample_csv(const std::vector<CounterexampleReport>& rows) {
    std::ostringstream os;
    os << "m,ratio_num,ratio_den\n";
    for (const auto& r : rows)
        os << r.m << "," << boost::multiprecision::numerator(r.ratio) << ","
           << boost::multiprecision::denominator(r.ratio) << "\n";
    return os.str();
}

std::vector<std::vector<int>> random_sign_matrix(std::mt19937_64& rng, int max_dim, int max_k) {
    auto pick = [&rng](int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); };
    int n = pick(1, max_dim), m = pick(1, max_dim), k = pick(1, max_k);
    std::vector<std::vector<int>> a(n, std::vector<int>(m, 0));
    for (int j = 0; j < m; ++j) {
        int nnz = pick(0, std::min(k, n));
        for (int t = 0; t < nnz; ++t) {
            int i = pick(0, n - 1);
            a[i][j] = rng() % 2 ? 1 : -1;
        }
    }
    // enforce the row budget by dropping trailing entries
    for (int i = 0; i < n; ++i) {
        int c = 0;
        for (int j = 0; j < m; ++j) {
            if (a[i][j] == 0) continue;
            if (++c > k) a[i][j] = 0;
        }
    }
    return a;
}

std::string bound_reports_to_json(const std::vector<BoundReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["bound"] = r.bound;
        j["lhs"] = r.lhs;
        j["rhs_log"] = r.rhs_log;
        j["pass"] = r.pass;
        j["vacuous"] = r.vacuous;
        j["comparison"] = r.comparison;
        j["instance"] = r.instance;
        arr.push_back(j);
    }
    return arr.dump(2);
}

} // namespace cechlap
