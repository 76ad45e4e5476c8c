#include "cechlap/rational.hpp"

#include <cctype>
#include <cmath>

namespace cechlap {

Rat rat_from_decimal(const std::string& text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    BigInt mantissa = 0;
    long frac_digits = 0;
    bool any_digit = false, seen_dot = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            any_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool eneg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            eneg = text[pos] == '-';
            ++pos;
        }
        bool edigit = false;
        for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
            exponent = exponent * 10 + (text[pos] - '0');
            edigit = true;
        }
        if (!edigit) throw std::invalid_argument("bad exponent in decimal literal: " + text);
        if (eneg) exponent = -exponent;
    }
    if (!any_digit || pos != text.size())
        throw std::invalid_argument("bad decimal literal: " + text);
    Rat value(mantissa);
    long shift = exponent - frac_digits;
    BigInt p10 = 1;
    for (long i = 0; i < std::labs(shift); ++i) p10 *= 10;
    if (shift >= 0) value *= Rat(p10);
    else value /= Rat(p10);
    if (neg) value = -value;
    return value;
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral
    BigInt num = BigInt(std::llround(std::ldexp(m, 53)));
    exp -= 53;
    Rat value(num);
    BigInt p2 = BigInt(1) << std::abs(exp);
    if (exp >= 0) value *= Rat(p2);
    else value /= Rat(p2);
    return value;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("RatMatrix: shape mismatch");
    RatMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& v = (*this)(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
        }
    return out;
}

bool RatMatrix::is_zero() const {
    for (const Rat& v : a_)
        if (v != 0) return false;
    return true;
}

std::vector<std::vector<double>> RatMatrix::to_doubles() const {
    std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = to_double((*this)(i, j));
    return out;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant: matrix not square");
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::size_t rational_rank(RatMatrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(rank, j), m(piv, j));
        Rat inv = m(rank, col);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0) continue;
            Rat f = m(i, col) / inv;
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

RatMatrix rational_solve(RatMatrix a, RatMatrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve: shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) throw std::runtime_error("solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    RatMatrix x(n, b.cols());
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Rat s = b(i, j);
            for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x(k, j);
            x(i, j) = s / a(i, i);
        }
    }
    return x;
}

} // namespace cechlap
