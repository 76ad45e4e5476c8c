#ifndef CECHLAP_RATIONAL_HPP
#define CECHLAP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cechlap {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }

/// Exact rational from a decimal literal such as "0.12" or "-3.5e-2".
/// Used wherever a threshold must mean its decimal value, not the nearest double.
Rat rat_from_decimal(const std::string& text);

/// Exact value of a double (every finite double is a dyadic rational).
Rat rat_from_double(double x);

/// Dense matrix of exact rationals, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatMatrix transposed() const;
    RatMatrix operator*(const RatMatrix& rhs) const;
    bool operator==(const RatMatrix& rhs) const = default;

    bool is_zero() const;
    std::vector<std::vector<double>> to_doubles() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Exact determinant of an integer matrix (Bareiss fraction-free elimination).
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

/// Exact rank over the rationals.
std::size_t rational_rank(RatMatrix m);

/// Solve A x = b exactly for square nonsingular A (Gaussian elimination with pivoting).
/// b may have several columns; throws on singular input.
RatMatrix rational_solve(RatMatrix a, RatMatrix b);

} // namespace cechlap

#endif
