#pragma once

// Exact rational scalars, vectors and small dense matrices.
//
// Everything in the combinatorial layer (root data, Weyl groups, admissible
// weights, phases) is carried in these types; doubles only appear when a
// phase is finally exponentiated or a q-series is evaluated.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kacfusion {

using Rational = mpq_class;
using QVec = std::vector<Rational>;

/// Row-major dense rational matrix.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMat identity(std::size_t n);
    static QMat from_rows(const std::vector<QVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QVec row(std::size_t r) const;
    QMat transpose() const;

    friend bool operator==(const QMat&, const QMat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

QMat operator*(const QMat& a, const QMat& b);
/// Matrix times column vector.
QVec operator*(const QMat& a, const QVec& v);

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator-(const QVec& a);
QVec operator*(const Rational& s, const QVec& v);

/// Determinant by fraction-exact Gaussian elimination.
Rational determinant(const QMat& m);
/// Inverse; throws std::domain_error for singular input.
QMat inverse(const QMat& m);
/// Solve x * m = v for the row vector x (i.e. coordinates of v in the row basis of m).
QVec solve_row_combination(const QMat& rows_inverse, const QVec& v);

/// n/d in canonical form (d may be negative).
Rational frac(std::int64_t n, std::int64_t d);
bool is_integer(const Rational& r);
/// Numerator / denominator as machine integers; throws InternalError on overflow.
std::int64_t num64(const Rational& r);
std::int64_t den64(const Rational& r);
Rational abs(const Rational& r);
bool is_integral(const QVec& v);
std::int64_t floor_div(const Rational& r);
/// Representative of r modulo 1 in [0, 1).
Rational mod1(const Rational& r);
double to_double(const Rational& r);

std::string to_string(const Rational& r);
std::string to_string(const QVec& v);
/// Parses "a", "-a", "a/b".
Rational parse_rational(const std::string& text);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace kacfusion
