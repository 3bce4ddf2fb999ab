#include "kacfusion/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kacfusion/error.hpp"

namespace kacfusion {

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
    if (rows.empty()) return {};
    QMat m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw ValidationError("QMat::from_rows: ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

QVec QMat::row(std::size_t r) const {
    return QVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QMat QMat::transpose() const {
    QMat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

QMat operator*(const QMat& a, const QMat& b) {
    if (a.cols() != b.rows()) throw ValidationError("matrix product: dimension mismatch");
    QMat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

QVec operator*(const QMat& a, const QVec& v) {
    if (a.cols() != v.size()) throw ValidationError("matrix-vector product: dimension mismatch");
    QVec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

QVec operator+(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw ValidationError("vector sum: dimension mismatch");
    QVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

QVec operator-(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw ValidationError("vector difference: dimension mismatch");
    QVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

QVec operator-(const QVec& a) {
    QVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

QVec operator*(const Rational& s, const QVec& v) {
    QVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

Rational determinant(const QMat& m) {
    if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
    QMat a = m;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == 0) continue;
            const Rational f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

QMat inverse(const QMat& m) {
    if (m.rows() != m.cols()) throw ValidationError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    QMat a = m;
    QMat inv = QMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw std::domain_error("inverse: singular matrix");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const Rational p = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= p;
            inv(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const Rational f = a(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

QVec solve_row_combination(const QMat& rows_inverse, const QVec& v) {
    // x * M = v  <=>  x = v * M^{-1}
    if (rows_inverse.rows() != v.size()) throw ValidationError("solve: dimension mismatch");
    QVec x(rows_inverse.cols());
    for (std::size_t j = 0; j < rows_inverse.cols(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) x[j] += v[i] * rows_inverse(i, j);
    return x;
}

Rational frac(std::int64_t n, std::int64_t d) {
    if (d == 0) throw ValidationError("zero denominator");
    Rational r(static_cast<long>(n), 1);
    r /= Rational(static_cast<long>(d));
    return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::int64_t num64(const Rational& r) {
    if (!r.get_num().fits_slong_p()) throw InternalError("rational numerator exceeds 64 bits");
    return r.get_num().get_si();
}

std::int64_t den64(const Rational& r) {
    if (!r.get_den().fits_slong_p()) throw InternalError("rational denominator exceeds 64 bits");
    return r.get_den().get_si();
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

bool is_integral(const QVec& v) {
    for (const auto& r : v)
        if (!is_integer(r)) return false;
    return true;
}

std::int64_t floor_div(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    if (!q.fits_slong_p()) throw InternalError("floor exceeds 64 bits");
    return q.get_si();
}

Rational mod1(const Rational& r) { return r - Rational(floor_div(r)); }

double to_double(const Rational& r) {
    return r.get_d();
}

std::string to_string(const Rational& r) {
    return r.get_str();
}

std::string to_string(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const long n = std::stol(text, &used);
            if (used != text.size()) throw ValidationError("trailing characters");
            return Rational(n);
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        const long n = std::stol(num, &used);
        if (used != num.size()) throw ValidationError("trailing characters");
        const long d = std::stol(den, &used);
        if (used != den.size()) throw ValidationError("trailing characters");
        if (d == 0) throw ValidationError("zero denominator");
        return frac(n, d);
    } catch (const std::logic_error&) {
        throw ValidationError("cannot parse rational number '" + text + "'");
    }
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace kacfusion
