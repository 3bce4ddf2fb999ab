#pragma once

// Modular S and T matrices on the span of admissible characters.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kacfusion/admissible.hpp"

namespace kacfusion {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// e^{2 pi i r}, with r kept exactly and reduced mod 1.
class ExactPhase {
public:
    ExactPhase() = default;
    explicit ExactPhase(const Rational& r) : r_(mod1(r)) {}

    const Rational& exponent() const { return r_; }
    Complex value() const;

    friend ExactPhase operator*(const ExactPhase& a, const ExactPhase& b) { return ExactPhase(a.r_ + b.r_); }
    friend bool operator==(const ExactPhase& a, const ExactPhase& b) { return a.r_ == b.r_; }

private:
    Rational r_ = 0;
};

/// Compensated complex summation.
class KahanSum {
public:
    void add(Complex x);
    Complex value() const { return sum_; }

private:
    Complex sum_{0.0, 0.0};
    Complex comp_{0.0, 0.0};
};

enum class SMatrixKind { principal, coprincipal, walgebra };
const char* to_string(SMatrixKind kind);

struct SMatrix {
    SMatrixKind kind = SMatrixKind::principal;
    std::string type;
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t norm_const = 0;           // the discriminant under the square root
    std::vector<std::string> labels;       // printable labels, in matrix order
    std::vector<AdmissibleLabel> admissible;  // empty for W-algebra matrices
    CMatrix entries;

    std::size_t size() const { return labels.size(); }
};

struct SMatrixOptions {
    /// When false, exponents are formed in double precision before
    /// exponentiation instead of being reduced exactly mod 1.
    bool exact_phases = true;
};

/// |P/pqQ^vee| (principal) or |Q^*/pqQ| (coprincipal).
std::int64_t smatrix_discriminant(const LevelData& ld);

/// One entry a(L, L').  `weyl` must be the full finite Weyl group.
Complex smatrix_entry(const LevelData& ld, const std::vector<WeylElement>& weyl, const AdmissibleLabel& a,
                      const AdmissibleLabel& b, const SMatrixOptions& opts = {});

SMatrix build_smatrix(const LevelData& ld, const SMatrixOptions& opts = {});
/// As above on a given label list (in that order).
SMatrix build_smatrix(const LevelData& ld, const std::vector<AdmissibleLabel>& labels, const SMatrixOptions& opts = {});

std::string label_name(const AdmissibleLabel& label);

struct TMatrix {
    std::vector<Rational> exponents;  // h_lambda - c/24
    CMatrix entries;
};

/// h_lambda = (lambda, lambda + 2 rho) / (2 (k + h^vee)).
Rational conformal_weight(const LevelData& ld, const FiniteWeight& lambda_bar);
TMatrix tmatrix(const LevelData& ld, const std::vector<AdmissibleLabel>& labels);
TMatrix tmatrix(const LevelData& ld);

struct SL2Report {
    double symmetry = 0;      // max |S - S^T|
    double unitarity = 0;     // max |S S^dagger - 1|
    double s4 = 0;            // max |S^4 - 1|
    double st3 = 0;           // max |(ST)^3 - S^2|
    double conjugation = 0;   // distance of S^2 from a unimodular permutation matrix
    std::vector<int> conjugation_map;  // C(i), or -1 where no dominant entry exists
    bool s_ok(double tol) const { return symmetry < tol && unitarity < tol && s4 < tol && conjugation < tol; }
    bool ok(double tol) const { return s_ok(tol) && st3 < tol; }
};

SL2Report verify_sl2_relations(const CMatrix& S, const CMatrix& T);

}  // namespace kacfusion
