#pragma once

// Residuals of the modular transformation laws, as used by the command line
// front end and the acceptance runner.

#include <cstdint>
#include <vector>

#include "kacfusion/chars.hpp"

namespace kacfusion {

struct TransformCheck {
    double residual = 0;       // max |lhs - rhs|
    double tail_bound = 0;     // largest tail bound among the series evaluated
    int truncation_order = 0;  // largest truncation order used
};

/// Theta(-1/tau, z/tau) against -i e^{pi i z^2 / tau} Theta(tau, z).
TransformCheck check_classical_theta(Complex tau, Complex z, const SeriesOptions& opts = {});

/// Theta^{L,m}_a(-1/tau, z/tau, -(z,z)/2tau) against
/// (-i tau)^{l/2} |L^*/mL|^{-1/2} sum_b e^{-2 pi i (a, b)/m} Theta^{L,m}_b(tau, z, 0),
/// over all a in L^*/mL.  `dual` is L^*.
TransformCheck check_general_theta(const FiniteRootSystem& rs, const Lattice& lattice, const Lattice& dual,
                                   const Rational& m, Complex tau, const CVec& z, const SeriesOptions& opts = {});

/// chi_L(-1/tau, x/tau) against e^{pi i k (x,x)/tau} sum_L' a(L, L') chi_L'(tau, x).
TransformCheck check_character_s(const LevelData& ld, const CVec& x, Complex tau, const SeriesOptions& opts = {});

struct PsiCheck {
    double residual = 0;              // max |psi_L(-1/tau) - (-i)^{|positive roots|} sum a(L, L') psi_L'(tau)|
    double degenerate_max = 0;        // max |psi_L| over degenerate labels, at tau and -1/tau
    double extrapolation_error = 0;   // largest Richardson error estimate
    double tail_bound = 0;
    std::size_t degenerate_count = 0;
};

PsiCheck check_psi_s(const LevelData& ld, Complex tau, const LimitOptions& opts = {});

/// A Cartan point with coordinates drawn uniformly from [lo, hi] (real and
/// imaginary parts independently scaled by `imag_scale`), reproducible from `seed`.
CVec random_cartan_point(int rank, std::uint64_t seed, double lo = 0.02, double hi = 0.2, double imag_scale = 0.25);

}  // namespace kacfusion
