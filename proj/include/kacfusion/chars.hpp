#pragma once

// Numerical q-series: Jacobi and lattice theta functions, Weyl-Kac
// numerators and denominators, normalised admissible characters and their
// W-algebra limits.
//
// A point of the Cartan subalgebra is given by a complex vector x in
// fundamental-weight coordinates (x is identified with a weight through the
// invariant form), so alpha(x) = (alpha, x).  The delta-direction coordinate
// t enters every level-m function through the factor e^{2 pi i m t}.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "kacfusion/admissible.hpp"
#include "kacfusion/smatrix.hpp"

namespace kacfusion {

using CVec = Eigen::VectorXcd;

struct EvalPoint {
    Complex tau{0.0, 1.0};
    CVec x;
    Complex t{0.0, 0.0};
};

struct SeriesEval {
    Complex value{0.0, 0.0};
    int truncation_order = 0;  // largest q-exponent (or product factor) included
    double tail_bound = 0;
};

struct SeriesOptions {
    int order = 0;          // 0 selects the order automatically
    double target = 1e-13;  // tail bound aimed for by the automatic choice
};

/// Theta(tau, z) = q^{1/12} e^{-pi i z} prod_{n>=1} (1 - e^{2 pi i z} q^{n-1})(1 - e^{-2 pi i z} q^n).
SeriesEval theta_jacobi(Complex tau, Complex z, const SeriesOptions& opts = {});

/// eta(tau) = q^{1/24} prod (1 - q^n).
SeriesEval dedekind_eta(Complex tau, const SeriesOptions& opts = {});

/// sum over gamma in L of q^{|mu + m gamma|^2 / 2m} e^{2 pi i (mu + m gamma, x)} e^{2 pi i m t}.
SeriesEval theta_lattice(const FiniteRootSystem& rs, const Lattice& lattice, const Rational& m, const FiniteWeight& mu,
                         const EvalPoint& pt, const SeriesOptions& opts = {});

/// eps(ybar) sum_w eps(w) Theta_{q w(nu) + p beta}(tau, x/q, t/q^2) at level pq.
SeriesEval char_numerator(const LevelData& ld, const AdmissibleLabel& label, const EvalPoint& pt,
                          const SeriesOptions& opts = {});

/// A_rho: the Weyl-Kac denominator as an alternating theta sum at level h^vee.
SeriesEval weyl_kac_denominator(const FiniteRootSystem& rs, const EvalPoint& pt, const SeriesOptions& opts = {});

/// Smallest distance from alpha(x) to Z + Z tau over positive roots alpha.
double polar_distance(const FiniteRootSystem& rs, const EvalPoint& pt);

/// chi_lambda = numerator / A_rho.  Throws NumericalError when the point is
/// within `pole_margin` of a polar hyperplane.
SeriesEval char_chi(const LevelData& ld, const AdmissibleLabel& label, const EvalPoint& pt,
                    const SeriesOptions& opts = {}, double pole_margin = 1e-9);

/// prod over positive roots of Theta(tau, alpha(x)).
SeriesEval theta_g(const FiniteRootSystem& rs, const EvalPoint& pt, const SeriesOptions& opts = {});

struct LimitOptions {
    FiniteWeight direction;   // empty: rho^vee
    double eps0 = 0.02;       // largest step, measured by theta(eps x0)
    double tolerance = 1e-6;  // bound on the extrapolation error estimate
    SeriesOptions series;
};

struct LimitEval {
    Complex value{0.0, 0.0};
    double error_estimate = 0;
    double tail_bound = 0;
    std::vector<double> steps;
};

/// Limit of f at 0 by Richardson extrapolation in eps^2 of the even part
/// (f(eps) + f(-eps))/2 at eps0, eps0/2, eps0/4, eps0/8.  Throws
/// NumericalError when the error estimate exceeds `tolerance`.
LimitEval limit_at_zero(const std::function<Complex(double)>& f, double eps0, double tolerance);

/// psi_lambda(tau) = lim_{x -> 0} chi_lambda(tau, x) Theta_g(tau, x), by
/// Richardson extrapolation in eps^2 of the even part along x = eps x0.
LimitEval psi_w(const LevelData& ld, const AdmissibleLabel& label, Complex tau, const LimitOptions& opts = {});

/// (mu, x) for a rational weight and a complex Cartan element.
Complex pair(const FiniteRootSystem& rs, const FiniteWeight& mu, const CVec& x);
CVec to_cvec(const FiniteWeight& w);

}  // namespace kacfusion
