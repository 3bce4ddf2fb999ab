#include "kacfusion/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "kacfusion/parallel.hpp"

namespace kacfusion {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

Complex form(const FiniteRootSystem& rs, const CVec& a, const CVec& b) {
    Complex s = 0;
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) s += a(i) * to_double(rs.gram(i, j)) * b(j);
    return s;
}

void absorb(TransformCheck& c, const SeriesEval& e) {
    c.tail_bound = std::max(c.tail_bound, e.tail_bound);
    c.truncation_order = std::max(c.truncation_order, e.truncation_order);
}

}  // namespace

TransformCheck check_classical_theta(Complex tau, Complex z, const SeriesOptions& opts) {
    TransformCheck c;
    const auto lhs = theta_jacobi(-1.0 / tau, z / tau, opts);
    const auto rhs = theta_jacobi(tau, z, opts);
    absorb(c, lhs);
    absorb(c, rhs);
    c.residual = std::abs(lhs.value + kI * std::exp(kPi * kI * z * z / tau) * rhs.value);
    return c;
}

TransformCheck check_general_theta(const FiniteRootSystem& rs, const Lattice& lattice, const Lattice& dual,
                                   const Rational& m, Complex tau, const CVec& z, const SeriesOptions& opts) {
    const auto reps = coset_representatives(dual, lattice.scaled(m));
    const Complex zz = form(rs, z, z);
    std::vector<SeriesEval> at_tau(reps.size()), at_s(reps.size());
    parallel_for(reps.size(), [&](std::size_t a) {
        at_tau[a] = theta_lattice(rs, lattice, m, reps[a], EvalPoint{tau, z, 0.0}, opts);
        at_s[a] = theta_lattice(rs, lattice, m, reps[a], EvalPoint{-1.0 / tau, z / tau, -zz / (2.0 * tau)}, opts);
    });
    TransformCheck c;
    const Complex pre = std::pow(-kI * tau, rs.rank / 2.0) / std::sqrt(static_cast<double>(reps.size()));
    for (std::size_t a = 0; a < reps.size(); ++a) {
        absorb(c, at_tau[a]);
        absorb(c, at_s[a]);
        KahanSum rhs;
        for (std::size_t b = 0; b < reps.size(); ++b)
            rhs.add(ExactPhase(-inner(rs, reps[a], reps[b]) / m).value() * at_tau[b].value);
        c.residual = std::max(c.residual, std::abs(at_s[a].value - pre * rhs.value()));
    }
    return c;
}

TransformCheck check_character_s(const LevelData& ld, const CVec& x, Complex tau, const SeriesOptions& opts) {
    const auto s = build_smatrix(ld);
    const auto n = s.size();
    std::vector<SeriesEval> at_tau(n), at_s(n);
    parallel_for(n, [&](std::size_t a) {
        at_tau[a] = char_chi(ld, s.admissible[a], EvalPoint{tau, x, 0.0}, opts);
        at_s[a] = char_chi(ld, s.admissible[a], EvalPoint{-1.0 / tau, x / tau, 0.0}, opts);
    });
    const Complex gauss = std::exp(kPi * kI * to_double(ld.k) * form(*ld.rs, x, x) / tau);
    TransformCheck c;
    for (std::size_t a = 0; a < n; ++a) {
        absorb(c, at_tau[a]);
        absorb(c, at_s[a]);
        KahanSum rhs;
        for (std::size_t b = 0; b < n; ++b)
            rhs.add(s.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * at_tau[b].value);
        c.residual = std::max(c.residual, std::abs(at_s[a].value - gauss * rhs.value()));
    }
    return c;
}

PsiCheck check_psi_s(const LevelData& ld, Complex tau, const LimitOptions& opts) {
    const auto s = build_smatrix(ld);
    const auto n = s.size();
    std::vector<LimitEval> at_tau(n), at_s(n);
    parallel_for(n, [&](std::size_t a) {
        at_tau[a] = psi_w(ld, s.admissible[a], tau, opts);
        at_s[a] = psi_w(ld, s.admissible[a], -1.0 / tau, opts);
    });
    const Complex phase = std::pow(-kI, static_cast<int>(ld.rs->positive_roots.size()));
    PsiCheck c;
    for (std::size_t a = 0; a < n; ++a) {
        c.extrapolation_error = std::max({c.extrapolation_error, at_tau[a].error_estimate, at_s[a].error_estimate});
        c.tail_bound = std::max({c.tail_bound, at_tau[a].tail_bound, at_s[a].tail_bound});
        if (!is_nondegenerate(*ld.rs, s.admissible[a].lambda.finite)) {
            ++c.degenerate_count;
            c.degenerate_max = std::max({c.degenerate_max, std::abs(at_tau[a].value), std::abs(at_s[a].value)});
        }
        KahanSum rhs;
        for (std::size_t b = 0; b < n; ++b)
            rhs.add(s.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * at_tau[b].value);
        c.residual = std::max(c.residual, std::abs(at_s[a].value - phase * rhs.value()));
    }
    return c;
}

CVec random_cartan_point(int rank, std::uint64_t seed, double lo, double hi, double imag_scale) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    CVec x(rank);
    for (int i = 0; i < rank; ++i) {
        const double re = dist(gen);
        const double im = imag_scale * (dist(gen) - 0.5 * (lo + hi));
        x(i) = Complex(re, im);
    }
    return x;
}

}  // namespace kacfusion
