#include "kacfusion/chars.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "kacfusion/error.hpp"

namespace kacfusion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxOrder = 100000;

Eigen::MatrixXd gram_double(const FiniteRootSystem& rs) {
    const auto n = static_cast<Eigen::Index>(rs.rank);
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = to_double(rs.gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    return g;
}

Eigen::VectorXd to_dvec(const QVec& v) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) d(static_cast<Eigen::Index>(i)) = to_double(v[i]);
    return d;
}

Complex cexp2pi(Complex z) { return std::exp(Complex(0, kTwoPi) * z); }

void check_point(const FiniteRootSystem& rs, const EvalPoint& pt) {
    if (!(pt.tau.imag() > 0)) throw ValidationError("evaluation point needs Im(tau) > 0");
    if (pt.x.size() != rs.rank) throw ValidationError("evaluation point has the wrong number of coordinates");
}

// Integer vectors n with (n - c)^T A (n - c) <= r2, by Fincke-Pohst enumeration.
void short_vectors(const Eigen::MatrixXd& upper, const Eigen::VectorXd& c, double r2,
                   std::vector<Eigen::VectorXi>& out) {
    const auto l = c.size();
    Eigen::VectorXi n(l);
    std::function<void(Eigen::Index, double)> rec = [&](Eigen::Index i, double rem) {
        double s = 0;
        for (Eigen::Index j = i + 1; j < l; ++j) s += upper(i, j) * (n(j) - c(j));
        const double root = std::sqrt(std::max(rem, 0.0));
        const double lo = c(i) + (-root - s) / upper(i, i);
        const double hi = c(i) + (root - s) / upper(i, i);
        for (auto k = static_cast<long>(std::ceil(lo - 1e-12)); k <= static_cast<long>(std::floor(hi + 1e-12)); ++k) {
            n(i) = static_cast<int>(k);
            const double d = upper(i, i) * (k - c(i)) + s;
            const double next = rem - d * d;
            if (next < -1e-9) continue;
            if (i == 0)
                out.push_back(n);
            else
                rec(i - 1, next);
        }
    };
    rec(l - 1, r2);
}

struct LatticeGeometry {
    Eigen::MatrixXd basis;  // generator rows in weight coordinates
    Eigen::MatrixXd gram;   // of the ambient weight coordinates
    Eigen::MatrixXd upper;  // Cholesky factor of the lattice Gram matrix
};

LatticeGeometry geometry(const FiniteRootSystem& rs, const Lattice& lattice) {
    LatticeGeometry g;
    const auto l = static_cast<Eigen::Index>(lattice.rank());
    g.basis.resize(l, l);
    for (Eigen::Index i = 0; i < l; ++i)
        for (Eigen::Index j = 0; j < l; ++j)
            g.basis(i, j) = to_double(lattice.generators()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    g.gram = gram_double(rs);
    const Eigen::MatrixXd a = g.basis * g.gram * g.basis.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) throw ValidationError("theta_lattice: lattice is not positive definite");
    g.upper = llt.matrixU();
    return g;
}

// Upper bound on the number of lattice points of energy at most e.
double count_bound(const LatticeGeometry& g, double m, double e) {
    const double r = std::sqrt(2.0 * std::max(e, 0.0) / m);
    double c = 1;
    for (Eigen::Index i = 0; i < g.upper.rows(); ++i) c *= 2.0 * r / g.upper(i, i) + 1.0;
    return c;
}

double lattice_tail(const LatticeGeometry& g, double m, double order, double abs_q, double im_x_norm,
                    double t_factor) {
    double tail = 0;
    for (int j = 0; j < kMaxOrder; ++j) {
        const double e = order + j + 1;
        const double term = count_bound(g, m, e) * std::pow(abs_q, order + j) *
                            std::exp(kTwoPi * std::sqrt(2.0 * m * e) * im_x_norm) * t_factor;
        tail += term;
        if (j > 4 && term < 1e-18 * tail) break;
        if (!std::isfinite(tail)) break;
    }
    return tail;
}

SeriesEval product_series(Complex tau, Complex z, const SeriesOptions& opts, bool jacobi) {
    if (!(tau.imag() > 0)) throw ValidationError("q-series needs Im(tau) > 0");
    const Complex q = cexp2pi(tau);
    const Complex y = cexp2pi(z);
    const double aq = std::abs(q);
    const double ay = std::abs(y);
    auto tail_sum = [&](int n) {
        const double g = std::pow(aq, n) / (1 - aq);
        return jacobi ? (ay + 1.0 / ay) * g : g;
    };
    int n = opts.order;
    Complex head = jacobi ? cexp2pi(tau / 12.0) * cexp2pi(-z / 2.0) : cexp2pi(tau / 24.0);
    if (jacobi) head *= Complex(1) - y;
    Complex prod = head;
    Complex qn = 1;
    for (int k = 1; k <= kMaxOrder; ++k) {
        qn *= q;
        prod *= Complex(1) - qn * (jacobi ? 1.0 / y : Complex(1));
        if (jacobi) prod *= Complex(1) - y * qn;
        const bool stop = opts.order > 0 ? k >= opts.order : std::abs(prod) * std::expm1(tail_sum(k + 1)) < opts.target;
        if (stop) {
            n = k;
            break;
        }
    }
    // The n = 1 factor of the first product sits in head; it is exact.
    SeriesEval r;
    r.value = prod;
    r.truncation_order = n;
    r.tail_bound = std::abs(prod) * std::expm1(tail_sum(n + 1));
    return r;
}

}  // namespace

CVec to_cvec(const FiniteWeight& w) {
    CVec v(static_cast<Eigen::Index>(w.rank()));
    for (std::size_t i = 0; i < w.rank(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(w.coords[i]);
    return v;
}

Complex pair(const FiniteRootSystem& rs, const FiniteWeight& mu, const CVec& x) {
    const Eigen::VectorXd gm = gram_double(rs) * to_dvec(mu.coords);
    return gm.cast<Complex>().dot(x);
}

SeriesEval theta_jacobi(Complex tau, Complex z, const SeriesOptions& opts) { return product_series(tau, z, opts, true); }

SeriesEval dedekind_eta(Complex tau, const SeriesOptions& opts) { return product_series(tau, 0.0, opts, false); }

SeriesEval theta_lattice(const FiniteRootSystem& rs, const Lattice& lattice, const Rational& m, const FiniteWeight& mu,
                         const EvalPoint& pt, const SeriesOptions& opts) {
    check_point(rs, pt);
    if (m <= 0) throw ValidationError("theta_lattice: level must be positive");
    const LatticeGeometry g = geometry(rs, lattice);
    const double md = to_double(m);
    const double aq = std::exp(-kTwoPi * pt.tau.imag());
    const Eigen::VectorXd im_x = pt.x.imag();
    const double im_x_norm = std::sqrt(std::max(0.0, im_x.dot(g.gram * im_x)));
    const double t_factor = std::abs(cexp2pi(md * pt.t));

    int order = opts.order;
    if (order <= 0) {
        order = 1;
        while (order < kMaxOrder && lattice_tail(g, md, order, aq, im_x_norm, t_factor) >= opts.target) ++order;
    }

    const Eigen::VectorXd mu_d = to_dvec(mu.coords);
    const Eigen::VectorXd center = g.basis.transpose().fullPivLu().solve(-mu_d / md);
    std::vector<Eigen::VectorXi> pts;
    short_vectors(g.upper, center, 2.0 * order / md, pts);

    struct Term {
        double energy;
        Complex value;
    };
    std::vector<Term> terms;
    terms.reserve(pts.size());
    const Eigen::VectorXcd gx = g.gram.cast<Complex>() * pt.x;
    for (const auto& n : pts) {
        const Eigen::VectorXd v = mu_d + md * (g.basis.transpose() * n.cast<double>());
        const double e = v.dot(g.gram * v) / (2.0 * md);
        if (e > order + 1e-9) continue;
        terms.push_back({e, cexp2pi(pt.tau * e + v.cast<Complex>().dot(gx) + md * pt.t)});
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    KahanSum sum;
    for (const auto& t : terms) sum.add(t.value);
    SeriesEval r;
    r.value = sum.value();
    r.truncation_order = order;
    r.tail_bound = lattice_tail(g, md, order, aq, im_x_norm, t_factor);
    return r;
}

SeriesEval char_numerator(const LevelData& ld, const AdmissibleLabel& label, const EvalPoint& pt,
                          const SeriesOptions& opts) {
    const FiniteRootSystem& rs = *ld.rs;
    check_point(rs, pt);
    const Rational qq(static_cast<long>(ld.q));
    const Rational pp(static_cast<long>(ld.p));
    EvalPoint scaled = pt;
    scaled.x = pt.x / static_cast<double>(ld.q);
    scaled.t = pt.t / static_cast<double>(ld.q * ld.q);
    SeriesEval r;
    KahanSum sum;
    for (const auto& w : enumerate_weyl(rs)) {
        const FiniteWeight mu = qq * w.apply(label.nu.finite) + pp * label.beta;
        const SeriesEval th = theta_lattice(rs, ld.translation_lattice(), pp * qq, mu, scaled, opts);
        sum.add(w.sign() > 0 ? th.value : -th.value);
        r.tail_bound += th.tail_bound;
        r.truncation_order = std::max(r.truncation_order, th.truncation_order);
    }
    r.value = static_cast<double>(label.ybar.sign()) * sum.value();
    return r;
}

SeriesEval weyl_kac_denominator(const FiniteRootSystem& rs, const EvalPoint& pt, const SeriesOptions& opts) {
    check_point(rs, pt);
    SeriesEval r;
    KahanSum sum;
    const Rational m(rs.dual_coxeter);
    for (const auto& w : enumerate_weyl(rs)) {
        const SeriesEval th = theta_lattice(rs, rs.coroot_lattice, m, w.apply(rs.rho), pt, opts);
        sum.add(w.sign() > 0 ? th.value : -th.value);
        r.tail_bound += th.tail_bound;
        r.truncation_order = std::max(r.truncation_order, th.truncation_order);
    }
    r.value = sum.value();
    return r;
}

double polar_distance(const FiniteRootSystem& rs, const EvalPoint& pt) {
    check_point(rs, pt);
    double best = INFINITY;
    for (const auto& a : rs.positive_roots) {
        Complex w = pair(rs, a.weight, pt.x);
        w -= std::round(w.imag() / pt.tau.imag()) * pt.tau;
        w -= std::round(w.real());
        best = std::min(best, std::abs(w));
    }
    return best;
}

SeriesEval char_chi(const LevelData& ld, const AdmissibleLabel& label, const EvalPoint& pt, const SeriesOptions& opts,
                    double pole_margin) {
    if (polar_distance(*ld.rs, pt) < pole_margin)
        throw NumericalError("char_chi: point lies on or near a polar hyperplane alpha(x) in Z + Z tau");
    const SeriesEval num = char_numerator(ld, label, pt, opts);
    const SeriesEval den = weyl_kac_denominator(*ld.rs, pt, opts);
    if (std::abs(den.value) <= den.tail_bound)
        throw NumericalError("char_chi: denominator is not resolved above its truncation error");
    SeriesEval r;
    r.value = num.value / den.value;
    r.truncation_order = std::max(num.truncation_order, den.truncation_order);
    r.tail_bound = (num.tail_bound + std::abs(r.value) * den.tail_bound) / (std::abs(den.value) - den.tail_bound);
    return r;
}

SeriesEval theta_g(const FiniteRootSystem& rs, const EvalPoint& pt, const SeriesOptions& opts) {
    check_point(rs, pt);
    std::vector<SeriesEval> factors;
    for (const auto& a : rs.positive_roots) factors.push_back(theta_jacobi(pt.tau, pair(rs, a.weight, pt.x), opts));
    SeriesEval r;
    r.value = 1;
    for (const auto& f : factors) {
        r.value *= f.value;
        r.truncation_order = std::max(r.truncation_order, f.truncation_order);
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        double t = factors[i].tail_bound;
        for (std::size_t j = 0; j < factors.size(); ++j)
            if (j != i) t *= std::abs(factors[j].value) + factors[j].tail_bound;
        r.tail_bound += t;
    }
    return r;
}

LimitEval limit_at_zero(const std::function<Complex(double)>& f, double eps0, double tolerance) {
    constexpr int kPoints = 4;
    LimitEval out;
    std::vector<double> h;
    std::vector<Complex> g;
    for (int k = 0; k < kPoints; ++k) {
        const double eps = eps0 / std::pow(2.0, k);
        out.steps.push_back(eps);
        h.push_back(eps * eps);
        g.push_back(0.5 * (f(eps) + f(-eps)));
    }
    // Neville's scheme evaluated at h = 0 on the first `count` points.
    auto extrapolate = [&](std::size_t count) {
        std::vector<Complex> p(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(count));
        for (std::size_t level = 1; level < count; ++level)
            for (std::size_t i = 0; i + level < count; ++i)
                p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
        return p[0];
    };
    out.value = extrapolate(kPoints);
    out.error_estimate = std::abs(out.value - extrapolate(kPoints - 1));
    if (!(out.error_estimate <= tolerance))
        throw NumericalError("extrapolation error estimate " + std::to_string(out.error_estimate) +
                             " exceeds tolerance " + std::to_string(tolerance));
    return out;
}

LimitEval psi_w(const LevelData& ld, const AdmissibleLabel& label, Complex tau, const LimitOptions& opts) {
    const FiniteRootSystem& rs = *ld.rs;
    const FiniteWeight dir = opts.direction.rank() == 0 ? rs.rho_vee : opts.direction;
    if (dir.rank() != static_cast<std::size_t>(rs.rank)) throw ValidationError("psi_w: direction has the wrong rank");
    CVec x0 = to_cvec(dir);
    double scale = 0;
    for (const auto& a : rs.positive_roots) scale = std::max(scale, std::abs(pair(rs, a.weight, x0)));
    if (scale == 0) throw ValidationError("psi_w: direction must be nonzero");
    x0 /= scale;

    double tail = 0;
    auto f = [&](double eps) {
        const EvalPoint pt{tau, eps * x0, 0.0};
        const SeriesEval chi = char_chi(ld, label, pt, opts.series, 0.0);
        const SeriesEval th = theta_g(rs, pt, opts.series);
        tail = std::max(tail, chi.tail_bound * std::abs(th.value) + std::abs(chi.value) * th.tail_bound);
        return chi.value * th.value;
    };
    LimitEval out = limit_at_zero(f, opts.eps0, opts.tolerance);
    out.tail_bound = 2.0 * tail;
    return out;
}

}  // namespace kacfusion
