#include "kacfusion/smatrix.hpp"

#include <cmath>
#include <numbers>

#include "kacfusion/error.hpp"
#include "kacfusion/parallel.hpp"

namespace kacfusion {

namespace {

Complex i_power(std::size_t n) {
    switch (n % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

Complex unit_phase(double r) { return std::polar(1.0, 2.0 * std::numbers::pi * r); }

QVec gram_times(const FiniteRootSystem& rs, const FiniteWeight& w) { return rs.gram * w.coords; }

Rational dot(const QVec& a, const QVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

struct RowData {
    std::vector<QVec> orbit;  // w(nu-bar) for w in W, in group order
};

Complex entry_from_orbit(const LevelData& ld, const std::vector<WeylElement>& weyl, const RowData& row,
                         const AdmissibleLabel& a, const AdmissibleLabel& b, Complex prefactor,
                         const SMatrixOptions& opts) {
    const FiniteRootSystem& rs = *ld.rs;
    const Rational pq_ratio = frac(ld.p, ld.q);
    const Rational outer = -(inner(rs, a.nu.finite, b.beta) + inner(rs, b.nu.finite, a.beta) +
                             pq_ratio * inner(rs, a.beta, b.beta));
    const QVec gnu = gram_times(rs, b.nu.finite);
    const Rational scale = frac(ld.q, ld.p);
    KahanSum sum;
    for (std::size_t w = 0; w < weyl.size(); ++w) {
        const Rational x = dot(row.orbit[w], gnu);
        const Complex e = opts.exact_phases ? ExactPhase(Rational(-scale * x)).value()
                                            : unit_phase(-to_double(scale) * to_double(x));
        sum.add(weyl[w].sign() > 0 ? e : -e);
    }
    const double sign = a.ybar.sign() * b.ybar.sign();
    const Complex ph = opts.exact_phases ? ExactPhase(outer).value() : unit_phase(to_double(outer));
    return prefactor * sign * ph * sum.value();
}

RowData row_data(const std::vector<WeylElement>& weyl, const AdmissibleLabel& a) {
    RowData r;
    r.orbit.reserve(weyl.size());
    for (const auto& w : weyl) r.orbit.push_back(w.apply(a.nu.finite.coords));
    return r;
}

Complex smatrix_prefactor(const LevelData& ld) {
    return i_power(ld.rs->positive_roots.size()) / std::sqrt(static_cast<double>(smatrix_discriminant(ld)));
}

}  // namespace

Complex ExactPhase::value() const { return unit_phase(to_double(r_)); }

void KahanSum::add(Complex x) {
    const Complex y = x - comp_;
    const Complex t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
}

const char* to_string(SMatrixKind kind) {
    switch (kind) {
        case SMatrixKind::principal: return "principal";
        case SMatrixKind::coprincipal: return "coprincipal";
        default: return "walgebra";
    }
}

std::int64_t smatrix_discriminant(const LevelData& ld) {
    return lattice_index(ld.dual_translation_lattice(), ld.translation_lattice().scaled(Rational(static_cast<long>(ld.p * ld.q))));
}

Complex smatrix_entry(const LevelData& ld, const std::vector<WeylElement>& weyl, const AdmissibleLabel& a,
                      const AdmissibleLabel& b, const SMatrixOptions& opts) {
    return entry_from_orbit(ld, weyl, row_data(weyl, a), a, b, smatrix_prefactor(ld), opts);
}

std::string label_name(const AdmissibleLabel& label) { return to_string(label.lambda.finite.coords); }

SMatrix build_smatrix(const LevelData& ld, const SMatrixOptions& opts) {
    return build_smatrix(ld, enumerate_admissible(ld), opts);
}

SMatrix build_smatrix(const LevelData& ld, const std::vector<AdmissibleLabel>& labels, const SMatrixOptions& opts) {
    SMatrix s;
    s.kind = ld.variant == Variant::principal ? SMatrixKind::principal : SMatrixKind::coprincipal;
    s.type = ld.rs->spec.name();
    s.p = ld.p;
    s.q = ld.q;
    s.norm_const = smatrix_discriminant(ld);
    s.admissible = labels;
    for (const auto& l : labels) s.labels.push_back(label_name(l));
    const auto weyl = enumerate_weyl(*ld.rs);
    const Complex pre = smatrix_prefactor(ld);
    const std::size_t n = labels.size();
    s.entries = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t i) {
        const RowData row = row_data(weyl, labels[i]);
        for (std::size_t j = 0; j < n; ++j)
            s.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                entry_from_orbit(ld, weyl, row, labels[i], labels[j], pre, opts);
    });
    return s;
}

Rational conformal_weight(const LevelData& ld, const FiniteWeight& lambda_bar) {
    const FiniteRootSystem& rs = *ld.rs;
    return inner(rs, lambda_bar, lambda_bar + Rational(2) * rs.rho) / (Rational(2) * ld.kappa());
}

TMatrix tmatrix(const LevelData& ld, const std::vector<AdmissibleLabel>& labels) {
    TMatrix t;
    const std::size_t n = labels.size();
    t.entries = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        t.exponents.push_back(conformal_weight(ld, labels[i].lambda.finite) - ld.central_charge / 24);
        const auto e = static_cast<Eigen::Index>(i);
        t.entries(e, e) = ExactPhase(t.exponents.back()).value();
    }
    return t;
}

TMatrix tmatrix(const LevelData& ld) { return tmatrix(ld, enumerate_admissible(ld)); }

SL2Report verify_sl2_relations(const CMatrix& S, const CMatrix& T) {
    if (S.rows() != S.cols() || T.rows() != T.cols() || S.rows() != T.rows())
        throw ValidationError("verify_sl2_relations: S and T must be square of equal size");
    const auto n = S.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    SL2Report r;
    auto maxabs = [](const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); };
    r.symmetry = maxabs(S - S.transpose());
    r.unitarity = maxabs(S * S.adjoint() - id);
    const CMatrix s2 = S * S;
    r.s4 = maxabs(s2 * s2 - id);
    const CMatrix st = S * T;
    r.st3 = maxabs(st * st * st - s2);
    r.conjugation_map.assign(static_cast<std::size_t>(n), -1);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = 0;
        s2.row(i).cwiseAbs().maxCoeff(&best);
        if (n > 0) r.conjugation_map[static_cast<std::size_t>(i)] = static_cast<int>(best);
        for (Eigen::Index j = 0; j < n; ++j)
            r.conjugation = std::max(r.conjugation, std::abs(std::abs(s2(i, j)) - (j == best ? 1.0 : 0.0)));
    }
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int c : r.conjugation_map)
        if (c >= 0 && seen[static_cast<std::size_t>(c)]++) r.conjugation = std::max(r.conjugation, 1.0);
    return r;
}

}  // namespace kacfusion
