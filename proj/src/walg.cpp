#include "kacfusion/walg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "kacfusion/error.hpp"
#include "kacfusion/parallel.hpp"

namespace kacfusion {

namespace {

Rational R(std::int64_t n) { return Rational(static_cast<long>(n)); }

void require_simply_laced(const LevelData& ld, const char* what) {
    if (!ld.rs->simply_laced())
        throw ValidationError(std::string(what) + ": W-algebra labels are implemented for simply laced types only");
}

std::int64_t level_of(const FiniteRootSystem& rs, const FiniteWeight& w) {
    Rational s = 0;
    for (int i = 0; i < rs.rank; ++i) s += rs.comarks[static_cast<std::size_t>(i)] * w.coords[static_cast<std::size_t>(i)];
    return num64(s);
}

bool label_less(const WLabel& a, const WLabel& b) {
    if (a.lam != b.lam) return a.lam < b.lam;
    return a.lamprime < b.lamprime;
}

std::int64_t levels_m1(const LevelData& ld) { return ld.p - ld.rs->dual_coxeter; }
std::int64_t levels_m2(const LevelData& ld) { return ld.q - ld.rs->coxeter; }

std::size_t centre_order(const FiniteRootSystem& rs) { return rs.special_nodes.size() + 1; }

WLabel canonical(const LevelData& ld, const WLabel& l) {
    auto orbit = worbit(ld, l);
    WLabel best = *std::min_element(orbit.begin(), orbit.end(), label_less);
    best.canonical = true;
    return best;
}

}  // namespace

std::string to_string(const WLabel& label) { return to_string(label.lam.coords) + "|" + to_string(label.lamprime.coords); }

Rational central_charge_w(const LevelData& ld) {
    const FiniteRootSystem& rs = *ld.rs;
    const Rational kap = ld.kappa();
    return Rational(rs.rank) - 12 * (kap * norm(rs, rs.rho_vee) - 2 * inner(rs, rs.rho, rs.rho_vee) +
                                     norm(rs, rs.rho) / kap);
}

std::vector<FiniteWeight> dominant_weights_of_level(const FiniteRootSystem& rs, std::int64_t m) {
    std::vector<FiniteWeight> out;
    if (m < 0) return out;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(rs.rank), 0);
    while (true) {
        std::int64_t level = 0;
        for (int i = 0; i < rs.rank; ++i) level += rs.comarks[static_cast<std::size_t>(i)] * idx[static_cast<std::size_t>(i)];
        if (level <= m) {
            FiniteWeight w = rs.zero();
            for (int i = 0; i < rs.rank; ++i) w.coords[static_cast<std::size_t>(i)] = R(idx[static_cast<std::size_t>(i)]);
            out.push_back(w);
        }
        int i = 0;
        while (i < rs.rank && ++idx[static_cast<std::size_t>(i)] > m) idx[static_cast<std::size_t>(i++)] = 0;
        if (i == rs.rank) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<WLabel> worbit(const LevelData& ld, const WLabel& label) {
    const FiniteRootSystem& rs = *ld.rs;
    std::vector<WLabel> out;
    for (const auto& g : extended_generators(rs, Variant::principal)) {
        WLabel w;
        w.lam = affine_action(rs, g, AffineWeight{label.lam, R(levels_m1(ld)), 0}).finite;
        w.lamprime = affine_action(rs, g, AffineWeight{label.lamprime, R(levels_m2(ld)), 0}).finite;
        w.canonical = false;
        out.push_back(w);
    }
    return out;
}

std::vector<WLabel> enumerate_wlabels(const LevelData& ld) {
    require_simply_laced(ld, "enumerate_wlabels");
    if (levels_m1(ld) < 0 || levels_m2(ld) < 0) return {};
    const auto& rs = *ld.rs;
    std::vector<WLabel> out;
    std::set<std::pair<QVec, QVec>> seen;
    for (const auto& a : dominant_weights_of_level(rs, levels_m1(ld)))
        for (const auto& b : dominant_weights_of_level(rs, levels_m2(ld))) {
            const WLabel c = canonical(ld, WLabel{a, b, true});
            if (seen.insert({c.lam.coords, c.lamprime.coords}).second) out.push_back(c);
        }
    std::sort(out.begin(), out.end(), label_less);
    return out;
}

std::size_t wlabel_count_from_admissible(const LevelData& ld) {
    std::size_t n = 0;
    for (const auto& l : enumerate_admissible(ld))
        if (is_nondegenerate(*ld.rs, l.lambda.finite)) ++n;
    return n / static_cast<std::size_t>(weyl_group_order(*ld.rs));
}

WLabel wlabel_from_admissible(const LevelData& ld, const FiniteWeight& lambda_bar) {
    require_simply_laced(ld, "wlabel_from_admissible");
    const FiniteRootSystem& rs = *ld.rs;
    if (!is_nondegenerate(rs, lambda_bar)) throw ValidationError("wlabel_from_admissible: weight is degenerate");
    const FiniteWeight v = lambda_bar + rs.rho;
    const std::int64_t p = ld.p, q = ld.q;
    std::vector<WLabel> found;
    for (const auto& w : enumerate_weyl(rs)) {
        const FiniteWeight u = w.apply(v);
        WLabel l{rs.zero(), rs.zero(), false};
        bool ok = true;
        for (int i = 0; i < rs.rank && ok; ++i) {
            const Rational nq = R(q) * u.coords[static_cast<std::size_t>(i)];
            if (!is_integer(nq)) {
                ok = false;
                break;
            }
            // q u_i = q a_i - p a'_i with 1 <= a'_i <= q - 1.
            const std::int64_t n = num64(nq);
            std::int64_t ap = -1;
            for (std::int64_t c = 1; c < q; ++c)
                if (((n + p * c) % q + q) % q == 0) ap = c;
            if (ap < 0) {
                ok = false;
                break;
            }
            const std::int64_t a = (n + p * ap) / q;
            if (a < 1) ok = false;
            l.lam.coords[static_cast<std::size_t>(i)] = R(a - 1);
            l.lamprime.coords[static_cast<std::size_t>(i)] = R(ap - 1);
        }
        if (!ok || level_of(rs, l.lam) > levels_m1(ld) || level_of(rs, l.lamprime) > levels_m2(ld)) continue;
        found.push_back(canonical(ld, l));
    }
    if (found.empty()) throw InternalError("wlabel_from_admissible: no decomposition found");
    for (const auto& f : found)
        if (!(f == found.front())) throw InternalError("wlabel_from_admissible: decompositions disagree");
    return found.front();
}

WLabel fkw_representative(const LevelData& ld, const WLabel& label) {
    std::vector<WLabel> hits;
    for (const auto& w : worbit(ld, label))
        if (ld.rs->root_lattice.contains(w.lamprime.coords)) hits.push_back(w);
    if (hits.size() != 1) throw ValidationError("fkw_representative: no unique representative with lam' in Q");
    hits.front().canonical = hits.front() == canonical(ld, label);
    return hits.front();
}

std::int64_t w_norm_const(const LevelData& ld) {
    std::int64_t n = static_cast<std::int64_t>(centre_order(*ld.rs));
    for (int i = 0; i < ld.rs->rank; ++i) n *= ld.p * ld.q;
    return n;
}

Complex w_smatrix_entry(const LevelData& ld, const std::vector<WeylElement>& weyl, const WLabel& a, const WLabel& b) {
    const FiniteRootSystem& rs = *ld.rs;
    const FiniteWeight A = a.lam + rs.rho, Ap = a.lamprime + rs.rho;
    const FiniteWeight B = b.lam + rs.rho, Bp = b.lamprime + rs.rho;
    const Rational outer = inner(rs, A, Bp) + inner(rs, Ap, B);
    const Rational pq = frac(ld.p, ld.q), qp = frac(ld.q, ld.p);
    KahanSum s1, s2;
    for (const auto& w : weyl) {
        const Complex e1 = ExactPhase(Rational(-pq * inner(rs, Ap, w.apply(Bp)))).value();
        const Complex e2 = ExactPhase(Rational(-qp * inner(rs, A, w.apply(B)))).value();
        s1.add(w.sign() > 0 ? e1 : -e1);
        s2.add(w.sign() > 0 ? e2 : -e2);
    }
    return ExactPhase(outer).value() * s1.value() * s2.value() / std::sqrt(static_cast<double>(w_norm_const(ld)));
}

SMatrix w_smatrix(const LevelData& ld) { return w_smatrix(ld, enumerate_wlabels(ld)); }

SMatrix w_smatrix(const LevelData& ld, const std::vector<WLabel>& labels) {
    require_simply_laced(ld, "w_smatrix");
    SMatrix s;
    s.kind = SMatrixKind::walgebra;
    s.type = ld.rs->spec.name();
    s.p = ld.p;
    s.q = ld.q;
    s.norm_const = w_norm_const(ld);
    for (const auto& l : labels) s.labels.push_back(to_string(l));
    const auto weyl = enumerate_weyl(*ld.rs);
    const std::size_t n = labels.size();
    s.entries = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            s.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                w_smatrix_entry(ld, weyl, labels[i], labels[j]);
    });
    return s;
}

FusionTensor verlinde(const SMatrix& s, std::size_t vacuum, double tolerance) {
    const auto n = s.entries.rows();
    const auto rep = verify_sl2_relations(s.entries, CMatrix::Identity(n, n));
    return verlinde(s, vacuum, rep.conjugation_map, tolerance);
}

FusionTensor verlinde(const SMatrix& s, std::size_t vacuum, const std::vector<int>& conjugation, double tolerance) {
    const std::size_t n = s.size();
    if (vacuum >= n) throw ValidationError("verlinde: vacuum index out of range");
    if (conjugation.size() != n) throw ValidationError("verlinde: conjugation map has the wrong size");
    const CMatrix& S = s.entries;
    auto at = [&](std::size_t i, std::size_t j) { return S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); };
    for (std::size_t l = 0; l < n; ++l)
        if (std::abs(at(vacuum, l)) < 1e-12) throw NumericalError("verlinde: vacuum row entry S_{V,L} vanishes");
    for (int c : conjugation)
        if (c < 0 || static_cast<std::size_t>(c) >= n) throw NumericalError("verlinde: S^2 is not a permutation");

    FusionTensor t;
    t.labels = s.labels;
    t.n.assign(n * n * n, 0);
    std::vector<double> err(n, 0.0);
    parallel_for(n, [&](std::size_t a) {
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const auto cc = static_cast<std::size_t>(conjugation[c]);
                KahanSum sum;
                for (std::size_t l = 0; l < n; ++l) sum.add(at(a, l) * at(b, l) * at(l, cc) / at(vacuum, l));
                const Complex v = sum.value();
                const double r = std::round(v.real());
                err[a] = std::max(err[a], std::abs(v - Complex(r, 0)));
                t.n[(a * n + b) * n + c] = static_cast<std::int64_t>(r);
            }
    });
    t.max_rounding_error = n ? *std::max_element(err.begin(), err.end()) : 0.0;
    if (!(t.max_rounding_error <= tolerance))
        throw NumericalError("verlinde: result is not integral (rounding error " + std::to_string(t.max_rounding_error) +
                             ")");
    for (auto v : t.n)
        if (v < 0) throw NumericalError("verlinde: negative fusion multiplicity");
    return t;
}

FusionTensor integrable_fusion(const RootSystemPtr& rs, std::int64_t m) {
    const auto ld = LevelData::make(rs, m + rs->dual_coxeter, 1);
    const SMatrix s = build_smatrix(ld);
    std::size_t vac = s.size();
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.admissible[i].lambda.finite == rs->zero()) vac = i;
    if (vac == s.size()) throw InternalError("integrable_fusion: vacuum weight missing");
    return verlinde(s, vac);
}

FusionAxiomsReport check_fusion_axioms(const FusionTensor& t, std::size_t vacuum) {
    const std::size_t n = t.size();
    FusionAxiomsReport r{true, true, true};
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
            if (t(vacuum, b, c) != (b == c ? 1 : 0)) r.vacuum_unit = false;
            for (std::size_t a = 0; a < n; ++a)
                if (t(a, b, c) != t(b, a, c)) r.commutative = false;
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    std::int64_t lhs = 0, rhs = 0;
                    for (std::size_t e = 0; e < n; ++e) {
                        lhs += t(a, b, e) * t(e, c, d);
                        rhs += t(b, c, e) * t(a, e, d);
                    }
                    if (lhs != rhs) r.associative = false;
                }
    return r;
}

FactorizationReport check_fkw_factorization(const LevelData& ld) {
    FactorizationReport r;
    const auto& rs = ld.rs;
    if (!rs->simply_laced()) {
        r.message = "hypothesis violated: type " + rs->spec.name() + " is not simply laced";
        return r;
    }
    const auto centre = static_cast<std::int64_t>(centre_order(*rs));
    if (gcd64(ld.q, centre) != 1) {
        r.message = "hypothesis (q,|J|)=1 violated: gcd(" + std::to_string(ld.q) + ", " + std::to_string(centre) +
                    ") = " + std::to_string(gcd64(ld.q, centre));
        return r;
    }
    r.hypothesis_ok = true;
    for (const auto& l : enumerate_wlabels(ld)) r.labels.push_back(fkw_representative(ld, l));
    if (r.labels.empty()) {
        r.message = "no W-algebra labels at this level";
        return r;
    }
    std::size_t vac = r.labels.size();
    for (std::size_t i = 0; i < r.labels.size(); ++i)
        if (r.labels[i].lam == rs->zero() && r.labels[i].lamprime == rs->zero()) vac = i;
    if (vac == r.labels.size()) throw InternalError("check_fkw_factorization: vacuum label missing");
    r.w = verlinde(w_smatrix(ld, r.labels), vac);

    const FusionTensor n1 = integrable_fusion(rs, levels_m1(ld));
    const FusionTensor n2 = integrable_fusion(rs, levels_m2(ld));
    auto index = [](const FusionTensor& t, const FiniteWeight& w) {
        const auto it = std::find(t.labels.begin(), t.labels.end(), to_string(w.coords));
        if (it == t.labels.end()) throw InternalError("check_fkw_factorization: integrable label missing");
        return static_cast<std::size_t>(it - t.labels.begin());
    };
    const std::size_t n = r.labels.size();
    std::vector<std::size_t> i1(n), i2(n);
    for (std::size_t a = 0; a < n; ++a) {
        i1[a] = index(n1, r.labels[a].lam);
        i2[a] = index(n2, r.labels[a].lamprime);
    }
    r.product.labels = r.w.labels;
    r.product.n.assign(n * n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const std::int64_t v = n1(i1[a], i1[b], i1[c]) * n2(i2[a], i2[b], i2[c]);
                r.product.n[(a * n + b) * n + c] = v;
                if (v != r.w(a, b, c)) ++r.mismatches;
            }
    r.equal = r.mismatches == 0;
    r.message = r.equal ? "fusion rules factorise" : std::to_string(r.mismatches) + " entries differ";
    return r;
}

}  // namespace kacfusion
