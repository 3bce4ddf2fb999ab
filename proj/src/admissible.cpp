#include "kacfusion/admissible.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "kacfusion/error.hpp"
#include "kacfusion/parallel.hpp"

namespace kacfusion {

namespace {

Rational R(std::int64_t n) { return Rational(static_cast<long>(n)); }

// Solves a x + b y = gcd(a, b) for positive a, b.
std::pair<std::int64_t, std::int64_t> bezout(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t quot = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - quot * t);
    }
    return {old_s, old_t};
}

const std::vector<int>& theta_prime_coeffs(const LevelData& ld) {
    return ld.variant == Variant::principal ? ld.rs->comarks : ld.rs->dual_marks;
}

const std::vector<int>& symmetry_nodes(const LevelData& ld) {
    return ld.variant == Variant::principal ? ld.rs->special_nodes : ld.rs->dual_special_nodes;
}

bool is_positive_coroot(const FiniteRootSystem& rs, const AffineWeight& c) {
    if (c.k0 != 0) return false;
    if (c.d0 > 0) return true;
    return c.d0 == 0 && inner(rs, rs.rho, c.finite) > 0;
}

bool coroot_less(const AffineWeight& a, const AffineWeight& b) {
    if (a.finite != b.finite) return a.finite < b.finite;
    return a.d0 < b.d0;
}

// Upper triangular integer basis of the row lattice of m (entries integral).
std::vector<std::vector<mpz_class>> triangular_basis(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.empty() ? 0 : m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m.size(); ++col) {
        while (true) {
            std::size_t pivot = m.size();
            for (std::size_t r = row; r < m.size(); ++r)
                if (m[r][col] != 0 && (pivot == m.size() || abs(m[r][col]) < abs(m[pivot][col]))) pivot = r;
            if (pivot == m.size()) break;
            std::swap(m[row], m[pivot]);
            bool done = true;
            for (std::size_t r = row + 1; r < m.size(); ++r) {
                if (m[r][col] == 0) continue;
                mpz_class f;
                mpz_fdiv_q(f.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
                for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[row][c];
                if (m[r][col] != 0) done = false;
            }
            if (done) break;
        }
        if (m[row][col] < 0)
            for (auto& x : m[row]) x = -x;
        if (m[row][col] != 0) ++row;
    }
    m.resize(row);
    return m;
}

}  // namespace

LevelData LevelData::make(RootSystemPtr rs, std::int64_t p, std::int64_t q) {
    if (!rs) throw ValidationError("level data needs a root system");
    if (p <= 0 || q <= 0) throw ValidationError("p and q must be positive");
    if (std::gcd(p, q) != 1)
        throw ValidationError("p = " + std::to_string(p) + " and q = " + std::to_string(q) + " are not coprime");
    LevelData ld;
    ld.variant = variant_for(*rs, q);
    const int bound = ld.variant == Variant::principal ? rs->dual_coxeter : rs->coxeter;
    if (p < bound)
        throw ValidationError(std::string(to_string(ld.variant)) + " admissible level needs p >= " +
                              std::to_string(bound) + ", got p = " + std::to_string(p));
    ld.rs = std::move(rs);
    ld.p = p;
    ld.q = q;
    ld.k = frac(p, q) - ld.rs->dual_coxeter;
    ld.central_charge = ld.k * ld.rs->dimension / frac(p, q);
    return ld;
}

std::size_t LevelData::symmetry_order() const { return symmetry_nodes(*this).size() + 1; }

const Lattice& LevelData::translation_lattice() const {
    return variant == Variant::principal ? rs->coroot_lattice : rs->root_lattice;
}

const Lattice& LevelData::dual_translation_lattice() const {
    return variant == Variant::principal ? rs->weight_lattice : rs->dual_root_lattice;
}

std::pair<std::int64_t, std::int64_t> parse_pq(const std::string& text) {
    const auto pos = text.find_first_of("/,");
    if (pos == std::string::npos) throw ValidationError("level must be given as p/q or p,q: '" + text + "'");
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, pos), b = text.substr(pos + 1);
        const long long p = std::stoll(a, &used);
        if (used != a.size()) throw ValidationError("bad p in '" + text + "'");
        const long long q = std::stoll(b, &used);
        if (used != b.size()) throw ValidationError("bad q in '" + text + "'");
        return {p, q};
    } catch (const std::logic_error&) {
        throw ValidationError("cannot parse level '" + text + "'");
    }
}

std::vector<AffineWeight> coroot_basis_Sq(const LevelData& ld) { return chamber_basis(*ld.rs, ld.q, ld.variant); }

AffineWeight phi_apply(const LevelData& ld, const AffineWeight& lam) {
    return {lam.finite, lam.k0 / R(ld.q), lam.d0 * R(ld.q)};
}

AffineWeight phi_inverse(const LevelData& ld, const AffineWeight& lam) {
    return {lam.finite, lam.k0 * R(ld.q), lam.d0 / R(ld.q)};
}

AffineWeight weight_from_triple(const LevelData& ld, const AffineWeight& nu, const ExtAffineElement& y) {
    AffineWeight lam = affine_action(*ld.rs, y, phi_apply(ld, nu)) - affine_rho(*ld.rs);
    lam.d0 = 0;
    return lam;
}

std::vector<AffineWeight> transported_basis(const LevelData& ld, const AdmissibleLabel& label) {
    std::vector<AffineWeight> out;
    for (const auto& g : coroot_basis_Sq(ld)) out.push_back(affine_action(*ld.rs, label.y(), g));
    return out;
}

std::vector<AffineWeight> regular_dominant_nu(const LevelData& ld) {
    const auto& c = theta_prime_coeffs(ld);
    const int n = ld.rs->rank;
    std::vector<AffineWeight> out;
    std::vector<std::int64_t> cur(static_cast<std::size_t>(n), 1);
    std::int64_t base = std::accumulate(c.begin(), c.end(), std::int64_t{0});
    // Pairing with theta' is sum c_i nu_i; it must stay <= p - 1.
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t used) {
        if (i == n) {
            FiniteWeight w = ld.rs->zero();
            for (int j = 0; j < n; ++j) w.coords[j] = R(cur[j]);
            out.push_back({w, R(ld.p), 0});
            return;
        }
        for (std::int64_t v = 1; used + c[i] * (v - 1) <= ld.p - 1; ++v) {
            cur[i] = v;
            rec(i + 1, used + c[i] * (v - 1));
        }
        cur[i] = 1;
    };
    if (base <= ld.p - 1) rec(0, base);
    std::sort(out.begin(), out.end(), [](const AffineWeight& a, const AffineWeight& b) { return a.finite < b.finite; });
    return out;
}

std::vector<FiniteWeight> coset_representatives(const Lattice& big, const Lattice& sub) {
    if (!big.contains(sub)) throw ValidationError("coset representatives: " + sub.name() + " not in " + big.name());
    const std::size_t n = big.rank();
    std::vector<std::vector<mpz_class>> m;
    for (std::size_t r = 0; r < sub.rank(); ++r) {
        const QVec c = big.coordinates(sub.generators().row(r));
        std::vector<mpz_class> row;
        for (const auto& x : c) row.push_back(x.get_num());
        m.push_back(std::move(row));
    }
    const auto h = triangular_basis(std::move(m));
    if (h.size() != n) throw ValidationError("coset representatives: sublattice is not of full rank");
    std::vector<std::int64_t> radix;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        radix.push_back(h[i][i].get_si());
        total *= static_cast<std::size_t>(radix.back());
    }
    std::vector<FiniteWeight> out;
    out.reserve(total);
    std::vector<std::int64_t> digit(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        QVec v(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            if (digit[i] != 0) v = v + R(digit[i]) * big.generators().row(i);
        out.push_back({v});
        for (std::size_t i = n; i-- > 0;) {
            if (++digit[i] < radix[i]) break;
            digit[i] = 0;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FiniteWeight> beta_representatives(const LevelData& ld) {
    return coset_representatives(ld.rs->dual_root_lattice, ld.translation_lattice().scaled(R(ld.q)));
}

ExtAffineElement ga_from_beta(const LevelData& ld, const FiniteWeight& beta) {
    return ga_from_beta(ld, beta, (Rational(1) / ld.rs->coxeter) * ld.rs->rho);
}

ExtAffineElement ga_from_beta(const LevelData& ld, const FiniteWeight& beta, const FiniteWeight& xi_bar) {
    const FiniteRootSystem& rs = *ld.rs;
    if (!rs.dual_root_lattice.contains(beta.coords))
        throw ValidationError("ga_from_beta: beta = " + to_string(beta.coords) + " is not in Q^*");
    for (const auto& x : xi_bar.coords)
        if (x <= 0) throw ValidationError("ga_from_beta: test vector is not regular dominant");
    if (inner(rs, xi_bar, rs.theta_coroot_long) >= 1)
        throw ValidationError("ga_from_beta: test vector is outside the fundamental alcove");
    const AffineWeight start{xi_bar - beta, 1, 0};
    const ChamberReduction red = affine_to_dominant(rs, ld.q, ld.variant, start, true);
    const WeylElement ybar = red.element.wbar.inverse(rs);
    const ExtAffineElement y{beta - ybar.apply(red.element.beta), ybar};
    if (!ld.translation_lattice().scaled(R(ld.q)).contains((y.beta - beta).coords))
        throw InternalError("ga_from_beta: translation left beta + qL");
    for (const auto& g : coroot_basis_Sq(ld))
        if (!is_positive_coroot(rs, affine_action(rs, y, g)))
            throw InternalError("ga_from_beta: transported basis is not positive");
    return y;
}

std::vector<AdmissibleLabel> enumerate_admissible(const LevelData& ld, std::size_t bound) {
    const auto nus = regular_dominant_nu(ld);
    const auto betas = beta_representatives(ld);
    const std::size_t pairs = nus.size() * betas.size();
    if (pairs / ld.symmetry_order() > bound)
        throw CapacityError("admissible set at p/q = " + std::to_string(ld.p) + "/" + std::to_string(ld.q) +
                            " has " + std::to_string(pairs / ld.symmetry_order()) +
                            " labels, exceeding the configured bound " + std::to_string(bound));
    std::vector<std::vector<AdmissibleLabel>> per_beta(betas.size());
    parallel_for(betas.size(), [&](std::size_t b) {
        const ExtAffineElement y = ga_from_beta(ld, betas[b]);
        for (const auto& nu : nus) per_beta[b].push_back({nu, y.wbar, y.beta, weight_from_triple(ld, nu, y)});
    });
    std::map<QVec, AdmissibleLabel> unique;
    for (auto& bucket : per_beta)
        for (auto& label : bucket) unique.try_emplace(label.lambda.finite.coords, std::move(label));
    std::vector<AdmissibleLabel> out;
    out.reserve(unique.size());
    for (auto& [key, label] : unique) out.push_back(std::move(label));
    return out;
}

AdmissibilityReport verify_admissible(const LevelData& ld, const AffineWeight& lambda) {
    const FiniteRootSystem& rs = *ld.rs;
    if (lambda.k0 != ld.k)
        throw ValidationError("verify_admissible: level " + to_string(lambda.k0) + " differs from k = " +
                              to_string(ld.k));
    const FiniteWeight shifted = lambda.finite + rs.rho;
    const Rational kappa = ld.kappa();
    const std::int64_t mmax = ld.q * rs.lacing;
    AdmissibilityReport rep;
    rep.no_nonpositive_integers = true;
    std::vector<AffineWeight> integral;
    for (const auto& root : rs.positive_roots) {
        const std::int64_t step = root.is_long ? 1 : rs.lacing;
        for (int sgn : {1, -1}) {
            const FiniteWeight c = Rational(sgn) * coroot_of(rs, root.weight);
            const Rational base = inner(rs, shifted, c);
            for (std::int64_t m = sgn > 0 ? 0 : step;; m += step) {
                const Rational val = base + R(m) * kappa;
                if (m > mmax && val > 0) break;
                if (!is_integer(val)) continue;
                if (val <= 0) {
                    if (rep.no_nonpositive_integers)
                        rep.reason = "<lambda + rho, a> = " + to_string(val) + " for a = " + to_string(c.coords) +
                                     " + " + std::to_string(m) + "K";
                    rep.no_nonpositive_integers = false;
                } else if (m <= mmax) {
                    integral.push_back(affine_coroot(c, R(m)));
                }
            }
        }
    }
    std::sort(integral.begin(), integral.end(), coroot_less);
    for (const auto& x : integral) {
        bool decomposable = false;
        for (const auto& a : integral) {
            const AffineWeight b = x - a;
            // b is either a real integral coroot or a positive imaginary one.
            if ((a.finite == x.finite && a.d0 < x.d0) ||
                std::binary_search(integral.begin(), integral.end(), b, coroot_less)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) rep.integral_basis.push_back(x);
    }
    const std::size_t n = static_cast<std::size_t>(rs.rank) + 1;
    if (rep.integral_basis.size() == n) {
        QMat m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c + 1 < n; ++c) m(r, c) = rep.integral_basis[r].finite.coords[c];
            m(r, n - 1) = rep.integral_basis[r].d0;
        }
        rep.full_rank = determinant(m) != 0;
    }
    if (!rep.full_rank && rep.reason.empty())
        rep.reason = "integral coroots have " + std::to_string(rep.integral_basis.size()) +
                     " simple elements, not a basis of rank " + std::to_string(n);
    rep.admissible = rep.no_nonpositive_integers && rep.full_rank;
    return rep;
}

bool same_coroot_set(std::vector<AffineWeight> a, std::vector<AffineWeight> b) {
    std::sort(a.begin(), a.end(), coroot_less);
    std::sort(b.begin(), b.end(), coroot_less);
    return a == b;
}

std::vector<MuSolution> decompose_mu(const LevelData& ld, const AffineWeight& mu) {
    const FiniteRootSystem& rs = *ld.rs;
    const std::int64_t pq = ld.p * ld.q;
    if (mu.k0 != R(pq)) throw ValidationError("decompose_mu: mu must have level pq = " + std::to_string(pq));
    if (!ld.dual_translation_lattice().contains(mu.finite.coords))
        throw ValidationError("decompose_mu: mu-bar is not in " + ld.dual_translation_lattice().name());
    // q u + p s v = 1 with s chosen so that s * (home of mu) lies in Q^*.
    const std::int64_t s = ld.variant == Variant::principal ? rs.lacing : 1;
    const auto [u, v] = bezout(ld.q, ld.p * s);
    const FiniteWeight x0 = R(u) * mu.finite;
    const FiniteWeight beta0 = R(s * v) * mu.finite;

    std::vector<FiniteWeight> shifts{rs.zero()};
    for (int j : symmetry_nodes(ld)) shifts.push_back(rs.fundamental_weight(j));

    std::vector<MuSolution> out;
    for (const auto& zeta : shifts) {
        const AffineWeight start{x0 - R(ld.p) * zeta, R(ld.p), 0};
        ChamberReduction red;
        try {
            red = affine_to_dominant(rs, 1, ld.variant, start, true);
        } catch (const ValidationError&) {
            throw ValidationError("decompose_mu: mu = " + to_string(mu.finite.coords) + " is not regular");
        }
        const WeylElement wbar = red.element.wbar.inverse(rs);
        MuSolution sol{{red.image.finite, R(ld.p), 0},
                       beta0 + R(ld.q) * zeta - R(ld.q) * wbar.apply(red.element.beta), wbar};
        if (R(ld.q) * wbar.apply(sol.nu.finite) + R(ld.p) * sol.beta != mu.finite)
            throw InternalError("decompose_mu: reconstruction failed");
        if (!rs.dual_root_lattice.contains(sol.beta.coords)) throw InternalError("decompose_mu: beta left Q^*");
        out.push_back(std::move(sol));
    }
    return out;
}

AdmissibleLabel label_from_mu(const LevelData& ld, const AffineWeight& mu) {
    const auto sols = decompose_mu(ld, mu);
    std::vector<AdmissibleLabel> branches;
    for (const auto& s : sols) {
        const ExtAffineElement y = ga_from_beta(ld, s.beta);
        branches.push_back({s.nu, y.wbar, y.beta, weight_from_triple(ld, s.nu, y)});
    }
    const auto basis = transported_basis(ld, branches.front());
    for (const auto& b : branches) {
        if (b.lambda != branches.front().lambda)
            throw InternalError("label_from_mu: solution branches give different weights");
        if (!same_coroot_set(transported_basis(ld, b), basis))
            throw InternalError("label_from_mu: solution branches give different coroot bases");
    }
    const auto rep = verify_admissible(ld, branches.front().lambda);
    if (!rep.admissible) throw InternalError("label_from_mu: weight is not admissible: " + rep.reason);
    if (!same_coroot_set(rep.integral_basis, basis))
        throw InternalError("label_from_mu: integral coroot basis differs from y(S_(q))");
    return branches.front();
}

AffineWeight mu_of(const LevelData& ld, const AdmissibleLabel& label) {
    return {R(ld.q) * label.ybar.apply(label.nu.finite) + R(ld.p) * label.beta, R(ld.p * ld.q), 0};
}

bool is_nondegenerate(const FiniteRootSystem& rs, const FiniteWeight& lambda_bar) {
    for (const auto& a : rs.positive_roots)
        if (is_integer(inner(rs, lambda_bar, coroot_of(rs, a.weight)))) return false;
    return true;
}

}  // namespace kacfusion
