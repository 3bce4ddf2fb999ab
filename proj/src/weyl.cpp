#include "kacfusion/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "kacfusion/error.hpp"

namespace kacfusion {

namespace {

struct IntVecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
        return h;
    }
};

int to_int(const Rational& r, const char* what) {
    if (!is_integer(r)) throw InternalError(std::string(what) + ": non-integral Weyl matrix entry");
    return static_cast<int>(num64(r));
}

const FiniteWeight& theta_prime(const FiniteRootSystem& rs, Variant variant) {
    return variant == Variant::principal ? rs.theta_coroot_short : rs.theta_coroot_long;
}

}  // namespace

const char* to_string(Variant v) { return v == Variant::principal ? "principal" : "coprincipal"; }

Variant variant_for(const FiniteRootSystem& rs, std::int64_t q) {
    if (q <= 0) throw ValidationError("q must be positive");
    if (std::gcd(q, static_cast<std::int64_t>(rs.lacing)) == 1) return Variant::principal;
    if (q % rs.lacing == 0) return Variant::coprincipal;
    throw ValidationError("q = " + std::to_string(q) + " is neither coprime to nor divisible by r^vee = " +
                          std::to_string(rs.lacing));
}

WeylElement::WeylElement(int rank, std::vector<int> matrix, int sign)
    : rank_(rank), m_(std::move(matrix)), sign_(sign) {
    if (m_.size() != static_cast<std::size_t>(rank * rank)) throw ValidationError("Weyl matrix has wrong size");
    if (sign != 1 && sign != -1) throw ValidationError("Weyl sign must be +-1");
}

WeylElement WeylElement::identity(int rank) {
    std::vector<int> m(static_cast<std::size_t>(rank * rank), 0);
    for (int i = 0; i < rank; ++i) m[static_cast<std::size_t>(i * rank + i)] = 1;
    return WeylElement(rank, std::move(m), 1);
}

WeylElement WeylElement::simple_reflection(const FiniteRootSystem& rs, int i) {
    const int n = rs.rank;
    if (i < 0 || i >= n) throw ValidationError("simple reflection index out of range");
    WeylElement w = identity(n);
    for (int r = 0; r < n; ++r) w.m_[static_cast<std::size_t>(r * n + i)] -= rs.cartan[r][i];
    w.sign_ = -1;
    return w;
}

WeylElement WeylElement::reflection(const FiniteRootSystem& rs, const FiniteWeight& root) {
    const int n = rs.rank;
    const FiniteWeight cv = coroot_of(rs, root);
    WeylElement w = identity(n);
    for (int c = 0; c < n; ++c) {
        const Rational pc = inner(rs, rs.fundamental_weight(c), cv);
        for (int r = 0; r < n; ++r) {
            const Rational entry = Rational(r == c ? 1 : 0) - pc * root.coords[r];
            w.m_[static_cast<std::size_t>(r * n + c)] = to_int(entry, "reflection");
        }
    }
    w.sign_ = -1;
    return w;
}

QMat WeylElement::rational_matrix() const {
    QMat m(static_cast<std::size_t>(rank_), static_cast<std::size_t>(rank_));
    for (int r = 0; r < rank_; ++r)
        for (int c = 0; c < rank_; ++c) m(r, c) = (*this)(r, c);
    return m;
}

QVec WeylElement::apply(const QVec& v) const {
    if (v.size() != static_cast<std::size_t>(rank_)) throw ValidationError("Weyl action: dimension mismatch");
    QVec out(v.size());
    for (int r = 0; r < rank_; ++r) {
        Rational s = 0;
        for (int c = 0; c < rank_; ++c) {
            const int e = (*this)(r, c);
            if (e != 0) s += e * v[c];
        }
        out[r] = s;
    }
    return out;
}

FiniteWeight WeylElement::apply(const FiniteWeight& w) const { return {apply(w.coords)}; }

WeylElement WeylElement::inverse(const FiniteRootSystem& rs) const {
    const QMat ginv = kacfusion::inverse(rs.gram);
    const QMat inv = ginv * rational_matrix().transpose() * rs.gram;
    std::vector<int> m(m_.size());
    for (int r = 0; r < rank_; ++r)
        for (int c = 0; c < rank_; ++c) m[static_cast<std::size_t>(r * rank_ + c)] = to_int(inv(r, c), "inverse");
    return WeylElement(rank_, std::move(m), sign_);
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
    if (a.rank_ != b.rank_) throw ValidationError("Weyl product: rank mismatch");
    const int n = a.rank_;
    std::vector<int> m(static_cast<std::size_t>(n * n), 0);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const int x = a(r, k);
            if (x == 0) continue;
            for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(r * n + c)] += x * b(k, c);
        }
    return WeylElement(n, std::move(m), a.sign_ * b.sign_);
}

std::size_t WeylElementHash::operator()(const WeylElement& w) const { return IntVecHash{}(w.entries()); }

std::uint64_t weyl_group_order(const FiniteRootSystem& rs) {
    std::uint64_t order = 1;
    for (int i = 2; i <= rs.rank; ++i) order *= static_cast<std::uint64_t>(i);
    for (int a : rs.marks) order *= static_cast<std::uint64_t>(a);
    order *= static_cast<std::uint64_t>(lattice_index(rs.weight_lattice, rs.root_lattice));
    return order;
}

std::vector<WeylElement> enumerate_weyl(const FiniteRootSystem& rs, std::size_t bound) {
    const std::uint64_t order = weyl_group_order(rs);
    if (order > bound)
        throw CapacityError("Weyl group of " + rs.spec.name() + " has order " + std::to_string(order) +
                            ", exceeding the configured bound " + std::to_string(bound));
    const int n = rs.rank;
    std::vector<WeylElement> out;
    out.reserve(static_cast<std::size_t>(order));
    std::vector<std::vector<int>> images;  // w(rho) for each element
    std::unordered_map<std::vector<int>, std::size_t, IntVecHash> seen;
    out.push_back(WeylElement::identity(n));
    images.emplace_back(static_cast<std::size_t>(n), 1);
    seen.emplace(images.back(), 0);
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        for (int i = 0; i < n; ++i) {
            std::vector<int> img = images[idx];
            const int li = img[i];
            for (int r = 0; r < n; ++r) img[r] -= li * rs.cartan[r][i];
            if (seen.count(img)) continue;
            // s_i w: row r of the product is row r of w minus C[r][i] times row i.
            const WeylElement& w = out[idx];
            std::vector<int> m = w.entries();
            for (int r = 0; r < n; ++r) {
                if (rs.cartan[r][i] == 0 || r == i) continue;
                for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(r * n + c)] -= rs.cartan[r][i] * w(i, c);
            }
            for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(i * n + c)] = -w(i, c);
            seen.emplace(img, out.size());
            out.emplace_back(n, std::move(m), -w.sign());
            images.push_back(std::move(img));
        }
    }
    if (out.size() != order)
        throw InternalError("Weyl enumeration produced " + std::to_string(out.size()) + " elements, expected " +
                            std::to_string(order));
    return out;
}

std::pair<WeylElement, FiniteWeight> to_dominant(const FiniteRootSystem& rs, const FiniteWeight& xi, bool strict) {
    if (xi.coords.size() != static_cast<std::size_t>(rs.rank)) throw ValidationError("to_dominant: rank mismatch");
    WeylElement w = WeylElement::identity(rs.rank);
    FiniteWeight cur = xi;
    const std::size_t cap = rs.positive_roots.size() + 1;
    for (std::size_t step = 0;; ++step) {
        int i = -1;
        for (int k = 0; k < rs.rank; ++k)
            if (cur.coords[k] < 0) {
                i = k;
                break;
            }
        if (i < 0) break;
        if (step >= cap) throw InternalError("to_dominant did not terminate");
        const WeylElement s = WeylElement::simple_reflection(rs, i);
        cur = s.apply(cur);
        w = s * w;
    }
    if (strict)
        for (const auto& c : cur.coords)
            if (c == 0) throw ValidationError("to_dominant: weight is not regular");
    return {w, cur};
}

ExtAffineElement ExtAffineElement::identity(const FiniteRootSystem& rs) {
    return {rs.zero(), WeylElement::identity(rs.rank)};
}

ExtAffineElement ExtAffineElement::translation(const FiniteRootSystem& rs, const FiniteWeight& beta) {
    return {beta, WeylElement::identity(rs.rank)};
}

AffineWeight affine_action(const FiniteRootSystem& rs, const ExtAffineElement& y, const AffineWeight& lam) {
    const FiniteWeight moved = y.wbar.apply(lam.finite);
    AffineWeight out{moved + lam.k0 * y.beta, lam.k0, lam.d0};
    out.d0 -= inner(rs, moved, y.beta) + frac(1, 2) * norm(rs, y.beta) * lam.k0;
    return out;
}

ExtAffineElement compose(const ExtAffineElement& a, const ExtAffineElement& b) {
    return {a.beta + a.wbar.apply(b.beta), a.wbar * b.wbar};
}

ExtAffineElement inverse(const FiniteRootSystem& rs, const ExtAffineElement& y) {
    const WeylElement wi = y.wbar.inverse(rs);
    return {-wi.apply(y.beta), wi};
}

ExtAffineElement affine_reflection(const FiniteRootSystem& rs, const AffineWeight& coroot) {
    if (coroot.k0 != 0) throw ValidationError("affine reflection: argument has a d-component");
    const Rational n = norm(rs, coroot.finite);
    if (n == 0) throw ValidationError("affine reflection: imaginary coroot");
    const Rational c = Rational(2) / n;
    return {Rational(-coroot.d0 * c) * coroot.finite, WeylElement::reflection(rs, coroot.finite)};
}

std::vector<AffineWeight> chamber_basis(const FiniteRootSystem& rs, std::int64_t q, Variant variant) {
    if (q <= 0) throw ValidationError("chamber_basis: q must be positive");
    std::vector<AffineWeight> out;
    out.push_back(affine_coroot(-theta_prime(rs, variant), Rational(static_cast<long>(q))));
    for (const auto& c : rs.simple_coroots) out.push_back(affine_coroot(c, 0));
    return out;
}

ChamberReduction affine_to_dominant(const FiniteRootSystem& rs, std::int64_t q, Variant variant,
                                    const AffineWeight& xi, bool strict) {
    if (xi.k0 <= 0) throw ValidationError("affine_to_dominant: level must be positive");
    const auto basis = chamber_basis(rs, q, variant);
    std::vector<ExtAffineElement> refl;
    for (const auto& b : basis) refl.push_back(affine_reflection(rs, b));
    ChamberReduction red{ExtAffineElement::identity(rs), xi, 0};
    constexpr std::size_t cap = 1'000'000;
    while (true) {
        int worst = -1;
        Rational worst_val = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Rational v = pairing(rs, red.image, basis[i]);
            if (v < worst_val) {
                worst_val = v;
                worst = static_cast<int>(i);
            }
        }
        if (worst < 0) break;
        if (++red.steps > cap) throw InternalError("affine_to_dominant did not terminate");
        red.image = affine_action(rs, refl[static_cast<std::size_t>(worst)], red.image);
        red.element = compose(refl[static_cast<std::size_t>(worst)], red.element);
    }
    if (strict)
        for (const auto& b : basis)
            if (pairing(rs, red.image, b) == 0) throw ValidationError("affine_to_dominant: weight lies on a wall");
    return red;
}

WeylElement sigma_bar(const FiniteRootSystem& rs, int j, Variant variant) {
    const auto& special = variant == Variant::principal ? rs.special_nodes : rs.dual_special_nodes;
    if (std::find(special.begin(), special.end(), j) == special.end())
        throw ValidationError("sigma_bar: node " + std::to_string(j + 1) + " is not special");
    // sigma_j is the element of the coset t_{Lambda_j} W that maps the
    // fundamental alcove to itself; reduce the translate of an interior point.
    const Rational h = variant == Variant::principal ? rs.dual_coxeter : rs.coxeter;
    const AffineWeight xi{(Rational(1) / h) * rs.rho, 1, 0};
    const auto shift = ExtAffineElement::translation(rs, rs.fundamental_weight(j));
    const auto red = affine_to_dominant(rs, 1, variant, affine_action(rs, shift, xi), true);
    const ExtAffineElement y = compose(red.element, shift);
    if (y.beta != rs.fundamental_weight(j)) throw InternalError("sigma_j has an unexpected translation part");
    const auto basis = chamber_basis(rs, 1, variant);
    if (affine_action(rs, y, basis[0]) != basis[static_cast<std::size_t>(j) + 1])
        throw InternalError("sigma_j does not send alpha_0^vee to alpha_j^vee");
    return y.wbar;
}

std::vector<ExtAffineElement> extended_generators(const FiniteRootSystem& rs, Variant variant) {
    std::vector<ExtAffineElement> out{ExtAffineElement::identity(rs)};
    const auto& special = variant == Variant::principal ? rs.special_nodes : rs.dual_special_nodes;
    for (int j : special) out.push_back({rs.fundamental_weight(j), sigma_bar(rs, j, variant)});
    return out;
}

}  // namespace kacfusion
