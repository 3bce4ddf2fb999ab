#pragma once

// Finite Weyl group, extended affine Weyl groups and chamber reductions.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "kacfusion/rootsys.hpp"

namespace kacfusion {

/// Which of the two families of admissible weights (and hence which affine
/// coroot basis / translation lattice) a computation refers to.
enum class Variant { principal, coprincipal };

const char* to_string(Variant v);
/// principal when gcd(q, r^vee) = 1, coprincipal when r^vee divides q; ValidationError otherwise.
Variant variant_for(const FiniteRootSystem& rs, std::int64_t q);

inline constexpr std::size_t kDefaultWeylBound = 1'000'000;

/// Element of the finite Weyl group, as an integer matrix on weight coordinates.
class WeylElement {
public:
    WeylElement() = default;
    WeylElement(int rank, std::vector<int> matrix, int sign);

    static WeylElement identity(int rank);
    /// Simple reflection s_i.
    static WeylElement simple_reflection(const FiniteRootSystem& rs, int i);
    /// Reflection in an arbitrary (finite) root.
    static WeylElement reflection(const FiniteRootSystem& rs, const FiniteWeight& root);

    int rank() const { return rank_; }
    int sign() const { return sign_; }
    int operator()(int r, int c) const { return m_[static_cast<std::size_t>(r * rank_ + c)]; }
    const std::vector<int>& entries() const { return m_; }
    QMat rational_matrix() const;

    FiniteWeight apply(const FiniteWeight& w) const;
    QVec apply(const QVec& v) const;
    WeylElement inverse(const FiniteRootSystem& rs) const;

    friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
    friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.m_ == b.m_; }
    friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.m_ < b.m_; }

private:
    int rank_ = 0;
    std::vector<int> m_;
    int sign_ = 1;
};

struct WeylElementHash {
    std::size_t operator()(const WeylElement& w) const;
};

/// |W| = l! * prod(a_i) * |P/Q|.
std::uint64_t weyl_group_order(const FiniteRootSystem& rs);

/// All elements of the finite Weyl group, identity first, in breadth-first
/// (length-nondecreasing) order.  Throws CapacityError if |W| > bound.
std::vector<WeylElement> enumerate_weyl(const FiniteRootSystem& rs, std::size_t bound = kDefaultWeylBound);

/// Reduces xi to the dominant chamber by simple reflections.  Returns (w, w xi).
/// With strict = true, xi must be regular (ValidationError otherwise).
std::pair<WeylElement, FiniteWeight> to_dominant(const FiniteRootSystem& rs, const FiniteWeight& xi,
                                                 bool strict = false);

/// y = t_beta wbar.
struct ExtAffineElement {
    FiniteWeight beta;
    WeylElement wbar;

    static ExtAffineElement identity(const FiniteRootSystem& rs);
    static ExtAffineElement translation(const FiniteRootSystem& rs, const FiniteWeight& beta);
    friend bool operator==(const ExtAffineElement&, const ExtAffineElement&) = default;
};

/// Action on weights (and, through nu, on elements of the Cartan subalgebra).
AffineWeight affine_action(const FiniteRootSystem& rs, const ExtAffineElement& y, const AffineWeight& lam);
ExtAffineElement compose(const ExtAffineElement& a, const ExtAffineElement& b);
ExtAffineElement inverse(const FiniteRootSystem& rs, const ExtAffineElement& y);
/// Reflection in the real affine coroot with nu-image coroot.finite + coroot.d0 * delta.
ExtAffineElement affine_reflection(const FiniteRootSystem& rs, const AffineWeight& coroot);

/// The coroot basis S_(q): [q K - theta', alpha_1^vee, ..., alpha_l^vee] with
/// theta' = theta^vee_short (principal) or theta^vee_long (coprincipal).
std::vector<AffineWeight> chamber_basis(const FiniteRootSystem& rs, std::int64_t q, Variant variant);

struct ChamberReduction {
    ExtAffineElement element;  // w with w(xi) in the closed chamber
    AffineWeight image;        // w(xi)
    std::size_t steps = 0;
};

/// Moves xi (positive level) into the closed chamber of S_(q) using the
/// reflections in S_(q).  The acting group is W-bar x| t_{qQ^vee} (principal)
/// or W-bar x| t_{qQ} (coprincipal).  With strict = true, a result on a wall
/// raises ValidationError.
ChamberReduction affine_to_dominant(const FiniteRootSystem& rs, std::int64_t q, Variant variant,
                                    const AffineWeight& xi, bool strict = false);

/// sigma-bar_j: finite part of the basis-preserving element sigma_j of the
/// extended group; it sends -theta' to alpha_j (theta' as in chamber_basis).
WeylElement sigma_bar(const FiniteRootSystem& rs, int j, Variant variant);

/// Identity followed by sigma_j = t_{Lambda_j} sigma-bar_j for j in J (principal)
/// or LJ (coprincipal).
std::vector<ExtAffineElement> extended_generators(const FiniteRootSystem& rs, Variant variant);

}  // namespace kacfusion
