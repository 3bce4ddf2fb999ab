#pragma once

// Principal and coprincipal admissible weights at level k = p/q - h^vee.
//
// A label is the triple (nu, ybar, beta) with
//     lambda = t_beta ybar (phi(nu)) - rho,
// where nu is a regular dominant weight of level p for the untwisted
// (principal) or twisted (coprincipal) affine coroot basis, and beta is the
// full translation part of y.  The delta-coefficient of lambda is always 0.

#include <cstdint>
#include <string>
#include <vector>

#include "kacfusion/rootsys.hpp"
#include "kacfusion/weyl.hpp"

namespace kacfusion {

inline constexpr std::size_t kDefaultLabelBound = 200'000;

struct LevelData {
    RootSystemPtr rs;
    std::int64_t p = 0;
    std::int64_t q = 0;
    Rational k;                   // p/q - h^vee
    Variant variant = Variant::principal;
    Rational central_charge;      // k dim g / (k + h^vee)

    /// Validates gcd(p, q) = 1, the variant of q, and p >= h^vee (principal)
    /// or p >= h (coprincipal).
    static LevelData make(RootSystemPtr rs, std::int64_t p, std::int64_t q);

    Rational kappa() const { return frac(p, q); }  // k + h^vee
    /// |J| + 1 or |LJ| + 1: size of the group of basis symmetries.
    std::size_t symmetry_order() const;
    /// The translation lattice L of the level-one group: Q^vee or Q.
    const Lattice& translation_lattice() const;
    /// L^*: P (principal) or Q^* (coprincipal); home of the theta indices.
    const Lattice& dual_translation_lattice() const;
};

/// Parses "p/q" or "p,q".
std::pair<std::int64_t, std::int64_t> parse_pq(const std::string& text);

struct AdmissibleLabel {
    AffineWeight nu;     // level p, delta-coefficient 0
    WeylElement ybar;
    FiniteWeight beta;   // translation part of y = t_beta ybar
    AffineWeight lambda; // level k, delta-coefficient 0

    ExtAffineElement y() const { return {beta, ybar}; }
};

/// S_(q) = [qK - theta', alpha_1^vee, ..., alpha_l^vee].
std::vector<AffineWeight> coroot_basis_Sq(const LevelData& ld);

AffineWeight phi_apply(const LevelData& ld, const AffineWeight& lam);
AffineWeight phi_inverse(const LevelData& ld, const AffineWeight& lam);

/// lambda = y(phi(nu)) - rho, normalised to delta-coefficient 0.
AffineWeight weight_from_triple(const LevelData& ld, const AffineWeight& nu, const ExtAffineElement& y);

/// y(S_(q)) for the label's y.
std::vector<AffineWeight> transported_basis(const LevelData& ld, const AdmissibleLabel& label);

/// Regular dominant nu of level p, sorted by coordinates.
std::vector<AffineWeight> regular_dominant_nu(const LevelData& ld);

/// Representatives of big/sub (sub contained in big), taken in the
/// fundamental parallelepiped of a triangular basis of sub.
std::vector<FiniteWeight> coset_representatives(const Lattice& big, const Lattice& sub);

/// Representatives of Q^*/qQ^vee (principal) or Q^*/qQ (coprincipal).
std::vector<FiniteWeight> beta_representatives(const LevelData& ld);

/// The unique y = t_{beta + q gamma} ybar (gamma in the translation lattice)
/// with y(S_(q)) in the positive coroots.  The second form takes the finite
/// part of the regular level-one test vector explicitly.
ExtAffineElement ga_from_beta(const LevelData& ld, const FiniteWeight& beta);
ExtAffineElement ga_from_beta(const LevelData& ld, const FiniteWeight& beta, const FiniteWeight& xi_bar);

/// Labels sorted by lambda-bar, one per distinct weight.
std::vector<AdmissibleLabel> enumerate_admissible(const LevelData& ld, std::size_t bound = kDefaultLabelBound);

struct AdmissibilityReport {
    bool admissible = false;
    bool no_nonpositive_integers = false;  // <lambda + rho, a> not in Z_{<=0} on positive real coroots
    bool full_rank = false;                // integral coroots span a space of dimension l + 1
    std::vector<AffineWeight> integral_basis;  // simple coroots of the integral subsystem
    std::string reason;
};

AdmissibilityReport verify_admissible(const LevelData& ld, const AffineWeight& lambda);

/// True iff both lists contain the same coroots.
bool same_coroot_set(std::vector<AffineWeight> a, std::vector<AffineWeight> b);

struct MuSolution {
    AffineWeight nu;
    FiniteWeight beta;
    WeylElement wbar;
};

/// All solutions of mu = q wbar(nu) + p beta with nu regular dominant of
/// level p and beta in Q^*.  mu must have level pq and finite part in P
/// (principal) or Q^* (coprincipal).
std::vector<MuSolution> decompose_mu(const LevelData& ld, const AffineWeight& mu);

/// The label attached to mu; all solution branches are checked to agree.
AdmissibleLabel label_from_mu(const LevelData& ld, const AffineWeight& mu);

/// q ybar(nu) + p beta at level pq.
AffineWeight mu_of(const LevelData& ld, const AdmissibleLabel& label);

/// lambda-bar(alpha^vee) is non-integral for every finite coroot.
bool is_nondegenerate(const FiniteRootSystem& rs, const FiniteWeight& lambda_bar);

}  // namespace kacfusion
