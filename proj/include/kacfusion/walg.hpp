#pragma once

// Irreducible modules of the simple regular W-algebra at k = p/q - h^vee:
// labels, S-matrix, Verlinde fusion rules and the factorisation of the
// fusion rules into two integrable ones.  The label and S-matrix code is
// restricted to simply laced types.

#include <string>
#include <vector>

#include "kacfusion/smatrix.hpp"

namespace kacfusion {

/// A pair (lam, lam') of dominant integral weights of levels p - h^vee and
/// q - h, taken modulo the diagonal action of the extended affine group.
struct WLabel {
    FiniteWeight lam;
    FiniteWeight lamprime;
    bool canonical = true;

    friend bool operator==(const WLabel&, const WLabel&) = default;
};

std::string to_string(const WLabel& label);

/// c(k) = l - 12 [(k + h^vee)(rho^vee, rho^vee) - 2 (rho, rho^vee) + (rho, rho)/(k + h^vee)].
Rational central_charge_w(const LevelData& ld);

/// Dominant integral weights of level m (<lam, theta^vee> <= m), sorted.
std::vector<FiniteWeight> dominant_weights_of_level(const FiniteRootSystem& rs, std::int64_t m);

/// The orbit of (lam, lam') under the diagonal action, identity first.
std::vector<WLabel> worbit(const LevelData& ld, const WLabel& label);

/// Canonical representatives, sorted; the class of (0, 0) comes first.
/// Empty when p < h^vee or q < h.
std::vector<WLabel> enumerate_wlabels(const LevelData& ld);

/// Number of nondegenerate principal admissible weights divided by |W|.
std::size_t wlabel_count_from_admissible(const LevelData& ld);

/// The W label attached to a nondegenerate principal admissible weight:
/// the class of (lam, lam') with w(lambda-bar + rho) = lam + rho - (p/q)(lam' + rho)
/// for some w in W.  Throws ValidationError for degenerate input.
WLabel wlabel_from_admissible(const LevelData& ld, const FiniteWeight& lambda_bar);

/// The member of the orbit of `label` with lam' in the root lattice, if unique.
WLabel fkw_representative(const LevelData& ld, const WLabel& label);

/// One entry of the W S-matrix.  The outer phase pairs lam with mu' and lam' with mu.
Complex w_smatrix_entry(const LevelData& ld, const std::vector<WeylElement>& weyl, const WLabel& a, const WLabel& b);

/// Square of the inverse normalisation: (pq)^l |P/Q|.
std::int64_t w_norm_const(const LevelData& ld);

SMatrix w_smatrix(const LevelData& ld);
SMatrix w_smatrix(const LevelData& ld, const std::vector<WLabel>& labels);

struct FusionTensor {
    std::vector<std::string> labels;
    std::vector<std::int64_t> n;  // N_{a,b}^c at (a * size + b) * size + c
    double max_rounding_error = 0;

    std::size_t size() const { return labels.size(); }
    std::int64_t operator()(std::size_t a, std::size_t b, std::size_t c) const {
        return n[(a * size() + b) * size() + c];
    }
};

/// N_{A,B}^C = sum_L S_{A,L} S_{B,L} S_{L,C'} / S_{V,L} with C' read off S^2.
/// Throws NumericalError for a vanishing vacuum row entry, a rounding error
/// above `tolerance`, or a negative multiplicity.
FusionTensor verlinde(const SMatrix& s, std::size_t vacuum, const std::vector<int>& conjugation,
                      double tolerance = 1e-6);
/// As above, with the conjugation taken from verify_sl2_relations(S, 1).
FusionTensor verlinde(const SMatrix& s, std::size_t vacuum, double tolerance = 1e-6);

/// Integrable fusion rules at level m from the q = 1 admissible S-matrix.
FusionTensor integrable_fusion(const RootSystemPtr& rs, std::int64_t m);

struct FusionAxiomsReport {
    bool vacuum_unit = false;
    bool commutative = false;
    bool associative = false;
    bool ok() const { return vacuum_unit && commutative && associative; }
};

FusionAxiomsReport check_fusion_axioms(const FusionTensor& t, std::size_t vacuum);

struct FactorizationReport {
    bool hypothesis_ok = false;
    std::string message;
    bool equal = false;
    std::size_t mismatches = 0;
    std::vector<WLabel> labels;  // representatives with lam' in the root lattice
    FusionTensor w;              // from the W S-matrix
    FusionTensor product;        // N_{lam,mu}^{nu} N_{lam',mu'}^{nu'} in the same label order
};

/// Compares the W fusion rules with the product of the integrable fusion
/// rules at levels p - h^vee and q - h.  Requires a simply laced type and
/// gcd(q, |P/Q|) = 1; otherwise the report says which hypothesis failed.
FactorizationReport check_fkw_factorization(const LevelData& ld);

}  // namespace kacfusion
