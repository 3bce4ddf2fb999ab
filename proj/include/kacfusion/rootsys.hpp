#pragma once

// Finite root systems of simple type and the affine bookkeeping built on them.
//
// Conventions used throughout the library:
//   * Finite weights are stored by their coordinates in the basis of
//     fundamental weights, so the i-th coordinate of w is <w, alpha_i^vee>.
//   * The invariant form is normalised so that long roots have norm 2.
//   * Elements of the Cartan subalgebra (coroots, coweights, K) are stored
//     through the identification nu with the dual space; K corresponds to
//     delta and d to Lambda_0.  Pairings <lambda, h> are then inner products.
//   * Finite node indices are 0-based in code (node i is Bourbaki's i+1);
//     the affine node is referred to separately.
//
// Simple-root numbering follows Bourbaki, except that in G2 the long simple
// root comes first.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kacfusion/rational.hpp"

namespace kacfusion {

struct RootSystemSpec {
    char family = 'A';  // one of A..G
    int rank = 1;

    /// Parses "A1", "g2", "E8" (case-insensitive) and validates.
    static RootSystemSpec parse(std::string_view text);
    /// Throws ValidationError unless (family, rank) names a simple type with rank <= 8.
    void validate() const;
    std::string name() const;

    friend bool operator==(const RootSystemSpec&, const RootSystemSpec&) = default;
};

struct FiniteWeight {
    QVec coords;

    std::size_t rank() const { return coords.size(); }
    friend bool operator==(const FiniteWeight&, const FiniteWeight&) = default;
    friend auto operator<=>(const FiniteWeight& a, const FiniteWeight& b) { return a.coords <=> b.coords; }
};

FiniteWeight operator+(const FiniteWeight& a, const FiniteWeight& b);
FiniteWeight operator-(const FiniteWeight& a, const FiniteWeight& b);
FiniteWeight operator-(const FiniteWeight& a);
FiniteWeight operator*(const Rational& s, const FiniteWeight& a);

/// finite + k0 * Lambda_0 + d0 * delta.  Also used for elements of the affine
/// Cartan subalgebra via nu (then k0 is the d-coefficient, d0 the K-coefficient).
struct AffineWeight {
    FiniteWeight finite;
    Rational k0 = 0;
    Rational d0 = 0;

    const Rational& level() const { return k0; }
    friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
};

AffineWeight operator+(const AffineWeight& a, const AffineWeight& b);
AffineWeight operator-(const AffineWeight& a, const AffineWeight& b);
AffineWeight operator*(const Rational& s, const AffineWeight& a);

/// The real coroot  coroot + n K  (given the nu-image of the finite coroot).
AffineWeight affine_coroot(const FiniteWeight& finite_coroot, const Rational& n);

/// A full-rank lattice given by generator rows in weight coordinates.
class Lattice {
public:
    Lattice() = default;
    Lattice(std::string name, QMat generators);

    const std::string& name() const { return name_; }
    const QMat& generators() const { return generators_; }
    std::size_t rank() const { return generators_.rows(); }

    /// Integer coordinates of v with respect to the generators, if v is in the lattice.
    QVec coordinates(const QVec& v) const;
    bool contains(const QVec& v) const;
    bool contains(const Lattice& sub) const;
    /// Absolute value of the determinant of the generator matrix.
    Rational covolume() const;
    Lattice scaled(const Rational& factor) const;

private:
    std::string name_;
    QMat generators_;
    QMat inverse_;
};

/// |big / sub| for sub contained in big; throws ValidationError otherwise.
std::int64_t lattice_index(const Lattice& big, const Lattice& sub);

struct Root {
    std::vector<int> simple_coeffs;  // coordinates in the simple-root basis
    FiniteWeight weight;             // coordinates in the fundamental-weight basis
    Rational norm;                   // (alpha, alpha)
    int height = 0;
    bool is_long = true;
};

struct FiniteRootSystem {
    RootSystemSpec spec;
    int rank = 0;

    std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i^vee, alpha_j>
    QVec half_norms;                       // d_i = (alpha_i, alpha_i) / 2
    QMat gram;                             // (Lambda_i, Lambda_j)

    std::vector<Root> positive_roots;      // sorted by height, then coefficients
    std::vector<FiniteWeight> simple_roots;
    std::vector<FiniteWeight> simple_coroots;  // nu-images

    FiniteWeight theta;                 // highest root
    FiniteWeight theta_short;           // highest short root (= theta if simply laced)
    FiniteWeight theta_coroot_short;    // highest short coroot = nu^{-1}(theta)
    FiniteWeight theta_coroot_long;     // highest coroot = coroot of theta_short

    std::vector<int> marks;       // theta = sum a_i alpha_i
    std::vector<int> comarks;     // nu^{-1}(theta) = sum a_i^vee alpha_i^vee
    std::vector<int> dual_marks;  // theta_coroot_long = sum c_i alpha_i^vee (marks of the Langlands dual)

    int coxeter = 0;       // h
    int dual_coxeter = 0;  // h^vee
    int lacing = 1;        // r^vee
    int dimension = 0;     // dim of the simple Lie algebra

    FiniteWeight rho;
    FiniteWeight rho_vee;

    std::vector<int> special_nodes;       // J  = {i : a_i = 1}, finite nodes only
    std::vector<int> dual_special_nodes;  // LJ = {i : La_i = 1}, finite nodes only

    Lattice root_lattice;       // Q
    Lattice coroot_lattice;     // Q^vee
    Lattice weight_lattice;     // P
    Lattice dual_root_lattice;  // Q^* (= coweight lattice)

    FiniteWeight fundamental_weight(int i) const;
    FiniteWeight zero() const;
    bool simply_laced() const { return lacing == 1; }
};

using RootSystemPtr = std::shared_ptr<const FiniteRootSystem>;

FiniteRootSystem build_root_system(const RootSystemSpec& spec);
RootSystemPtr make_root_system(const RootSystemSpec& spec);
RootSystemPtr make_root_system(std::string_view type);

/// Cartan matrix for a validated spec.
std::vector<std::vector<int>> cartan_matrix(const RootSystemSpec& spec);

Rational inner(const FiniteRootSystem& rs, const FiniteWeight& a, const FiniteWeight& b);
Rational inner(const FiniteRootSystem& rs, const AffineWeight& a, const AffineWeight& b);
Rational norm(const FiniteRootSystem& rs, const FiniteWeight& a);

/// <lam, h> for h in the affine Cartan subalgebra given by its nu-image.
Rational pairing(const FiniteRootSystem& rs, const AffineWeight& lam, const AffineWeight& coroot);
/// As pairing(), but rejects imaginary (zero-norm) input and non-coroot input.
Rational real_coroot_pairing(const FiniteRootSystem& rs, const AffineWeight& lam, const AffineWeight& coroot);
/// nu-image of the coroot of a real root with finite part `root`.
FiniteWeight coroot_of(const FiniteRootSystem& rs, const FiniteWeight& root);

/// Affine fundamental weights Lambda_0, ..., Lambda_l (Lambda_i = bar Lambda_i + a_i^vee Lambda_0).
std::vector<AffineWeight> affine_fundamental_weights(const FiniteRootSystem& rs);
/// Affine Weyl vector rho = sum Lambda_i (level h^vee).
AffineWeight affine_rho(const FiniteRootSystem& rs);
/// Simple affine coroots alpha_0^vee = K - theta, alpha_i^vee.
std::vector<AffineWeight> affine_simple_coroots(const FiniteRootSystem& rs);

/// Twisted affine system attached to a non-simply-laced type.
struct TwistedAffineDatum {
    RootSystemPtr base;
    std::string twisted_type;                 // e.g. "D4^(2)"
    Rational circ_rho_level;                  // level of the twisted Weyl vector (= h)
    std::vector<AffineWeight> coroot_basis;   // [K - theta^vee_long, alpha_1^vee, ...]
    std::vector<AffineWeight> fundamental_weights;  // dual basis
    std::vector<int> dual_special_nodes;
};

/// Throws ValidationError on simply laced input.
TwistedAffineDatum langlands_dual_datum(const RootSystemPtr& rs);

/// Name of the twisted affine type paired with a non-simply-laced family.
std::string twisted_partner_type(const RootSystemSpec& spec);

}  // namespace kacfusion
