#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "kacfusion/error.hpp"
#include "kacfusion/weyl.hpp"

using namespace kacfusion;

namespace {

// Orders from the degrees of the basic invariants.
std::uint64_t order_from_degrees(const std::string& type) {
    static const std::map<std::string, std::vector<int>> degrees = {
        {"A1", {2}},          {"A2", {2, 3}},          {"A3", {2, 3, 4}},      {"B2", {2, 4}},
        {"B3", {2, 4, 6}},    {"C3", {2, 4, 6}},       {"D4", {2, 4, 4, 6}},   {"G2", {2, 6}},
        {"F4", {2, 6, 8, 12}}, {"E6", {2, 5, 6, 8, 9, 12}}, {"A4", {2, 3, 4, 5}}, {"C4", {2, 4, 6, 8}},
        {"E7", {2, 6, 8, 10, 12, 14, 18}}, {"E8", {2, 8, 12, 14, 18, 20, 24, 30}}};
    std::uint64_t o = 1;
    for (int d : degrees.at(type)) o *= static_cast<std::uint64_t>(d);
    return o;
}

std::set<FiniteWeight> all_roots(const FiniteRootSystem& rs) {
    std::set<FiniteWeight> s;
    for (const auto& r : rs.positive_roots) {
        s.insert(r.weight);
        s.insert(-r.weight);
    }
    return s;
}

FiniteWeight random_weight(std::mt19937& gen, int rank, int lo, int hi, int den = 1) {
    std::uniform_int_distribution<int> d(lo, hi);
    FiniteWeight w{QVec(static_cast<std::size_t>(rank))};
    for (auto& c : w.coords) c = frac(d(gen), den);
    return w;
}

bool in_basis(const std::vector<AffineWeight>& basis, const AffineWeight& x) {
    return std::find(basis.begin(), basis.end(), x) != basis.end();
}

// sigma_j permutes the basis and sends alpha_0^vee to alpha_j^vee; its finite
// part satisfies sigma-bar_j Lambda_{j*} = -Lambda_j where sigma_{j*} is the
// inverse of sigma_j.  When sigma_j is an involution this reads
// sigma-bar_j Lambda_j = -Lambda_j.
void check_sigma_family(const FiniteRootSystem& rs, const std::vector<ExtAffineElement>& gens,
                        const std::vector<int>& nodes, const std::vector<AffineWeight>& basis, int& involutive) {
    REQUIRE(gens.size() == nodes.size() + 1);
    for (std::size_t k = 1; k < gens.size(); ++k) {
        const int j = nodes[k - 1];
        CHECK(gens[k].beta == rs.fundamental_weight(j));
        CHECK(affine_action(rs, gens[k], basis[0]) == basis[static_cast<std::size_t>(j) + 1]);
        for (const auto& g : basis) CHECK(in_basis(basis, affine_action(rs, gens[k], g)));
        const ExtAffineElement inv = inverse(rs, gens[k]);
        int jstar = -1;
        for (std::size_t m = 1; m < gens.size(); ++m)
            if (gens[m] == inv) jstar = nodes[m - 1];
        REQUIRE(jstar >= 0);
        CHECK(gens[k].wbar.apply(rs.fundamental_weight(jstar)) == -rs.fundamental_weight(j));
        if (jstar == j) {
            ++involutive;
            CHECK(gens[k].wbar.apply(rs.fundamental_weight(j)) == -rs.fundamental_weight(j));
        }
    }
}

}  // namespace

TEST_CASE("Weyl group orders and signs") {
    for (const char* t : {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "C4", "D4", "G2", "F4", "E6"}) {
        CAPTURE(t);
        auto rs = make_root_system(t);
        const auto W = enumerate_weyl(*rs);
        CHECK(W.size() == order_from_degrees(t));
        CHECK(weyl_group_order(*rs) == order_from_degrees(t));
        CHECK(W.front() == WeylElement::identity(rs->rank));
        const auto plus = std::count_if(W.begin(), W.end(), [](const WeylElement& w) { return w.sign() == 1; });
        CHECK(static_cast<std::size_t>(plus) * 2 == W.size());
        std::set<WeylElement> uniq(W.begin(), W.end());
        CHECK(uniq.size() == W.size());
    }
    auto a1 = make_root_system("A1");
    const auto W = enumerate_weyl(*a1);
    REQUIRE(W.size() == 2);
    CHECK(W[0].sign() == 1);
    CHECK(W[1].sign() == -1);
    CHECK(weyl_group_order(*make_root_system("E7")) == order_from_degrees("E7"));
    CHECK(weyl_group_order(*make_root_system("E8")) == order_from_degrees("E8"));
    CHECK_THROWS_AS(enumerate_weyl(*make_root_system("E7")), CapacityError);
    CHECK_THROWS_AS(enumerate_weyl(*make_root_system("E8")), CapacityError);
    CHECK_THROWS_AS(enumerate_weyl(*make_root_system("A3"), 10), CapacityError);
}

TEST_CASE("Weyl elements are isometries permuting the roots; sign is the determinant") {
    for (const char* t : {"A2", "B3", "G2", "F4", "D4"}) {
        CAPTURE(t);
        auto rs = make_root_system(t);
        const auto W = enumerate_weyl(*rs);
        const auto roots = all_roots(*rs);
        std::mt19937 gen(7);
        std::uniform_int_distribution<std::size_t> pick(0, W.size() - 1);
        for (int trial = 0; trial < 60; ++trial) {
            const auto& w = W[pick(gen)];
            const QMat m = w.rational_matrix();
            CHECK(m.transpose() * rs->gram * m == rs->gram);
            CHECK(determinant(m) == w.sign());
            for (const auto& r : rs->positive_roots) CHECK(roots.count(w.apply(r.weight)) == 1);
            CHECK(w * w.inverse(*rs) == WeylElement::identity(rs->rank));
        }
        for (int trial = 0; trial < 1000; ++trial) {
            const auto& a = W[pick(gen)];
            const auto& b = W[pick(gen)];
            const WeylElement ab = a * b;
            CHECK(ab.sign() == a.sign() * b.sign());
            CHECK(determinant(ab.rational_matrix()) == ab.sign());
        }
    }
}

TEST_CASE("affine action of translations") {
    auto rs = make_root_system("A1");
    const AffineWeight lambda0{rs->zero(), 1, 0};
    const AffineWeight delta{rs->zero(), 0, 1};
    const auto t0 = ExtAffineElement::identity(*rs);
    const AffineWeight lam{FiniteWeight{{frac(3, 2)}}, frac(1, 2), 5};
    CHECK(affine_action(*rs, t0, lam) == lam);
    const auto ta = ExtAffineElement::translation(*rs, rs->simple_roots[0]);
    CHECK(affine_action(*rs, ta, lambda0) == AffineWeight{rs->simple_roots[0], 1, -1});
    const ExtAffineElement s{rs->zero(), WeylElement::simple_reflection(*rs, 0)};
    CHECK(affine_action(*rs, s, lambda0) == lambda0);
    CHECK(affine_action(*rs, s, delta) == delta);
}

TEST_CASE("extended affine composition law and inverses") {
    std::mt19937 gen(11);
    for (const char* t : {"A2", "B2", "G2"}) {
        CAPTURE(t);
        auto rs = make_root_system(t);
        const auto W = enumerate_weyl(*rs);
        std::uniform_int_distribution<std::size_t> pick(0, W.size() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            const ExtAffineElement a{random_weight(gen, rs->rank, -3, 3), W[pick(gen)]};
            const ExtAffineElement b{random_weight(gen, rs->rank, -3, 3), W[pick(gen)]};
            const AffineWeight lam{random_weight(gen, rs->rank, -5, 5, 3), frac(7, 3), frac(-1, 2)};
            const AffineWeight lhs = affine_action(*rs, compose(a, b), lam);
            const AffineWeight rhs = affine_action(*rs, a, affine_action(*rs, b, lam));
            CHECK(lhs == rhs);
            CHECK(affine_action(*rs, compose(inverse(*rs, a), a), lam) == lam);
            CHECK(lhs.k0 == lam.k0);
            CHECK(inner(*rs, lhs, lhs) == inner(*rs, lam, lam));
        }
    }
}

TEST_CASE("to_dominant") {
    auto a1 = make_root_system("A1");
    const FiniteWeight lam1 = a1->fundamental_weight(0);
    auto [w0, d0] = to_dominant(*a1, lam1);
    CHECK(w0 == WeylElement::identity(1));
    CHECK(d0 == lam1);
    auto [w1, d1] = to_dominant(*a1, -lam1);
    CHECK(w1 == WeylElement::simple_reflection(*a1, 0));
    CHECK(d1 == lam1);
    CHECK_THROWS_AS(to_dominant(*a1, a1->zero(), true), ValidationError);

    auto a2 = make_root_system("A2");
    const auto s1 = WeylElement::simple_reflection(*a2, 0);
    const auto s2 = WeylElement::simple_reflection(*a2, 1);
    auto [w, d] = to_dominant(*a2, (s1 * s2).apply(a2->rho), true);
    CHECK(w == s2 * s1);
    CHECK(w.sign() == 1);
    CHECK(d == a2->rho);

    std::mt19937 gen(3);
    for (const char* t : {"B3", "G2", "F4"}) {
        auto rs = make_root_system(t);
        for (int trial = 0; trial < 50; ++trial) {
            const FiniteWeight xi = random_weight(gen, rs->rank, -9, 9, 2);
            auto [u, dom] = to_dominant(*rs, xi);
            CHECK(u.apply(xi) == dom);
            for (const auto& c : dom.coords) CHECK(c >= 0);
            auto [u2, dom2] = to_dominant(*rs, dom);
            CHECK(u2 == WeylElement::identity(rs->rank));
            CHECK(dom2 == dom);
        }
    }
}

TEST_CASE("chamber basis S_(q)") {
    auto a1 = make_root_system("A1");
    const auto b = chamber_basis(*a1, 2, Variant::principal);
    CHECK(b[0] == affine_coroot(-a1->simple_coroots[0], 2));
    CHECK(chamber_basis(*a1, 1, Variant::principal) == affine_simple_coroots(*a1));
    auto g2 = make_root_system("G2");
    CHECK(chamber_basis(*g2, 3, Variant::coprincipal)[0] == affine_coroot(-g2->theta_coroot_long, 3));
    CHECK(variant_for(*g2, 3) == Variant::coprincipal);
    CHECK(variant_for(*g2, 2) == Variant::principal);
    CHECK(variant_for(*a1, 2) == Variant::principal);
}

TEST_CASE("affine chamber reduction") {
    auto a1 = make_root_system("A1");
    const AffineWeight xi{FiniteWeight{{Rational(3)}}, 1, 0};
    const auto red = affine_to_dominant(*a1, 2, Variant::principal, xi, true);
    for (const auto& g : chamber_basis(*a1, 2, Variant::principal)) CHECK(pairing(*a1, red.image, g) > 0);
    CHECK(affine_action(*a1, red.element, xi) == red.image);
    const AffineWeight inside{FiniteWeight{{frac(1, 2)}}, 1, 0};
    const auto same = affine_to_dominant(*a1, 2, Variant::principal, inside);
    CHECK(same.element == ExtAffineElement::identity(*a1));

    std::mt19937 gen(5);
    struct Case {
        const char* type;
        int q;
    };
    for (const Case c : {Case{"G2", 3}, Case{"A2", 2}, Case{"B2", 2}, Case{"B2", 3}, Case{"C3", 2}}) {
        CAPTURE(c.type);
        CAPTURE(c.q);
        auto rs = make_root_system(c.type);
        const Variant v = variant_for(*rs, c.q);
        const auto basis = chamber_basis(*rs, c.q, v);
        std::vector<ExtAffineElement> refl;
        for (const auto& g : basis) refl.push_back(affine_reflection(*rs, g));
        std::uniform_int_distribution<std::size_t> pick(0, refl.size() - 1);
        for (int trial = 0; trial < 100; ++trial) {
            const AffineWeight x{random_weight(gen, rs->rank, -40, 40, 7), frac(5, 3), 0};
            const auto r = affine_to_dominant(*rs, c.q, v, x);
            for (const auto& g : basis) CHECK(pairing(*rs, r.image, g) >= 0);
            CHECK(affine_action(*rs, r.element, x) == r.image);
            ExtAffineElement g = ExtAffineElement::identity(*rs);
            for (int k = 0; k < 6; ++k) g = compose(refl[pick(gen)], g);
            const auto r2 = affine_to_dominant(*rs, c.q, v, affine_action(*rs, g, x));
            CHECK(r2.image.finite == r.image.finite);
            // the translation part lies in q Q^vee (principal) or q Q (coprincipal)
            const Lattice& lat = v == Variant::principal ? rs->coroot_lattice : rs->root_lattice;
            CHECK(lat.scaled(c.q).contains(r.element.beta.coords));
        }
    }
    CHECK_THROWS_AS(affine_to_dominant(*a1, 2, Variant::principal, AffineWeight{a1->zero(), 0, 0}), ValidationError);
    CHECK_THROWS_AS(affine_to_dominant(*a1, 1, Variant::principal, AffineWeight{a1->zero(), 1, 0}, true),
                    ValidationError);
}

TEST_CASE("extended generators preserve the affine coroot bases") {
    auto a1 = make_root_system("A1");
    const auto gens = extended_generators(*a1, Variant::principal);
    REQUIRE(gens.size() == 2);
    CHECK(gens[1].wbar == WeylElement::simple_reflection(*a1, 0));

    int involutive = 0;
    for (const char* t : {"A1", "A3", "A4", "B3", "C3", "D4", "D5", "E6", "E7", "G2", "F4", "B2", "C4"}) {
        CAPTURE(t);
        auto rs = make_root_system(t);
        const auto pg = extended_generators(*rs, Variant::principal);
        CHECK(pg.size() == static_cast<std::size_t>(lattice_index(rs->dual_root_lattice, rs->coroot_lattice)));
        const auto basis = chamber_basis(*rs, 1, Variant::principal);
        check_sigma_family(*rs, pg, rs->special_nodes, basis, involutive);
        if (rs->lacing == 1) continue;
        const auto cg = extended_generators(*rs, Variant::coprincipal);
        CHECK(cg.size() == static_cast<std::size_t>(lattice_index(rs->weight_lattice, rs->root_lattice)));
        const auto cbasis = chamber_basis(*rs, 1, Variant::coprincipal);
        CHECK(cbasis == langlands_dual_datum(rs).coroot_basis);
        check_sigma_family(*rs, cg, rs->dual_special_nodes, cbasis, involutive);
    }
    CHECK(involutive >= 12);
    CHECK(extended_generators(*make_root_system("G2"), Variant::coprincipal).size() == 1);
}
