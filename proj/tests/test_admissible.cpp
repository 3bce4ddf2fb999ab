#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "kacfusion/admissible.hpp"
#include "kacfusion/error.hpp"

using namespace kacfusion;

namespace {

LevelData level(const char* type, std::int64_t p, std::int64_t q) {
    return LevelData::make(make_root_system(type), p, q);
}

// Shape of a coroot basis up to the affine Weyl action: the multiset of
// pairwise inner products.
std::vector<Rational> signature(const FiniteRootSystem& rs, const std::vector<AffineWeight>& basis) {
    std::vector<Rational> s;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) s.push_back(inner(rs, basis[i].finite, basis[j].finite));
    std::sort(s.begin(), s.end());
    return s;
}

// Independent oracle for rank <= 2: scan lambda-bar over (1/q)Z^l in a box
// and keep the admissible weights whose integral coroot system has the shape
// of S_(q).
std::set<QVec> scan_admissible(const LevelData& ld, int box) {
    const auto& rs = *ld.rs;
    const auto target = signature(rs, coroot_basis_Sq(ld));
    std::set<QVec> found;
    const int lo = -box * static_cast<int>(ld.q), hi = box * static_cast<int>(ld.q);
    std::vector<int> idx(static_cast<std::size_t>(rs.rank), lo);
    while (true) {
        AffineWeight lam{rs.zero(), ld.k, 0};
        for (int i = 0; i < rs.rank; ++i) lam.finite.coords[i] = frac(idx[i], ld.q);
        const auto rep = verify_admissible(ld, lam);
        if (rep.admissible && signature(rs, rep.integral_basis) == target) found.insert(lam.finite.coords);
        int i = 0;
        while (i < rs.rank && ++idx[i] > hi) idx[i++] = lo;
        if (i == rs.rank) break;
    }
    return found;
}

// Oracle for q = 1: integrable weights, lambda dominant with <lambda, theta^vee> <= k.
std::set<QVec> integrable_weights(const FiniteRootSystem& rs, int k) {
    std::set<QVec> out;
    std::vector<int> idx(static_cast<std::size_t>(rs.rank), 0);
    while (true) {
        int level = 0;
        for (int i = 0; i < rs.rank; ++i) level += rs.comarks[i] * idx[i];
        if (level <= k) {
            QVec v;
            for (int x : idx) v.push_back(x);
            out.insert(v);
        }
        int i = 0;
        while (i < rs.rank && ++idx[i] > k) idx[i++] = 0;
        if (i == rs.rank) break;
    }
    return out;
}

FiniteWeight random_in(std::mt19937& gen, const Lattice& lat, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    QVec v(lat.rank(), Rational(0));
    for (std::size_t r = 0; r < lat.rank(); ++r) v = v + Rational(d(gen)) * lat.generators().row(r);
    return {v};
}

FiniteWeight random_alcove_point(std::mt19937& gen, const FiniteRootSystem& rs) {
    std::uniform_int_distribution<int> d(1, 97);
    FiniteWeight w = rs.zero();
    for (auto& c : w.coords) c = d(gen);
    return (Rational(1) / (Rational(1) + inner(rs, w, rs.theta_coroot_long))) * w;
}

}  // namespace

TEST_CASE("level data validation and central charge") {
    const auto a1 = level("A1", 3, 1);
    CHECK(a1.k == 1);
    CHECK(a1.central_charge == 1);
    CHECK(a1.variant == Variant::principal);
    CHECK(level("A1", 5, 2).k == frac(1, 2));
    CHECK(level("G2", 7, 3).variant == Variant::coprincipal);
    CHECK(level("B2", 5, 2).variant == Variant::coprincipal);
    CHECK_THROWS_AS(level("A1", 4, 2), ValidationError);
    CHECK_THROWS_AS(level("A1", 1, 3), ValidationError);
    CHECK_THROWS_AS(level("G2", 5, 3), ValidationError);  // coprincipal needs p >= h = 6
    CHECK(level("G2", 7, 2).variant == Variant::principal);
    CHECK(parse_pq("5/2") == std::make_pair<std::int64_t, std::int64_t>(5, 2));
    CHECK(parse_pq("3,4") == std::make_pair<std::int64_t, std::int64_t>(3, 4));
    CHECK_THROWS_AS(parse_pq("5"), ValidationError);
    CHECK_THROWS_AS(parse_pq("5/x"), ValidationError);
}

TEST_CASE("coroot basis S_(q)") {
    const auto a1 = level("A1", 5, 2);
    const auto s = coroot_basis_Sq(a1);
    const auto& rs = *a1.rs;
    CHECK(s[0] == affine_coroot(-rs.simple_coroots[0], 2));
    CHECK(s[1] == affine_coroot(rs.simple_coroots[0], 0));

    const auto g2 = level("G2", 7, 3);
    CHECK(coroot_basis_Sq(g2)[0] == affine_coroot(-g2.rs->theta_coroot_long, 3));

    for (const char* type : {"A3", "B3", "C2", "G2", "F4"}) {
        auto rs1 = make_root_system(type);
        const auto ld = LevelData::make(rs1, rs1->dual_coxeter + 1, 1);
        CHECK(coroot_basis_Sq(ld) == affine_simple_coroots(*rs1));
    }
}

TEST_CASE("phi scales Lambda_0 and delta and is an isometry") {
    const auto ld = level("A2", 4, 3);
    const auto& rs = *ld.rs;
    const auto a1 = level("A1", 5, 2);
    const AffineWeight x = phi_apply(a1, {a1.rs->zero(), 1, 1});
    CHECK(x.k0 == frac(1, 2));
    CHECK(x.d0 == 2);
    CHECK(phi_apply(ld, {rs.rho, 0, 0}) == AffineWeight{rs.rho, 0, 0});
    std::mt19937 gen(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 100; ++t) {
        AffineWeight nu{rs.zero(), d(gen), frac(d(gen), 5)};
        for (auto& c : nu.finite.coords) c = frac(d(gen), 3);
        CHECK(inner(rs, phi_apply(ld, nu), phi_apply(ld, nu)) == inner(rs, nu, nu));
        CHECK(phi_inverse(ld, phi_apply(ld, nu)) == nu);
    }
}

TEST_CASE("coset representatives form a transversal") {
    std::mt19937 gen(11);
    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 5, 2}, {"A2", 4, 3}, {"B2", 5, 2}, {"G2", 7, 3}, {"C3", 7, 2}, {"B3", 7, 3}}) {
        CAPTURE(type);
        const auto ld = level(type, p, q);
        const Lattice sub = ld.translation_lattice().scaled(q);
        const auto reps = beta_representatives(ld);
        CHECK(static_cast<std::int64_t>(reps.size()) == lattice_index(ld.rs->dual_root_lattice, sub));
        for (std::size_t a = 0; a < reps.size(); ++a) {
            CHECK(ld.rs->dual_root_lattice.contains(reps[a].coords));
            for (std::size_t b = a + 1; b < reps.size(); ++b) CHECK_FALSE(sub.contains((reps[a] - reps[b]).coords));
        }
        for (int t = 0; t < 20; ++t) {
            const FiniteWeight x = random_in(gen, ld.rs->dual_root_lattice, 7);
            int hits = 0;
            for (const auto& r : reps) hits += sub.contains((x - r).coords) ? 1 : 0;
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("regular dominant nu") {
    CHECK(regular_dominant_nu(level("A1", 5, 2)).size() == 4);
    const auto g2 = regular_dominant_nu(level("G2", 7, 3));
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].finite == make_root_system("G2")->rho);
    // Twisted chamber: pairing with K - theta^vee_long must be positive.
    const auto ld = level("B3", 9, 2);
    for (const auto& nu : regular_dominant_nu(ld)) {
        CHECK(ld.p - inner(*ld.rs, nu.finite, ld.rs->theta_coroot_long) >= 1);
        for (const auto& c : nu.finite.coords) CHECK(c >= 1);
    }
}

TEST_CASE("ga_from_beta: positivity and uniqueness") {
    const auto a1 = level("A1", 5, 2);
    const auto y0 = ga_from_beta(a1, a1.rs->zero());
    CHECK(y0 == ExtAffineElement::identity(*a1.rs));
    const auto y1 = ga_from_beta(a1, a1.rs->fundamental_weight(0));
    CHECK(a1.translation_lattice().scaled(2).contains((y1.beta - a1.rs->fundamental_weight(0)).coords));
    const AffineWeight xi{frac(1, 3) * a1.rs->rho, 1, 0};
    for (const auto& g : coroot_basis_Sq(a1)) CHECK(pairing(*a1.rs, xi, affine_action(*a1.rs, y1, g)) > 0);
    CHECK_THROWS_AS(ga_from_beta(a1, frac(1, 2) * a1.rs->fundamental_weight(0)), ValidationError);

    std::mt19937 gen(5);
    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 5, 2}, {"A2", 4, 3}, {"B2", 5, 2}, {"B2", 4, 3}, {"G2", 7, 3}, {"C3", 7, 2}, {"D4", 7, 2}}) {
        CAPTURE(type);
        const auto ld = level(type, p, q);
        for (int t = 0; t < 50; ++t) {
            const FiniteWeight beta = random_in(gen, ld.rs->dual_root_lattice, 6);
            const auto y = ga_from_beta(ld, beta);
            CHECK(ga_from_beta(ld, beta, random_alcove_point(gen, *ld.rs)) == y);
            // Shifting beta within its coset does not change y.
            const FiniteWeight shift = Rational(q) * random_in(gen, ld.translation_lattice(), 3);
            CHECK(ga_from_beta(ld, beta + shift) == y);
        }
    }
}

TEST_CASE("enumeration against an independent scan") {
    for (const auto& [type, p, q, count] : std::vector<std::tuple<const char*, int, int, std::size_t>>{
             {"A1", 5, 2, 8}, {"A1", 3, 1, 2}, {"A1", 2, 5, 5}, {"A1", 3, 4, 8}, {"A2", 4, 3, 27}, {"G2", 7, 3, 3}}) {
        CAPTURE(type);
        CAPTURE(p);
        CAPTURE(q);
        const auto ld = level(type, p, q);
        const auto labels = enumerate_admissible(ld);
        CHECK(labels.size() == count);
        std::set<QVec> listed;
        for (const auto& l : labels) listed.insert(l.lambda.finite.coords);
        CHECK(listed.size() == labels.size());
        const int box = 2 * p;
        const auto scanned = scan_admissible(ld, box);
        CHECK(scanned == listed);
        for (const auto& v : scanned)
            for (const auto& c : v) CHECK(abs(c) < box - 1);
    }
    const auto a1 = enumerate_admissible(level("A1", 3, 1));
    CHECK(a1[0].lambda.finite.coords == QVec{0});
    CHECK(a1[1].lambda.finite.coords == QVec{1});
}

TEST_CASE("label invariants on several levels") {
    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 5, 2}, {"A2", 4, 3}, {"A3", 5, 2}, {"B2", 4, 3}, {"B2", 5, 2}, {"C2", 5, 2},
             {"G2", 7, 3}, {"G2", 5, 2}, {"C3", 7, 2}, {"B3", 7, 2}, {"D4", 7, 2}, {"F4", 13, 2}}) {
        CAPTURE(type);
        CAPTURE(p);
        CAPTURE(q);
        const auto ld = level(type, p, q);
        const auto& rs = *ld.rs;
        const auto labels = enumerate_admissible(ld);
        REQUIRE_FALSE(labels.empty());

        // Each label is reached by exactly |J| (or |LJ|) pairs (nu, beta).
        const auto nus = regular_dominant_nu(ld);
        const auto betas = beta_representatives(ld);
        std::map<QVec, std::size_t> hits;
        for (const auto& b : betas) {
            const auto y = ga_from_beta(ld, b);
            for (const auto& nu : nus) ++hits[weight_from_triple(ld, nu, y).finite.coords];
        }
        CHECK(labels.size() * ld.symmetry_order() == nus.size() * betas.size());
        CHECK(hits.size() == labels.size());
        for (const auto& [key, n] : hits) CHECK(n == ld.symmetry_order());

        for (const auto& l : labels) {
            CHECK(l.lambda.k0 == ld.k);
            CHECK(l.lambda.d0 == 0);
            CHECK(rs.dual_root_lattice.contains(l.beta.coords));
            const auto basis = transported_basis(ld, l);
            const auto sq = coroot_basis_Sq(ld);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                const AffineWeight lr{l.lambda.finite + rs.rho, ld.kappa(), 0};
                const Rational v = pairing(rs, lr, basis[i]);
                CHECK(v == pairing(rs, l.nu, i == 0 ? affine_coroot(sq[0].finite, 1) : sq[i]));
                CHECK(is_integer(v));
                CHECK(v >= 1);
            }
            const auto rep = verify_admissible(ld, l.lambda);
            CHECK(rep.admissible);
            CHECK(same_coroot_set(rep.integral_basis, basis));
        }
        CHECK(std::is_sorted(labels.begin(), labels.end(), [](const auto& a, const auto& b) {
            return a.lambda.finite < b.lambda.finite;
        }));
    }
}

TEST_CASE("q = 1 gives the integrable weights") {
    for (const auto& [type, k] : std::vector<std::pair<const char*, int>>{
             {"A1", 1}, {"A1", 4}, {"A2", 2}, {"B2", 2}, {"G2", 2}, {"C3", 1}, {"D4", 1}, {"F4", 1}}) {
        CAPTURE(type);
        auto rs = make_root_system(type);
        const auto ld = LevelData::make(rs, k + rs->dual_coxeter, 1);
        std::set<QVec> got;
        for (const auto& l : enumerate_admissible(ld)) {
            got.insert(l.lambda.finite.coords);
            CHECK(l.beta == rs->zero());
        }
        CHECK(got == integrable_weights(*rs, k));
    }
}

TEST_CASE("verify_admissible rejects nonpositive integral pairings") {
    const auto ld = level("A1", 5, 2);
    const auto& rs = *ld.rs;
    CHECK(verify_admissible(ld, {rs.zero(), ld.k, 0}).admissible);
    const auto bad = verify_admissible(ld, {Rational(-2) * rs.fundamental_weight(0), ld.k, 0});
    CHECK_FALSE(bad.admissible);
    CHECK_FALSE(bad.no_nonpositive_integers);
    CHECK_THROWS_AS(verify_admissible(ld, {rs.zero(), 1, 0}), ValidationError);

    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 5, 2}, {"A2", 4, 3}, {"B2", 5, 2}, {"G2", 7, 3}}) {
        const auto l2 = level(type, p, q);
        CHECK(verify_admissible(l2, {l2.rs->zero(), l2.k, 0}).admissible);
        for (const auto& l : enumerate_admissible(l2)) {
            for (int i = 0; i < l2.rs->rank; ++i)
                for (int t = 0; t < 3; ++t) {
                    const Rational shift = l.lambda.finite.coords[i] + 1 + t;
                    AffineWeight broken = l.lambda;
                    broken.finite = broken.finite - shift * l2.rs->fundamental_weight(i);
                    CHECK_FALSE(verify_admissible(l2, broken).admissible);
                }
        }
    }
}

TEST_CASE("decompose_mu: solutions, count and the sigma action") {
    const auto a1 = level("A1", 5, 2);
    const AffineWeight nu{Rational(3) * a1.rs->fundamental_weight(0), 5, 0};
    const AffineWeight mu{Rational(2) * nu.finite, 10, 0};
    const auto sols = decompose_mu(a1, mu);
    CHECK(sols.size() == 2);
    CHECK(std::any_of(sols.begin(), sols.end(), [&](const MuSolution& s) {
        return s.nu == nu && s.beta == a1.rs->zero() && s.wbar == WeylElement::identity(1);
    }));
    CHECK_THROWS_AS(decompose_mu(a1, {a1.rs->zero(), 9, 0}), ValidationError);

    std::mt19937 gen(3);
    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 5, 2}, {"A2", 4, 3}, {"A3", 5, 2}, {"B2", 4, 3}, {"B2", 5, 2}, {"G2", 7, 3}, {"C3", 7, 2},
             {"B3", 7, 2}, {"D4", 7, 2}}) {
        CAPTURE(type);
        const auto ld = level(type, p, q);
        const auto& rs = *ld.rs;
        const auto gens = extended_generators(rs, ld.variant);
        int tested = 0;
        for (int t = 0; t < 200 && tested < 40; ++t) {
            const AffineWeight m{random_in(gen, ld.dual_translation_lattice(), 9), Rational(p * q), 0};
            std::vector<MuSolution> s;
            try {
                s = decompose_mu(ld, m);
            } catch (const ValidationError&) {
                continue;
            }
            ++tested;
            CHECK(s.size() == ld.symmetry_order());
            for (const auto& x : s) {
                CHECK(Rational(q) * x.wbar.apply(x.nu.finite) + Rational(p) * x.beta == m.finite);
                CHECK(rs.dual_root_lattice.contains(x.beta.coords));
                for (const auto& c : x.nu.finite.coords) CHECK(c >= 1);
            }
            // sigma_j sends the first solution to the others, transitively.
            std::set<std::pair<QVec, QVec>> from_action;
            for (std::size_t j = 0; j < gens.size(); ++j) {
                AffineWeight nj = affine_action(rs, gens[j], s[0].nu);
                nj.d0 = 0;
                const WeylElement sinv = gens[j].wbar.inverse(rs);
                const FiniteWeight bj = s[0].beta - Rational(q) * s[0].wbar.apply(sinv.apply(gens[j].beta));
                const WeylElement wj = s[0].wbar * sinv;
                const bool found = std::any_of(s.begin(), s.end(), [&](const MuSolution& x) {
                    return x.nu == nj && x.beta == bj && x.wbar == wj;
                });
                CHECK(found);
                from_action.insert({nj.finite.coords, bj.coords});
            }
            CHECK(from_action.size() == s.size());
        }
        CHECK(tested >= 10);
    }
}

TEST_CASE("label_from_mu: branch independence and round trip") {
    std::mt19937 gen(17);
    const auto a1 = level("A1", 5, 2);
    const auto labels = enumerate_admissible(a1);
    std::set<QVec> listed;
    for (const auto& l : labels) listed.insert(l.lambda.finite.coords);
    int tested = 0;
    for (int t = 0; t < 400 && tested < 50; ++t) {
        const AffineWeight m{random_in(gen, a1.dual_translation_lattice(), 40), 10, 0};
        try {
            const auto l = label_from_mu(a1, m);
            ++tested;
            CHECK(verify_admissible(a1, l.lambda).admissible);
            CHECK(listed.count(l.lambda.finite.coords) == 1);
        } catch (const ValidationError&) {
        }
    }
    CHECK(tested == 50);

    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 5, 2}, {"A2", 4, 3}, {"B2", 4, 3}, {"B2", 5, 2}, {"G2", 7, 3}, {"C3", 7, 2}}) {
        CAPTURE(type);
        const auto ld = level(type, p, q);
        for (const auto& l : enumerate_admissible(ld)) CHECK(label_from_mu(ld, mu_of(ld, l)).lambda == l.lambda);
    }
}
