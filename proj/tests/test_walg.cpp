#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "kacfusion/error.hpp"
#include "kacfusion/walg.hpp"

using namespace kacfusion;

namespace {

LevelData level(const char* type, std::int64_t p, std::int64_t q) {
    return LevelData::make(make_root_system(type), p, q);
}

std::size_t index_of(const std::vector<WLabel>& labels, const WLabel& l) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return i;
    FAIL("label not found");
    return 0;
}

}  // namespace

TEST_CASE("central charge") {
    CHECK(central_charge_w(level("A1", 2, 5)) == frac(-22, 5));
    CHECK(central_charge_w(level("A1", 3, 4)) == frac(1, 2));
    CHECK(central_charge_w(level("A1", 2, 3)) == 0);
    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 2, 5}, {"A1", 3, 4}, {"A1", 7, 3}, {"A2", 4, 5}, {"B2", 5, 2}, {"G2", 7, 3}, {"E6", 13, 12}}) {
        CAPTURE(type);
        const auto ld = level(type, p, q);
        const auto& rs = *ld.rs;
        // Virasoro: 1 - 6 (p - q)^2 / pq for A1.
        if (rs.spec.name() == "A1") CHECK(central_charge_w(ld) == 1 - Rational(6 * (p - q) * (p - q)) / (p * q));
        const Rational np(static_cast<long>(rs.positive_roots.size()));
        const Rational strange = ld.central_charge - 2 * np -
                                 12 * (ld.kappa() * norm(rs, rs.rho_vee) - 2 * inner(rs, rs.rho, rs.rho_vee));
        CHECK(central_charge_w(ld) == strange);
    }
}

TEST_CASE("label enumeration") {
    CHECK(enumerate_wlabels(level("A1", 2, 5)).size() == 2);
    CHECK(enumerate_wlabels(level("A1", 3, 4)).size() == 3);
    CHECK(enumerate_wlabels(level("A1", 2, 3)).size() == 1);
    CHECK(enumerate_wlabels(level("A1", 3, 1)).empty());
    CHECK_THROWS_AS(enumerate_wlabels(level("B2", 5, 2)), ValidationError);

    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 2, 5}, {"A1", 3, 4}, {"A1", 3, 5}, {"A1", 5, 7}, {"A2", 4, 5}, {"A2", 5, 4}, {"A3", 5, 4}}) {
        CAPTURE(type);
        CAPTURE(p);
        CAPTURE(q);
        const auto ld = level(type, p, q);
        const auto labels = enumerate_wlabels(ld);
        CHECK(labels.size() == wlabel_count_from_admissible(ld));
        CHECK(labels.front().lam == ld.rs->zero());
        CHECK(labels.front().lamprime == ld.rs->zero());
        for (const auto& l : labels) {
            CHECK(l.canonical);
            const auto lev1 = dominant_weights_of_level(*ld.rs, p - ld.rs->dual_coxeter);
            const auto lev2 = dominant_weights_of_level(*ld.rs, q - ld.rs->coxeter);
            for (const auto& o : worbit(ld, l)) {
                CHECK(std::binary_search(lev1.begin(), lev1.end(), o.lam));
                CHECK(std::binary_search(lev2.begin(), lev2.end(), o.lamprime));
                CHECK_FALSE(o.lam < l.lam);
            }
        }
        // The bijection W x I -> nondegenerate weights: every label has |W| preimages.
        std::map<std::size_t, std::size_t> hits;
        for (const auto& a : enumerate_admissible(ld))
            if (is_nondegenerate(*ld.rs, a.lambda.finite)) ++hits[index_of(labels, wlabel_from_admissible(ld, a.lambda.finite))];
        CHECK(hits.size() == labels.size());
        for (const auto& [i, c] : hits) CHECK(c == weyl_group_order(*ld.rs));
    }
}

TEST_CASE("W S-matrix agrees with the affine S-matrix summed over fibres") {
    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 2, 5}, {"A1", 3, 4}, {"A1", 3, 5}, {"A1", 4, 7}, {"A2", 4, 5}, {"A2", 5, 4}}) {
        CAPTURE(type);
        CAPTURE(p);
        CAPTURE(q);
        const auto ld = level(type, p, q);
        const auto labels = enumerate_wlabels(ld);
        const auto sw = w_smatrix(ld, labels);
        const auto sa = build_smatrix(ld);
        const Complex phase = std::pow(Complex(0, -1), static_cast<int>(ld.rs->positive_roots.size()));
        std::vector<std::size_t> fibre(sa.size(), labels.size());
        for (std::size_t i = 0; i < sa.size(); ++i)
            if (is_nondegenerate(*ld.rs, sa.admissible[i].lambda.finite))
                fibre[i] = index_of(labels, wlabel_from_admissible(ld, sa.admissible[i].lambda.finite));
        for (std::size_t i = 0; i < sa.size(); ++i) {
            if (fibre[i] == labels.size()) continue;
            std::vector<Complex> row(labels.size(), 0.0);
            for (std::size_t j = 0; j < sa.size(); ++j)
                if (fibre[j] < labels.size()) row[fibre[j]] += phase * sa.entries(i, j);
            for (std::size_t b = 0; b < labels.size(); ++b)
                CHECK(std::abs(row[b] - sw.entries(fibre[i], b)) < 1e-9);
        }
        const auto rep = verify_sl2_relations(sw.entries, CMatrix::Identity(sw.size(), sw.size()));
        CHECK(rep.s_ok(1e-9));
        // Representative independence.
        const auto weyl = enumerate_weyl(*ld.rs);
        for (const auto& a : labels)
            for (const auto& b : labels)
                for (const auto& a2 : worbit(ld, a))
                    CHECK(std::abs(w_smatrix_entry(ld, weyl, a2, b) - w_smatrix_entry(ld, weyl, a, b)) < 1e-9);
    }
}

TEST_CASE("Ising and Lee-Yang") {
    const auto ising = w_smatrix(level("A1", 3, 4));
    REQUIRE(ising.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) MESSAGE(ising.labels[i]);
    const double r = std::sqrt(0.5);
    // Up to label order the standard Ising matrix.
    std::vector<double> absval;
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) absval.push_back(std::abs(ising.entries(i, j)));
    std::sort(absval.begin(), absval.end());
    CHECK(absval[0] < 1e-12);
    for (int i = 1; i < 5; ++i) CHECK(std::abs(absval[i] - 0.5) < 1e-12);
    for (int i = 5; i < 9; ++i) CHECK(std::abs(absval[i] - r) < 1e-12);

    const auto t = verlinde(ising, 0);
    CHECK(t.max_rounding_error < 1e-6);
    CHECK(check_fusion_axioms(t, 0).ok());
    // Identify sigma as the label with sigma x sigma containing two labels.
    std::size_t sigma = 3, eps = 3;
    for (std::size_t a = 1; a < 3; ++a) {
        int total = 0;
        for (std::size_t c = 0; c < 3; ++c) total += static_cast<int>(t(a, a, c));
        if (total == 2) sigma = a;
        else eps = a;
    }
    REQUIRE(sigma < 3);
    REQUIRE(eps < 3);
    CHECK(t(sigma, sigma, 0) == 1);
    CHECK(t(sigma, sigma, eps) == 1);
    CHECK(t(sigma, sigma, sigma) == 0);
    CHECK(t(sigma, eps, sigma) == 1);
    CHECK(t(sigma, eps, 0) == 0);
    CHECK(t(eps, eps, 0) == 1);
    CHECK(t(eps, eps, sigma) == 0);
    CHECK(t(eps, eps, eps) == 0);

    const auto ly = verlinde(w_smatrix(level("A1", 2, 5)), 0);
    CHECK(ly(1, 1, 0) == 1);
    CHECK(ly(1, 1, 1) == 1);
    CHECK(ly(0, 1, 1) == 1);
}

TEST_CASE("integrable fusion and Verlinde errors") {
    const auto a1 = make_root_system("A1");
    const auto l1 = integrable_fusion(a1, 1);
    REQUIRE(l1.size() == 2);
    CHECK(l1(1, 1, 0) == 1);
    CHECK(l1(1, 1, 1) == 0);
    for (int k = 0; k <= 5; ++k) {
        const auto t = integrable_fusion(a1, k);
        CHECK(check_fusion_axioms(t, 0).ok());
        // su(2)_k: N_{a b}^c = 1 iff |a-b| <= c <= min(a+b, 2k-a-b) and a+b+c even.
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= k; ++b)
                for (int c = 0; c <= k; ++c) {
                    const bool on = std::abs(a - b) <= c && c <= std::min(a + b, 2 * k - a - b) && (a + b + c) % 2 == 0;
                    CHECK(t(a, b, c) == (on ? 1 : 0));
                }
    }
    CHECK(check_fusion_axioms(integrable_fusion(make_root_system("A2"), 3), 0).ok());
    CHECK(check_fusion_axioms(integrable_fusion(make_root_system("G2"), 2), 0).ok());

    SMatrix bad = w_smatrix(level("A1", 3, 4));
    bad.entries(0, 2) = 0;
    CHECK_THROWS_AS(verlinde(bad, 0), NumericalError);
    SMatrix skew = w_smatrix(level("A1", 3, 4));
    skew.entries *= 1.01;
    CHECK_THROWS_AS(verlinde(skew, 0, {0, 1, 2}), NumericalError);
}

TEST_CASE("fusion rules factorise") {
    const auto rep = check_fkw_factorization(level("A1", 3, 5));
    CHECK(rep.hypothesis_ok);
    CHECK(rep.equal);
    CHECK(rep.mismatches == 0);
    CHECK(rep.labels.size() == 4);
    for (const auto& l : rep.labels) CHECK(make_root_system("A1")->root_lattice.contains(l.lamprime.coords));
    for (const auto& [type, p, q] : std::vector<std::tuple<const char*, int, int>>{
             {"A1", 2, 5}, {"A1", 4, 5}, {"A1", 5, 7}, {"A2", 4, 5}, {"A2", 5, 7}, {"D4", 7, 9}}) {
        const std::string name = type;
        CAPTURE(name);
        CAPTURE(p);
        CAPTURE(q);
        const auto r = check_fkw_factorization(level(type, p, q));
        CHECK(r.hypothesis_ok);
        CHECK(r.equal);
        MESSAGE(r.message);
        CHECK(check_fusion_axioms(r.w, 0).ok());
    }
    const auto v = check_fkw_factorization(level("A1", 5, 2));
    CHECK_FALSE(v.hypothesis_ok);
    CHECK(v.message.find("hypothesis (q,|J|)=1 violated") != std::string::npos);
    CHECK_FALSE(check_fkw_factorization(level("B2", 5, 2)).hypothesis_ok);
}
