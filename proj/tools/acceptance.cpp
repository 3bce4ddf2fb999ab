// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kacfusion/checks.hpp"
#include "kacfusion/walg.hpp"

using namespace kacfusion;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

LevelData level(const char* type, std::int64_t p, std::int64_t q) {
    return LevelData::make(make_root_system(type), p, q);
}

void root_data(Outcome& o) {
    const auto t0 = Clock::now();
    const std::map<std::string, std::string> twisted = {
        {"B2", "D3^(2)"}, {"B3", "D4^(2)"}, {"B4", "D5^(2)"}, {"B5", "D6^(2)"}, {"B6", "D7^(2)"}, {"B7", "D8^(2)"},
        {"B8", "D9^(2)"}, {"C2", "A3^(2)"}, {"C3", "A5^(2)"}, {"C4", "A7^(2)"}, {"C5", "A9^(2)"}, {"C6", "A11^(2)"},
        {"C7", "A13^(2)"}, {"C8", "A15^(2)"}, {"F4", "E6^(2)"}, {"G2", "D4^(3)"}};
    int types = 0, twisted_checked = 0;
    for (char family : std::string("ABCDEFG"))
        for (int rank = 1; rank <= 8; ++rank) {
            RootSystemSpec spec{family, rank};
            try {
                spec.validate();
            } catch (const std::exception&) {
                continue;
            }
            const auto rs = make_root_system(spec);
            ++types;
            FiniteWeight sum = rs->zero();
            int comarks = 0;
            for (int i = 0; i < rs->rank; ++i) {
                sum = sum + Rational(rs->marks[i]) * rs->simple_roots[i];
                comarks += rs->comarks[i];
            }
            o.require(sum == rs->theta, "theta = sum a_i alpha_i for " + spec.name());
            o.require(rs->dual_coxeter == 1 + comarks, "h^vee = 1 + sum a_i^vee for " + spec.name());
            if (!rs->simply_laced()) {
                const auto it = twisted.find(spec.name());
                o.require(it != twisted.end() && it->second == twisted_partner_type(spec),
                          "twisted partner of " + spec.name());
                ++twisted_checked;
            }
        }
    o.require(twisted_checked == static_cast<int>(twisted.size()), "twisted table coverage");
    const double t = seconds_since(t0);
    o.require(t < 5, "runtime < 5 s");
    o.detail << types << " types of rank <= 8, " << twisted_checked << " twisted partners, " << t << " s";
}

void smatrix_structure(Outcome& o) {
    struct Fixture {
        const char* type;
        int p, q;
    };
    double worst = 0;
    for (const auto& f : {Fixture{"A1", 3, 1}, Fixture{"A1", 5, 2}, Fixture{"A1", 2, 5}, Fixture{"A1", 3, 4},
                          Fixture{"A2", 4, 3}, Fixture{"G2", 7, 3}}) {
        const auto t0 = Clock::now();
        const auto ld = level(f.type, f.p, f.q);
        const auto s = build_smatrix(ld);
        const auto r = verify_sl2_relations(s.entries, tmatrix(ld, s.admissible).entries);
        const double dev = std::max({r.symmetry, r.unitarity, r.s4, r.st3, r.conjugation});
        worst = std::max(worst, dev);
        const double t = seconds_since(t0);
        const std::string name = std::string(f.type) + " (" + std::to_string(f.p) + "," + std::to_string(f.q) + ")";
        o.require(r.ok(1e-9), "SL(2,Z) relations for " + name);
        o.require(t < 30, "runtime < 30 s for " + name);
        o.detail << name << " " << s.size() << " labels " << dev << "; ";
    }
    o.detail << "max deviation " << worst;
}

void sine_formula(Outcome& o) {
    double worst = 0;
    for (int p = 2; p <= 12; ++p) {
        const auto s = build_smatrix(level("A1", p, 1));
        o.require(s.size() == static_cast<std::size_t>(p - 1), "p - 1 labels at p = " + std::to_string(p));
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = 0; b < s.size(); ++b) {
                const double la = to_double(s.admissible[a].lambda.finite.coords[0]);
                const double lb = to_double(s.admissible[b].lambda.finite.coords[0]);
                const double expected = std::sqrt(2.0 / p) * std::sin(std::numbers::pi * (la + 1) * (lb + 1) / p);
                worst = std::max(worst, std::abs(s.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) -
                                                 expected));
            }
    }
    o.require(worst < 1e-12, "sine formula to 1e-12");
    o.detail << "A1 q = 1, p = 2..12, max deviation " << worst;
}

void theta_transforms(Outcome& o) {
    const auto t0 = Clock::now();
    const Complex tau{0.0, 1.0};
    const auto classical = check_classical_theta(tau, Complex(0.3, 0.1));
    const auto rs = make_root_system("A1");
    const auto general = check_general_theta(*rs, rs->root_lattice, rs->dual_root_lattice, Rational(10), tau,
                                             CVec::Constant(1, Complex(0.3, 0.1)));
    const double t = seconds_since(t0);
    o.require(classical.residual < 1e-8, "classical theta residual < 1e-8");
    o.require(general.residual < 1e-6, "lattice theta residual < 1e-6");
    o.require(t < 10, "runtime < 10 s");
    o.detail << "classical " << classical.residual << ", A1 root lattice m = 10 " << general.residual << ", " << t
             << " s";
}

void character_modularity(Outcome& o) {
    const auto t0 = Clock::now();
    const auto a1 = check_character_s(level("A1", 5, 2), CVec::Constant(1, Complex(0.13, 0.0)), Complex(0.0, 1.0));
    const double t_a1 = seconds_since(t0);
    o.require(a1.residual < 1e-5, "A1 (5,2) residual < 1e-5");
    o.require(a1.tail_bound < 1e-8, "tail bound < 1e-8");
    o.require(t_a1 < 120, "runtime < 2 min");
    const auto t1 = Clock::now();
    CVec x(2);
    x << Complex(0.11, 0.01), Complex(0.07, -0.02);
    const auto g2 = check_character_s(level("G2", 7, 3), x, Complex(0.0, 1.0));
    o.require(g2.residual < 1e-3, "G2 (7,3) residual < 1e-3");
    o.detail << "A1 (5,2) residual " << a1.residual << " tail " << a1.tail_bound << " N " << a1.truncation_order << " ("
             << t_a1 << " s); G2 (7,3) coprincipal residual " << g2.residual << " (" << seconds_since(t1) << " s)";
}

// True iff t is the Ising table for some labelling of the two non-vacuum labels.
bool is_ising(const FusionTensor& t) {
    if (t.size() != 3) return false;
    for (std::size_t sigma : {1u, 2u}) {
        const std::size_t eps = 3 - sigma;
        std::vector<std::int64_t> want(27, 0);
        auto set = [&](std::size_t a, std::size_t b, std::size_t c) {
            want[(a * 3 + b) * 3 + c] = 1;
            want[(b * 3 + a) * 3 + c] = 1;
        };
        for (std::size_t a = 0; a < 3; ++a) set(0, a, a);
        set(sigma, sigma, 0);
        set(sigma, sigma, eps);
        set(sigma, eps, sigma);
        set(eps, eps, 0);
        if (want == t.n) return true;
    }
    return false;
}

void walgebra(Outcome& o) {
    const auto t0 = Clock::now();
    const auto ly = level("A1", 2, 5);
    const auto is = level("A1", 3, 4);
    o.require(central_charge_w(ly) == frac(-22, 5), "c(A1, (2,5)) = -22/5");
    o.require(central_charge_w(is) == frac(1, 2), "c(A1, (3,4)) = 1/2");
    const auto ly_labels = enumerate_wlabels(ly);
    const auto is_labels = enumerate_wlabels(is);
    o.require(ly_labels.size() == 2, "2 labels at (2,5)");
    o.require(is_labels.size() == 3, "3 labels at (3,4)");
    double rounding = 0;
    bool integral = true;
    FusionTensor ising;
    for (const auto* ld : {&ly, &is}) {
        try {
            const auto t = verlinde(w_smatrix(*ld), 0, 1e-6);
            rounding = std::max(rounding, t.max_rounding_error);
            integral = integral && std::all_of(t.n.begin(), t.n.end(), [](std::int64_t v) { return v >= 0; });
            if (ld == &is) ising = t;
        } catch (const std::exception& e) {
            integral = false;
            o.detail << e.what() << "; ";
        }
    }
    o.require(integral && rounding < 1e-6, "Verlinde tensors are nonnegative integers");
    o.require(is_ising(ising), "Ising fusion rules");
    const double t = seconds_since(t0);
    o.require(t < 5, "runtime < 5 s");
    o.detail << "c = " << to_string(central_charge_w(ly)) << ", " << to_string(central_charge_w(is)) << "; labels "
             << ly_labels.size() << ", " << is_labels.size() << "; rounding " << rounding << ", " << t << " s";
}

void factorization(Outcome& o) {
    const auto t0 = Clock::now();
    const auto r = check_fkw_factorization(level("A1", 3, 5));
    const double t = seconds_since(t0);
    o.require(r.hypothesis_ok, r.message);
    o.require(r.equal, "elementwise equality");
    o.require(t < 30, "runtime < 30 s");
    o.detail << "A1 (3,5): " << r.labels.size() << " labels, " << r.mismatches << " mismatches, " << t << " s";
}

void psi_modularity(Outcome& o) {
    const auto t0 = Clock::now();
    const auto c = check_psi_s(level("A1", 2, 5), Complex(0.0, 1.0));
    o.require(c.residual < 1e-4, "psi residual < 1e-4");
    o.require(c.degenerate_count > 0 && c.degenerate_max < 1e-6, "degenerate |psi| < 1e-6");
    o.detail << "A1 (2,5) residual " << c.residual << ", " << c.degenerate_count << " degenerate labels with max |psi| "
             << c.degenerate_max << ", extrapolation error " << c.extrapolation_error << ", " << seconds_since(t0)
             << " s";
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"root data", root_data},
        {"S-matrix structure", smatrix_structure},
        {"A1 sine formula", sine_formula},
        {"theta transformations", theta_transforms},
        {"character modularity", character_modularity},
        {"W-algebra fusion", walgebra},
        {"fusion factorisation", factorization},
        {"psi modularity", psi_modularity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        if (!o.pass) ++failures;
        std::printf("criterion %zu %s: %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
