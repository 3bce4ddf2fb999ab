#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kacfusion/error.hpp"
#include "kacfusion/json_io.hpp"

using namespace kacfusion;

namespace {

constexpr int kOk = 0;
constexpr int kComputationError = 1;
constexpr int kVerificationFailed = 2;

struct Config {
    std::string type = "A1";
    std::string pq;
    std::string level;
    std::optional<double> tolerance;
    int truncation = 0;
    std::string format = "json";
    std::uint64_t seed = 1;

    std::string tau = "i";
    std::string x;
    std::string z = "0.3+0.1i";
    std::size_t label = 0;
    std::int64_t m = 10;
    std::string lattice = "root";
    bool verify = false;
    bool characters = false;
    double char_tolerance = 1e-5;
};

/// Raised after the report has been written when a residual is above tolerance.
struct VerificationFailure {
    std::string what;
};

LevelData level_from(const Config& c) {
    const auto rs = make_root_system(c.type);
    if (c.pq.empty() == c.level.empty()) throw ValidationError("give exactly one of --pq p,q and --level k");
    if (!c.pq.empty()) {
        const auto [p, q] = parse_pq(c.pq);
        return LevelData::make(rs, p, q);
    }
    const Rational kappa = parse_rational(c.level) + rs->dual_coxeter;
    return LevelData::make(rs, num64(kappa), den64(kappa));
}

SeriesOptions series_from(const Config& c) {
    SeriesOptions o;
    o.order = c.truncation;
    return o;
}

double tol(const Config& c, double fallback) { return c.tolerance.value_or(fallback); }

void emit(const Config& c, const Json& j, const std::string& pretty = {}, const std::string& csv = {},
          const std::string& command = {}) {
    if (c.format == "csv") {
        if (csv.empty()) throw ValidationError("csv output is not available for " + command);
        std::cout << csv;
    } else if (c.format == "pretty" && !pretty.empty()) {
        std::cout << pretty;
    } else {
        std::cout << j.dump(2) << '\n';
    }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

void cmd_rootsys(const Config& c) {
    const auto rs = make_root_system(c.type);
    Json j = root_system_json(*rs);
    FiniteWeight sum = rs->zero();
    int comark_sum = 0;
    for (int i = 0; i < rs->rank; ++i) {
        sum = sum + Rational(rs->marks[i]) * rs->simple_roots[i];
        comark_sum += rs->comarks[i];
    }
    const bool theta_ok = sum == rs->theta;
    const bool hvee_ok = rs->dual_coxeter == 1 + comark_sum;
    j["checks"] = {{"theta_equals_sum_of_marks", theta_ok}, {"dual_coxeter_equals_one_plus_comarks", hvee_ok}};
    std::ostringstream pretty;
    pretty << rs->spec.name() << ": rank " << rs->rank << ", dim " << rs->dimension << ", h " << rs->coxeter
           << ", h^vee " << rs->dual_coxeter << ", lacing " << rs->lacing << '\n'
           << "marks " << j["marks"].dump() << ", comarks " << j["comarks"].dump() << '\n'
           << "positive roots " << rs->positive_roots.size() << ", theta " << to_string(rs->theta.coords) << '\n';
    if (!rs->simply_laced()) pretty << "twisted partner " << twisted_partner_type(rs->spec) << '\n';
    emit(c, j, pretty.str(), {}, "rootsys");
    if (!theta_ok) throw VerificationFailure{"theta = sum a_i alpha_i"};
    if (!hvee_ok) throw VerificationFailure{"h^vee = 1 + sum a_i^vee"};
}

void cmd_enumerate(const Config& c) {
    const auto ld = level_from(c);
    const auto labels = enumerate_admissible(ld);
    Json list = Json::array();
    std::ostringstream csv, pretty;
    csv << "index,lambda_bar,nu,beta,nondegenerate\n";
    pretty << labels.size() << " admissible weights at k = " << to_string(ld.k) << " (" << to_string(ld.variant) << ")\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto& l = labels[i];
        Json e = label_json(l);
        const bool nondeg = is_nondegenerate(*ld.rs, l.lambda.finite);
        e["nondegenerate"] = nondeg;
        list.push_back(std::move(e));
        csv << i << ",\"" << to_string(l.lambda.finite.coords) << "\",\"" << to_string(l.nu.finite.coords) << "\",\""
            << to_string(l.beta.coords) << "\"," << (nondeg ? 1 : 0) << '\n';
        pretty << "  " << i << "  lambda " << to_string(l.lambda.finite.coords) << "  nu "
               << to_string(l.nu.finite.coords) << "  beta " << to_string(l.beta.coords) << '\n';
    }
    Json j;
    j["level"] = level_json(ld);
    j["count"] = labels.size();
    j["labels"] = std::move(list);
    emit(c, j, pretty.str(), csv.str());
}

void cmd_smatrix(const Config& c) {
    const auto ld = level_from(c);
    const auto s = build_smatrix(ld);
    Json j = smatrix_json(s);
    const double t = tol(c, 1e-9);
    std::ostringstream pretty;
    pretty << s.size() << "x" << s.size() << " " << to_string(s.kind) << " S-matrix for " << s.type << " (p, q) = ("
           << s.p << ", " << s.q << "), norm const " << s.norm_const << '\n';
    double max_abs = 0, min_abs = 1e300;
    for (Eigen::Index r = 0; r < s.entries.rows(); ++r)
        for (Eigen::Index col = 0; col < s.entries.cols(); ++col) {
            max_abs = std::max(max_abs, std::abs(s.entries(r, col)));
            min_abs = std::min(min_abs, std::abs(s.entries(r, col)));
        }
    pretty << "labels " << join(s.labels, " ") << '\n' << "max |S| " << max_abs << ", min |S| " << min_abs << '\n';
    std::optional<SL2Report> report;
    if (c.verify) {
        report = verify_sl2_relations(s.entries, tmatrix(ld, s.admissible).entries);
        j["verification"] = sl2_json(*report, t);
        pretty << "symmetry " << report->symmetry << ", unitarity " << report->unitarity << ", S^4 " << report->s4
               << ", (ST)^3 " << report->st3 << ", S^2 permutation " << report->conjugation << " (tolerance " << t
               << "): " << (report->ok(t) ? "ok" : "FAILED") << '\n';
    }
    emit(c, j, pretty.str(), smatrix_csv(s));
    if (report && !report->ok(t)) throw VerificationFailure{"SL(2,Z) relations S = S^T, S S^dagger = 1, S^4 = 1, (ST)^3 = S^2"};
}

void cmd_tmatrix(const Config& c) {
    const auto ld = level_from(c);
    const auto labels = enumerate_admissible(ld);
    std::vector<std::string> names;
    for (const auto& l : labels) names.push_back(label_name(l));
    const auto t = tmatrix(ld, labels);
    std::ostringstream pretty, csv;
    csv << "label,exponent\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        pretty << names[i] << "  h - c/24 = " << to_string(t.exponents[i]) << '\n';
        csv << '"' << names[i] << "\"," << to_string(t.exponents[i]) << '\n';
    }
    Json j = tmatrix_json(t, names);
    j["level"] = level_json(ld);
    emit(c, j, pretty.str(), csv.str());
}

void cmd_verify(const Config& c) {
    const auto ld = level_from(c);
    const auto s = build_smatrix(ld);
    const double t = tol(c, 1e-9);
    const auto report = verify_sl2_relations(s.entries, tmatrix(ld, s.admissible).entries);
    Json j;
    j["level"] = level_json(ld);
    j["size"] = s.size();
    j["sl2"] = sl2_json(report, t);
    std::ostringstream pretty;
    pretty << "SL(2,Z) relations for " << s.size() << " labels: symmetry " << report.symmetry << ", unitarity "
           << report.unitarity << ", S^4 " << report.s4 << ", (ST)^3 " << report.st3 << ": "
           << (report.ok(t) ? "ok" : "FAILED") << '\n';
    std::optional<TransformCheck> chars;
    if (c.characters) {
        const CVec x = random_cartan_point(ld.rs->rank, c.seed);
        const Complex tau = parse_complex(c.tau);
        chars = check_character_s(ld, x, tau, series_from(c));
        Json jc = transform_json(*chars, c.char_tolerance);
        Json xs = Json::array();
        for (Eigen::Index i = 0; i < x.size(); ++i) xs.push_back(to_json(x(i)));
        jc["seed"] = c.seed;
        jc["tau"] = to_json(tau);
        jc["x"] = std::move(xs);
        j["characters"] = std::move(jc);
        pretty << "character S-transformation at seed " << c.seed << ": residual " << chars->residual
               << ", tail bound " << chars->tail_bound << ": " << (chars->residual < c.char_tolerance ? "ok" : "FAILED")
               << '\n';
    }
    emit(c, j, pretty.str(), {}, "verify");
    if (!report.ok(t)) throw VerificationFailure{"SL(2,Z) relations S = S^T, S S^dagger = 1, S^4 = 1, (ST)^3 = S^2"};
    if (chars && chars->residual >= c.char_tolerance)
        throw VerificationFailure{"character S-transformation chi(-1/tau, x/tau) = e^{pi i k (x,x)/tau} sum S chi(tau, x)"};
}

void cmd_chars_eval(const Config& c) {
    const auto ld = level_from(c);
    const auto labels = enumerate_admissible(ld);
    if (c.label >= labels.size())
        throw ValidationError("label index " + std::to_string(c.label) + " out of range (" +
                              std::to_string(labels.size()) + " labels)");
    if (c.x.empty()) throw ValidationError("--x is required");
    CVec v = parse_cvec(c.x);
    const int l = ld.rs->rank;
    EvalPoint pt;
    pt.tau = parse_complex(c.tau);
    if (v.size() == l) {
        pt.x = v;
    } else if (v.size() == l + 1) {
        pt.x = v.head(l);
        pt.t = v(l);
    } else {
        throw ValidationError("--x needs " + std::to_string(l) + " coordinates (or " + std::to_string(l + 1) +
                              " with the delta coordinate last)");
    }
    if (pt.tau.imag() <= 0) throw ValidationError("tau must lie in the upper half plane");
    const auto e = char_chi(ld, labels[c.label], pt, series_from(c));
    Json j = series_json(e);
    j["label"] = label_name(labels[c.label]);
    j["level"] = level_json(ld);
    std::ostringstream pretty;
    pretty << "chi" << label_name(labels[c.label]) << " = " << e.value << "  (tail bound " << e.tail_bound << ", N "
           << e.truncation_order << ")\n";
    emit(c, j, pretty.str(), {}, "chars-eval");
}

void cmd_theta_check(const Config& c) {
    const Complex tau = parse_complex(c.tau);
    const Complex z = parse_complex(c.z);
    if (tau.imag() <= 0) throw ValidationError("tau must lie in the upper half plane");
    const double t_classical = tol(c, 1e-8), t_general = tol(c, 1e-6);
    const auto classical = check_classical_theta(tau, z, series_from(c));
    const auto rs = make_root_system(c.type);
    if (c.lattice != "root" && c.lattice != "coroot") throw ValidationError("--lattice must be root or coroot");
    const bool roots = c.lattice == "root";
    const Lattice& lat = roots ? rs->root_lattice : rs->coroot_lattice;
    const Lattice& dual = roots ? rs->dual_root_lattice : rs->weight_lattice;
    CVec zv = CVec::Constant(rs->rank, z);
    const auto general = check_general_theta(*rs, lat, dual, Rational(c.m), tau, zv, series_from(c));
    Json j;
    j["tau"] = to_json(tau);
    j["z"] = to_json(z);
    j["classical"] = transform_json(classical, t_classical);
    Json g = transform_json(general, t_general);
    g["type"] = rs->spec.name();
    g["lattice"] = c.lattice;
    g["m"] = c.m;
    j["general"] = std::move(g);
    std::ostringstream pretty;
    pretty << "Theta(-1/tau, z/tau) = -i e^{pi i z^2/tau} Theta(tau, z): residual " << classical.residual << " ("
           << (classical.residual < t_classical ? "ok" : "FAILED") << ")\n"
           << "lattice theta transformation, " << rs->spec.name() << " " << c.lattice << " lattice, m = " << c.m
           << ": residual " << general.residual << " (" << (general.residual < t_general ? "ok" : "FAILED") << ")\n";
    emit(c, j, pretty.str(), {}, "theta-check");
    if (classical.residual >= t_classical)
        throw VerificationFailure{"Theta(-1/tau, z/tau) = -i e^{pi i z^2/tau} Theta(tau, z)"};
    if (general.residual >= t_general) throw VerificationFailure{"lattice theta S-transformation"};
}

void cmd_wlabels(const Config& c) {
    const auto ld = level_from(c);
    const auto labels = enumerate_wlabels(ld);
    Json list = Json::array();
    std::ostringstream pretty, csv;
    csv << "index,lambda,lambda_prime\n";
    pretty << labels.size() << " W-algebra modules, c = " << to_string(central_charge_w(ld)) << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        list.push_back(wlabel_json(labels[i]));
        csv << i << ",\"" << to_string(labels[i].lam.coords) << "\",\"" << to_string(labels[i].lamprime.coords) << "\"\n";
        pretty << "  " << i << "  " << to_string(labels[i]) << '\n';
    }
    Json j;
    j["level"] = level_json(ld);
    j["central_charge"] = to_json(central_charge_w(ld));
    j["count"] = labels.size();
    j["count_from_admissible"] = wlabel_count_from_admissible(ld);
    j["labels"] = std::move(list);
    emit(c, j, pretty.str(), csv.str());
    if (labels.size() != wlabel_count_from_admissible(ld))
        throw VerificationFailure{"number of W labels = nondegenerate admissible weights / |W|"};
}

std::string fusion_table(const FusionTensor& t) {
    std::ostringstream out;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a; b < t.size(); ++b) {
            std::vector<std::string> terms;
            for (std::size_t c = 0; c < t.size(); ++c)
                if (t(a, b, c) != 0) terms.push_back((t(a, b, c) == 1 ? "" : std::to_string(t(a, b, c)) + " ") + t.labels[c]);
            out << t.labels[a] << " x " << t.labels[b] << " = " << (terms.empty() ? "0" : join(terms, " + ")) << '\n';
        }
    return out.str();
}

void cmd_fusion(const Config& c) {
    const auto ld = level_from(c);
    const double t = tol(c, 1e-6);
    FusionTensor f;
    try {
        if (ld.q == 1) {
            f = integrable_fusion(ld.rs, ld.p - ld.rs->dual_coxeter);
        } else {
            const auto s = w_smatrix(ld);
            if (s.size() == 0) throw ValidationError("no W-algebra modules at this level (need q >= h)");
            f = verlinde(s, 0, t);
        }
    } catch (const NumericalError& e) {
        throw VerificationFailure{std::string("Verlinde integrality: ") + e.what()};
    }
    const auto axioms = check_fusion_axioms(f, 0);
    Json j = fusion_json(f);
    j["kind"] = ld.q == 1 ? "integrable" : "walgebra";
    j["level"] = level_json(ld);
    j["tolerance"] = t;
    j["axioms"] = {{"vacuum_unit", axioms.vacuum_unit}, {"commutative", axioms.commutative},
                   {"associative", axioms.associative}};
    std::ostringstream pretty;
    pretty << fusion_table(f) << "max rounding error " << f.max_rounding_error << '\n';
    emit(c, j, pretty.str(), fusion_csv(f));
    if (!axioms.ok()) throw VerificationFailure{"fusion ring axioms (unit, commutativity, associativity)"};
}

void cmd_factorize(const Config& c) {
    const auto ld = level_from(c);
    const auto r = check_fkw_factorization(ld);
    Json j = factorization_json(r);
    j["level"] = level_json(ld);
    std::ostringstream pretty;
    if (!r.hypothesis_ok) {
        pretty << r.message << '\n';
    } else {
        pretty << "W fusion rules:\n" << fusion_table(r.w) << "product of integrable fusion rules:\n"
               << fusion_table(r.product) << (r.equal ? "PASS" : "FAIL") << ": " << r.mismatches << " mismatches\n";
    }
    emit(c, j, pretty.str(), {}, "factorize");
    if (!r.hypothesis_ok) throw VerificationFailure{r.message};
    if (!r.equal) throw VerificationFailure{"N^W = N^(p - h^vee) N^(q - h): " + std::to_string(r.mismatches) + " mismatches"};
}

void add_level_options(CLI::App* sub, Config& c) {
    sub->add_option("--type", c.type, "Simple type, e.g. A1, G2, E8")->required();
    sub->add_option("--pq", c.pq, "Level as p,q or p/q with k = p/q - h^vee");
    sub->add_option("--level", c.level, "Level k as a rational");
}

void add_common_options(CLI::App* sub, Config& c) {
    sub->add_option("--tolerance", c.tolerance, "Tolerance for the reported residuals");
    sub->add_option("--N", c.truncation, "Series truncation order (0 chooses it from the tail bound)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--seed", c.seed, "Seed for randomised checks");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Admissible-level S-matrices, characters and W-algebra fusion rules"};
    app.require_subcommand(1);
    Config c;
    std::function<void(const Config&)> action;

    auto add = [&](CLI::App* parent, const std::string& name, const std::string& help, bool level,
                   void (*fn)(const Config&)) {
        CLI::App* sub = parent->add_subcommand(name, help);
        if (level) {
            add_level_options(sub, c);
        } else {
            sub->add_option("--type", c.type, "Simple type, e.g. A1, G2, E8");
        }
        add_common_options(sub, c);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };

    CLI::App* rootsys = add(&app, "rootsys", "Root data of a simple type", false, cmd_rootsys);
    rootsys->get_option("--type")->required();
    add(&app, "enumerate", "Principal or coprincipal admissible weights", true, cmd_enumerate);
    add(&app, "smatrix", "Modular S-matrix of admissible characters", true, cmd_smatrix)
        ->add_flag("--verify", c.verify, "Check the SL(2,Z) relations");
    add(&app, "tmatrix", "Modular T exponents h - c/24", true, cmd_tmatrix);
    CLI::App* verify = add(&app, "verify", "Check the SL(2,Z) relations of S and T", true, cmd_verify);
    verify->add_flag("--characters", c.characters, "Also check the character S-transformation at a random point");
    verify->add_option("--tau", c.tau, "Point in the upper half plane");
    verify->add_option("--char-tolerance", c.char_tolerance, "Tolerance for the character check");

    auto add_eval_options = [&](CLI::App* sub) {
        sub->add_option("--tau", c.tau, "Point in the upper half plane, e.g. i or 0.1+1.2i");
        sub->add_option("--x", c.x, "Cartan point in fundamental-weight coordinates, comma separated")->required();
        sub->add_option("--label", c.label, "Index of the admissible weight (enumeration order)");
    };
    add_eval_options(add(&app, "chars-eval", "Evaluate a normalised admissible character", true, cmd_chars_eval));
    CLI::App* theta = add(&app, "theta-check", "Check the theta function transformation laws", false, cmd_theta_check);
    theta->add_option("--tau", c.tau, "Point in the upper half plane");
    theta->add_option("--z", c.z, "Elliptic variable");
    theta->add_option("--m", c.m, "Level of the lattice theta functions");
    theta->add_option("--lattice", c.lattice, "root or coroot");
    add(&app, "wlabels", "Irreducible modules of the W-algebra", true, cmd_wlabels);
    add(&app, "fusion", "Verlinde fusion rules (W-algebra, or integrable when q = 1)", true, cmd_fusion);
    add(&app, "factorize", "Compare W fusion rules with the product of integrable ones", true, cmd_factorize);

    CLI::App* chars = app.add_subcommand("chars", "Character commands");
    chars->require_subcommand(1);
    add_eval_options(add(chars, "eval", "Same as chars-eval", true, cmd_chars_eval));
    CLI::App* walg = app.add_subcommand("walg", "W-algebra commands");
    walg->require_subcommand(1);
    add(walg, "labels", "Same as wlabels", true, cmd_wlabels);
    add(walg, "fusion", "Same as fusion", true, cmd_fusion);
    add(walg, "factorize", "Same as factorize", true, cmd_factorize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kComputationError;
    }

    try {
        action(c);
    } catch (const VerificationFailure& f) {
        std::cerr << "verification failed: " << f.what << '\n';
        return kVerificationFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kComputationError;
    }
    return kOk;
}
