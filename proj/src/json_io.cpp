#include "kacfusion/json_io.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kacfusion/error.hpp"

namespace kacfusion {

namespace {

double parse_real(std::string_view text, std::string_view whole) {
    const std::string s(text);
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) throw ValidationError("cannot parse complex number '" + std::string(whole) + "'");
    return v;
}

Json matrix_part(const CMatrix& m, bool imag) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json tensor_json(const FusionTensor& t) {
    Json n = Json::array();
    for (std::size_t a = 0; a < t.size(); ++a) {
        Json rows = Json::array();
        for (std::size_t b = 0; b < t.size(); ++b) {
            Json row = Json::array();
            for (std::size_t c = 0; c < t.size(); ++c) row.push_back(t(a, b, c));
            rows.push_back(std::move(row));
        }
        n.push_back(std::move(rows));
    }
    return n;
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

}  // namespace

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const FiniteWeight& w) {
    Json out = Json::array();
    for (const auto& c : w.coords) out.push_back(to_string(c));
    return out;
}

Json to_json(const WeylElement& w) {
    Json rows = Json::array();
    for (int r = 0; r < w.rank(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < w.rank(); ++c) row.push_back(w(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json root_system_json(const FiniteRootSystem& rs) {
    Json j;
    j["type"] = rs.spec.name();
    j["rank"] = rs.rank;
    j["dimension"] = rs.dimension;
    j["coxeter"] = rs.coxeter;
    j["dual_coxeter"] = rs.dual_coxeter;
    j["lacing"] = rs.lacing;
    j["cartan"] = rs.cartan;
    j["marks"] = rs.marks;
    j["comarks"] = rs.comarks;
    j["dual_marks"] = rs.dual_marks;
    Json gram = Json::array();
    for (std::size_t r = 0; r < rs.gram.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < rs.gram.cols(); ++c) row.push_back(to_json(rs.gram(r, c)));
        gram.push_back(std::move(row));
    }
    j["gram"] = std::move(gram);
    j["theta"] = to_json(rs.theta);
    j["rho"] = to_json(rs.rho);
    j["rho_vee"] = to_json(rs.rho_vee);
    j["special_nodes"] = rs.special_nodes;
    j["dual_special_nodes"] = rs.dual_special_nodes;
    j["twisted_partner"] = rs.simply_laced() ? Json(nullptr) : Json(twisted_partner_type(rs.spec));
    Json roots = Json::array();
    for (const auto& a : rs.positive_roots)
        roots.push_back({{"simple_coeffs", a.simple_coeffs}, {"weight", to_json(a.weight)}, {"norm", to_json(a.norm)},
                         {"height", a.height}, {"long", a.is_long}});
    j["positive_roots"] = std::move(roots);
    return j;
}

Json level_json(const LevelData& ld) {
    return {{"type", ld.rs->spec.name()}, {"p", ld.p}, {"q", ld.q}, {"k", to_json(ld.k)},
            {"variant", to_string(ld.variant)}, {"central_charge", to_json(ld.central_charge)}};
}

Json label_json(const AdmissibleLabel& label) {
    return {{"lambda_bar", to_json(label.lambda.finite)},
            {"nu", to_json(label.nu.finite)},
            {"nu_level", to_json(label.nu.k0)},
            {"beta", to_json(label.beta)},
            {"ybar", to_json(label.ybar)}};
}

Json wlabel_json(const WLabel& label) {
    return {{"name", to_string(label)}, {"lambda", to_json(label.lam)}, {"lambda_prime", to_json(label.lamprime)}};
}

Json smatrix_json(const SMatrix& s) {
    Json j;
    j["labels"] = s.labels;
    j["re"] = matrix_part(s.entries, false);
    j["im"] = matrix_part(s.entries, true);
    j["kind"] = to_string(s.kind);
    j["p"] = s.p;
    j["q"] = s.q;
    j["type"] = s.type;
    j["norm_const"] = s.norm_const;
    return j;
}

std::string smatrix_csv(const SMatrix& s) {
    std::ostringstream out;
    out.precision(17);
    out << "i,j,abs,arg\n";
    for (Eigen::Index r = 0; r < s.entries.rows(); ++r)
        for (Eigen::Index c = 0; c < s.entries.cols(); ++c) {
            const Complex z = s.entries(r, c);
            out << r << ',' << c << ',' << std::abs(z) << ',' << std::arg(z) / (2 * std::numbers::pi) << '\n';
        }
    return out.str();
}

Json tmatrix_json(const TMatrix& t, const std::vector<std::string>& labels) {
    Json ex = Json::array();
    for (const auto& e : t.exponents) ex.push_back(to_json(e));
    return {{"labels", labels}, {"exponents", std::move(ex)}};
}

Json sl2_json(const SL2Report& r, double tolerance) {
    return {{"symmetry", r.symmetry},   {"unitarity", r.unitarity}, {"s4", r.s4},
            {"st3", r.st3},             {"conjugation", r.conjugation}, {"conjugation_map", r.conjugation_map},
            {"tolerance", tolerance},   {"ok", r.ok(tolerance)}};
}

Json fusion_json(const FusionTensor& t) {
    return {{"labels", t.labels}, {"N", tensor_json(t)}, {"max_rounding_error", t.max_rounding_error}};
}

std::string fusion_csv(const FusionTensor& t) {
    std::ostringstream out;
    out << "a,b,c,N\n";
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
            for (std::size_t c = 0; c < t.size(); ++c)
                if (t(a, b, c) != 0)
                    out << quoted(t.labels[a]) << ',' << quoted(t.labels[b]) << ',' << quoted(t.labels[c]) << ','
                        << t(a, b, c) << '\n';
    return out.str();
}

Json factorization_json(const FactorizationReport& r) {
    Json j;
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["message"] = r.message;
    j["equal"] = r.equal;
    j["mismatches"] = r.mismatches;
    Json labels = Json::array();
    for (const auto& l : r.labels) labels.push_back(wlabel_json(l));
    j["labels"] = std::move(labels);
    j["w"] = fusion_json(r.w);
    j["product"] = fusion_json(r.product);
    return j;
}

Json series_json(const SeriesEval& e) {
    return {{"value", to_json(e.value)}, {"tail_bound", e.tail_bound}, {"N", e.truncation_order}};
}

Json transform_json(const TransformCheck& c, double tolerance) {
    return {{"residual", c.residual}, {"tail_bound", c.tail_bound}, {"N", c.truncation_order},
            {"tolerance", tolerance}, {"ok", c.residual < tolerance}};
}

Json psi_check_json(const PsiCheck& c, double tolerance, double degenerate_tolerance) {
    return {{"residual", c.residual},
            {"degenerate_max", c.degenerate_max},
            {"degenerate_count", c.degenerate_count},
            {"extrapolation_error", c.extrapolation_error},
            {"tail_bound", c.tail_bound},
            {"tolerance", tolerance},
            {"degenerate_tolerance", degenerate_tolerance},
            {"ok", c.residual < tolerance && c.degenerate_max < degenerate_tolerance}};
}

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s.push_back(ch);
    if (s.empty()) throw ValidationError("empty complex number");
    if (s.back() != 'i' && s.back() != 'I') return {parse_real(s, text), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    if (split == std::string::npos) return {0.0, parse_real(s, text)};
    return {parse_real(std::string_view(s).substr(0, split), text), parse_real(std::string_view(s).substr(split), text)};
}

CVec parse_cvec(std::string_view text) {
    std::vector<Complex> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        parts.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    CVec v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parts[i];
    return v;
}

}  // namespace kacfusion
