#include "kacfusion/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>
#include <set>

#include "kacfusion/error.hpp"

namespace kacfusion {

namespace {

void check_same_rank(const FiniteWeight& a, const FiniteWeight& b) {
    if (a.coords.size() != b.coords.size())
        throw ValidationError("weights of different rank: " + std::to_string(a.coords.size()) + " vs " +
                              std::to_string(b.coords.size()));
}

QVec unit(int n, int i) {
    QVec v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

// Symmetrizing factors d_i with d_i C_ij = d_j C_ji, scaled so max d_i = 1.
QVec symmetrizer(const std::vector<std::vector<int>>& c) {
    const int n = static_cast<int>(c.size());
    QVec d(static_cast<std::size_t>(n), Rational(0));
    d[0] = 1;
    std::queue<int> todo;
    todo.push(0);
    while (!todo.empty()) {
        const int i = todo.front();
        todo.pop();
        for (int j = 0; j < n; ++j) {
            if (j == i || c[i][j] == 0 || d[j] != 0) continue;
            d[j] = d[i] * frac(c[i][j], c[j][i]);
            todo.push(j);
        }
    }
    Rational mx = 0;
    for (const auto& x : d) {
        if (x == 0) throw InternalError("disconnected Dynkin diagram");
        mx = std::max(mx, x);
    }
    for (auto& x : d) x /= mx;
    return d;
}

}  // namespace

RootSystemSpec RootSystemSpec::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 2) throw ValidationError("cannot parse root system type '" + std::string(text) + "'");
    RootSystemSpec spec;
    spec.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    const std::string digits = s.substr(1);
    if (digits.empty() || digits.size() > 2 ||
        !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw ValidationError("cannot parse root system type '" + std::string(text) + "'");
    spec.rank = std::stoi(digits);
    spec.validate();
    return spec;
}

void RootSystemSpec::validate() const {
    bool ok = false;
    switch (family) {
        case 'A': ok = rank >= 1; break;
        case 'B': ok = rank >= 2; break;
        case 'C': ok = rank >= 2; break;
        case 'D': ok = rank >= 4; break;
        case 'E': ok = rank >= 6 && rank <= 8; break;
        case 'F': ok = rank == 4; break;
        case 'G': ok = rank == 2; break;
        default: ok = false;
    }
    if (!ok) throw ValidationError("invalid simple type " + std::string(1, family) + std::to_string(rank));
    if (rank > 8) throw ValidationError("rank " + std::to_string(rank) + " exceeds supported maximum 8");
}

std::string RootSystemSpec::name() const { return std::string(1, family) + std::to_string(rank); }

FiniteWeight operator+(const FiniteWeight& a, const FiniteWeight& b) {
    check_same_rank(a, b);
    return {a.coords + b.coords};
}
FiniteWeight operator-(const FiniteWeight& a, const FiniteWeight& b) {
    check_same_rank(a, b);
    return {a.coords - b.coords};
}
FiniteWeight operator-(const FiniteWeight& a) { return {-a.coords}; }
FiniteWeight operator*(const Rational& s, const FiniteWeight& a) { return {s * a.coords}; }

AffineWeight operator+(const AffineWeight& a, const AffineWeight& b) {
    return {a.finite + b.finite, a.k0 + b.k0, a.d0 + b.d0};
}
AffineWeight operator-(const AffineWeight& a, const AffineWeight& b) {
    return {a.finite - b.finite, a.k0 - b.k0, a.d0 - b.d0};
}
AffineWeight operator*(const Rational& s, const AffineWeight& a) { return {s * a.finite, s * a.k0, s * a.d0}; }

AffineWeight affine_coroot(const FiniteWeight& finite_coroot, const Rational& n) { return {finite_coroot, 0, n}; }

Lattice::Lattice(std::string name, QMat generators)
    : name_(std::move(name)), generators_(std::move(generators)) {
    if (generators_.rows() != generators_.cols()) throw ValidationError("lattice generators must be square");
    try {
        inverse_ = inverse(generators_);
    } catch (const std::domain_error&) {
        throw ValidationError("lattice generators of " + name_ + " are degenerate");
    }
}

QVec Lattice::coordinates(const QVec& v) const {
    if (v.size() != generators_.cols()) throw ValidationError("lattice membership: dimension mismatch");
    return solve_row_combination(inverse_, v);
}

bool Lattice::contains(const QVec& v) const { return is_integral(coordinates(v)); }

bool Lattice::contains(const Lattice& sub) const {
    for (std::size_t r = 0; r < sub.generators_.rows(); ++r)
        if (!contains(sub.generators_.row(r))) return false;
    return true;
}

Rational Lattice::covolume() const { return abs(determinant(generators_)); }

Lattice Lattice::scaled(const Rational& factor) const {
    QMat g = generators_;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) *= factor;
    return Lattice(to_string(factor) + "*" + name_, g);
}

std::int64_t lattice_index(const Lattice& big, const Lattice& sub) {
    if (!big.contains(sub)) throw ValidationError("lattice " + sub.name() + " is not contained in " + big.name());
    const Rational idx = sub.covolume() / big.covolume();
    if (!is_integer(idx)) throw InternalError("non-integral lattice index");
    return num64(idx);
}

std::vector<std::vector<int>> cartan_matrix(const RootSystemSpec& spec) {
    spec.validate();
    const int n = spec.rank;
    std::vector<std::vector<int>> c(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    auto link = [&](int i, int j) {  // simply laced edge, 1-based
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    switch (spec.family) {
        case 'A':
            for (int i = 1; i < n; ++i) link(i, i + 1);
            break;
        case 'B':
            for (int i = 1; i < n - 1; ++i) link(i, i + 1);
            c[n - 2][n - 1] = -1;
            c[n - 1][n - 2] = -2;
            break;
        case 'C':
            for (int i = 1; i < n - 1; ++i) link(i, i + 1);
            c[n - 2][n - 1] = -2;
            c[n - 1][n - 2] = -1;
            break;
        case 'D':
            for (int i = 1; i < n - 1; ++i) link(i, i + 1);
            link(n - 2, n);
            break;
        case 'E':
            link(1, 3);
            link(2, 4);
            for (int i = 3; i < n; ++i) link(i, i + 1);
            break;
        case 'F':
            link(1, 2);
            c[1][2] = -1;
            c[2][1] = -2;
            link(3, 4);
            break;
        case 'G':
            c[0][1] = -1;
            c[1][0] = -3;
            break;
        default: throw ValidationError("unknown family");
    }
    return c;
}

FiniteWeight FiniteRootSystem::fundamental_weight(int i) const {
    if (i < 0 || i >= rank) throw ValidationError("fundamental weight index out of range");
    return {unit(rank, i)};
}

FiniteWeight FiniteRootSystem::zero() const { return {QVec(static_cast<std::size_t>(rank))}; }

FiniteRootSystem build_root_system(const RootSystemSpec& spec) {
    spec.validate();
    FiniteRootSystem rs;
    rs.spec = spec;
    rs.rank = spec.rank;
    const int n = spec.rank;
    rs.cartan = cartan_matrix(spec);
    rs.half_norms = symmetrizer(rs.cartan);

    // Gram of fundamental weights: (Lambda_i, Lambda_j) = (C^{-1})_{ij} d_i.
    QMat c(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = rs.cartan[i][j];
    const QMat cinv = inverse(c);
    rs.gram = QMat(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rs.gram(i, j) = cinv(i, j) * rs.half_norms[i];

    for (int j = 0; j < n; ++j) {
        QVec a(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) a[i] = rs.cartan[i][j];
        rs.simple_roots.push_back({a});
        rs.simple_coroots.push_back({Rational(1) / rs.half_norms[j] * a});
    }

    // Positive roots by root strings, processed in order of height.
    auto to_weight = [&](const std::vector<int>& b) {
        QVec w(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) w[k] += b[j] * rs.cartan[k][j];
        return w;
    };
    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> order;
    for (int i = 0; i < n; ++i) {
        std::vector<int> b(static_cast<std::size_t>(n), 0);
        b[i] = 1;
        known.insert(b);
        order.push_back(b);
    }
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const std::vector<int> beta = order[idx];
        const QVec w = to_weight(beta);
        for (int i = 0; i < n; ++i) {
            int down = 0;
            std::vector<int> probe = beta;
            while (true) {
                probe[i] -= 1;
                if (!known.count(probe)) break;
                ++down;
            }
            const std::int64_t up = down - num64(w[i]);
            if (up <= 0) continue;
            std::vector<int> next = beta;
            next[i] += 1;
            if (known.insert(next).second) order.push_back(next);
        }
    }
    for (const auto& b : order) {
        Root r;
        r.simple_coeffs = b;
        r.weight = {to_weight(b)};
        r.height = 0;
        for (int x : b) r.height += x;
        rs.positive_roots.push_back(r);
    }
    for (auto& r : rs.positive_roots) {
        r.norm = inner(rs, r.weight, r.weight);
        r.is_long = (r.norm == 2);
    }
    std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [](const Root& a, const Root& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.simple_coeffs < b.simple_coeffs;
    });

    const Root& top = rs.positive_roots.back();
    for (const auto& r : rs.positive_roots)
        if (r.height == top.height && r.simple_coeffs != top.simple_coeffs)
            throw InternalError("highest root not unique");
    rs.theta = top.weight;
    rs.marks = top.simple_coeffs;

    const Root* top_short = &top;
    for (const auto& r : rs.positive_roots)
        if (!r.is_long && (top_short->is_long || r.height > top_short->height)) top_short = &r;
    rs.theta_short = top_short->weight;

    Rational min_d = 1;
    for (const auto& d : rs.half_norms) min_d = std::min(min_d, d);
    if (!is_integer(Rational(1) / min_d)) throw InternalError("non-integral lacing number");
    rs.lacing = static_cast<int>(num64(Rational(1) / min_d));

    rs.comarks.resize(static_cast<std::size_t>(n));
    rs.dual_marks.resize(static_cast<std::size_t>(n));
    const Rational d_short = top_short->norm / 2;
    int sum_co = 0, sum_marks = 0, sum_dual = 0;
    for (int i = 0; i < n; ++i) {
        const Rational co = rs.marks[i] * rs.half_norms[i];
        const Rational dm = top_short->simple_coeffs[i] * rs.half_norms[i] / d_short;
        if (!is_integer(co) || !is_integer(dm)) throw InternalError("non-integral comarks");
        rs.comarks[i] = static_cast<int>(num64(co));
        rs.dual_marks[i] = static_cast<int>(num64(dm));
        sum_co += rs.comarks[i];
        sum_marks += rs.marks[i];
        sum_dual += rs.dual_marks[i];
    }
    rs.dual_coxeter = 1 + sum_co;
    rs.coxeter = 1 + sum_marks;
    if (1 + sum_dual != rs.coxeter) throw InternalError("dual marks do not sum to h - 1");
    rs.theta_coroot_short = rs.theta;
    rs.theta_coroot_long = coroot_of(rs, rs.theta_short);

    rs.dimension = n + 2 * static_cast<int>(rs.positive_roots.size());
    rs.rho = {QVec(static_cast<std::size_t>(n), Rational(1))};
    rs.rho_vee = rs.zero();
    for (int i = 0; i < n; ++i) rs.rho_vee.coords[i] = Rational(1) / rs.half_norms[i];

    for (int i = 0; i < n; ++i) {
        if (rs.marks[i] == 1) rs.special_nodes.push_back(i);
        if (rs.dual_marks[i] == 1) rs.dual_special_nodes.push_back(i);
    }

    std::vector<QVec> q_rows, qv_rows, p_rows, qs_rows;
    for (int j = 0; j < n; ++j) {
        q_rows.push_back(rs.simple_roots[j].coords);
        qv_rows.push_back(rs.simple_coroots[j].coords);
        p_rows.push_back(unit(n, j));
        qs_rows.push_back(Rational(1) / rs.half_norms[j] * unit(n, j));
    }
    rs.root_lattice = Lattice("Q", QMat::from_rows(q_rows));
    rs.coroot_lattice = Lattice("Q^vee", QMat::from_rows(qv_rows));
    rs.weight_lattice = Lattice("P", QMat::from_rows(p_rows));
    rs.dual_root_lattice = Lattice("Q^*", QMat::from_rows(qs_rows));
    return rs;
}

RootSystemPtr make_root_system(const RootSystemSpec& spec) {
    return std::make_shared<const FiniteRootSystem>(build_root_system(spec));
}

RootSystemPtr make_root_system(std::string_view type) { return make_root_system(RootSystemSpec::parse(type)); }

Rational inner(const FiniteRootSystem& rs, const FiniteWeight& a, const FiniteWeight& b) {
    check_same_rank(a, b);
    if (a.coords.size() != static_cast<std::size_t>(rs.rank))
        throw ValidationError("weight rank does not match root system " + rs.spec.name());
    Rational s = 0;
    for (int i = 0; i < rs.rank; ++i) {
        if (a.coords[i] == 0) continue;
        for (int j = 0; j < rs.rank; ++j)
            if (b.coords[j] != 0) s += a.coords[i] * rs.gram(i, j) * b.coords[j];
    }
    return s;
}

Rational inner(const FiniteRootSystem& rs, const AffineWeight& a, const AffineWeight& b) {
    return inner(rs, a.finite, b.finite) + a.k0 * b.d0 + a.d0 * b.k0;
}

Rational norm(const FiniteRootSystem& rs, const FiniteWeight& a) { return inner(rs, a, a); }

Rational pairing(const FiniteRootSystem& rs, const AffineWeight& lam, const AffineWeight& coroot) {
    return inner(rs, lam, coroot);
}

Rational real_coroot_pairing(const FiniteRootSystem& rs, const AffineWeight& lam, const AffineWeight& coroot) {
    if (coroot.k0 != 0) throw ValidationError("coroot has a d-component");
    if (norm(rs, coroot.finite) == 0) throw ValidationError("zero-norm element passed as a real coroot");
    return inner(rs, lam, coroot);
}

FiniteWeight coroot_of(const FiniteRootSystem& rs, const FiniteWeight& root) {
    const Rational n = norm(rs, root);
    if (n == 0) throw ValidationError("zero-norm element has no coroot");
    return (Rational(2) / n) * root;
}

std::vector<AffineWeight> affine_fundamental_weights(const FiniteRootSystem& rs) {
    std::vector<AffineWeight> out;
    out.push_back({rs.zero(), 1, 0});
    for (int i = 0; i < rs.rank; ++i) out.push_back({rs.fundamental_weight(i), rs.comarks[i], 0});
    return out;
}

AffineWeight affine_rho(const FiniteRootSystem& rs) { return {rs.rho, rs.dual_coxeter, 0}; }

std::vector<AffineWeight> affine_simple_coroots(const FiniteRootSystem& rs) {
    std::vector<AffineWeight> out;
    out.push_back(affine_coroot(-rs.theta_coroot_short, 1));
    for (const auto& c : rs.simple_coroots) out.push_back(affine_coroot(c, 0));
    return out;
}

std::string twisted_partner_type(const RootSystemSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case 'B': return "D" + std::to_string(spec.rank + 1) + "^(2)";
        case 'C': return "A" + std::to_string(2 * spec.rank - 1) + "^(2)";
        case 'F': return "E6^(2)";
        case 'G': return "D4^(3)";
        default: throw ValidationError("type " + spec.name() + " is simply laced and has no twisted partner");
    }
}

TwistedAffineDatum langlands_dual_datum(const RootSystemPtr& rs) {
    if (!rs) throw ValidationError("null root system");
    if (rs->lacing == 1) throw ValidationError("type " + rs->spec.name() + " is simply laced; no twisted datum");
    TwistedAffineDatum t;
    t.base = rs;
    t.twisted_type = twisted_partner_type(rs->spec);
    t.circ_rho_level = rs->coxeter;
    t.coroot_basis.push_back(affine_coroot(-rs->theta_coroot_long, 1));
    for (const auto& c : rs->simple_coroots) t.coroot_basis.push_back(affine_coroot(c, 0));
    t.fundamental_weights.push_back({rs->zero(), 1, 0});
    for (int i = 0; i < rs->rank; ++i) t.fundamental_weights.push_back({rs->fundamental_weight(i), rs->dual_marks[i], 0});
    t.dual_special_nodes = rs->dual_special_nodes;
    return t;
}

}  // namespace kacfusion
