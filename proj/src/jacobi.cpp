#include "jetvar/jacobi.hpp"

#include <functional>
#include <sstream>

#include "jetvar/metric.hpp"

namespace jv {

EHJacobiCoefficients eh_jacobi_coefficients(const PolySection& g, const std::vector<double>& x, EHJacobiForm form) {
    int n = g.n(), s2 = sym2_count(n);
    JetPoint p = g.jet(x, 2);
    auto md = metric_data(p);
    auto cd = curvature(p);
    const auto& gi = md.ginv;
    auto G = [&](int i, int j, int k) { return cd.gamma.up[(i * n + j) * n + k]; };
    auto gl = [&](int a, int b) { return md.g[a * n + b]; };
    auto gu = [&](int a, int b) { return gi[a * n + b]; };
    auto dg = [&](int a, int b, int k) { return p.Y1(sym2(n, a, b), k); };
    auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    // Q^b = g^{sb} Gamma^l_{ls} - g^{ls} d_l g_{s be} g^{b be}
    std::vector<double> Qv(n, 0.0);
    for (int b = 0; b < n; ++b) {
        double v = 0.0;
        for (int s = 0; s < n; ++s)
            for (int l = 0; l < n; ++l) {
                v += gu(s, b) * G(l, l, s);
                for (int be = 0; be < n; ++be) v -= gu(l, s) * dg(s, be, l) * gu(b, be);
            }
        Qv[b] = v;
    }
    EHJacobiCoefficients out;
    out.n = n;
    out.A.assign(s2 * n * n * n * n, 0.0);
    out.B.assign(s2 * n * n * n, 0.0);
    out.C.assign(s2 * n * n, 0.0);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = mu; nu < n; ++nu) {
            int e = sym2(n, mu, nu);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    int eab = (e * n + a) * n + b;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            out.A[eab * n * n + i * n + j] = eh_jacobi_principal(gi, n, mu, nu, a, b, i, j);
                    for (int i = 0; i < n; ++i) {
                        double v = 0.5 * gu(a, b) * G(i, mu, nu) - gu(i, b) * G(a, mu, nu);
                        v += 0.5 * (d(a, nu) * d(i, mu) + d(a, mu) * d(i, nu)) * Qv[b];
                        v -= 0.5 * d(a, mu) * d(b, nu) * Qv[i];
                        for (int l = 0; l < n; ++l) {
                            v += 0.5 * d(i, nu) * gu(l, a) * G(b, mu, l);
                            v += 0.5 * d(i, mu) * gu(l, a) * G(b, l, nu);
                            v += 0.5 * d(b, nu) * (gu(l, i) * G(a, mu, l) - gu(l, a) * G(i, mu, l));
                            v += 0.5 * d(b, mu) * (gu(l, i) * G(a, nu, l) - gu(l, a) * G(i, nu, l));
                        }
                        out.B[eab * n + i] = v;
                    }
                    double c = 0.0;
                    if (form == EHJacobiForm::Linearized) {
                        for (int l = 0; l < n; ++l) {
                            c += gu(l, b) * cd.R(a, mu, nu, l);
                            for (int r = 0; r < n; ++r)
                                c += gu(l, r) * (G(b, l, r) * G(a, mu, nu) - G(b, nu, r) * G(a, l, mu));
                        }
                        out.C[eab] = c;
                        continue;
                    }
                    for (int l = 0; l < n; ++l) {
                        double w = cd.R(a, mu, nu, l);
                        for (int r = 0; r < n; ++r)
                            for (int t = 0; t < n; ++t)
                                for (int s = 0; s < n; ++s)
                                    w += gu(a, r) * gl(t, s) * (G(t, r, nu) * G(s, mu, l) - G(t, r, l) * G(s, mu, nu));
                        for (int s = 0; s < n; ++s)
                            w += G(a, nu, s) * G(s, mu, l) - G(a, l, s) * G(s, mu, nu) - G(s, s, l) * G(a, mu, nu) +
                                 G(a, mu, s) * G(s, nu, l);
                        c += gu(l, b) * w;
                    }
                    out.C[eab] = c;
                }
        }
    return out;
}

std::vector<double> eh_jacobi_residual(const PolySection& g, const PolySection& V, const std::vector<double>& x,
                                       EHJacobiForm form) {
    int n = g.n(), s2 = sym2_count(n);
    if (V.n() != n || V.m() != s2) throw std::invalid_argument("eh_jacobi_residual: field shape mismatch");
    auto co = eh_jacobi_coefficients(g, x, form);
    JetPoint v = V.jet(x, 2);
    std::vector<double> r(s2, 0.0);
    for (int e = 0; e < s2; ++e)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int eab = (e * n + a) * n + b, ab = sym2(n, a, b);
                double acc = co.C[eab] * v.y[ab];
                for (int i = 0; i < n; ++i) {
                    acc += co.B[eab * n + i] * v.Y1(ab, i);
                    for (int j = 0; j < n; ++j) acc += co.A[eab * n * n + i * n + j] * v.Y2(ab, i, j);
                }
                r[e] += acc;
            }
    return r;
}

std::vector<double> eh_from_generic(const std::vector<double>& generic, const PolySection& g, const std::vector<double>& x) {
    int n = g.n(), s2 = sym2_count(n);
    if (n < 3) throw std::invalid_argument("eh_from_generic: the trace reversal needs n >= 3");
    auto md = metric_data(g.jet(x, 0));
    std::vector<double> T(n * n), G(n * n), out(s2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) T[a * n + b] = -generic[sym2(n, std::min(a, b), std::max(a, b))] / ((a == b ? 1.0 : 2.0) * md.rho);
    double trT = 0.0;
    for (int k = 0; k < n * n; ++k) trT += md.g[k] * T[k];
    double trG = trT / (1.0 - 0.5 * n);
    for (int k = 0; k < n * n; ++k) G[k] = T[k] + 0.5 * md.ginv[k] * trG;
    for (int mu = 0; mu < n; ++mu)
        for (int nu = mu; nu < n; ++nu) {
            double s = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) s += md.g[mu * n + a] * md.g[nu * n + b] * G[a * n + b];
            out[sym2(n, mu, nu)] = s;
        }
    return out;
}

// ---------------------------------------------------------------- operator matrix

DiffOpMatrix::DiffOpMatrix(int n_) : n(n_), N(sym2_count(n_)), c(static_cast<size_t>(N) * N * N) {}

Q& DiffOpMatrix::at(int A, int B, int i, int j) {
    if (i > j) std::swap(i, j);
    return c[(static_cast<size_t>(A) * N + B) * N + sym2(n, i, j)];
}
const Q& DiffOpMatrix::at(int A, int B, int i, int j) const { return const_cast<DiffOpMatrix*>(this)->at(A, B, i, j); }

std::string DiffOpMatrix::entry_str(int A, int B) const {
    std::string s;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Q& q = at(A, B, i, j);
            if (q == 0) continue;
            Q mag = abs(q);
            if (!s.empty()) s += q < 0 ? " - " : " + ";
            else if (q < 0) s += "-";
            if (mag != 1) s += mag.get_str() + " ";
            if (i == j) s += "D" + std::to_string(i + 1) + "^2";
            else s += "D" + std::to_string(i + 1) + " D" + std::to_string(j + 1);
        }
    return s.empty() ? "0" : s;
}

bool DiffOpMatrix::entry_equal(const DiffOpMatrix& o, int A, int B) const {
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (at(A, B, i, j) != o.at(A, B, i, j)) return false;
    return true;
}

int DiffOpMatrix::max_degree() const {
    for (const auto& q : c)
        if (q != 0) return 2;
    return 0;
}

DiffOpMatrix flat_operator_matrix(const std::vector<int>& eps) {
    int n = static_cast<int>(eps.size());
    DiffOpMatrix op(n);
    std::vector<Q> gi(n * n, Q(0));
    for (int i = 0; i < n; ++i) gi[i * n + i] = Q(eps[i]);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = mu; nu < n; ++nu)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            Q v = eh_jacobi_principal(gi, n, mu, nu, a, b, i, j);
                            if (v != 0) op.at(sym2(n, mu, nu), sym2(n, a, b), i, j) += v;
                        }
    return op;
}

std::vector<Q> parse_quadratic_symbol(int n, const std::string& text) {
    std::vector<Q> out(sym2_count(n), Q(0));
    std::istringstream in(text);
    std::string tok;
    Q sign = 1, coef = 1;
    std::vector<int> ds;
    bool any = false;
    auto flush = [&]() {
        if (ds.empty()) {
            if (any) throw std::invalid_argument("quadratic symbol: term without derivatives in '" + text + "'");
            return;
        }
        if (ds.size() != 2) throw std::invalid_argument("quadratic symbol: term of wrong order in '" + text + "'");
        out[sym2(n, std::min(ds[0], ds[1]), std::max(ds[0], ds[1]))] += sign * coef;
        sign = 1;
        coef = 1;
        ds.clear();
        any = false;
    };
    while (in >> tok) {
        if (tok == "+" || tok == "-") {
            flush();
            sign = tok == "-" ? -1 : 1;
            continue;
        }
        if (tok == "0") continue;
        if (tok[0] == 'D') {
            int i = std::stoi(tok.substr(1)) - 1;
            if (i < 0 || i >= n) throw std::invalid_argument("quadratic symbol: bad index in '" + text + "'");
            ds.push_back(i);
            if (tok.find("^2") != std::string::npos) ds.push_back(i);
            any = true;
            continue;
        }
        if (tok[0] == '-') {
            sign = -sign;
            tok = tok.substr(1);
        }
        coef *= Q(tok);
        any = true;
    }
    flush();
    return out;
}

DiffOpMatrix printed_flat_operator() {
    static const char* rows[10][10] = {
        {"-1/2 D2^2 - 1/2 D3^2 - 1/2 D4^2", "D1 D2", "D1 D3", "D1 D4", "-1/2 D1^2", "0", "0", "-1/2 D1^2", "0",
         "-1/2 D1^2"},
        {"0", "-1/2 D3^2 - 1/2 D4^2", "1/2 D2 D3", "1/2 D2 D4", "0", "1/2 D1 D3", "1/2 D1 D4", "-1/2 D1 D2", "0",
         "-1/2 D1 D2"},
        {"0", "1/2 D2 D3", "-1/2 D2^2 - 1/2 D4^2", "1/2 D3 D4", "-1/2 D1 D3", "1/2 D1 D2", "0", "0", "1/2 D1 D4",
         "-1/2 D1 D3"},
        {"0", "1/2 D2 D4", "1/2 D3 D4", "-1/2 D2^2 - 1/2 D3^2", "-1/2 D1 D4", "0", "1/2 D1 D2", "-1/2 D1 D4",
         "1/2 D1 D3", "0"},
        {"1/2 D2 D2", "- D1 D2", "0", "0", "1/2 D1^2 - 1/2 D3^2 - 1/2 D4^2", "D2 D3", "D2 D4", "-1/2 D2 D2", "0",
         "-1/2 D2 D2"},
        {"1/2 D2 D3", "-1/2 D1 D3", "-1/2 D1 D2", "0", "0", "1/2 D1^2 - 1/2 D4^2", "1/2 D3 D4", "0", "1/2 D2 D4",
         "-1/2 D2 D3"},
        {"1/2 D2 D4", "-1/2 D1 D4", "0", "-1/2 D1 D2", "0", "1/2 D3 D4", "1/2 D1^2 - 1/2 D3^2", "-1/2 D2 D4",
         "1/2 D2 D3", "0"},
        {"1/2 D3^2", "0", "- D1 D3", "0", "-1/2 D3^2", "D2 D3", "0", "1/2 D1^2 - 1/2 D2^2", "D3 D4", "-1/2 D3^2"},
        {"1/2 D3 D4", "0", "-1/2 D1 D4", "-1/2 D1 D3", "-1/2 D3 D4", "1/2 D2 D4", "1/2 D2 D3", "0",
         "1/2 D1^2 - 1/2 D2^2", "0"},
        {"1/2 D4^2", "0", "0", "- D1 D4", "-1/2 D4^2", "0", "D2 D4", "-1/2 D4^2", "D3 D4",
         "1/2 D1^2 - 1/2 D2^2 - 1/2 D3^2"},
    };
    DiffOpMatrix op(4);
    for (int A = 0; A < 10; ++A)
        for (int B = 0; B < 10; ++B) {
            auto v = parse_quadratic_symbol(4, rows[A][B]);
            for (int k = 0; k < 10; ++k) op.c[(static_cast<size_t>(A) * 10 + B) * 10 + k] = v[k];
        }
    return op;
}

// ---------------------------------------------------------------- polynomial solutions

std::vector<std::vector<int>> homogeneous_monomials(int n, int r) {
    std::vector<std::vector<int>> out;
    if (r < 0) return out;
    std::vector<int> e(n, 0);
    // graded lexicographic enumeration, x1 first
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    if (n == 0) return out;
    rec(0, r);
    return out;
}

namespace {

int mono_index(const std::vector<std::vector<int>>& monos, const std::vector<int>& e) {
    for (size_t k = 0; k < monos.size(); ++k)
        if (monos[k] == e) return static_cast<int>(k);
    return -1;
}

}  // namespace

Q QPolyVec::coeff(int A, const std::vector<int>& e) const {
    int k = mono_index(monos, e);
    return k < 0 ? Q(0) : c[static_cast<size_t>(A) * monos.size() + k];
}

std::string QPolyVec::str() const {
    std::string s;
    int M = static_cast<int>(monos.size());
    for (int A = 0; A < N; ++A)
        for (int k = 0; k < M; ++k) {
            const Q& q = c[A * M + k];
            if (q == 0) continue;
            if (!s.empty()) s += q < 0 ? " - " : " + ";
            else if (q < 0) s += "-";
            Q mag = abs(q);
            std::string mono;
            for (int i = 0; i < n; ++i)
                for (int t = 0; t < monos[k][i]; ++t) mono += (mono.empty() ? "" : " ") + std::string("x") + std::to_string(i + 1);
            if (mag != 1 || mono.empty()) s += mag.get_str() + (mono.empty() ? "" : " ");
            s += mono + " E" + std::to_string(A + 1);
        }
    return s.empty() ? "0" : s;
}

QPolyVec apply_operator(const DiffOpMatrix& op, const QPolyVec& U) {
    QPolyVec out;
    out.n = U.n;
    out.N = U.N;
    out.degree = std::max(U.degree - 2, 0);
    int n = U.n;
    int M = static_cast<int>(U.monos.size());
    if (U.degree < 2) {
        out.monos = homogeneous_monomials(n, 0);
        out.c.assign(out.N, Q(0));
        return out;
    }
    out.monos = homogeneous_monomials(n, U.degree - 2);
    int Mo = static_cast<int>(out.monos.size());
    out.c.assign(static_cast<size_t>(out.N) * Mo, Q(0));
    for (int A = 0; A < U.N; ++A)
        for (int B = 0; B < U.N; ++B)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    const Q& q = op.at(A, B, i, j);
                    if (q == 0) continue;
                    for (int k = 0; k < M; ++k) {
                        const Q& u = U.c[B * M + k];
                        if (u == 0) continue;
                        std::vector<int> e = U.monos[k];
                        Q f = e[i];
                        if (f == 0) continue;
                        --e[i];
                        f *= e[j];
                        if (f == 0) continue;
                        --e[j];
                        out.c[A * Mo + mono_index(out.monos, e)] += q * u * f;
                    }
                }
    return out;
}

bool is_zero(const QPolyVec& U) {
    for (const auto& q : U.c)
        if (q != 0) return false;
    return true;
}

SolutionSpace polynomial_solution_space(const DiffOpMatrix& op, int r) {
    SolutionSpace out;
    out.degree = r;
    int n = op.n, N = op.N;
    auto monos = homogeneous_monomials(n, r);
    int M = static_cast<int>(monos.size());
    out.unknowns = N * M;
    QPolyVec probe;
    probe.n = n;
    probe.N = N;
    probe.degree = r;
    probe.monos = monos;
    std::vector<std::vector<Q>> cols;
    for (int u = 0; u < out.unknowns; ++u) {
        probe.c.assign(out.unknowns, Q(0));
        probe.c[u] = 1;
        cols.push_back(apply_operator(op, probe).c);
    }
    int rows = r >= 2 ? static_cast<int>(cols[0].size()) : 0;
    QMatrix sys(rows, out.unknowns);
    for (int u = 0; u < out.unknowns; ++u)
        for (int q = 0; q < rows; ++q) sys(q, u) = cols[u][q];
    out.constraints_rank = rank(sys);
    auto ns = nullspace(sys);
    out.dimension = static_cast<int>(ns.size());
    for (auto& v : ns) {
        QPolyVec b = probe;
        b.c = std::move(v);
        out.basis.push_back(std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------- printed quadratic relations

namespace {

std::vector<LambdaTerm> parse_relation(const std::string& text) {
    // "l1_22 = l2_12 - l5_11 + 2 l6_44": lhs moved to the right with a minus sign.
    std::vector<LambdaTerm> out;
    std::istringstream in(text);
    std::string tok;
    Q sign = 1, coef = 1;
    bool lhs = true;
    while (in >> tok) {
        if (tok == "=") {
            lhs = false;
            continue;
        }
        if (tok == "+" || tok == "-") {
            sign = tok == "-" ? -1 : 1;
            continue;
        }
        if (tok[0] == 'l') {
            auto us = tok.find('_');
            int A = std::stoi(tok.substr(1, us - 1));
            int j = tok[us + 1] - '0', k = tok[us + 2] - '0';
            Q c = sign * coef;
            out.push_back({lhs ? Q(-c) : c, A, j, k});
            sign = 1;
            coef = 1;
            continue;
        }
        coef = Q(tok);
    }
    return out;
}

}  // namespace

std::vector<std::vector<LambdaTerm>> printed_eq_lambdas() {
    static const char* rel[10] = {
        "l1_22 = l2_12 - l5_11 + l5_33 + l5_44 - l6_23 - l7_24 + l8_22 + l10_22",
        "l1_23 = l2_13 + l3_12 - 2 l6_11 + 2 l6_44 - l7_34 - l9_24 + l10_23",
        "l1_24 = l2_14 + l4_12 - l6_34 - 2 l7_11 + 2 l7_33 + l8_24 - l9_23",
        "l1_33 = l3_13 + l5_33 - l6_23 - l8_11 + l8_22 - l9_34 + l10_33",
        "l1_34 = l3_14 + l4_13 + l5_34 - l6_24 - l7_23 - 2 l9_11 + 2 l9_22",
        "l1_44 = l4_14 - l5_44 + l7_24 - 2 l5_33 + 2 l6_23 - 2 l8_22 - l10_22 + l9_34 - l10_33 - l10_11",
        "l2_23 = 2 l3_22 + 2 l3_44 - l4_34 + l5_13 - l6_12 - l9_14 + l10_13",
        "l2_24 = - l3_34 + 2 l4_22 + 2 l4_33 + l5_14 - l7_12 + l8_14 - l9_13",
        "l2_33 = - l2_44 + l3_23 + l4_24 + l6_13 + l7_14 - l8_12 - l10_12",
        "l8_44 = - 2 l5_33 - 2 l5_44 + 2 l6_23 + 2 l7_24 - 2 l8_22 - 2 l10_22 + 2 l9_34 - 2 l10_33",
    };
    std::vector<std::vector<LambdaTerm>> out;
    for (const char* r : rel) out.push_back(parse_relation(r));
    return out;
}

std::vector<Q> eq_lambdas_values(const QPolyVec& U) {
    if (U.degree != 2 || U.n != 4) throw std::invalid_argument("eq_lambdas_values: quadratic field in 4 variables required");
    std::vector<Q> out;
    for (const auto& rel : printed_eq_lambdas()) {
        Q v = 0;
        for (const auto& t : rel) {
            std::vector<int> e(4, 0);
            ++e[t.j - 1];
            ++e[t.k - 1];
            v += t.coef * U.coeff(t.A - 1, e);
        }
        out.push_back(v);
    }
    return out;
}

QPolyVec derivative_shift(const QPolyVec& U, const std::vector<int>& I) {
    int order = 0;
    for (int v : I) order += v;
    if (static_cast<int>(I.size()) != U.n || order != U.degree - 2)
        throw std::invalid_argument("derivative_shift: multi-index must have order degree - 2");
    QPolyVec out;
    out.n = U.n;
    out.N = U.N;
    out.degree = 2;
    out.monos = homogeneous_monomials(U.n, 2);
    int M = static_cast<int>(U.monos.size()), Mo = static_cast<int>(out.monos.size());
    out.c.assign(static_cast<size_t>(U.N) * Mo, Q(0));
    for (int A = 0; A < U.N; ++A)
        for (int k = 0; k < M; ++k) {
            const Q& u = U.c[A * M + k];
            if (u == 0) continue;
            std::vector<int> e = U.monos[k];
            Q f = u;
            bool ok = true;
            for (int i = 0; i < U.n && ok; ++i) {
                if (e[i] < I[i]) ok = false;
                for (int t = 0; t < I[i] && ok; ++t) f *= e[i] - t;
                e[i] -= I[i];
            }
            if (!ok) continue;
            out.c[A * Mo + mono_index(out.monos, e)] += f;
        }
    return out;
}

bool derivative_shift_check(const DiffOpMatrix& op, const QPolyVec& U, const std::vector<int>& I) {
    return is_zero(apply_operator(op, derivative_shift(U, I)));
}

// ---------------------------------------------------------------- printed basis

bool parse_quadratic_field(const std::string& text, QPolyVec& out) {
    out = QPolyVec();
    out.n = 4;
    out.N = 10;
    out.degree = 2;
    out.monos = homogeneous_monomials(4, 2);
    out.c.assign(100, Q(0));
    std::istringstream in(text);
    std::string tok;
    Q sign = 1, coef = 1;
    std::vector<int> e(4, 0);
    int deg = 0;
    while (in >> tok) {
        if (tok == "+" || tok == "-") {
            sign = tok == "-" ? -1 : 1;
            continue;
        }
        if (tok[0] == 'x') {
            if (tok.size() != 2 || tok[1] < '1' || tok[1] > '4') return false;
            ++e[tok[1] - '1'];
            ++deg;
            continue;
        }
        if (tok[0] == 'E') {
            int A;
            try {
                A = std::stoi(tok.substr(1));
            } catch (...) {
                return false;
            }
            if (A < 1 || A > 10 || deg != 2) return false;
            out.c[(A - 1) * 10 + mono_index(out.monos, e)] += sign * coef;
            sign = 1;
            coef = 1;
            e.assign(4, 0);
            deg = 0;
            continue;
        }
        try {
            coef = Q(tok);
        } catch (...) {
            return false;
        }
    }
    return deg == 0;
}

std::vector<std::string> printed_quadratic_basis() {
    return {
        "x1 x1 E1", "x1 x2 E1", "x1 x3 E1", "x1 x4 E1", "x1 x1 E2", "x2 x2 E2",
        "x3 x4 E2", "x4 x4 E2 - x3 x3 E2", "x1 x1 E3", "x2 x4 E3", "x3 x3 E3", "x1 x1 E4",
        "x2 x3 E4", "x4 x4 E4", "x1 x2 E5", "x2 x2 E5", "x2 x3 E5", "x2 x4 E5",
        "x1 x4 E6", "x2 x2 E6", "x3 x3 E6", "x1 x3 E7", "x2 x2 E7", "x4 x4 E7",
        "x1 x3 E8", "x2 x3 E8", "x3 x3 E8", "x3 x4 E8", "x1 x2 E9", "x3 x3 E9",
        "x4 x4 E9", "x1 x4 E10", "x2 x4 E10", "x3 x4 E10", "x4 x4 E10",
        "x2 x2 E1 + x1 x2 E2", "x2 x4 E1 + x1 x4 E2", "x2 x3 E1 + x1 x2 E3",
        "x2 x3 E1 + x1 x3 E2", "x2 x4 E1 + x1 x2 E4", "x3 x3 E1 + x1 x3 E3",
        "x3 x4 E1 + x1 x4 E3", "x3 x4 E1 + x1 x3 E?", "x4 x4 E1 + x1 x4 E4",
        "- x2 x2 E1 + x1 x1 E5", "x3 x4 E1 + x3 x4 E5", "x4 x4 E1 - x3 x3 E1 + x4 x4 E5 - x3 x3 E5",
        "2 x2 x3 E1 + x4 x4 E6", "- 2 x2 x3 E1 + x1 x1 E6", "- x2 x4 E1 + x3 x4 E6",
        "- x3 x4 E1 + x2 x4 E6", "- x2 x3 E1 + x3 x4 E7", "- 2 x2 x4 E1 + x1 x1 E7",
        "2 x2 x4 E1 + x3 x3 E7", "- x3 x4 E1 + x2 x3 E7", "x2 x4 E1 + x2 x4 E8",
        "- x3 x3 E1 + x1 x1 E8", "- x2 x3 E1 + x2 x4 E9", "- x2 x4 E1 + x2 x3 E9",
        "- 2 x3 x4 E1 + x1 x1 E9", "2 x3 x4 E1 + x2 x2 E9", "x2 x3 E1 + x2 x3 E10",
        "- x4 x4 E? + x1 x1 E10", "2 x2 x3 E2 + x2 x2 E3", "2 x2 x3 E2 + x4 x4 E3",
        "x3 x3 E2 + x2 x3 E3", "- x2 x4 E2 + x3 x4 E3", "- x2 x3 E2 + x3 x4 E4",
        "2 x2 x4 E2 + x2 x2 E4", "2 x2 x4 E2 + x3 x3 E4", "x3 x3 E2 + x2 x4 E4",
        "x2 x3 E2 + x1 x? E5", "x2 x4 E2 + x1 x4 E5", "- x2 x3 E2 + x1 x2 E6",
        "x3 x3 E2 + x1 x3 E6", "- x2 x4 E2 + x1 x2 E7", "x3 x3 E2 + x1 x4 E7",
        "x2 x4 E2 + x1 x4 E8", "- x3 x3 E2 + x1 x2 E8", "- x2 x3 E2 + x1 x4 E9",
        "- x2 x4 E2 + x1 x3 E9", "x2 x3 E2 + x1 x3 E10", "- x3 x3 E2 + x1 x2 E10",
        "x3 x3 E? + x2 x3 E6", "- x3 x3 E5 + x2 x2 E8",
        "x3 x3 E1 - x4 x4 E1 + x3 x3 E5 + x2 x4 E7",
        "x4 x4 E1 - x2 x2 E1 - x3 x3 E5 + x4 x4 E8",
        "x2 x2 E1 - x4 x4 E1 + x3 x3 E5 + x3 x4 E9",
        "x4 x4 E1 - x2 x2 E1 - x3 x3 E5 + x3 x3 E10",
        "x4 x4 E1 - x3 x3 E1 - x3 x3 E5 + x2 x2 E10",
    };
}

}  // namespace jv
