#pragma once
// Projectable vector fields u^i(x) d/dx^i + v^a(x, y) d/dy^a, their prolongations,
// symmetry-transformed coefficients and Noether currents.

#include <vector>

#include "jetvar/varcore.hpp"

namespace jv {

struct VectorField {
    int n = 0, m = 0;
    std::vector<Poly> u;  // n polynomials in (x, y) that must not depend on y
    std::vector<Poly> v;  // m polynomials in (x, y)

    VectorField() = default;
    VectorField(int n_, int m_, std::vector<Poly> u_, std::vector<Poly> v_);
    static VectorField zero(int n, int m);

    // Polynomial derivative caches: du[h*n+i], ddu[(h*n+i)*n+j], dv[a*(n+m)+k], ddv[(a*(n+m)+k)*(n+m)+l].
    std::vector<Poly> du, ddu, dv, ddv;
};

template <class S>
std::vector<S> field_args(const Jet<S>& p) {
    std::vector<S> z(p.x);
    z.insert(z.end(), p.y.begin(), p.y.end());
    return z;
}

struct Prolongation {
    int n = 0, m = 0, order = 0;
    std::vector<double> u, v, v1, v2;  // v1: a*n+i, v2: a*s2+sym2(i,j)
};

// v^a_i = d_i v^a + y^b_i d_b v^a - d_i u^h y^a_h (a first-order function).
template <class S>
std::vector<S> prolong1(const VectorField& X, const Jet<S>& p) {
    int n = X.n, m = X.m, nv = n + m;
    auto z = field_args(p);
    std::vector<S> out(m * n, S(0.0));
    std::vector<S> dv(m * nv);
    for (int a = 0; a < m; ++a)
        for (int k = 0; k < nv; ++k) dv[a * nv + k] = X.dv[a * nv + k].eval(z);
    for (int i = 0; i < n; ++i) {
        std::vector<S> dui(n);
        for (int h = 0; h < n; ++h) dui[h] = X.du[h * n + i].eval(z);
        for (int a = 0; a < m; ++a) {
            S v = dv[a * nv + i];
            for (int b = 0; b < m; ++b) v += p.Y1(b, i) * dv[a * nv + n + b];
            for (int h = 0; h < n; ++h) v -= dui[h] * p.Y1(a, h);
            out[a * n + i] = v;
        }
    }
    return out;
}

// v^a_ij = D_i D_j (v^a - u^h y^a_h) + u^h y^a_(hij) (the third-order terms cancel).
template <class S>
std::vector<S> prolong2(const VectorField& X, const Jet<S>& p) {
    int n = X.n, m = X.m, nv = n + m, s2 = sym2_count(n);
    p.need(2);
    auto z = field_args(p);
    std::vector<S> out(m * s2, S(0.0));
    auto DV = [&](int a, int k) { return X.dv[a * nv + k].eval(z); };
    auto DDV = [&](int a, int k, int l) { return X.ddv[(a * nv + k) * nv + l].eval(z); };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int a = 0; a < m; ++a) {
                S v = DDV(a, i, j);
                for (int b = 0; b < m; ++b) {
                    S dvb = DV(a, n + b);
                    v += p.Y1(b, j) * DDV(a, i, n + b) + p.Y1(b, i) * DDV(a, j, n + b) + p.Y2(b, i, j) * dvb;
                    for (int c = 0; c < m; ++c) v += p.Y1(b, i) * p.Y1(c, j) * DDV(a, n + b, n + c);
                }
                for (int h = 0; h < n; ++h) {
                    v -= X.ddu[(h * n + i) * n + j].eval(z) * p.Y1(a, h);
                    v -= X.du[h * n + i].eval(z) * p.Y2(a, h, j) + X.du[h * n + j].eval(z) * p.Y2(a, h, i);
                }
                out[a * s2 + sym2(n, i, j)] = v;
            }
    return out;
}

Prolongation prolong(const VectorField& X, const JetPoint& p);

// Directional derivative of a jet function of order r along X^(r) at p.
template <class F, class S>
S apply_prolonged(const F& f, const VectorField& X, const Jet<S>& p, int r) {
    auto z = field_args(p);
    Jet<Dual<S>> w = jet_cast<Dual<S>>(p.truncated(r));
    for (int i = 0; i < X.n; ++i) w.x[i].d = X.u[i].eval(z);
    for (int a = 0; a < X.m; ++a) w.y[a].d = X.v[a].eval(z);
    if (r >= 1) {
        auto v1 = prolong1(X, p);
        for (int c = 0; c < (int)v1.size(); ++c) w.dy[c].d = v1[c];
    }
    if (r >= 2) {
        auto v2 = prolong2(X, p);
        for (int c = 0; c < (int)v2.size(); ++c) w.d2y[c].d = v2[c];
    }
    return f(w).d;
}

template <class S>
S divergence(const VectorField& X, const Jet<S>& p) {
    auto z = field_args(p);
    S d(0.0);
    for (int i = 0; i < X.n; ++i) d += X.du[i * X.n + i].eval(z);
    return d;
}

// L' = X^(2)(L) + div(u) L: the coefficient of v in the Lie derivative of L v.
template <class L>
struct TransformedLagrangian {
    const L* lag = nullptr;
    const VectorField* X = nullptr;
    int n = 0, m = 0, order = 2;
    TransformedLagrangian(const L& l, const VectorField& f) : lag(&l), X(&f), n(l.n), m(l.m) {}
    template <class S>
    S operator()(const Jet<S>& p) const {
        return apply_prolonged(*lag, *X, p, 2) + divergence(*X, p) * (*lag)(p);
    }
};

struct TransformedCoefficients {
    int n = 0, m = 0;
    std::vector<double> Lab, L0;              // from the coefficient formulas
    std::vector<double> Lab_direct, L0_direct;  // from X^(2)(L) + div(u) L
    double max_abs() const {
        double v = 0.0;
        for (double a : Lab) v = std::max(v, std::fabs(a));
        for (double a : L0) v = std::max(v, std::fabs(a));
        return v;
    }
    double formula_gap() const {
        double v = 0.0;
        for (std::size_t k = 0; k < Lab.size(); ++k) v = std::max(v, std::fabs(Lab[k] - Lab_direct[k]));
        for (std::size_t k = 0; k < L0.size(); ++k) v = std::max(v, std::fabs(L0[k] - L0_direct[k]));
        return v;
    }
};

// Transformed affine data at a first-order point q:
// L'^{ab} = X^(1)(L^{ab}) + div L^{ab} + dv^b/dy^a L^{ab}_b - d_r u^a L^{rb} - d_r u^b L^{ra},
// L'_0 = X^(1)(L_0) + div L_0 + T^b_{hk} L^{hk}_b.
template <class L>
TransformedCoefficients symmetry_transform(const L& lag, const VectorField& X, const JetPoint& q_in) {
    JetPoint q = first_order(q_in);
    int n = q.n, m = q.m, s2 = sym2_count(n), nv = n + m;
    auto z = field_args(q);
    TransformedCoefficients out;
    out.n = n;
    out.m = m;
    out.Lab.assign(m * s2, 0.0);
    out.L0.assign(1, 0.0);
    double div = divergence(X, q);
    std::vector<double> du(n * n);
    for (int h = 0; h < n; ++h)
        for (int r = 0; r < n; ++r) du[h * n + r] = X.du[h * n + r].eval(z);
    // all coefficients L^{ij}_a at q
    std::vector<double> Lij(m * s2);
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < s2; ++c) {
            auto [i, j] = sym2_pair(n, c);
            Lij[a * s2 + c] = affine_Lij(lag, q, a, i, j);
        }
    auto Lc = [&](int a, int i, int j) { return Lij[a * s2 + sym2(n, i, j)]; };
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < s2; ++c) {
            auto [i, j] = sym2_pair(n, c);
            auto f = [&](const auto& p) { return affine_Lij(lag, p, a, i, j); };
            double v = apply_prolonged(f, X, q, 1) + div * Lc(a, i, j);
            for (int b = 0; b < m; ++b) v += X.dv[b * nv + n + a].eval(z) * Lc(b, i, j);
            for (int r = 0; r < n; ++r) v -= du[i * n + r] * Lc(a, r, j) + du[j * n + r] * Lc(a, i, r);
            out.Lab[a * s2 + c] = v;
        }
    {
        auto f = [&](const auto& p) { return affine_L0(lag, p); };
        double v = apply_prolonged(f, X, q, 1) + div * affine_L0(lag, q);
        // T^b_{hk} is the part of v^b_{hk} free of second derivatives.
        JetPoint q2 = zero_second(q);
        auto v2 = prolong2(X, q2);
        for (int b = 0; b < m; ++b)
            for (int h = 0; h < n; ++h)
                for (int k = 0; k < n; ++k) v += v2[b * s2 + sym2(n, h, k)] * Lc(b, h, k);
        out.L0[0] = v;
    }
    TransformedLagrangian<L> Lp(lag, X);
    out.Lab_direct.resize(m * s2);
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < s2; ++c) {
            auto [i, j] = sym2_pair(n, c);
            out.Lab_direct[a * s2 + c] = affine_Lij(Lp, q, a, i, j);
        }
    out.L0_direct = {affine_L0(Lp, q)};
    return out;
}

// Components of (j^1 s)^* i_{X^(1)} Theta in the basis v_i = dx^1 ^ .. (omit i) .. ^ dx^n:
// comp_j = (-1)^{j-1} [L^{j0}_a (v^a - u^k y^a_k) + L^{jh}_a (v^a_h - u^k y^a_(hk)) + u^j L].
template <class L, class S>
std::vector<S> noether_components(const L& lag, const VectorField& X, const Jet<S>& p) {
    int n = p.n, m = p.m;
    auto z = field_args(p);
    std::vector<S> u(n), v(m);
    for (int i = 0; i < n; ++i) u[i] = X.u[i].eval(z);
    for (int a = 0; a < m; ++a) v[a] = X.v[a].eval(z);
    auto v1 = prolong1(X, p);
    auto P = reduced_Li0(lag, first_order(p));
    S Lval = lag(p.truncated(2));
    std::vector<S> out(n, S(0.0));
    for (int j = 0; j < n; ++j) {
        S c = u[j] * Lval;
        for (int a = 0; a < m; ++a) {
            S t = v[a];
            for (int k = 0; k < n; ++k) t -= u[k] * p.Y1(a, k);
            c += P[a * n + j] * t;
            for (int h = 0; h < n; ++h) {
                S th = v1[a * n + h];
                for (int k = 0; k < n; ++k) th -= u[k] * p.Y2(a, h, k);
                c += affine_Lij(lag, first_order(p), a, j, h) * th;
            }
        }
        out[j] = (j % 2 == 0) ? c : -c;
    }
    return out;
}

template <class L>
std::vector<double> noether_current(const L& lag, const VectorField& X, const PolySection& s,
                                    const std::vector<double>& x) {
    return noether_components(lag, X, s.jet(x, 2));
}

// sum_j d_j ((-1)^{j-1} comp_j) by a fourth-order central difference with step h.
template <class L>
double noether_divergence_fd(const L& lag, const VectorField& X, const PolySection& s, const std::vector<double>& x,
                             double h = 1e-3) {
    int n = s.n();
    double d = 0.0;
    for (int j = 0; j < n; ++j) {
        auto at = [&](double t) {
            auto y = x;
            y[j] += t;
            double c = noether_current(lag, X, s, y)[j];
            return (j % 2 == 0) ? c : -c;
        };
        d += (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    }
    return d;
}

}  // namespace jv
