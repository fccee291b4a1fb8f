#pragma once
// Generic second-order variational machinery for Lagrangians L(x, y, y', y'').
// A Lagrangian is a jet function with members n, m, order and a templated call operator.
// Convention: L = sum over all (i,j) of L^{ij}_a y^a_(ij) + L_0 with
// L^{ij}_a = (1/(2 - delta_ij)) dL/dy^a_(ij). Pairs (i, a) are flattened as a*n + i.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jetvar/jetcalc.hpp"
#include "jetvar/linalg.hpp"
#include "jetvar/poly.hpp"

namespace jv {

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& msg, double res) : std::runtime_error(msg), residual(res) {}
    double residual;
};

// ---------------------------------------------------------------- jet helpers

// Copy of x, y, y' with vanishing second derivatives.
template <class S>
Jet<S> zero_second(const Jet<S>& q) {
    Jet<S> r(q.n, q.m, 2);
    r.x = q.x;
    r.y = q.y;
    std::copy(q.dy.begin(), q.dy.end(), r.dy.begin());
    return r;
}

template <class S>
Jet<S> first_order(const Jet<S>& q) {
    Jet<S> r(q.n, q.m, 1);
    r.x = q.x;
    r.y = q.y;
    std::copy(q.dy.begin(), q.dy.end(), r.dy.begin());
    return r;
}

// First-order jet moving along (e_k, y_k, 0): the total derivative on functions of (x, y) only.
template <class S>
Jet<Dual<S>> reduced_direction(const Jet<S>& q, int k) {
    Jet<Dual<S>> r = jet_cast<Dual<S>>(first_order(q));
    r.x[k].d = S(1.0);
    for (int a = 0; a < q.m; ++a) r.y[a].d = q.Y1(a, k);
    return r;
}

// Section jet at x shifted by one dual direction per entry of dirs.
template <class T>
struct DualTower;
template <>
struct DualTower<double> {
    static constexpr int depth = 0;
};

// x + e1 e_{i} (one layer).
inline std::vector<Dual<double>> shift1(const std::vector<double>& x, int i) {
    std::vector<Dual<double>> r(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) r[k] = Dual<double>(x[k], (int)k == i ? 1.0 : 0.0);
    return r;
}

// x + e1 e_i + e2 e_j: inner layer e_i, outer layer e_j.
inline std::vector<Dual<Dual<double>>> shift2(const std::vector<double>& x, int i, int j) {
    using D = Dual<double>;
    std::vector<Dual<D>> r(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        r[k] = Dual<D>(D(x[k], (int)k == i ? 1.0 : 0.0), D((int)k == j ? 1.0 : 0.0, 0.0));
    return r;
}

// ---------------------------------------------------------------- Legendre coefficients

struct LegendreCoefficients {
    int n = 0, m = 0;
    std::vector<double> Lij;  // a*s2 + sym2(i,j)
    std::vector<double> Li0;  // a*n + i
    double ij(int a, int i, int j) const { return Lij[a * sym2_count(n) + sym2(n, i, j)]; }
    double i0(int a, int i) const { return Li0[a * n + i]; }
};

template <class L>
LegendreCoefficients legendre_coefficients(const L& lag, const JetPoint& p) {
    if (p.order < 3) throw JetError("legendre_coefficients: order-3 jet required");
    int n = p.n, m = p.m, s2 = sym2_count(n);
    LegendreCoefficients out;
    out.n = n;
    out.m = m;
    out.Lij.assign(m * s2, 0.0);
    out.Li0.assign(m * n, 0.0);
    using D = Dual<double>;
    using DD = Dual<D>;
    Jet<D> q = jet_cast<D>(p.truncated(2));
    for (int a = 0; a < m; ++a) {
        for (int c = 0; c < s2; ++c) {
            auto [i, j] = sym2_pair(n, c);
            q.d2y[a * s2 + c].d = 1.0;
            out.Lij[a * s2 + c] = lag(q).d / (i == j ? 1.0 : 2.0);
            q.d2y[a * s2 + c].d = 0.0;
        }
        for (int i = 0; i < n; ++i) {
            q.Y1(a, i).d = 1.0;
            out.Li0[a * n + i] = lag(q).d;
            q.Y1(a, i).d = 0.0;
        }
    }
    for (int j = 0; j < n; ++j) {
        Jet<DD> r = jet_cast<DD>(total_direction(p, j, 2));
        for (int a = 0; a < m; ++a)
            for (int i = 0; i < n; ++i) {
                r.Y2(a, i, j).d = D(1.0, 0.0);
                double v = lag(r).d.d;
                r.Y2(a, i, j).d = D(0.0, 0.0);
                out.Li0[a * n + i] -= v / (i == j ? 1.0 : 2.0);
            }
    }
    return out;
}

// ---------------------------------------------------------------- affine data on J^1

template <class L, class S>
S affine_L0(const L& lag, const Jet<S>& q) {
    return lag(zero_second(q));
}

template <class L, class S>
S affine_Lij(const L& lag, const Jet<S>& q, int a, int i, int j) {
    Jet<Dual<S>> r = jet_cast<Dual<S>>(zero_second(q));
    r.Y2(a, i, j).d = S(1.0);
    S v = lag(r).d;
    return i == j ? v : v * 0.5;
}

// Row i of the reduced coefficients L^{i0}_a = dL0/dy^a_i - sum_k D~_k L^{ik}_a.
template <class L, class S>
std::vector<S> reduced_Li0_row(const L& lag, const Jet<S>& q, int i) {
    int n = q.n, m = q.m;
    std::vector<S> out(m, S(0.0));
    Jet<Dual<S>> r = jet_cast<Dual<S>>(zero_second(q));
    for (int a = 0; a < m; ++a) {
        r.Y1(a, i).d = S(1.0);
        out[a] = lag(r).d;
        r.Y1(a, i).d = S(0.0);
    }
    for (int k = 0; k < n; ++k) {
        Jet<Dual<S>> w = reduced_direction(q, k);
        for (int a = 0; a < m; ++a) out[a] -= affine_Lij(lag, w, a, i, k).d;
    }
    return out;
}

template <class L, class S>
std::vector<S> reduced_Li0(const L& lag, const Jet<S>& q) {
    int n = q.n, m = q.m;
    std::vector<S> out(m * n);
    for (int i = 0; i < n; ++i) {
        auto row = reduced_Li0_row(lag, q, i);
        for (int a = 0; a < m; ++a) out[a * n + i] = row[a];
    }
    return out;
}

// ---------------------------------------------------------------- projectability

struct ProjectabilityReport {
    bool affine = false, projects_to_J2 = false, projects_to_J1 = false;
    double affine_residual = 0.0;  // max |d^2 L / dy_(ij) dy_(kl)|
    double j2_residual = 0.0;      // max |coefficient of y_(abc) in L^{i0}|
    double j1_residual = 0.0;      // max first_tris residual
    double tol = 1e-8;
};

// First-tris residual dL^{ih}_b/dy^a_c - dL^{ic}_a/dy^b_h, indexed [((i*n+h)*n+c)*m*m + a*m + b].
template <class L>
std::vector<double> first_tris_residuals(const L& lag, const JetPoint& q) {
    int n = q.n, m = q.m;
    // T[(i,h,b),(c,a)] = d L^{ih}_b / d y^a_c
    std::vector<double> T(n * n * m * n * m, 0.0);
    auto at = [&](int i, int h, int b, int c, int a) -> double& { return T[(((i * n + h) * m + b) * n + c) * m + a]; };
    using D = Dual<double>;
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < m; ++a) {
            Jet<D> w = jet_cast<D>(first_order(q));
            w.Y1(a, c).d = 1.0;
            for (int i = 0; i < n; ++i)
                for (int h = i; h < n; ++h)
                    for (int b = 0; b < m; ++b) {
                        double v = affine_Lij(lag, w, b, i, h).d;
                        at(i, h, b, c, a) = v;
                        at(h, i, b, c, a) = v;
                    }
        }
    std::vector<double> res(n * n * n * m * m, 0.0);
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
            for (int c = 0; c < n; ++c)
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        res[((i * n + h) * n + c) * m * m + a * m + b] = at(i, h, b, c, a) - at(i, c, a, h, b);
    return res;
}

// d10-closedness of w_L' = L^{hi}_a d(y^a_h) (x) d/dx^i: for fixed i, d_{y^b_c} L^{hi}_a - d_{y^a_h} L^{ci}_b.
// Indexed like first_tris_residuals with (a,b) swapped roles: [((i*n+h)*n+c)*m*m + b*m + a].
template <class L>
std::vector<double> d10_residuals(const L& lag, const JetPoint& q) {
    int n = q.n, m = q.m;
    std::vector<double> res(n * n * n * m * m, 0.0);
    using D = Dual<double>;
    auto dL = [&](int h, int i, int a, int c, int b) {
        Jet<D> w = jet_cast<D>(first_order(q));
        w.Y1(b, c).d = 1.0;
        return affine_Lij(lag, w, a, h, i).d;
    };
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
            for (int c = 0; c < n; ++c)
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        res[((i * n + h) * n + c) * m * m + b * m + a] = dL(h, i, a, c, b) - dL(c, i, b, h, a);
    return res;
}

template <class L>
ProjectabilityReport projectability_check(const L& lag, const std::vector<JetPoint>& samples, double tol = 1e-8) {
    if (samples.empty()) throw std::invalid_argument("projectability_check: no samples");
    ProjectabilityReport rep;
    rep.tol = tol;
    using D = Dual<double>;
    using DD = Dual<D>;
    for (const auto& s : samples) {
        int n = s.n, m = s.m, s2 = sym2_count(n);
        JetPoint p = s.order >= 2 ? s.truncated(2) : zero_second(s);
        int nc = m * s2;
        // Hessian block in the second-derivative coordinates.
        std::vector<double> H(nc * nc, 0.0);
        Jet<DD> r = jet_cast<DD>(p);
        for (int u = 0; u < nc; ++u) {
            r.d2y[u].d.v = 1.0;
            for (int v = u; v < nc; ++v) {
                r.d2y[v].v.d = 1.0;
                double h = lag(r).d.d;
                r.d2y[v].v.d = 0.0;
                H[u * nc + v] = H[v * nc + u] = h;
                rep.affine_residual = std::max(rep.affine_residual, std::fabs(h));
            }
            r.d2y[u].d.v = 0.0;
        }
        // Exact coefficient of y^b_(abc) in L^{i0}_a: -sum over placements (j, {k<=l}) with
        // sorted(j,k,l) = (a,b,c) of (1/(2-delta_ij)) d^2L/dy^b_(kl) dy^a_(ij).
        for (int a1 = 0; a1 < n; ++a1)
            for (int b1 = a1; b1 < n; ++b1)
                for (int c1 = b1; c1 < n; ++c1) {
                    int t[3] = {a1, b1, c1};
                    std::vector<std::array<int, 3>> places;
                    for (int pj = 0; pj < 3; ++pj) {
                        int j = t[pj];
                        int k = t[(pj + 1) % 3], l = t[(pj + 2) % 3];
                        std::array<int, 3> pl = {j, std::min(k, l), std::max(k, l)};
                        if (std::find(places.begin(), places.end(), pl) == places.end()) places.push_back(pl);
                    }
                    for (int i = 0; i < n; ++i)
                        for (int al = 0; al < m; ++al)
                            for (int be = 0; be < m; ++be) {
                                double coef = 0.0;
                                for (const auto& pl : places) {
                                    int j = pl[0];
                                    int u = al * s2 + sym2(n, i, j);
                                    int v = be * s2 + sym2(n, pl[1], pl[2]);
                                    coef -= H[u * nc + v] / (i == j ? 1.0 : 2.0);
                                }
                                rep.j2_residual = std::max(rep.j2_residual, std::fabs(coef));
                            }
                }
        for (double v : first_tris_residuals(lag, first_order(p))) rep.j1_residual = std::max(rep.j1_residual, std::fabs(v));
    }
    rep.affine = rep.affine_residual <= tol;
    rep.projects_to_J2 = rep.j2_residual <= tol;
    rep.projects_to_J1 = rep.affine && rep.j1_residual <= tol;
    return rep;
}

// ---------------------------------------------------------------- fibre primitives

namespace detail {
inline constexpr double gl16[8][2] = {
    {0.095012509837637454, 0.18945061045506859}, {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},  {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},  {0.98940093499164994, 0.027152459411754037}};

// Composite 16-node Gauss-Legendre rule on [0,1] with 2^level panels.
template <class F>
void for_each_node(int level, F&& f) {
    int panels = 1 << level;
    double half = 0.5 / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) / panels;
        for (const auto& nw : gl16) {
            f(mid - half * nw[0], half * nw[1]);
            f(mid + half * nw[0], half * nw[1]);
        }
    }
}
}  // namespace detail

// Integrand of L^h along the ray t -> (x, y, t y'): sum_{j,b} y'^b_j L^{hj}_b(x, y, t y').
template <class L, class S>
S primitive_integrand(const L& lag, const Jet<S>& q, int h, double t) {
    int n = q.n, m = q.m, s2 = sym2_count(n);
    Jet<Dual<S>> r(n, m, 2);
    for (int i = 0; i < n; ++i) r.x[i] = Dual<S>(q.x[i]);
    for (int a = 0; a < m; ++a) r.y[a] = Dual<S>(q.y[a]);
    for (int c = 0; c < m * n; ++c) r.dy[c] = Dual<S>(q.dy[c] * t);
    for (int b = 0; b < m; ++b)
        for (int j = 0; j < n; ++j) r.d2y[b * s2 + sym2(n, h, j)].d += q.Y1(b, j) * (h == j ? 1.0 : 0.5);
    return lag(r).d;
}

// L^h(x, y, y') = int_0^1 sum y'^b_j L^{hj}_b(x, y, t y') dt at the given quadrature level.
template <class L, class S>
S primitive(const L& lag, const Jet<S>& q, int h, int level) {
    S sum(0.0);
    detail::for_each_node(level, [&](double t, double w) { sum += w * primitive_integrand(lag, q, h, t); });
    return sum;
}

// Coarsest level whose doubling changes L^h by at most 1e-10 relative.
template <class L>
int primitive_level(const L& lag, const JetPoint& q, int h, int max_level = 6) {
    double prev = primitive(lag, q, h, 0);
    double mass = 0.0;
    detail::for_each_node(0, [&](double t, double w) { mass += w * std::fabs(primitive_integrand(lag, q, h, t)); });
    for (int lev = 1; lev <= max_level; ++lev) {
        double cur = primitive(lag, q, h, lev);
        double scale = std::max({std::fabs(cur), 1e-6 * mass, 1e-300});
        if (std::fabs(cur - prev) <= 1e-10 * scale) return lev - 1;
        prev = cur;
    }
    double last = primitive(lag, q, h, max_level - 1);
    throw QuadratureError("fibre primitive quadrature did not converge", std::fabs(prev - last));
}

template <class L>
std::vector<int> primitive_levels(const L& lag, const JetPoint& q) {
    std::vector<int> lv(q.n);
    JetPoint q1 = first_order(q);
    for (int h = 0; h < q.n; ++h) lv[h] = primitive_level(lag, q1, h);
    return lv;
}

struct FibrePrimitive {
    int n = 0, m = 0;
    std::vector<double> Li;    // h
    std::vector<double> d_x;   // h*n + k
    std::vector<double> d_y;   // h*m + a
    std::vector<double> d_dy;  // h*(m*n) + a*n + j
    std::vector<int> levels;
};

template <class L>
FibrePrimitive fibre_primitive(const L& lag, const JetPoint& q_in) {
    JetPoint q = first_order(q_in);
    int n = q.n, m = q.m;
    FibrePrimitive out;
    out.n = n;
    out.m = m;
    out.levels = primitive_levels(lag, q);
    out.Li.resize(n);
    out.d_x.resize(n * n);
    out.d_y.resize(n * m);
    out.d_dy.resize(n * m * n);
    using D = Dual<double>;
    for (int h = 0; h < n; ++h) {
        int lv = out.levels[h];
        out.Li[h] = primitive(lag, q, h, lv);
        Jet<D> w = jet_cast<D>(q);
        for (int c = 0; c < w.size(); ++c) {
            w.coord(c).d = 1.0;
            double v = primitive(lag, w, h, lv).d;
            w.coord(c).d = 0.0;
            if (c < n) out.d_x[h * n + c] = v;
            else if (c < n + m) out.d_y[h * m + c - n] = v;
            else out.d_dy[h * m * n + c - n - m] = v;
        }
    }
    return out;
}

// ---------------------------------------------------------------- momenta, Hamiltonian, L-bar

// p^i_a = L^{i0}_a - dL^i/dy^a at (a*n + i).
template <class L, class S>
std::vector<S> momenta(const L& lag, const Jet<S>& q, const std::vector<int>& levels) {
    int n = q.n, m = q.m;
    std::vector<S> p = reduced_Li0(lag, q);
    Jet<Dual<S>> w = jet_cast<Dual<S>>(first_order(q));
    for (int a = 0; a < m; ++a) {
        w.y[a].d = S(1.0);
        for (int i = 0; i < n; ++i) p[a * n + i] -= primitive(lag, w, i, levels[i]).d;
        w.y[a].d = S(0.0);
    }
    return p;
}

// H = L0 - y^a_i L^{i0}_a - dL^i/dx^i.
template <class L, class S>
S hamiltonian(const L& lag, const Jet<S>& q, const std::vector<int>& levels) {
    int n = q.n, m = q.m;
    S H = affine_L0(lag, q);
    std::vector<S> P = reduced_Li0(lag, q);
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < n; ++i) H -= q.Y1(a, i) * P[a * n + i];
    Jet<Dual<S>> w = jet_cast<Dual<S>>(first_order(q));
    for (int i = 0; i < n; ++i) {
        w.x[i].d = S(1.0);
        H -= primitive(lag, w, i, levels[i]).d;
        w.x[i].d = S(0.0);
    }
    return H;
}

// L-bar = L0 - dL^i/dx^i - y^a_i dL^i/dy^a = L0 - sum_i D~_i L^i.
template <class L, class S>
S bar_value(const L& lag, const Jet<S>& q, const std::vector<int>& levels) {
    S v = affine_L0(lag, q);
    for (int i = 0; i < q.n; ++i) v -= primitive(lag, reduced_direction(q, i), i, levels[i]).d;
    return v;
}

// First-order Lagrangian L-bar with quadrature levels fixed at a base point.
template <class L>
struct BarLagrangian {
    const L* lag = nullptr;
    int n = 0, m = 0, order = 1;
    std::vector<int> levels;
    BarLagrangian(const L& l, const JetPoint& base) : lag(&l), n(l.n), m(l.m), levels(primitive_levels(l, base)) {}
    template <class S>
    S operator()(const Jet<S>& q) const {
        return bar_value(*lag, q, levels);
    }
};

struct MomentaHamiltonian {
    int n = 0, m = 0;
    std::vector<double> p;   // a*n + i
    double H = 0.0;
    std::vector<double> dp;  // (a*n+i)*(m*n) + (b*n+j) = dp^i_a / dy^b_j, empty unless requested
    double p_at(int a, int i) const { return p[a * n + i]; }
};

// b[(i,a),(j,b)] = dL^{i0}_a/dy^b_j - dL^{ij}_b/dy^a, rows a*n+i, columns b*n+j.
template <class L>
std::vector<double> bilinear_form_b(const L& lag, const JetPoint& q_in) {
    JetPoint q = first_order(q_in);
    int n = q.n, m = q.m, N = m * n;
    std::vector<double> b(N * N, 0.0);
    using D = Dual<double>;
    Jet<D> w = jet_cast<D>(q);
    for (int be = 0; be < m; ++be)
        for (int j = 0; j < n; ++j) {
            w.Y1(be, j).d = 1.0;
            for (int i = 0; i < n; ++i) {
                auto row = reduced_Li0_row(lag, w, i);
                for (int a = 0; a < m; ++a) b[(a * n + i) * N + be * n + j] = row[a].d;
            }
            w.Y1(be, j).d = 0.0;
        }
    for (int a = 0; a < m; ++a) {
        w.y[a].d = 1.0;
        for (int be = 0; be < m; ++be)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) b[(a * n + i) * N + be * n + j] -= affine_Lij(lag, w, be, i, j).d;
        w.y[a].d = 0.0;
    }
    return b;
}

// Since dL^i/dy^b_j = L^{ij}_b, the momentum Jacobian dp/dy' coincides with b.
template <class L>
MomentaHamiltonian momenta_hamiltonian(const L& lag, const JetPoint& q_in, bool with_dp = false) {
    JetPoint q = first_order(q_in);
    MomentaHamiltonian out;
    out.n = q.n;
    out.m = q.m;
    auto lv = primitive_levels(lag, q);
    out.p = momenta(lag, q, lv);
    out.H = hamiltonian(lag, q, lv);
    if (with_dp) out.dp = bilinear_form_b(lag, q);
    return out;
}

template <class L>
double bar_lagrangian(const L& lag, const JetPoint& q) {
    return bar_value(lag, first_order(q), primitive_levels(lag, q));
}

// ---------------------------------------------------------------- Euler-Lagrange along sections

// E_a = dL/dy^a - d_i (dL/dy^a_i) + sum_{i<=j} d_i d_j (dL/dy^a_(ij)), derivatives of
// composites along the polynomial section.
template <class L>
std::vector<double> euler_lagrange(const L& lag, const PolySection& s, const std::vector<double>& x) {
    int n = s.n(), m = s.m();
    int ord = lag.order;
    using D = Dual<double>;
    using DD = Dual<D>;
    using DDD = Dual<DD>;
    std::vector<double> E(m, 0.0);
    {
        Jet<D> p = jet_cast<D>(s.jet(x, ord));
        for (int a = 0; a < m; ++a) {
            p.y[a].d = 1.0;
            E[a] += lag(p).d;
            p.y[a].d = 0.0;
        }
    }
    for (int i = 0; i < n; ++i) {
        Jet<DD> p = jet_cast<DD>(s.jet(shift1(x, i), ord));
        for (int a = 0; a < m; ++a) {
            p.Y1(a, i).d = D(1.0);
            E[a] -= lag(p).d.d;
            p.Y1(a, i).d = D(0.0);
        }
    }
    if (ord >= 2) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet<DDD> p = jet_cast<DDD>(s.jet(shift2(x, i, j), 2));
                for (int a = 0; a < m; ++a) {
                    p.Y2(a, i, j).d = DD(1.0);
                    E[a] += lag(p).d.d.d;
                    p.Y2(a, i, j).d = DD(0.0);
                }
            }
    }
    return E;
}

// E-L operator of an affine projectable L as a function on J^2:
// E_a = dL/dy^a - sum_k D_k L^{k0}_a with D_k acting on the first-order coefficients.
template <class L>
struct ELOperator {
    const L* lag = nullptr;
    int n = 0, m = 0;
    explicit ELOperator(const L& l) : lag(&l), n(l.n), m(l.m) {}
    template <class S>
    std::vector<S> operator()(const Jet<S>& p) const {
        std::vector<S> E(m);
        Jet<Dual<S>> r = jet_cast<Dual<S>>(p.truncated(2));
        for (int a = 0; a < m; ++a) {
            r.y[a].d = S(1.0);
            E[a] = (*lag)(r).d;
            r.y[a].d = S(0.0);
        }
        for (int k = 0; k < n; ++k) {
            Jet<Dual<S>> w = jet_cast<Dual<S>>(first_order(p));
            w.x[k].d = S(1.0);
            for (int a = 0; a < m; ++a) {
                w.y[a].d = p.Y1(a, k);
                for (int l = 0; l < n; ++l) w.Y1(a, l).d = p.Y2(a, k, l);
            }
            auto row = reduced_Li0_row(*lag, w, k);
            for (int a = 0; a < m; ++a) E[a] -= row[a].d;
        }
        return E;
    }
};

// ---------------------------------------------------------------- Helmholtz conditions

struct HelmholtzResiduals {
    double a = 0.0, b = 0.0, c = 0.0;
    double max() const { return std::max({a, b, c}); }
};

// Residuals of the three Helmholtz families for a second-order operator E (a functor
// returning m components at a J^2 point), evaluated along s at x. When affine_in_y2 is set,
// dE/dy_(ij) is taken as an exact difference quotient.
template <class Op>
HelmholtzResiduals helmholtz_residuals_operator(const Op& E, const PolySection& s, const std::vector<double>& x,
                                                bool affine_in_y2 = false) {
    int n = s.n(), m = s.m(), s2 = sym2_count(n);
    using D = Dual<double>;
    using DD = Dual<D>;
    using DDD = Dual<DD>;
    // dEy[a][b] = dE_a / dy^b
    std::vector<double> dEy(m * m);
    {
        Jet<D> p = jet_cast<D>(s.jet(x, 2));
        for (int b = 0; b < m; ++b) {
            p.y[b].d = 1.0;
            auto e = E(p);
            for (int a = 0; a < m; ++a) dEy[a * m + b] = e[a].d;
            p.y[b].d = 0.0;
        }
    }
    // G[(i,b)][a] = dE_a/dy^b_i and its x^i derivative.
    std::vector<double> G(n * m * m), dG(n * m * m);
    for (int i = 0; i < n; ++i) {
        Jet<DD> p = jet_cast<DD>(s.jet(shift1(x, i), 2));
        for (int b = 0; b < m; ++b) {
            p.Y1(b, i).d = D(1.0);
            auto e = E(p);
            for (int a = 0; a < m; ++a) {
                G[(i * m + b) * m + a] = e[a].d.v;
                dG[(i * m + b) * m + a] = e[a].d.d;
            }
            p.Y1(b, i).d = D(0.0);
        }
    }
    // B[(c,b)][a] = dE_a/dy^b_(c) with x-derivatives along the pair (i<=j) of c.
    std::vector<double> B(s2 * m * m), Bi(s2 * m * m), Bj(s2 * m * m), Bij(s2 * m * m);
    for (int c = 0; c < s2; ++c) {
        auto [i, j] = sym2_pair(n, c);
        Jet<DD> p = s.jet(shift2(x, i, j), 2);
        std::vector<DD> base;
        if (affine_in_y2) base = E(p);
        for (int b = 0; b < m; ++b) {
            std::vector<DD> col(m);
            if (affine_in_y2) {
                Jet<DD> q = p;
                q.Y2(b, i, j) += 1.0;
                auto e = E(q);
                for (int a = 0; a < m; ++a) col[a] = e[a] - base[a];
            } else {
                Jet<DDD> q = jet_cast<DDD>(p);
                q.Y2(b, i, j).d = DD(1.0);
                auto e = E(q);
                for (int a = 0; a < m; ++a) col[a] = e[a].d;
            }
            for (int a = 0; a < m; ++a) {
                int k = (c * m + b) * m + a;
                B[k] = col[a].v.v;
                Bi[k] = col[a].v.d;
                Bj[k] = col[a].d.v;
                Bij[k] = col[a].d.d;
            }
        }
    }
    auto Bd = [&](int i, int j, int b, int a, int dir) {
        int c = sym2(n, i, j);
        int k = (c * m + b) * m + a;
        int lo = std::min(i, j), hi = std::max(i, j);
        if (dir == lo) return Bi[k];
        (void)hi;
        return Bj[k];
    };
    HelmholtzResiduals r;
    for (int a = 0; a < m; ++a)
        for (int sg = 0; sg < m; ++sg) {
            for (int c = 0; c < s2; ++c)
                r.a = std::max(r.a, std::fabs(B[(c * m + sg) * m + a] - B[(c * m + a) * m + sg]));
            for (int i = 0; i < n; ++i) {
                double v = G[(i * m + sg) * m + a] + G[(i * m + a) * m + sg];
                for (int j = 0; j < n; ++j) v -= (i == j ? 2.0 : 1.0) * Bd(i, j, a, sg, j);
                r.b = std::max(r.b, std::fabs(v));
            }
            double v = dEy[a * m + sg] - dEy[sg * m + a];
            for (int i = 0; i < n; ++i) v += dG[(i * m + a) * m + sg];
            for (int c = 0; c < s2; ++c) v -= Bij[(c * m + a) * m + sg];
            r.c = std::max(r.c, std::fabs(v));
        }
    return r;
}

template <class L>
HelmholtzResiduals helmholtz_residuals(const L& lag, const PolySection& s, const std::vector<double>& x) {
    return helmholtz_residuals_operator(ELOperator<L>(lag), s, x, true);
}

// ---------------------------------------------------------------- Hamilton-Cartan residuals

struct HCResidual {
    std::vector<double> first;   // m
    std::vector<double> second;  // m*n, empty when skipped
    bool second_skipped = false;
    double dp_condition = 0.0;
    double max_abs() const {
        double v = 0.0;
        for (double r : first) v = std::max(v, std::fabs(r));
        for (double r : second) v = std::max(v, std::fabs(r));
        return v;
    }
};

template <class L>
HCResidual hc_residual(const L& lag, const PolySection& s, const std::vector<double>& x) {
    int n = s.n(), m = s.m(), N = m * n;
    JetPoint q = s.jet(x, 1);
    auto lv = primitive_levels(lag, q);
    HCResidual out;
    out.first.assign(m, 0.0);
    using D = Dual<double>;
    for (int i = 0; i < n; ++i) {
        Jet<D> w = s.jet(shift1(x, i), 1);
        auto p = momenta(lag, w, lv);
        for (int a = 0; a < m; ++a) out.first[a] += p[a * n + i].d;
    }
    {
        Jet<D> w = jet_cast<D>(q);
        for (int a = 0; a < m; ++a) {
            w.y[a].d = 1.0;
            out.first[a] -= hamiltonian(lag, w, lv).d;
            w.y[a].d = 0.0;
        }
    }
    // Second family: velocity recovered from the momenta by Newton inversion from y' = 0.
    auto target = momenta(lag, q, lv);
    JetPoint z = q;
    std::fill(z.dy.begin(), z.dy.end(), 0.0);
    double scale = 1.0;
    for (double v : target) scale = std::max(scale, std::fabs(v));
    for (int it = 0; it < 60; ++it) {
        auto lvz = primitive_levels(lag, z);
        auto pz = momenta(lag, z, lvz);
        std::vector<double> res(N);
        double rn = 0.0;
        for (int k = 0; k < N; ++k) {
            res[k] = pz[k] - target[k];
            rn = std::max(rn, std::fabs(res[k]));
        }
        auto dp = bilinear_form_b(lag, z);
        out.dp_condition = condition_number(dp, N);
        if (!(out.dp_condition <= 1e12)) {
            out.second_skipped = true;
            return out;
        }
        if (rn <= 1e-14 * scale) break;
        auto step = solve(dp, res, N);
        for (int k = 0; k < N; ++k) z.dy[k] -= step[k];
    }
    out.second.resize(N);
    for (int k = 0; k < N; ++k) out.second[k] = q.dy[k] - z.dy[k];
    return out;
}

}  // namespace jv
