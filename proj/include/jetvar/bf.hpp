#pragma once
// Generalized BF Lagrangians L_beta = trace(beta ^ R^g) for skew-valued (n-2)-forms beta
// depending on the metric, their coordinate form, E-L residuals and the matrix of b.

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetvar/expr.hpp"
#include "jetvar/metric.hpp"
#include "jetvar/varcore.hpp"

namespace jv {

struct BetaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// beta_{kl,j}^i(g). Tables are stored for all (k,l) with beta_{lk} = -beta_{kl};
// index ((k*n + l)*n + j)*n + i, 0-based.
struct BetaForm {
    enum class Kind { Zero, EH, Skew, Table };
    int n = 0;
    Kind kind = Kind::Zero;
    // Skew: beta_{kl,j}^i = sum_b W_kl^{ib}(x, g) g_bj with W skew in (i,b),
    // W_kl^{ib} = c + sum_e d_e g_e + sum_a f_a x^a + sum_{a<=b} h_ab x^a x^b, coefficients
    // stored per w = (kl*n + i)*n + b.
    std::vector<double> c, d, f, h;
    // Table: expressions in x<a>, g<ab>, gi<ab> (1-based, a<=b) and rho, for k<l.
    std::vector<Expr> expr;

    static BetaForm zero(int n);
    static BetaForm eh(int n);
    static BetaForm random_skew(int n, std::mt19937_64& rng, double linear_scale = 0.5, double x_scale = 0.0);
    // entries: keys "k,l,j,i" (1-based, k<l) mapped to expressions.
    static BetaForm table(int n, const std::vector<std::pair<std::string, std::string>>& entries);

    template <class S>
    std::vector<S> eval(const MetricData<S>& md, const std::vector<S>& x) const;
};

inline int beta_index(int n, int k, int l, int j, int i) { return ((k * n + l) * n + j) * n + i; }
inline double sgn1(int k) { return (k % 2 == 0) ? -1.0 : 1.0; }  // (-1)^{k+1} for 0-based k, i.e. (-1)^k 1-based

template <class S>
std::vector<S> BetaForm::eval(const MetricData<S>& md, const std::vector<S>& x) const {
    int nn = n;
    std::vector<S> out(nn * nn * nn * nn, S(0.0));
    auto gi = [&](int a, int b) -> const S& { return md.ginv[a * nn + b]; };
    switch (kind) {
        case Kind::Zero: break;
        case Kind::EH:
            // (beta_EH)_{kl,i}^j = (-1)^{k+l+1} rho (delta^{ik} g^{jl} - delta^{il} g^{jk})
            for (int k = 0; k < nn; ++k)
                for (int l = 0; l < nn; ++l) {
                    if (k == l) continue;
                    double s = ((k + l) % 2 == 0) ? -1.0 : 1.0;
                    for (int i = 0; i < nn; ++i)
                        for (int j = 0; j < nn; ++j) {
                            S v = (i == k ? gi(j, l) : S(0.0)) - (i == l ? gi(j, k) : S(0.0));
                            out[beta_index(nn, k, l, i, j)] = s * md.rho * v;
                        }
                }
            break;
        case Kind::Skew: {
            int s2 = sym2_count(nn);
            std::vector<S> ge(s2);
            for (int e = 0; e < s2; ++e) {
                auto [a, b] = sym2_pair(nn, e);
                ge[e] = md.g[a * nn + b];
            }
            for (int k = 0; k < nn; ++k)
                for (int l = k + 1; l < nn; ++l) {
                    int kl = k * nn + l;
                    std::vector<S> W(nn * nn);
                    for (int i = 0; i < nn; ++i)
                        for (int b = 0; b < nn; ++b) {
                            int w = (kl * nn + i) * nn + b;
                            S v(c[w]);
                            for (int e = 0; e < s2; ++e) v += d[w * s2 + e] * ge[e];
                            if (!f.empty()) {
                                for (int a = 0; a < nn; ++a) v += f[w * nn + a] * x[a];
                                for (int e = 0; e < s2; ++e) {
                                    auto [a, b2] = sym2_pair(nn, e);
                                    v += h[w * s2 + e] * x[a] * x[b2];
                                }
                            }
                            W[i * nn + b] = v;
                        }
                    for (int j = 0; j < nn; ++j)
                        for (int i = 0; i < nn; ++i) {
                            S v(0.0);
                            for (int b = 0; b < nn; ++b) v += W[i * nn + b] * md.g[b * nn + j];
                            out[beta_index(nn, k, l, j, i)] = v;
                            out[beta_index(nn, l, k, j, i)] = -v;
                        }
                }
            break;
        }
        case Kind::Table: {
            int s2 = sym2_count(nn);
            std::vector<S> vars(2 * s2 + 1 + nn);
            for (int e = 0; e < s2; ++e) {
                auto [a, b] = sym2_pair(nn, e);
                vars[e] = md.g[a * nn + b];
                vars[s2 + e] = gi(a, b);
            }
            vars[2 * s2] = md.rho;
            for (int a = 0; a < nn; ++a) vars[2 * s2 + 1 + a] = x[a];
            for (int k = 0; k < nn; ++k)
                for (int l = k + 1; l < nn; ++l)
                    for (int j = 0; j < nn; ++j)
                        for (int i = 0; i < nn; ++i) {
                            const Expr& e = expr[beta_index(nn, k, l, j, i)];
                            if (e.empty()) continue;
                            S v = e.eval(vars);
                            out[beta_index(nn, k, l, j, i)] = v;
                            out[beta_index(nn, l, k, j, i)] = -v;
                        }
            break;
        }
    }
    return out;
}

// max |beta_{ac,i}^d g^{ib} + beta_{ac,i}^b g^{id}| relative to max |beta|.
double beta_skew_residual(const BetaForm& b, const JetPoint& mj);
// Throws BetaError when the residual exceeds tol.
void validate_beta(const BetaForm& b, const JetPoint& mj, double tol = 1e-10);

// beta^{jk}_{lt} = (-1)^k beta_{kl,t}^j + (-1)^j beta_{jl,t}^k, index ((j*n+k)*n+l)*n+t.
template <class S>
std::vector<S> beta_aux(int n, const std::vector<S>& beta) {
    std::vector<S> out(n * n * n * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int t = 0; t < n; ++t)
                    out[((j * n + k) * n + l) * n + t] =
                        sgn1(k) * beta[beta_index(n, k, l, t, j)] + sgn1(j) * beta[beta_index(n, j, l, t, k)];
    return out;
}

// Trace form sum_{k<l} (-1)^{k+l+1} beta_{kl,j}^i R^j_{ikl}.
template <class S>
S l_beta_trace(const BetaForm& b, const Jet<S>& p) {
    int n = p.n;
    auto md = metric_data(p);
    auto beta = b.eval(md, p.x);
    auto cd = curvature(p);
    S v(0.0);
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            double s = ((k + l) % 2 == 0) ? -1.0 : 1.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) v += s * beta[beta_index(n, k, l, j, i)] * cd.R(j, i, k, l);
        }
    return v;
}

// Quadratic part L_beta^0 in the first derivatives, as displayed with the free indices summed.
template <class S>
S l_beta_zero(const BetaForm& b, const Jet<S>& p) {
    int n = p.n;
    auto md = metric_data(p);
    auto beta = b.eval(md, p.x);
    auto B = beta_aux(n, beta);
    auto y = [&](int a, int c) -> const S& { return md.ginv[a * n + c]; };
    auto Bt = [&](int j, int k, int l, int t) -> const S& { return B[((j * n + k) * n + l) * n + t]; };
    auto d = [&](int a, int c, int k) -> const S& { return p.Y1(sym2(n, a, c), k); };
    S total(0.0);
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l)
            for (int r = 0; r < n; ++r)
                for (int s = r; s < n; ++s) {
                    double w = -1.0 / (4.0 * (k == l ? 2.0 : 1.0) * (r == s ? 2.0 : 1.0));
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            S dd = d(k, l, i) * d(r, s, j);
                            if (value(dd) == 0.0 && !is_dual<S>::value) continue;
                            S br(0.0);
                            for (int t = 0; t < n; ++t) {
                                br += (sgn1(s) * Bt(k, l, s, t) * y(t, r) + sgn1(r) * Bt(k, l, r, t) * y(t, s)) * y(i, j);
                                br += (sgn1(j) * Bt(l, i, j, t) * y(t, r) + sgn1(r) * Bt(l, i, r, t) * y(t, j)) * y(k, s);
                                br += (sgn1(j) * Bt(k, i, j, t) * y(t, r) + sgn1(r) * Bt(k, i, r, t) * y(t, j)) * y(l, s);
                                br += (sgn1(j) * Bt(l, i, j, t) * y(t, s) + sgn1(s) * Bt(l, i, s, t) * y(t, j)) * y(k, r);
                                br += (sgn1(j) * Bt(k, i, j, t) * y(t, s) + sgn1(s) * Bt(k, i, s, t) * y(t, j)) * y(l, r);
                                br -= (sgn1(s) * Bt(l, i, s, t) * y(t, r) + sgn1(r) * Bt(l, i, r, t) * y(t, s)) * y(k, j);
                                br -= (sgn1(s) * Bt(k, i, s, t) * y(t, r) + sgn1(r) * Bt(k, i, r, t) * y(t, s)) * y(l, j);
                                br -= (sgn1(k) * Bt(r, j, k, t) * y(t, l) + sgn1(l) * Bt(r, j, l, t) * y(t, k)) * y(i, s);
                                br -= (sgn1(k) * Bt(s, j, k, t) * y(t, l) + sgn1(l) * Bt(s, j, l, t) * y(t, k)) * y(i, r);
                            }
                            total += w * br * dd;
                        }
                }
    return total;
}

// Second-derivative part sum_{k,l} (-1)^{k+l+1} beta_{kl,i}^j g^{ih} g_{hl,jk}.
template <class S>
S l_beta_second(const BetaForm& b, const Jet<S>& p) {
    int n = p.n;
    auto md = metric_data(p);
    auto beta = b.eval(md, p.x);
    S v(0.0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            if (k == l) continue;
            double s = ((k + l) % 2 == 0) ? -1.0 : 1.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    S bij = beta[beta_index(n, k, l, i, j)];
                    for (int h = 0; h < n; ++h) v += s * bij * md.ginv[i * n + h] * p.Y2(sym2(n, h, l), j, k);
                }
        }
    return v;
}

// Coordinate form of L_beta, with L_beta^0 taken from the displayed closed form.
template <class S>
S l_beta_coordinate(const BetaForm& b, const Jet<S>& p) {
    return l_beta_second(b, p) + l_beta_zero(b, p.truncated(1));
}

// L_beta as a jet function (trace form).
struct BFLagrangian {
    BetaForm beta;
    int n = 0, m = 0, order = 2;
    explicit BFLagrangian(BetaForm b) : beta(std::move(b)), n(beta.n), m(sym2_count(beta.n)) {}
    template <class S>
    S operator()(const Jet<S>& p) const {
        return l_beta_trace(beta, p);
    }
};

double l_beta(const BetaForm& b, const JetPoint& mj2);

// Phi_a^{rb} at x along the metric section, index (a*n + r)*n + b.
template <class S>
std::vector<S> bf_phi(const BetaForm& bt, const PolySection& g, const std::vector<S>& x) {
    int n = g.n();
    Jet<S> p = g.jet(x, 1);
    auto md = metric_data(p);
    auto G = christoffel(p, md);
    auto beta = bt.eval(md, p.x);
    // d_k beta along the section
    std::vector<S> dbeta(n * beta.size());
    for (int k = 0; k < n; ++k) {
        std::vector<Dual<S>> xk(x.begin(), x.end());
        xk[k].d = S(1.0);
        Jet<Dual<S>> pk = g.jet(xk, 0);
        auto bk = bt.eval(metric_data(pk), pk.x);
        for (std::size_t c = 0; c < bk.size(); ++c) dbeta[k * beta.size() + c] = bk[c].d;
    }
    auto B = [&](int k, int a, int i, int b) -> const S& { return beta[beta_index(n, k, a, i, b)]; };
    auto dB = [&](int k, int a, int i, int b) -> const S& { return dbeta[k * beta.size() + beta_index(n, k, a, i, b)]; };
    std::vector<S> out(n * n * n, S(0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < n; ++i) {
                S t(0.0);
                for (int k = 0; k < n; ++k) {
                    S v = -dB(k, a, i, b);
                    for (int m = 0; m < n; ++m) v += B(k, a, m, b) * G(m, k, i) - B(k, a, i, m) * G(b, k, m);
                    t += sgn1(k) * v;
                }
                for (int r = 0; r < n; ++r) out[(a * n + r) * n + b] += t * md.ginv[r * n + i];
            }
    return out;
}

// E^{ab}(L_beta) along g at x from the displayed formula, indexed by sym2(a,b).
std::vector<double> el_residual_beta(const BetaForm& b, const PolySection& g, const std::vector<double>& x);

// Matrix of b for L_beta from the displayed closed form, rows (rs)*n+i, columns (ab)*n+j.
std::vector<double> bilinear_form_beta(const BetaForm& b, const JetPoint& mj);

// Flat-metric corollary expression C^{ki} = nabla_l nabla_t T^{klti} with
// T^{klti} = (-1)^l beta^{ik}_{lj} g^{jt}; returned symmetrised, index sym2(k,i).
// For constant g in affine coordinates (1 + delta_ki) E^{ki} = -C^{ki}.
// (nabla^2 T)_{qp}^{klti}, index (q*n+p)*n^4 + ((k*n+l)*n+t)*n+i.
std::vector<double> bf_nabla2_T(const BetaForm& b, const PolySection& g, const std::vector<double>& x);
std::vector<double> bf_flat_corollary(const BetaForm& b, const PolySection& g, const std::vector<double>& x);

}  // namespace jv
