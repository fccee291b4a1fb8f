#include "jetvar/bf.hpp"

#include <cmath>
#include <sstream>

namespace jv {

BetaForm BetaForm::zero(int n) {
    BetaForm b;
    b.n = n;
    b.kind = Kind::Zero;
    return b;
}

BetaForm BetaForm::eh(int n) {
    BetaForm b;
    b.n = n;
    b.kind = Kind::EH;
    return b;
}

BetaForm BetaForm::random_skew(int n, std::mt19937_64& rng, double linear_scale, double x_scale) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    int s2 = sym2_count(n);
    BetaForm b;
    b.n = n;
    b.kind = Kind::Skew;
    b.c.assign(n * n * n * n, 0.0);
    b.d.assign(n * n * n * n * s2, 0.0);
    if (x_scale != 0.0) {
        b.f.assign(n * n * n * n * n, 0.0);
        b.h.assign(n * n * n * n * s2, 0.0);
    }
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            int kl = k * n + l;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    int w = (kl * n + i) * n + j, wt = (kl * n + j) * n + i;
                    double cv = U(rng);
                    b.c[w] = cv;
                    b.c[wt] = -cv;
                    for (int e = 0; e < s2; ++e) {
                        double dv = linear_scale * U(rng);
                        b.d[w * s2 + e] = dv;
                        b.d[wt * s2 + e] = -dv;
                    }
                    if (x_scale == 0.0) continue;
                    for (int a = 0; a < n; ++a) {
                        double fv = x_scale * U(rng);
                        b.f[w * n + a] = fv;
                        b.f[wt * n + a] = -fv;
                    }
                    for (int e = 0; e < s2; ++e) {
                        double hv = x_scale * U(rng);
                        b.h[w * s2 + e] = hv;
                        b.h[wt * s2 + e] = -hv;
                    }
                }
        }
    return b;
}

BetaForm BetaForm::table(int n, const std::vector<std::pair<std::string, std::string>>& entries) {
    BetaForm b;
    b.n = n;
    b.kind = Kind::Table;
    b.expr.assign(n * n * n * n, Expr());
    int s2 = sym2_count(n);
    auto resolve = [n, s2](const std::string& name) -> int {
        if (name == "rho") return 2 * s2;
        if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] < '1' + n) return 2 * s2 + 1 + (name[1] - '1');
        std::string digits;
        int base = 0;
        if (name.rfind("gi", 0) == 0) {
            digits = name.substr(2);
            base = s2;
        } else if (name.rfind("g", 0) == 0) {
            digits = name.substr(1);
        } else {
            return -1;
        }
        if (digits.size() != 2 || !std::isdigit(digits[0]) || !std::isdigit(digits[1])) return -1;
        int a = digits[0] - '1', c = digits[1] - '1';
        if (a < 0 || c < 0 || a >= n || c >= n) return -1;
        return base + sym2(n, a, c);
    };
    for (const auto& [key, text] : entries) {
        std::vector<int> idx;
        std::stringstream ss(key);
        std::string tok;
        while (std::getline(ss, tok, ',')) idx.push_back(std::stoi(tok) - 1);
        if (idx.size() != 4) throw BetaError("beta table key must be k,l,j,i: " + key);
        for (int v : idx)
            if (v < 0 || v >= n) throw BetaError("beta table index out of range: " + key);
        if (idx[0] >= idx[1]) throw BetaError("beta table key needs k<l: " + key);
        b.expr[beta_index(n, idx[0], idx[1], idx[2], idx[3])] = Expr::parse(text, resolve);
    }
    return b;
}

double beta_skew_residual(const BetaForm& b, const JetPoint& mj) {
    int n = mj.n;
    auto md = metric_data(mj.truncated(0));
    auto beta = b.eval(md, mj.x);
    double scale = 0.0, r = 0.0;
    for (double v : beta) scale = std::max(scale, std::fabs(v));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d)
                for (int bb = 0; bb < n; ++bb) {
                    double v = 0.0;
                    for (int i = 0; i < n; ++i)
                        v += beta[beta_index(n, a, c, i, d)] * md.ginv[i * n + bb] +
                             beta[beta_index(n, a, c, i, bb)] * md.ginv[i * n + d];
                    r = std::max(r, std::fabs(v));
                }
    return scale > 0.0 ? r / scale : r;
}

void validate_beta(const BetaForm& b, const JetPoint& mj, double tol) {
    double r = beta_skew_residual(b, mj);
    if (r > tol) throw BetaError("beta is not skew with respect to g: residual " + std::to_string(r));
}

double l_beta(const BetaForm& b, const JetPoint& mj2) {
    validate_beta(b, mj2);
    return l_beta_trace(b, mj2);
}

std::vector<double> el_residual_beta(const BetaForm& bt, const PolySection& g, const std::vector<double>& x) {
    int n = g.n(), s2 = sym2_count(n);
    JetPoint p = g.jet(x, 2);
    validate_beta(bt, p);
    auto md = metric_data(p);
    auto cd = curvature(p);
    auto Phi = bf_phi(bt, g, x);
    // d_r Phi
    std::vector<double> dPhi(n * Phi.size());
    for (int r = 0; r < n; ++r) {
        auto ph = bf_phi(bt, g, shift1(x, r));
        for (std::size_t c = 0; c < ph.size(); ++c) dPhi[r * Phi.size() + c] = ph[c].d;
    }
    auto P = [&](int a, int r, int b) { return Phi[(a * n + r) * n + b]; };
    auto dP = [&](int rr, int a, int r, int b) { return dPhi[rr * Phi.size() + (a * n + r) * n + b]; };
    std::vector<double> E(s2, 0.0);
    for (int ab = 0; ab < s2; ++ab) {
        auto [a, b] = sym2_pair(n, ab);
        Jet<Dual<double>> w = jet_cast<Dual<double>>(p.truncated(0));
        w.y[ab].d = 1.0;
        auto beta = bt.eval(metric_data(w), w.x);
        double v = 0.0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                if (k == l) continue;
                double s = ((k + l) % 2 == 0) ? -1.0 : 1.0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) v += 0.5 * s * beta[beta_index(n, k, l, i, j)].d * cd.R(i, j, k, l);
            }
        double br = 0.0;
        for (int r = 0; r < n; ++r) br += sgn1(a) * dP(r, a, r, b) + sgn1(b) * dP(r, b, r, a);
        for (int l = 0; l < n; ++l)
            for (int r = 0; r < n; ++r)
                br += sgn1(l) * (P(l, r, b) * cd.gamma(a, r, l) + P(l, r, a) * cd.gamma(b, r, l));
        E[ab] = v - br / (a == b ? 2.0 : 1.0);
    }
    return E;
}

std::vector<double> bilinear_form_beta(const BetaForm& bt, const JetPoint& mj) {
    int n = mj.n, s2 = sym2_count(n), N = s2 * n;
    JetPoint q = mj.truncated(0);
    validate_beta(bt, q);
    auto md = metric_data(q);
    auto Bv = beta_aux(n, bt.eval(md, q.x));
    // dB[e][...] = d beta^{..}_{..} / d y_e
    std::vector<std::vector<double>> dB(s2);
    for (int e = 0; e < s2; ++e) {
        Jet<Dual<double>> w = jet_cast<Dual<double>>(q);
        w.y[e].d = 1.0;
        auto Bd = beta_aux(n, bt.eval(metric_data(w), w.x));
        dB[e].resize(Bd.size());
        for (std::size_t c = 0; c < Bd.size(); ++c) dB[e][c] = Bd[c].d;
    }
    auto y = [&](int a, int c) { return md.ginv[a * n + c]; };
    auto B = [&](int u, int v, int l, int t) { return Bv[((u * n + v) * n + l) * n + t]; };
    auto dBe = [&](int e, int u, int v, int l, int t) { return dB[e][((u * n + v) * n + l) * n + t]; };
    auto S = [](int k) { return sgn1(k); };
    std::vector<double> F(N * N, 0.0);
    for (int rs = 0; rs < s2; ++rs) {
        auto [r, s] = sym2_pair(n, rs);
        for (int ab = 0; ab < s2; ++ab) {
            auto [a, b] = sym2_pair(n, ab);
            double w = 0.5 / ((a == b ? 2.0 : 1.0) * (r == s ? 2.0 : 1.0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double v = 0.0;
                    for (int t = 0; t < n; ++t) {
                        v -= (S(a) * B(r, s, a, t) * y(t, b) + S(b) * B(r, s, b, t) * y(t, a)) * y(i, j);
                        v += (S(j) * B(r, s, j, t) * y(t, b) + S(b) * B(r, s, b, t) * y(t, j)) * y(i, a);
                        v += (S(a) * B(r, s, a, t) * y(t, j) + S(j) * B(r, s, j, t) * y(t, a)) * y(i, b);
                        v += (S(i) * B(a, b, i, t) * y(t, s) + S(s) * B(a, b, s, t) * y(t, i)) * y(r, j);
                        v += (S(i) * B(a, b, i, t) * y(t, r) + S(r) * B(a, b, r, t) * y(t, i)) * y(s, j);
                        v -= (S(b) * B(i, s, b, t) * y(t, j) + S(j) * B(i, s, j, t) * y(t, b)) * y(r, a);
                        v -= (S(b) * B(i, r, b, t) * y(t, j) + S(j) * B(i, r, j, t) * y(t, b)) * y(s, a);
                        v -= (S(a) * B(i, s, a, t) * y(t, j) + S(j) * B(i, s, j, t) * y(t, a)) * y(r, b);
                        v -= (S(a) * B(i, r, a, t) * y(t, j) + S(j) * B(i, r, j, t) * y(t, a)) * y(s, b);
                        v -= S(a) * B(i, j, a, t) * (y(t, r) * y(b, s) + y(t, s) * y(b, r));
                        v -= S(b) * B(i, j, b, t) * (y(t, r) * y(a, s) + y(t, s) * y(a, r));
                        v -= S(r) * B(i, j, r, t) * (y(t, a) * y(b, s) + y(t, b) * y(a, s));
                        v -= S(s) * B(i, j, s, t) * (y(t, a) * y(b, r) + y(t, b) * y(a, r));
                        v += (r == s ? 2.0 : 1.0) *
                             (S(a) * dBe(rs, i, j, a, t) * y(t, b) + S(b) * dBe(rs, i, j, b, t) * y(t, a));
                        v += (a == b ? 2.0 : 1.0) *
                             (S(r) * dBe(ab, i, j, r, t) * y(t, s) + S(s) * dBe(ab, i, j, s, t) * y(t, r));
                    }
                    F[(rs * n + i) * N + ab * n + j] = w * v;
                }
        }
    }
    return F;
}

namespace {

// nabla_p T^{klti} at x, index ((((p*n+k)*n+l)*n+t)*n+i).
template <class S>
std::vector<S> nabla_T(const BetaForm& bt, const PolySection& g, const std::vector<S>& x) {
    int n = g.n();
    auto Tat = [&](const auto& xx) {
        using T = typename std::decay_t<decltype(xx)>::value_type;
        auto p = g.jet(xx, 0);
        auto md = metric_data(p);
        auto B = beta_aux(n, bt.eval(md, p.x));
        std::vector<T> out(n * n * n * n, T(0.0));
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int t = 0; t < n; ++t)
                    for (int i = 0; i < n; ++i) {
                        T v(0.0);
                        for (int j = 0; j < n; ++j) v += B[((i * n + k) * n + l) * n + j] * md.ginv[j * n + t];
                        out[((k * n + l) * n + t) * n + i] = sgn1(l) * v;
                    }
        return out;
    };
    auto T0 = Tat(x);
    Jet<S> p1 = g.jet(x, 1);
    auto G = christoffel(p1);
    int n4 = n * n * n * n;
    std::vector<S> out(n * n4, S(0.0));
    auto T = [&](int k, int l, int t, int i) -> const S& { return T0[((k * n + l) * n + t) * n + i]; };
    for (int pp = 0; pp < n; ++pp) {
        std::vector<Dual<S>> xp(x.begin(), x.end());
        xp[pp].d = S(1.0);
        auto Tp = Tat(xp);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int t = 0; t < n; ++t)
                    for (int i = 0; i < n; ++i) {
                        S v = Tp[((k * n + l) * n + t) * n + i].d;
                        for (int m = 0; m < n; ++m)
                            v += G(k, pp, m) * T(m, l, t, i) + G(l, pp, m) * T(k, m, t, i) + G(t, pp, m) * T(k, l, m, i) +
                                 G(i, pp, m) * T(k, l, t, m);
                        out[pp * n4 + ((k * n + l) * n + t) * n + i] = v;
                    }
    }
    return out;
}

}  // namespace

std::vector<double> bf_nabla2_T(const BetaForm& bt, const PolySection& g, const std::vector<double>& x) {
    int n = g.n(), n4 = n * n * n * n;
    auto N0 = nabla_T(bt, g, x);
    JetPoint p1 = g.jet(x, 1);
    auto G = christoffel(p1);
    auto NT = [&](int pp, int k, int l, int t, int i) { return N0[pp * n4 + ((k * n + l) * n + t) * n + i]; };
    std::vector<double> out(n * n * n4, 0.0);
    for (int q = 0; q < n; ++q) {
        auto Nq = nabla_T(bt, g, shift1(x, q));
        for (int pp = 0; pp < n; ++pp)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int t = 0; t < n; ++t)
                        for (int i = 0; i < n; ++i) {
                            double v = Nq[pp * n4 + ((k * n + l) * n + t) * n + i].d;
                            for (int m = 0; m < n; ++m) {
                                v -= G(m, q, pp) * NT(m, k, l, t, i);
                                v += G(k, q, m) * NT(pp, m, l, t, i) + G(l, q, m) * NT(pp, k, m, t, i) +
                                     G(t, q, m) * NT(pp, k, l, m, i) + G(i, q, m) * NT(pp, k, l, t, m);
                            }
                            out[(q * n + pp) * n4 + ((k * n + l) * n + t) * n + i] = v;
                        }
    }
    return out;
}

std::vector<double> bf_flat_corollary(const BetaForm& bt, const PolySection& g, const std::vector<double>& x) {
    int n = g.n(), n4 = n * n * n * n;
    auto H = bf_nabla2_T(bt, g, x);
    std::vector<double> C(n * n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                for (int t = 0; t < n; ++t) C[k * n + i] += H[(l * n + t) * n4 + ((k * n + l) * n + t) * n + i];
    std::vector<double> out(sym2_count(n));
    for (int k = 0; k < n; ++k)
        for (int i = k; i < n; ++i) out[sym2(n, k, i)] = 0.5 * (C[k * n + i] + C[i * n + k]);
    return out;
}

}  // namespace jv
