#include "jetvar/eh.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace jv {

namespace {

inline double kd(int a, int b) { return a == b ? 1.0 : 0.0; }

Poly pad(const Poly& p, int nv) {
    Poly r(nv);
    for (const auto& [e, c] : p.terms) {
        std::vector<int> f(nv, 0);
        for (std::size_t i = 0; i < e.size() && (int)i < nv; ++i) f[i] = e[i];
        r.add_term(f, c);
    }
    return r;
}

}  // namespace

double EHCoefficients::Lij(int i, int j, int r, int s) const {
    int s2 = sym2_count(n);
    return Lij_rs[sym2(n, i, j) * s2 + sym2(n, r, s)];
}

double EHCoefficients::Ytab(int i, int r, int s, int j, int k, int l) const {
    int s2 = sym2_count(n);
    return Y[((i * s2 + sym2(n, r, s)) * n + j) * s2 + sym2(n, k, l)];
}

double eh_Y(const MetricData<double>& md, int i, int r, int s, int j, int k, int l) {
    int n = md.n;
    auto y = [&](int a, int b) { return md.ginv[a * n + b]; };
    double v = 2 * y(r, s) * y(k, l) * y(i, j) - (y(r, k) * y(s, l) + y(r, l) * y(s, k)) * y(i, j) +
               (y(s, k) * y(l, j) + y(s, l) * y(k, j)) * y(r, i) + (y(r, k) * y(l, j) + y(r, l) * y(k, j)) * y(s, i) -
               (y(k, i) * y(l, j) + y(l, i) * y(k, j)) * y(r, s) - (y(r, i) * y(s, j) + y(r, j) * y(s, i)) * y(k, l);
    return md.rho * v / ((1 + kd(k, l)) * (1 + kd(r, s)));
}

double eh_L0_closed(const JetPoint& mj) {
    int n = mj.n;
    auto md = metric_data(mj);
    auto y = [&](int a, int b) { return md.ginv[a * n + b]; };
    auto d = [&](int a, int b, int k) { return mj.Y1(sym2(n, a, b), k); };
    double sum = 0.0;
    for (int r = 0; r < n; ++r)
        for (int s = r; s < n; ++s)
            for (int k = 0; k < n; ++k)
                for (int l = k; l < n; ++l) {
                    double w = 1.0 / ((1 + kd(k, l)) * (1 + kd(r, s)));
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            double br = 2 * y(r, s) * (y(k, i) * y(j, l) + y(l, i) * y(j, k)) -
                                        2 * y(k, l) * y(s, r) * y(j, i) +
                                        2 * y(k, l) * (y(j, r) * y(s, i) + y(j, s) * y(r, i)) +
                                        3 * y(i, j) * (y(k, r) * y(l, s) + y(k, s) * y(l, r)) -
                                        y(i, r) * (y(k, s) * y(j, l) + y(l, s) * y(j, k)) -
                                        y(i, s) * (y(k, r) * y(j, l) + y(l, r) * y(j, k)) -
                                        2 * y(k, i) * (y(s, l) * y(j, r) + y(r, l) * y(j, s)) -
                                        2 * y(l, i) * (y(s, k) * y(j, r) + y(r, k) * y(j, s));
                            sum += w * br * d(k, l, i) * d(r, s, j);
                        }
                }
    return 0.5 * md.rho * sum;
}

double eh_H_closed(const JetPoint& mj) {
    int n = mj.n;
    auto md = metric_data(mj);
    auto y = [&](int a, int b) { return md.ginv[a * n + b]; };
    auto d = [&](int a, int b, int k) { return mj.Y1(sym2(n, a, b), k); };
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l)
            for (int r = 0; r < n; ++r)
                for (int s = r; s < n; ++s) {
                    double w = 1.0 / ((1 + kd(r, s)) * (1 + kd(k, l)));
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            double br = -y(i, j) * y(k, l) * y(r, s) + y(k, l) * (y(i, r) * y(j, s) + y(i, s) * y(j, r)) +
                                        0.5 * y(i, j) * (y(k, s) * y(l, r) + y(k, r) * y(l, s)) -
                                        0.5 * y(i, r) * (y(j, l) * y(k, s) + y(j, k) * y(l, s)) -
                                        0.5 * y(i, s) * (y(j, l) * y(k, r) + y(j, k) * y(l, r));
                            sum += w * br * d(r, s, j) * d(k, l, i);
                        }
                }
    return md.rho * sum;
}

double eh_H_christoffel(const JetPoint& mj) {
    int n = mj.n;
    JetPoint q = mj.truncated(1);
    auto md = metric_data(q);
    auto G = christoffel(q, md);
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int r = 0; r < n; ++r)
                for (int h = 0; h < n; ++h) v += G(r, i, j) * G(h, h, r) - G(r, h, i) * G(h, j, r);
            sum += md.ginv[i * n + j] * v;
        }
    return md.rho * sum;
}

EHCoefficients eh_coefficients(const JetPoint& mj) {
    int n = mj.n, s2 = sym2_count(n);
    JetPoint q = mj.truncated(1);
    auto md = metric_data(q);
    EHCoefficients c;
    c.n = n;
    c.Lij_rs = eh_Lij_table(q);
    c.L0 = eh_L0_closed(q);
    c.Y.assign(n * s2 * n * s2, 0.0);
    for (int i = 0; i < n; ++i)
        for (int rs = 0; rs < s2; ++rs)
            for (int j = 0; j < n; ++j)
                for (int kl = 0; kl < s2; ++kl) {
                    auto [r, s] = sym2_pair(n, rs);
                    auto [k, l] = sym2_pair(n, kl);
                    c.Y[((i * s2 + rs) * n + j) * s2 + kl] = eh_Y(md, i, r, s, j, k, l);
                }
    c.p.assign(s2 * n, 0.0);
    for (int kl = 0; kl < s2; ++kl)
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (int rs = 0; rs < s2; ++rs)
                for (int j = 0; j < n; ++j) v += c.Y[((i * s2 + rs) * n + j) * s2 + kl] * q.Y1(rs, j);
            c.p[kl * n + i] = v;
        }
    c.H = eh_H_closed(q);
    return c;
}

double eh_reconstructed(const JetPoint& mj2) {
    int n = mj2.n, s2 = sym2_count(n);
    auto c = eh_coefficients(mj2);
    double v = c.L0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int rs = 0; rs < s2; ++rs) v += c.Lij_rs[sym2(n, i, j) * s2 + rs] * mj2.Y2(rs, i, j);
    return v;
}

double eh_coordinate_form(const JetPoint& mj2) {
    int n = mj2.n;
    auto md = metric_data(mj2);
    auto y = [&](int a, int b) { return md.ginv[a * n + b]; };
    double v = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    v += (y(a, c) * y(b, d) - y(a, b) * y(c, d)) * mj2.Y2(sym2(n, a, b), c, d);
    return md.rho * v + eh_L0_closed(mj2.truncated(1));
}

double regularity_determinant(const JetPoint& mj) {
    int n = mj.n;
    if (n < 2) throw std::invalid_argument("regularity_determinant: n >= 2 required");
    return determinant(eh_Lij_table(mj.truncated(0)), sym2_count(n));
}

double regularity_identity(int n, double det_g) {
    double rho = std::sqrt(std::fabs(det_g));
    return -(n - 1) * std::pow(rho, 0.5 * n * (n + 1)) / std::pow(det_g, n + 1);
}

double regularity_identity_printed(int n, double rho) { return -(n - 1) * std::pow(rho, 0.5 * (n + 1) * (n + 4)); }

std::vector<double> eh_Y_matrix(const JetPoint& mj) {
    int n = mj.n, s2 = sym2_count(n), N = s2 * n;
    auto md = metric_data(mj.truncated(0));
    std::vector<double> M(N * N);
    for (int kl = 0; kl < s2; ++kl)
        for (int i = 0; i < n; ++i)
            for (int rs = 0; rs < s2; ++rs)
                for (int j = 0; j < n; ++j) {
                    auto [r, s] = sym2_pair(n, rs);
                    auto [k, l] = sym2_pair(n, kl);
                    M[(kl * n + i) * N + rs * n + j] = eh_Y(md, i, r, s, j, k, l);
                }
    return M;
}

VectorField natural_lift(int n, const std::vector<Poly>& u) {
    int m = sym2_count(n), nv = n + m;
    std::vector<Poly> U, V(m, Poly(nv));
    for (const auto& p : u) U.push_back(pad(p, nv));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Poly v(nv);
            for (int h = 0; h < n; ++h) {
                v = v - U[h].diff(a) * Poly::variable(nv, n + sym2(n, h, b));
                v = v - U[h].diff(b) * Poly::variable(nv, n + sym2(n, a, h));
            }
            V[sym2(n, a, b)] = v;
        }
    return VectorField(n, m, U, V);
}

PhiResult phi_matrix(const JetPoint& mj, int s, int t, int u, int v) {
    int n = mj.n, s2 = sym2_count(n);
    if (n < 3) throw std::invalid_argument("phi_matrix: n >= 3 required");
    JetPoint q = mj.truncated(0);
    int st = sym2(n, s, t), uv = sym2(n, u, v);
    auto M = eh_Lij_table(q);
    double detM;
    auto Lam = inverse_det(M, s2, detM);
    // D1[(jk*s2 + ab)*s2 + e] = d L^{jk}_{ab} / d y_e
    using D = Dual<double>;
    using DD = Dual<D>;
    std::vector<double> D1(s2 * s2 * s2);
    for (int e = 0; e < s2; ++e) {
        Jet<D> w = jet_cast<D>(q);
        w.y[e].d = 1.0;
        auto T = eh_Lij_table(w);
        for (int k = 0; k < s2 * s2; ++k) D1[k * s2 + e] = T[k].d;
    }
    auto d1 = [&](int jk, int ab, int e) { return D1[(jk * s2 + ab) * s2 + e]; };
    // second derivatives d^2 L^{jk}_{x} / dy_cd dy_w for (x, w) = (st, uv) and (uv, st)
    std::vector<double> A1(s2 * s2), A2(s2 * s2);
    for (int cd = 0; cd < s2; ++cd) {
        Jet<DD> w = jet_cast<DD>(q);
        w.y[cd].v.d = 1.0;
        w.y[uv].d.v = 1.0;
        auto T = eh_Lij_table(w);
        Jet<DD> w2 = jet_cast<DD>(q);
        w2.y[cd].v.d = 1.0;
        w2.y[st].d.v = 1.0;
        auto T2 = eh_Lij_table(w2);
        for (int jk = 0; jk < s2; ++jk) {
            A1[jk * s2 + cd] = T[jk * s2 + st].d.d;
            A2[jk * s2 + cd] = T2[jk * s2 + uv].d.d;
        }
    }
    PhiResult out;
    out.n = n;
    out.matrix.assign(s2 * s2, 0.0);
    for (int jk = 0; jk < s2; ++jk)
        for (int cd = 0; cd < s2; ++cd) {
            double val = A1[jk * s2 + cd] - A2[jk * s2 + cd];
            for (int ab = 0; ab < s2; ++ab) {
                double x1 = d1(jk, ab, st) - d1(jk, st, ab);
                double x2 = d1(jk, uv, ab) - d1(jk, ab, uv);
                for (int pq = 0; pq < s2; ++pq)
                    val += Lam[ab * s2 + pq] * (x1 * d1(pq, uv, cd) + x2 * d1(pq, st, cd));
            }
            out.matrix[jk * s2 + cd] = val;
        }
    double f = 0.0;
    for (double x : out.matrix) f += x * x;
    out.frobenius = std::sqrt(f);
    out.det = determinant(out.matrix, s2);
    out.nonzero = out.frobenius > 1e-12;
    return out;
}

PhiStack phi_stack(const JetPoint& mj) {
    int n = mj.n, s2 = sym2_count(n);
    std::vector<Eigen::MatrixXd> blocks;
    PhiStack out;
    for (int a = 0; a < s2; ++a)
        for (int b = a + 1; b < s2; ++b) {
            auto [s, t] = sym2_pair(n, a);
            auto [u, v] = sym2_pair(n, b);
            auto ph = phi_matrix(mj, s, t, u, v);
            Eigen::MatrixXd P = Eigen::Map<Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(ph.matrix.data(), s2, s2);
            Eigen::FullPivLU<Eigen::MatrixXd> lu(P);
            lu.setThreshold(1e-9);
            out.max_block_rank = std::max(out.max_block_rank, (int)lu.rank());
            blocks.push_back(P);
        }
    out.blocks = (int)blocks.size();
    Eigen::MatrixXd S(s2 * blocks.size(), s2);
    for (std::size_t k = 0; k < blocks.size(); ++k) S.block(k * s2, 0, s2, s2) = blocks[k];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S);
    out.sv_max = svd.singularValues()(0);
    out.sv_min = svd.singularValues()(s2 - 1);
    return out;
}

std::vector<double> covariant_current(const std::vector<Poly>& u, const PolySection& g, const std::vector<double>& x) {
    int n = g.n();
    JetPoint p = g.jet(x, 2);
    auto md = metric_data(p);
    auto G = christoffel(p, md);
    auto dG = christoffel_derivative(p, md, G);
    auto Gam = [&](int i, int j, int k) { return G(i, j, k); };
    auto dGam = [&](int a, int i, int j, int k) { return dG[((a * n + i) * n + j) * n + k]; };
    std::vector<double> U(n), dU(n * n), ddU(n * n * n);
    for (int c = 0; c < n; ++c) {
        Poly pc = pad(u[c], n);
        U[c] = pc.eval(x);
        for (int h = 0; h < n; ++h) {
            Poly ph = pc.diff(h);
            dU[c * n + h] = ph.eval(x);
            for (int a = 0; a < n; ++a) ddU[(c * n + h) * n + a] = ph.diff(a).eval(x);
        }
    }
    // nabla_h u^c
    std::vector<double> Nu(n * n);
    for (int c = 0; c < n; ++c)
        for (int h = 0; h < n; ++h) {
            double v = dU[c * n + h];
            for (int b = 0; b < n; ++b) v += Gam(c, h, b) * U[b];
            Nu[c * n + h] = v;
        }
    // T^c_{ah} = nabla_a nabla_h u^c
    std::vector<double> T(n * n * n);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int h = 0; h < n; ++h) {
                double v = ddU[(c * n + h) * n + a];
                for (int b = 0; b < n; ++b) v += dGam(a, c, h, b) * U[b] + Gam(c, h, b) * dU[b * n + a];
                for (int mm = 0; mm < n; ++mm) v += -Gam(mm, a, h) * Nu[c * n + mm] + Gam(c, a, mm) * Nu[mm * n + h];
                T[(c * n + a) * n + h] = v;
            }
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        double w1 = 0.0, w2 = 0.0;
        for (int a = 0; a < n; ++a)
            for (int h = 0; h < n; ++h) {
                w1 += md.ginv[a * n + h] * T[(j * n + a) * n + h];
                w2 += md.ginv[j * n + a] * T[(h * n + a) * n + h];
            }
        double c = md.rho * (w2 - w1);
        out[j] = (j % 2 == 0) ? c : -c;
    }
    return out;
}

EHCurrent noether_current_eh(const std::vector<Poly>& u, const PolySection& g, const std::vector<double>& x) {
    int n = g.n();
    EHLagrangian L(n);
    EHCurrent out;
    out.jet_form = noether_current(L, natural_lift(n, u), g, x);
    out.covariant_form = covariant_current(u, g, x);
    return out;
}

PolySection pullback_metric(const std::vector<double>& A, const std::vector<Poly>& phi, int n) {
    std::vector<Poly> dphi(n * n);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) dphi[a * n + i] = pad(phi[a], n).diff(i);
    std::vector<Poly> comps(sym2_count(n), Poly(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Poly g(n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (A[a * n + b] != 0.0) g = g + dphi[a * n + i] * dphi[b * n + j] * A[a * n + b];
            comps[sym2(n, i, j)] = g;
        }
    return PolySection(n, sym2_count(n), comps);
}

PolySection constant_metric_section(const std::vector<double>& A, int n) {
    std::vector<Poly> comps;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) comps.push_back(Poly::constant(n, A[i * n + j]));
    return PolySection(n, sym2_count(n), comps);
}

}  // namespace jv
