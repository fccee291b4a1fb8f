#pragma once
// Metric jets on the bundle of symmetric bilinear forms: fibre coordinate
// alpha <-> pair (a<=b), y_alpha = g_ab. Classical tensors evaluated at any scalar type.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "jetvar/jet.hpp"
#include "jetvar/linalg.hpp"

namespace jv {

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Metric jet with declared signature (n_plus, n_minus).
struct MetricJet {
    JetPoint jet;  // m = n(n+1)/2
    int n_plus = 0, n_minus = 0;

    int n() const { return jet.n; }
    double g(int a, int b) const { return jet.y[sym2(jet.n, a, b)]; }
    double dg(int a, int b, int k) const { return jet.Y1(sym2(jet.n, a, b), k); }
    double d2g(int a, int b, int k, int l) const { return jet.Y2(sym2(jet.n, a, b), k, l); }
};

// Builds a metric jet from a jet on the metric bundle and checks signature and nondegeneracy.
MetricJet make_metric_jet(const JetPoint& p, int n_plus, int n_minus);
// Sign counts of the eigenvalues of g.
std::pair<int, int> signature_of(const JetPoint& p);

template <class S>
struct MetricData {
    int n = 0;
    std::vector<S> g, ginv;  // n*n full
    S det, rho;
};

template <class S>
MetricData<S> metric_data(const Jet<S>& p) {
    int n = p.n;
    MetricData<S> md;
    md.n = n;
    md.g.resize(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) md.g[a * n + b] = p.y[sym2(n, a, b)];
    md.ginv = inverse_det(md.g, n, md.det);
    if (std::fabs(value(md.det)) < 1e-300) throw MetricError("singular metric");
    using std::sqrt;
    md.rho = value(md.det) < 0 ? sqrt(-md.det) : sqrt(md.det);
    return md;
}

// rho = sqrt|det g| at any scalar type.
template <class S>
S rho_of(const Jet<S>& p) {
    return metric_data(p).rho;
}

// Lowered Christoffels G[l][j][k] = (1/2)(g_lj,k + g_lk,j - g_jk,l) and raised ones.
template <class S>
struct Christoffel {
    int n = 0;
    std::vector<S> low, up;  // index (l*n+j)*n+k, (i*n+j)*n+k
    const S& operator()(int i, int j, int k) const { return up[(i * n + j) * n + k]; }
};

template <class S>
Christoffel<S> christoffel(const Jet<S>& p, const MetricData<S>& md) {
    int n = p.n;
    Christoffel<S> c;
    c.n = n;
    c.low.assign(n * n * n, S(0.0));
    c.up.assign(n * n * n, S(0.0));
    auto dg = [&](int a, int b, int k) -> const S& { return p.dy[sym2(n, a, b) * n + k]; };
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                S v = 0.5 * (dg(l, j, k) + dg(l, k, j) - dg(j, k, l));
                c.low[(l * n + j) * n + k] = v;
                c.low[(l * n + k) * n + j] = v;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                S v(0.0);
                for (int l = 0; l < n; ++l) v += md.ginv[i * n + l] * c.low[(l * n + j) * n + k];
                c.up[(i * n + j) * n + k] = v;
                c.up[(i * n + k) * n + j] = v;
            }
    return c;
}

template <class S>
Christoffel<S> christoffel(const Jet<S>& p) {
    return christoffel(p, metric_data(p));
}

// Partial derivatives dGamma[k][i][j][l] = d Gamma^i_jl / dx^k, needs order-2 jet.
template <class S>
std::vector<S> christoffel_derivative(const Jet<S>& p, const MetricData<S>& md, const Christoffel<S>& c) {
    int n = p.n;
    auto dg = [&](int a, int b, int k) -> const S& { return p.dy[sym2(n, a, b) * n + k]; };
    auto d2g = [&](int a, int b, int k, int l) -> const S& { return p.Y2(sym2(n, a, b), k, l); };
    std::vector<S> out(n * n * n * n, S(0.0));
    for (int k = 0; k < n; ++k) {
        // d_k g^{ih} = -g^{ia} g_ab,k g^{bh}
        std::vector<S> dginv(n * n, S(0.0)), t(n * n, S(0.0));
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < n; ++b) {
                S v(0.0);
                for (int a = 0; a < n; ++a) v += md.ginv[i * n + a] * dg(a, b, k);
                t[i * n + b] = v;
            }
        for (int i = 0; i < n; ++i)
            for (int h = 0; h < n; ++h) {
                S v(0.0);
                for (int b = 0; b < n; ++b) v += t[i * n + b] * md.ginv[b * n + h];
                dginv[i * n + h] = -v;
            }
        for (int j = 0; j < n; ++j)
            for (int l = j; l < n; ++l) {
                std::vector<S> dlow(n);
                for (int h = 0; h < n; ++h) dlow[h] = 0.5 * (d2g(h, j, l, k) + d2g(h, l, j, k) - d2g(j, l, h, k));
                for (int i = 0; i < n; ++i) {
                    S v(0.0);
                    for (int h = 0; h < n; ++h)
                        v += dginv[i * n + h] * c.low[(h * n + j) * n + l] + md.ginv[i * n + h] * dlow[h];
                    out[((k * n + i) * n + j) * n + l] = v;
                    out[((k * n + i) * n + l) * n + j] = v;
                }
            }
    }
    return out;
}

template <class S>
struct CurvatureData {
    int n = 0;
    Christoffel<S> gamma;
    std::vector<S> riemann;  // R^i_jkl at ((i*n+j)*n+k)*n+l
    std::vector<S> ricci;    // R_jl = R^k_jkl
    S scalar;
    const S& R(int i, int j, int k, int l) const { return riemann[((i * n + j) * n + k) * n + l]; }
    const S& Ric(int j, int l) const { return ricci[j * n + l]; }
};

template <class S>
CurvatureData<S> curvature(const Jet<S>& p) {
    p.need(2);
    int n = p.n;
    auto md = metric_data(p);
    CurvatureData<S> cd;
    cd.n = n;
    cd.gamma = christoffel(p, md);
    auto dG = christoffel_derivative(p, md, cd.gamma);
    auto G = [&](int i, int j, int k) -> const S& { return cd.gamma.up[(i * n + j) * n + k]; };
    auto dGam = [&](int k, int i, int j, int l) -> const S& { return dG[((k * n + i) * n + j) * n + l]; };
    cd.riemann.assign(n * n * n * n, S(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    S v = dGam(k, i, j, l) - dGam(l, i, j, k);
                    for (int m = 0; m < n; ++m) v += G(m, j, l) * G(i, k, m) - G(m, j, k) * G(i, l, m);
                    cd.riemann[((i * n + j) * n + k) * n + l] = v;
                    cd.riemann[((i * n + j) * n + l) * n + k] = -v;
                }
    cd.ricci.assign(n * n, S(0.0));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            S v(0.0);
            for (int k = 0; k < n; ++k) v += cd.R(k, j, k, l);
            cd.ricci[j * n + l] = v;
        }
    cd.scalar = S(0.0);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) cd.scalar += md.ginv[j * n + l] * cd.ricci[j * n + l];
    return cd;
}

// Scalar curvature only, without assembling the full Riemann tensor.
template <class S>
S scalar_curvature(const Jet<S>& p, const MetricData<S>& md) {
    int n = p.n;
    auto c = christoffel(p, md);
    auto dG = christoffel_derivative(p, md, c);
    auto G = [&](int i, int j, int k) -> const S& { return c.up[(i * n + j) * n + k]; };
    // contracted Christoffel Gamma^k_km
    std::vector<S> tr(n, S(0.0));
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) tr[m] += G(k, k, m);
    S r(0.0);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            S v(0.0);
            for (int k = 0; k < n; ++k) v += dG[((k * n + k) * n + j) * n + l] - dG[((l * n + k) * n + j) * n + k];
            for (int m = 0; m < n; ++m) {
                v += G(m, j, l) * tr[m];
                for (int k = 0; k < n; ++k) v -= G(m, j, k) * G(k, l, m);
            }
            r += md.ginv[j * n + l] * v;
        }
    return r;
}

// First-order metric jet whose Levi-Civita connection is the given symmetric connection at x.
// dg_{ij,k} = Gamma^h_{ik} g_hj + Gamma^h_{jk} g_hi.
JetPoint sigma_nabla(int n, const std::vector<double>& gamma, const std::vector<double>& g_full,
                     const std::vector<double>& x);
// Residual max |(nabla g)_{ij;k}| for a first-order metric jet and connection.
double covariant_metric_residual(const JetPoint& p, const std::vector<double>& gamma);

// Random metric g = A D A^T with |det A| in [0.5, 2] and derivative entries uniform in [-1, 1].
JetPoint random_metric_jet(int n, int n_minus, int order, std::mt19937_64& rng, double deriv_scale = 1.0);
// Constant metric diag(eps) as a jet.
JetPoint constant_metric_jet(const std::vector<double>& eps, int order);

}  // namespace jv
