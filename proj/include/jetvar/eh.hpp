#pragma once
// Einstein-Hilbert Lagrangian on the bundle of metrics: functor, closed-form coefficient
// tables, regularity determinant, natural lifts, Noether currents and Phi matrices.

#include <vector>

#include "jetvar/metric.hpp"
#include "jetvar/symmetry.hpp"

namespace jv {

// L_EH = rho * scalar curvature, evaluated through Christoffel symbols.
struct EHLagrangian {
    int n = 0, m = 0, order = 2;
    explicit EHLagrangian(int n_) : n(n_), m(sym2_count(n_)) {}
    template <class S>
    S operator()(const Jet<S>& p) const {
        auto md = metric_data(p);
        return md.rho * scalar_curvature(p, md);
    }
};

// (L_EH)^{ij}_{rs} = rho (g^{ir} g^{js} + g^{jr} g^{is} - 2 g^{rs} g^{ij}) / (1 + delta_rs).
template <class S>
S eh_Lij_rs(const MetricData<S>& md, int i, int j, int r, int s) {
    int n = md.n;
    auto gi = [&](int a, int b) -> const S& { return md.ginv[a * n + b]; };
    S v = gi(i, r) * gi(j, s) + gi(j, r) * gi(i, s) - 2.0 * gi(r, s) * gi(i, j);
    return md.rho * v / (r == s ? 2.0 : 1.0);
}

// Full table at any scalar type, rows (ij), columns (rs), both i<=j / r<=s.
template <class S>
std::vector<S> eh_Lij_table(const Jet<S>& p) {
    auto md = metric_data(p);
    int n = p.n, s2 = sym2_count(n);
    std::vector<S> M(s2 * s2);
    for (int c = 0; c < s2; ++c) {
        auto [i, j] = sym2_pair(n, c);
        for (int d = 0; d < s2; ++d) {
            auto [r, s] = sym2_pair(n, d);
            M[c * s2 + d] = eh_Lij_rs(md, i, j, r, s);
        }
    }
    return M;
}

struct EHCoefficients {
    int n = 0;
    std::vector<double> Lij_rs;  // (ij)*s2 + (rs)
    double L0 = 0.0;
    std::vector<double> Y;       // ((i*s2 + rs)*n + j)*s2 + kl
    std::vector<double> p;       // kl*n + i
    double H = 0.0;
    double Lij(int i, int j, int r, int s) const;
    double Ytab(int i, int r, int s, int j, int k, int l) const;
};

EHCoefficients eh_coefficients(const JetPoint& mj);
double eh_L0_closed(const JetPoint& mj);
double eh_Y(const MetricData<double>& md, int i, int r, int s, int j, int k, int l);
double eh_H_closed(const JetPoint& mj);
double eh_H_christoffel(const JetPoint& mj);
// L reconstructed from the coefficient table: sum over all (i,j), r<=s of L^{ij}_{rs} g_{rs,ij} + L0.
double eh_reconstructed(const JetPoint& mj2);
// Coordinate form rho sum (g^{ac}g^{bd} - g^{ab}g^{cd}) g_{ab,cd} + L0.
double eh_coordinate_form(const JetPoint& mj2);

double regularity_determinant(const JetPoint& mj);
// -(n-1) rho^{n(n+1)/2} (det g)^{-(n+1)}; for Riemannian g this is -(n-1) rho^{(n+1)(n-4)/2}.
double regularity_identity(int n, double det_g);
// The printed form -(n-1) rho^{(n+1)(n+4)/2}, kept for comparison reports.
double regularity_identity_printed(int n, double rho);

// Y table as the (i,kl) x (j,rs) matrix, rows kl*n+i, columns rs*n+j (the b form of L_EH).
std::vector<double> eh_Y_matrix(const JetPoint& mj);

// Natural lift of u^i(x) d/dx^i to the metric bundle: v_ab = -(d_a u^h g_hb + d_b u^h g_ah).
VectorField natural_lift(int n, const std::vector<Poly>& u);

struct PhiResult {
    int n = 0;
    std::vector<double> matrix;  // rows (jk), columns (cd)
    double frobenius = 0.0;
    double det = 0.0;
    bool nonzero = false;
};

PhiResult phi_matrix(const JetPoint& mj, int s, int t, int u, int v);

// All Phi_{st,uv} with (st) < (uv) stacked vertically; singular values of the stack relative
// to the largest one. A positive minimum means the integrability conditions force V = 0.
struct PhiStack {
    int blocks = 0;
    int max_block_rank = 0;
    double sv_max = 0.0, sv_min = 0.0;
};
PhiStack phi_stack(const JetPoint& mj);

struct EHCurrent {
    std::vector<double> jet_form;        // from the Poincare-Cartan coefficients
    std::vector<double> covariant_form;  // rho (-1)^{j-1} (W2^j - W1^j)
};

// u: n polynomials in x (n variables), g: metric section.
EHCurrent noether_current_eh(const std::vector<Poly>& u, const PolySection& g, const std::vector<double>& x);
std::vector<double> covariant_current(const std::vector<Poly>& u, const PolySection& g, const std::vector<double>& x);

// Pullback of the constant metric A (n*n) by the polynomial map phi: g = (D phi)^T A (D phi). Flat.
PolySection pullback_metric(const std::vector<double>& A, const std::vector<Poly>& phi, int n);
PolySection constant_metric_section(const std::vector<double>& A, int n);

}  // namespace jv
