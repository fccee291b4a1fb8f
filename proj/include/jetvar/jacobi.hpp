#pragma once
// Jacobi fields: the linearized Hamilton-Cartan equation along an extremal, its E-H form,
// the constant-coefficient operator at a flat metric and exact polynomial solution spaces.

#include <string>
#include <vector>

#include "jetvar/rational.hpp"
#include "jetvar/varcore.hpp"

namespace jv {

// Section s + t V as a jet whose outer dual layer carries d/dt.
template <class T>
Jet<Dual<T>> perturbed_jet(const PolySection& s, const PolySection& V, const std::vector<T>& x, int order) {
    Jet<T> a = s.jet(x, order), b = V.jet(x, order);
    Jet<Dual<T>> o(a.n, a.m, order);
    for (int c = 0; c < a.size(); ++c) o.coord(c) = Dual<T>(a.coord(c), c < a.n ? T(0.0) : b.coord(c));
    return o;
}

struct JacobiResidual {
    std::vector<double> r;        // one per fibre coordinate
    double extremal_defect = 0;   // max |J_a(s)|, nonzero when s is not an extremal
};

// J_a(s) = y^b_i dp^i_b/dy^a + dH/dy^a - d_i(p^i_a o j^1 s), the pullback of i_{d/dy^a} dTheta.
// The Jacobi residual is dJ_a(s + t V)/dt at t = 0.
template <class L>
JacobiResidual jacobi_residual(const L& lag, const PolySection& s, const PolySection& V, const std::vector<double>& x) {
    int n = s.n(), m = s.m();
    if (V.n() != n || V.m() != m) throw std::invalid_argument("jacobi_residual: field and section shapes differ");
    using D = Dual<double>;
    using DD = Dual<D>;
    auto lv = primitive_levels(lag, s.jet(x, 1));
    JacobiResidual out;
    out.r.assign(m, 0.0);
    std::vector<double> J(m, 0.0);
    std::vector<D> xd(x.begin(), x.end());
    for (int a = 0; a < m; ++a) {
        Jet<DD> w = perturbed_jet(s, V, xd, 1);
        w.y[a].v.d = 1.0;
        auto p = momenta(lag, w, lv);
        DD acc = hamiltonian(lag, w, lv);
        for (int k = 0; k < m * n; ++k) acc += w.dy[k] * p[k];
        out.r[a] += acc.d.d;
        J[a] += acc.v.d;
    }
    for (int i = 0; i < n; ++i) {
        auto w = perturbed_jet(s, V, shift1(x, i), 1);
        auto p = momenta(lag, w, lv);
        for (int a = 0; a < m; ++a) {
            out.r[a] -= p[a * n + i].d.d;
            J[a] -= p[a * n + i].v.d;
        }
    }
    for (double v : J) out.extremal_defect = std::max(out.extremal_defect, std::fabs(v));
    return out;
}

// Coefficient of d_i d_j V^{ab} in equation (mu nu) of the E-H Jacobi system, summed over all
// ordered (a, b) and (i, j):
// (1/2)[(d_{a nu} d_{j mu} + d_{a mu} d_{nu j}) g^{ib} - g^{ij} d_{a nu} d_{b mu} - g^{ab} d_{i nu} d_{j mu}].
template <class S>
S eh_jacobi_principal(const std::vector<S>& ginv, int n, int mu, int nu, int a, int b, int i, int j) {
    auto d = [](int p, int q) { return p == q ? 1 : 0; };
    S v = S((d(a, nu) * d(j, mu) + d(a, mu) * d(nu, j))) * ginv[i * n + b];
    if (d(a, nu) && d(b, mu)) v = v - ginv[i * n + j];
    if (d(i, nu) && d(j, mu)) v = v - ginv[a * n + b];
    return v / S(2);
}

// Full coefficient arrays of the E-H Jacobi system along g at x.
// A[((e*n + a)*n + b)*n*n + i*n + j], B[((e*n + a)*n + b)*n + i], C[(e*n + a)*n + b], e = sym2(mu, nu).
struct EHJacobiCoefficients {
    int n = 0;
    std::vector<double> A, B, C;
};
// Displayed: zeroth-order coefficient as printed. Linearized: the zeroth-order coefficient of
// the linearized Ricci tensor, g^{lb} R^a_{mu nu l} + g^{lr}(Gamma^b_{lr} Gamma^a_{mu nu} - Gamma^b_{nu r} Gamma^a_{l mu}).
enum class EHJacobiForm { Displayed, Linearized };
EHJacobiCoefficients eh_jacobi_coefficients(const PolySection& g, const std::vector<double>& x,
                                            EHJacobiForm form = EHJacobiForm::Displayed);

// Residual of the E-H system, one entry per sym2(mu, nu); V indexed by sym2(a, b).
std::vector<double> eh_jacobi_residual(const PolySection& g, const PolySection& V, const std::vector<double>& x,
                                       EHJacobiForm form = EHJacobiForm::Displayed);
// Generic Jacobi residual mapped to the E-H normalisation: the generic residual of L_EH along a
// Ricci-flat g equals -(2 - delta_ab) rho (g^{a mu} g^{b nu} - g^{ab} g^{mu nu} / 2) r_{mu nu}.
std::vector<double> eh_from_generic(const std::vector<double>& generic, const PolySection& g, const std::vector<double>& x);

// Square matrix of constant-coefficient second-order operators on N = n(n+1)/2 unknowns:
// entry (A, B) is sum_{i<=j} c[(A*N + B)*s2 + sym2(i, j)] D^i D^j.
struct DiffOpMatrix {
    int n = 0, N = 0;
    std::vector<Q> c;
    DiffOpMatrix() = default;
    explicit DiffOpMatrix(int n_);
    Q& at(int A, int B, int i, int j);
    const Q& at(int A, int B, int i, int j) const;
    std::string entry_str(int A, int B) const;
    bool entry_equal(const DiffOpMatrix& o, int A, int B) const;
    int max_degree() const;
};

// Operator of the E-H Jacobi system at the constant metric diag(eps).
DiffOpMatrix flat_operator_matrix(const std::vector<int>& eps);
// Parses "sum c D<i> D<j>" / "c D<i>^2" terms, e.g. "-1/2 D2^2 + D1 D3".
std::vector<Q> parse_quadratic_symbol(int n, const std::string& text);
// The printed 10x10 table for n = 4, Lorentzian signature, as a DiffOpMatrix.
DiffOpMatrix printed_flat_operator();

// Homogeneous vector polynomial of degree r: c[A*M + k] multiplies monos[k].
struct QPolyVec {
    int n = 0, N = 0, degree = 0;
    std::vector<std::vector<int>> monos;
    std::vector<Q> c;
    Q coeff(int A, const std::vector<int>& e) const;
    std::string str() const;
};
std::vector<std::vector<int>> homogeneous_monomials(int n, int r);
QPolyVec apply_operator(const DiffOpMatrix& op, const QPolyVec& U);
bool is_zero(const QPolyVec& U);

struct SolutionSpace {
    int degree = 0;
    int unknowns = 0;
    int constraints_rank = 0;
    int dimension = 0;
    std::vector<QPolyVec> basis;
};
SolutionSpace polynomial_solution_space(const DiffOpMatrix& op, int r);

// One printed quadratic-coefficient relation sum coef * lambda^A_{jk} = 0 (1-based A, j <= k).
struct LambdaTerm {
    Q coef;
    int A, j, k;
};
std::vector<std::vector<LambdaTerm>> printed_eq_lambdas();
// Values of the printed relations on a quadratic field (lambda^A_{jk} = coefficient of x^j x^k).
std::vector<Q> eq_lambdas_values(const QPolyVec& U);

// D^I U for a multi-index I of order r - 2 (exponents per variable), giving a quadratic field.
QPolyVec derivative_shift(const QPolyVec& U, const std::vector<int>& I);
// D^I U is a quadratic solution of op. The printed relations are reported separately by
// eq_lambdas_values since some of them do not follow from the operator.
bool derivative_shift_check(const DiffOpMatrix& op, const QPolyVec& U, const std::vector<int>& I);

// Printed quadratic basis entries as strings like "(x2)^2 E1 + x1 x2 E2"; the garbled ones are
// marked with a parse failure. parse_quadratic_field returns false on malformed text.
bool parse_quadratic_field(const std::string& text, QPolyVec& out);
std::vector<std::string> printed_quadratic_basis();

}  // namespace jv
