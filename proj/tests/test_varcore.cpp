#include "common.hpp"
#include "jetvar/eh.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/jetcalc.hpp"
#include "jetvar/samples.hpp"
#include "jetvar/symmetry.hpp"
#include "jetvar/varcore.hpp"

using namespace jv;
using namespace jvt;

namespace {

// A projectable second-order Lagrangian: a first-order part plus a total derivative
// D_1(y1 y1_2) = y1_1 y1_2 + y1 y1_12, so L-bar differs from L by a divergence only.
ExprJetFunction toy_projectable() {
    return ExprJetFunction::parse("y1_1*y1_2 + y1*y1_12 + sin(y1)*y1_1^2 + x2*y1_2*y1 + 0.5*y1_2^2", 2, 1, 2);
}

}  // namespace

TEST_CASE("Legendre coefficients of a first-order Lagrangian") {
    auto L = ExprJetFunction::parse("y1_1*y1_2 + x1*y1^2 + y1_2^2", 2, 1, 2);
    std::mt19937_64 rng(1);
    auto p = random_jet(2, 1, 3, rng);
    auto lc = legendre_coefficients(L, p);
    for (double v : lc.Lij) CHECK(v == 0.0);
    CHECK(lc.i0(0, 0) == doctest::Approx(p.Y1(0, 1)).epsilon(1e-14));
    CHECK(lc.i0(0, 1) == doctest::Approx(p.Y1(0, 0) + 2 * p.Y1(0, 1)).epsilon(1e-14));
}

TEST_CASE("Legendre convention on (y_11)^2") {
    // L^{ij} = (1/(2 - delta_ij)) dL/dy_(ij): for i = j the factor is 1.
    auto L = ExprJetFunction::parse("y1_11^2", 1, 1, 2);
    JetPoint p(1, 1, 3);
    p.Y2(0, 0, 0) = 3;
    p.Y3(0, 0, 0, 0) = 5;
    auto lc = legendre_coefficients(L, p);
    CHECK(lc.ij(0, 0, 0) == 6.0);
}

TEST_CASE("Legendre coefficients of an affine L reconstruct L") {
    std::mt19937_64 rng(2);
    auto L = ExprJetFunction::parse("x1*y1_11 + y2*y1_12 + y1_1*y2_22 + y2_2^2*y1", 2, 2, 2);
    auto p = random_jet(2, 2, 3, rng);
    auto lc = legendre_coefficients(L, p);
    double v = affine_L0(L, p.truncated(2));
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) v += lc.ij(a, i, j) * p.Y2(a, i, j);
    CHECK(rel_err(v, L(p)) < 1e-13);
}

TEST_CASE("Legendre coefficients of L_EH match the closed form") {
    std::mt19937_64 rng(3);
    EHLagrangian L(4);
    int s2 = sym2_count(4);
    for (int t = 0; t < 3; ++t) {
        auto p = random_metric_jet(4, 1, 3, rng);
        auto lc = legendre_coefficients(L, p);
        auto tab = eh_Lij_table(p.truncated(0));
        double scale = max_abs(tab), err = 0;
        for (int a = 0; a < s2; ++a)
            for (int c = 0; c < s2; ++c) err = std::max(err, std::fabs(lc.Lij[a * s2 + c] - tab[c * s2 + a]));
        CHECK(err / scale < 1e-9);
    }
}

TEST_CASE("projectability verdicts") {
    std::mt19937_64 rng(4);
    std::vector<JetPoint> eh_samples;
    for (int t = 0; t < 4; ++t) eh_samples.push_back(random_metric_jet(3, 0, 2, rng));
    auto r = projectability_check(EHLagrangian(3), eh_samples);
    CHECK(r.affine);
    CHECK(r.projects_to_J2);
    CHECK(r.projects_to_J1);

    std::vector<JetPoint> s1;
    for (int t = 0; t < 4; ++t) s1.push_back(random_jet(1, 1, 2, rng));
    auto q = projectability_check(ExprJetFunction::parse("y1_11^2", 1, 1, 2), s1);
    CHECK_FALSE(q.affine);
    CHECK_FALSE(q.projects_to_J1);

    std::vector<JetPoint> s2;
    for (int t = 0; t < 4; ++t) s2.push_back(random_jet(2, 1, 2, rng));
    auto b = projectability_check(ExprJetFunction::parse("y1_2*y1_11", 2, 1, 2), s2);
    CHECK(b.affine);
    CHECK_FALSE(b.projects_to_J1);
    CHECK(b.j1_residual == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("first_tris and d10 residuals coincide") {
    std::mt19937_64 rng(5);
    for (const char* src : {"y1_2*y1_11 + y2_1*y1_22", "y1*y2_12 + x1*y1_1*y2_11"}) {
        auto L = ExprJetFunction::parse(src, 2, 2, 2);
        auto q = random_jet(2, 2, 1, rng);
        auto a = first_tris_residuals(L, q), b = d10_residuals(L, q);
        CHECK(max_diff(a, b) < 1e-12);
    }
}

TEST_CASE("fibre primitive of constant Legendre coefficients") {
    auto L = ExprJetFunction::parse("y1_11 + 2*y1_12", 2, 1, 2);
    JetPoint q(2, 1, 1);
    q.dy = {0.3, 0.7};
    auto fp = fibre_primitive(L, q);
    CHECK(fp.Li[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fp.Li[1] == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("fibre primitive of the zero Lagrangian") {
    auto L = ExprJetFunction::parse("0", 2, 1, 2);
    std::mt19937_64 rng(6);
    auto fp = fibre_primitive(L, random_jet(2, 1, 1, rng));
    for (double v : fp.Li) CHECK(v == 0.0);
}

TEST_CASE("fibre primitive of L_EH reproduces its Legendre block") {
    std::mt19937_64 rng(7);
    int n = 3, s2 = sym2_count(n), m = s2;
    auto q = random_metric_jet(n, 0, 1, rng, 0.5);
    auto fp = fibre_primitive(EHLagrangian(n), q);
    auto tab = eh_Lij_table(q.truncated(0));
    double scale = max_abs(tab);
    for (int h = 0; h < n; ++h)
        for (int a = 0; a < m; ++a)
            for (int j = 0; j < n; ++j)
                CHECK(std::fabs(fp.d_dy[h * m * n + a * n + j] - tab[sym2(n, h, j) * s2 + a]) / scale < 1e-8);
}

TEST_CASE("E-H momenta and Hamiltonian against the closed forms") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 5; ++t) {
        auto q = random_metric_jet(4, 1, 1, rng, 0.5);
        auto mh = momenta_hamiltonian(EHLagrangian(4), q);
        auto co = eh_coefficients(q);
        double scale = max_abs(co.p);
        CHECK(max_diff(mh.p, co.p) / scale < 1e-9);
        CHECK(rel_err(mh.H, eh_H_closed(q)) < 1e-9);
        CHECK(rel_err(eh_H_christoffel(q), eh_H_closed(q)) < 1e-9);
    }
}

TEST_CASE("E-H momenta vanish at zero first derivatives") {
    auto q = constant_metric_jet({-1, 1, 1, 1}, 1);
    auto mh = momenta_hamiltonian(EHLagrangian(4), q);
    CHECK(max_abs(mh.p) == 0.0);
    CHECK(mh.H == 0.0);
}

TEST_CASE("L-bar of zero and of L_EH") {
    std::mt19937_64 rng(9);
    auto q = random_jet(2, 1, 1, rng);
    CHECK(bar_lagrangian(ExprJetFunction::parse("0", 2, 1, 2), q) == 0.0);
    for (int t = 0; t < 3; ++t) {
        auto g = random_metric_jet(3, 0, 1, rng, 0.5);
        CHECK(rel_err(bar_lagrangian(EHLagrangian(3), g), -eh_H_closed(g)) < 1e-9);
    }
}

TEST_CASE("dL-bar/dy' equals the momenta") {
    std::mt19937_64 rng(10);
    auto L = toy_projectable();
    for (int t = 0; t < 3; ++t) {
        auto q = random_jet(2, 1, 1, rng, 0.7);
        BarLagrangian<ExprJetFunction> Lb(L, q);
        auto d = jet_partials(Lb, q, false);
        auto mh = momenta_hamiltonian(L, q);
        for (int i = 0; i < 2; ++i) CHECK(rel_err(d.grad[3 + i], mh.p_at(0, i), 1e-3) < 1e-6);
    }
}

TEST_CASE("Hamilton-Cartan residuals") {
    std::vector<double> A = {-1, 0, 0, 0, 1, 0, 0, 0, 1};
    auto flat = constant_metric_section(A, 3);
    auto r = hc_residual(EHLagrangian(3), flat, {0.1, 0.2, -0.3});
    CHECK(r.max_abs() == 0.0);

    std::mt19937_64 rng(11);
    auto g = random_metric_section(3, 0, 2, 0.3, rng);
    auto h = hc_residual(EHLagrangian(3), g, {0.1, 0.2, -0.3});
    CHECK(max_abs(h.first) > 1e-3);

    // E(L) = x - y_11, extremal y = x^3/6.
    auto L = ExprJetFunction::parse("x1*y1 - 0.5*y1*y1_11", 1, 1, 2);
    PolySection s(1, 1, {Poly::monomial(1, {3}, 1.0 / 6.0)});
    for (double x : {-0.4, 0.1, 0.7}) CHECK(hc_residual(L, s, {x}).max_abs() <= 1e-8);
}

TEST_CASE("Euler-Lagrange expressions") {
    std::vector<double> A = {1, 0, 0, 0, 2, 0, 0, 0, 3};
    CHECK(max_abs(euler_lagrange(EHLagrangian(3), constant_metric_section(A, 3), {0.1, 0.2, 0.3})) == 0.0);

    // E_a(L) = E_a(L-bar) along random sections.
    std::mt19937_64 rng(12);
    auto L = toy_projectable();
    for (int t = 0; t < 3; ++t) {
        auto s = random_poly_section(2, {0.2}, 3, 0.4, rng);
        auto x = random_point(2, rng);
        BarLagrangian<ExprJetFunction> Lb(L, s.jet(x, 1));
        auto e1 = euler_lagrange(L, s, x), e2 = euler_lagrange(Lb, s, x);
        CHECK(rel_err(e1[0], e2[0], 1e-6) < 1e-7);
    }
}

TEST_CASE("E-H Euler-Lagrange is minus (2 - delta) rho times the Einstein tensor") {
    std::mt19937_64 rng(13);
    int n = 3;
    for (int t = 0; t < 3; ++t) {
        auto g = random_metric_section(n, t % 2, 3, 0.2, rng);
        auto x = random_point(n, rng, 0.2);
        auto E = euler_lagrange(EHLagrangian(n), g, x);
        auto p = g.jet(x, 2);
        auto md = metric_data(p);
        auto cd = curvature(p);
        double scale = max_abs(E);
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                double G = 0;
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        G += md.ginv[a * n + c] * md.ginv[b * n + d] * (cd.Ric(c, d) - 0.5 * cd.scalar * md.g[c * n + d]);
                CHECK(std::fabs(E[sym2(n, a, b)] + (a == b ? 1 : 2) * md.rho * G) / scale < 1e-9);
            }
    }
}

namespace {

// E-L operator of (y1_1^2 + y2_1^2)/2 with an added y2_1 in the first equation.
struct Skewed {
    ExprJetFunction L = ExprJetFunction::parse("0.5*y1_1^2 + 0.5*y2_1^2", 1, 2, 2);
    int n = 1, m = 2;
    template <class S>
    std::vector<S> operator()(const Jet<S>& p) const {
        auto E = ELOperator<ExprJetFunction>(L)(p);
        E[0] += p.Y1(1, 0);
        return E;
    }
};

}  // namespace

TEST_CASE("Helmholtz residuals") {
    std::mt19937_64 rng(14);
    for (int n : {2, 3})
        for (int t = 0; t < 2; ++t) {
            auto g = random_metric_section(n, 0, 3, 0.1, rng);
            CHECK(helmholtz_residuals(EHLagrangian(n), g, random_point(n, rng)).max() <= 1e-7);
        }
    auto harmonic = ExprJetFunction::parse("0.5*y1_1^2 - 0.5*y1^2", 1, 1, 2);
    auto s = random_poly_section(1, {0.1}, 3, 0.5, rng);
    CHECK(helmholtz_residuals(harmonic, s, {0.3}).max() <= 1e-8);

    auto s2 = random_poly_section(1, {0.1, -0.2}, 3, 0.5, rng);
    CHECK(helmholtz_residuals_operator(Skewed{}, s2, {0.3}, true).max() > 0.1);
}

TEST_CASE("bilinear form b") {
    std::mt19937_64 rng(15);
    auto q = random_metric_jet(3, 0, 1, rng, 0.5);
    auto b = bilinear_form_b(EHLagrangian(3), q);
    auto Y = eh_Y_matrix(q);
    CHECK(max_diff(b, Y) / max_abs(Y) < 1e-9);

    // Vanishing L^{ij} alone does not make b zero (b is then the Hessian in y'); it vanishes
    // for L affine in y'.
    auto lin = ExprJetFunction::parse("x1*y1_1 + y1^2*y1_2 + x2", 2, 1, 2);
    CHECK(max_abs(bilinear_form_b(lin, random_jet(2, 1, 1, rng))) < 1e-14);
}

TEST_CASE("b equals the Hessian of L-bar in the first derivatives") {
    std::mt19937_64 rng(16);
    int n = 2, m = 3, N = m * n;
    auto q = random_metric_jet(n, 0, 1, rng, 0.5);
    EHLagrangian L(n);
    BarLagrangian<EHLagrangian> Lb(L, q);
    auto d = jet_partials(Lb, q);
    auto b = bilinear_form_b(L, q);
    double scale = max_abs(b);
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v) CHECK(std::fabs(d.h(n + m + u, n + m + v) - b[u * N + v]) / scale < 1e-6);
}

TEST_CASE("prolongation") {
    std::mt19937_64 rng(17);
    VectorField vert(2, 1, {Poly(3), Poly(3)}, {Poly::constant(3, 2.0)});
    auto pr = prolong(vert, random_jet(2, 1, 2, rng));
    for (double v : pr.v1) CHECK(v == 0.0);
    for (double v : pr.v2) CHECK(v == 0.0);

    VectorField scale(1, 1, {Poly::variable(2, 0)}, {Poly(2)});
    auto p = random_jet(1, 1, 2, rng);
    auto ps = prolong(scale, p);
    CHECK(ps.v1[0] == doctest::Approx(-p.Y1(0, 0)).epsilon(1e-15));
    CHECK(ps.v2[0] == doctest::Approx(-2 * p.Y2(0, 0, 0)).epsilon(1e-15));
}

TEST_CASE("first prolongation of the natural metric lift") {
    // v_ab = -(d_a u^h g_hb + d_b u^h g_ah), so
    // v_ab,k = -(d_ak u^h g_hb + d_a u^h g_hb,k + d_bk u^h g_ah + d_b u^h g_ah,k) - d_k u^h g_ab,h.
    std::mt19937_64 rng(18);
    int n = 3;
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<Poly> u;
    for (int i = 0; i < n; ++i) {
        Poly q(n);
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                std::vector<int> e(n, 0);
                ++e[a];
                ++e[b];
                q.add_term(e, U(rng));
            }
        u.push_back(q);
    }
    auto X = natural_lift(n, u);
    auto p = random_metric_jet(n, 0, 2, rng);
    auto pr = prolong(X, p);
    auto g = [&](int a, int b) { return p.y[sym2(n, a, b)]; };
    auto dg = [&](int a, int b, int k) { return p.Y1(sym2(n, a, b), k); };
    auto du = [&](int h, int a) { return u[h].diff(a).eval(p.x); };
    auto ddu = [&](int h, int a, int k) { return u[h].diff(a).diff(k).eval(p.x); };
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                double want = 0;
                for (int h = 0; h < n; ++h)
                    want -= ddu(h, a, k) * g(h, b) + du(h, a) * dg(h, b, k) + ddu(h, b, k) * g(a, h) + du(h, b) * dg(a, h, k) +
                            du(h, k) * dg(a, b, h);
                CHECK(pr.v1[sym2(n, a, b) * n + k] == doctest::Approx(want).epsilon(1e-12));
            }
}

TEST_CASE("symmetry transform") {
    std::mt19937_64 rng(19);
    auto q = random_metric_jet(3, 0, 1, rng, 0.5);
    auto z = symmetry_transform(EHLagrangian(3), VectorField::zero(3, 6), q);
    CHECK(z.max_abs() == 0.0);

    std::vector<Poly> u = {Poly::monomial(3, {0, 2, 0}), Poly::monomial(3, {1, 0, 1}, 0.5), Poly::variable(3, 0, -0.3)};
    auto t = symmetry_transform(EHLagrangian(3), natural_lift(3, u), q);
    CHECK(t.max_abs() <= 1e-8);
    CHECK(t.formula_gap() <= 1e-9);
}

TEST_CASE("transformed projectable Lagrangian stays projectable") {
    std::mt19937_64 rng(20);
    auto L = toy_projectable();
    VectorField X(2, 1, {Poly::monomial(3, {0, 1, 0}, 0.3), Poly::monomial(3, {2, 0, 0}, -0.2)},
                  {Poly::monomial(3, {1, 0, 1}) + Poly::monomial(3, {0, 0, 2}, 0.5)});
    TransformedLagrangian<ExprJetFunction> Lt(L, X);
    std::vector<JetPoint> samples;
    for (int t = 0; t < 4; ++t) samples.push_back(random_jet(2, 1, 2, rng, 0.5));
    auto r = projectability_check(Lt, samples);
    CHECK(r.affine);
    CHECK(r.projects_to_J1);
}

TEST_CASE("Noether currents") {
    std::vector<double> A = {-1, 0, 0, 0, 1, 0, 0, 0, 1};
    auto g = constant_metric_section(A, 3);
    auto zero = noether_current(EHLagrangian(3), VectorField::zero(3, 6), g, {0.1, 0.2, 0.3});
    CHECK(max_abs(zero) == 0.0);

    std::vector<Poly> v;
    for (int a = 0; a < 6; ++a) v.push_back(Poly::monomial(9, {1, 0, 0, 0, 0, 0, 0, 0, 0}, 0.1 * (a + 1)) + Poly::constant(9, 0.2));
    VectorField X(3, 6, {Poly(9), Poly(9), Poly(9)}, v);
    CHECK(std::fabs(noether_divergence_fd(EHLagrangian(3), X, g, {0.1, 0.2, 0.3})) <= 1e-6);
}
