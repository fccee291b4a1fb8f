#include "common.hpp"
#include "jetvar/eh.hpp"
#include "jetvar/samples.hpp"

using namespace jv;
using namespace jvt;

TEST_CASE("E-H coefficients at Minkowski") {
    auto q = constant_metric_jet({-1, 1, 1, 1}, 1);
    auto co = eh_coefficients(q);
    CHECK(co.Lij(0, 1, 0, 1) == -1.0);
    // rho (2 g^{12} g^{12} - 2 g^{22} g^{11}) / 2 with g^{11} = -1, g^{22} = 1.
    CHECK(co.Lij(0, 0, 1, 1) == 1.0);
    CHECK(max_abs(co.p) == 0.0);
    CHECK(co.H == 0.0);
}

TEST_CASE("E-H Legendre block for n = 2 at the identity") {
    auto t = eh_Lij_table(constant_metric_jet({1, 1}, 0));
    std::vector<double> want = {0, 0, -1, 0, 1, 0, -1, 0, 0};
    CHECK(t == want);
    CHECK(regularity_determinant(constant_metric_jet({1, 1}, 0)) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("reconstruction of L_EH from its coefficient table") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 5; ++t) {
        auto p = random_metric_jet(3, t % 2, 2, rng);
        auto md = metric_data(p);
        CHECK(rel_err(eh_reconstructed(p), md.rho * scalar_curvature(p, md)) < 1e-9);
        CHECK(rel_err(eh_coordinate_form(p), eh_reconstructed(p)) < 1e-9);
    }
}

TEST_CASE("regularity determinant at reference metrics") {
    // det = -(n-1) rho^{n(n+1)/2} (det g)^{-(n+1)}.
    CHECK(regularity_determinant(constant_metric_jet({1, 1, 1, 1}, 0)) == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(regularity_determinant(constant_metric_jet({-1, 1, 1, 1}, 0)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(regularity_determinant(constant_metric_jet({2, 1, 1}, 0)) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(regularity_identity(3, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("regularity identity at random metrics") {
    std::mt19937_64 rng(2);
    for (int n : {2, 3, 4, 5})
        for (int t = 0; t < 10; ++t) {
            auto p = random_metric_jet(n, t % 2, 0, rng);
            CHECK(rel_err(regularity_determinant(p), regularity_identity(n, metric_data(p).det)) < 1e-9);
        }
}

TEST_CASE("regularity determinant scales like lambda^{(n/2-2) s2}") {
    std::mt19937_64 rng(3);
    int n = 3, s2 = sym2_count(n);
    auto p = random_metric_jet(n, 0, 0, rng);
    auto q = p;
    double lam = 1.7;
    for (auto& v : q.y) v *= lam;
    CHECK(rel_err(regularity_determinant(q), std::pow(lam, (0.5 * n - 2) * s2) * regularity_determinant(p)) < 1e-12);
}

TEST_CASE("natural lift components") {
    auto c = natural_lift(2, {Poly::constant(2, 1.0), Poly::constant(2, -2.0)});
    for (const auto& v : c.v) CHECK(v.is_zero());

    // u = x2 d/dx1: v_11 = 0, v_12 = -g_11, v_22 = -2 g_12.
    auto X = natural_lift(2, {Poly::variable(2, 1), Poly(2)});
    std::vector<double> z = {0.3, -0.4, 1.5, 0.2, 0.9};  // x1, x2, g11, g12, g22
    CHECK(X.v[0].eval(z) == 0.0);
    CHECK(X.v[1].eval(z) == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(X.v[2].eval(z) == doctest::Approx(-0.4).epsilon(1e-15));
}

TEST_CASE("Phi blocks") {
    auto id3 = constant_metric_jet({1, 1, 1}, 1);
    auto a = phi_matrix(id3, 0, 0, 1, 2);
    CHECK(a.nonzero);

    auto same = phi_matrix(id3, 0, 1, 0, 1);
    CHECK(max_abs(same.matrix) == 0.0);

    // Every block has rank 2, so det Phi_{12,34} vanishes at n = 4; the stack has full rank.
    auto mk = constant_metric_jet({-1, 1, 1, 1}, 1);
    auto b = phi_matrix(mk, 0, 1, 2, 3);
    CHECK(b.nonzero);
    CHECK(std::fabs(b.det) < 1e-12);
    auto st = phi_stack(mk);
    CHECK(st.sv_min / st.sv_max > 1e-3);
    CHECK(st.max_block_rank == 2);
}

TEST_CASE("Phi is antisymmetric under exchange of the pairs") {
    std::mt19937_64 rng(4);
    auto p = random_metric_jet(3, 0, 1, rng, 0.5);
    auto a = phi_matrix(p, 0, 0, 1, 2), b = phi_matrix(p, 1, 2, 0, 0);
    for (std::size_t i = 0; i < a.matrix.size(); ++i) CHECK(a.matrix[i] == doctest::Approx(-b.matrix[i]).epsilon(1e-12));
}

TEST_CASE("E-H Noether current") {
    std::vector<double> A = {-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    auto g = constant_metric_section(A, 4);
    std::vector<double> x = {0.2, 0.1, -0.3, 0.4};
    std::vector<Poly> uc = {Poly::constant(4, 1), Poly::constant(4, 2), Poly(4), Poly::constant(4, -1)};
    auto c0 = noether_current_eh(uc, g, x);
    CHECK(max_abs(c0.jet_form) < 1e-14);
    CHECK(max_abs(c0.covariant_form) < 1e-14);

    // u = (x2)^2 d/dx1: only the first component survives, with value -2 in both forms.
    std::vector<Poly> u = {Poly::monomial(4, {0, 2, 0, 0}), Poly(4), Poly(4), Poly(4)};
    auto c = noether_current_eh(u, g, x);
    CHECK(c.jet_form[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(c.covariant_form[0] == doctest::Approx(-2.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(std::fabs(c.jet_form[i]) < 1e-12);
}

TEST_CASE("E-H Noether current along a curvilinear flat metric") {
    std::mt19937_64 rng(5);
    int n = 3;
    auto g = pullback_metric(lorentz_diag(n), quadratic_diffeo(n), n);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 3; ++t) {
        std::vector<Poly> u;
        for (int i = 0; i < n; ++i) {
            Poly q(n);
            for (int a = 0; a < n; ++a) {
                std::vector<int> e(n, 0);
                ++e[a];
                q.add_term(e, U(rng));
                for (int b = a; b < n; ++b) {
                    auto f = e;
                    ++f[b];
                    q.add_term(f, U(rng));
                }
            }
            u.push_back(q);
        }
        auto x = random_point(n, rng, 0.2);
        auto c = noether_current_eh(u, g, x);
        double scale = std::max(max_abs(c.jet_form), 1.0);
        CHECK(max_diff(c.jet_form, c.covariant_form) / scale < 1e-7);

        // Divergence by a fourth-order central difference.
        double h = 1e-3, div = 0;
        for (int j = 0; j < n; ++j) {
            auto at = [&](double e) {
                auto y = x;
                y[j] += e;
                double v = noether_current_eh(u, g, y).jet_form[j];
                return j % 2 == 0 ? v : -v;
            };
            div += (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
        }
        CHECK(std::fabs(div) < 1e-7);
    }
}
