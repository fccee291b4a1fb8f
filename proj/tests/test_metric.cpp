#include "common.hpp"
#include "jetvar/eh.hpp"
#include "jetvar/metric.hpp"

using namespace jv;
using namespace jvt;

TEST_CASE("rho of reference metrics") {
    CHECK(rho_of(constant_metric_jet({1, 1, 1}, 0)) == 1.0);
    CHECK(rho_of(constant_metric_jet({-1, 1, 1, 1}, 0)) == 1.0);
    auto p = constant_metric_jet({2, 3}, 0);
    CHECK(rho_of(p) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
}

TEST_CASE("d rho / d g_11 against a finite difference") {
    auto p = constant_metric_jet({2, 3}, 0);
    Jet<Dual<double>> q = jet_cast<Dual<double>>(p);
    q.y[sym2(2, 0, 0)].d = 1.0;
    double ad = rho_of(q).d;
    double h = 1e-6;
    auto a = p, b = p;
    a.y[0] += h;
    b.y[0] -= h;
    CHECK(ad == doctest::Approx((rho_of(a) - rho_of(b)) / (2 * h)).epsilon(1e-8));
    // rho g^{11} / 2 with g^{11} = 1/2
    CHECK(ad == doctest::Approx(std::sqrt(6.0) / 4).epsilon(1e-14));
}

TEST_CASE("metric jets check the signature") {
    auto p = constant_metric_jet({-1, 1, 1}, 1);
    CHECK_NOTHROW(make_metric_jet(p, 2, 1));
    CHECK_THROWS_AS(make_metric_jet(p, 3, 0), MetricError);
    CHECK(signature_of(p) == std::pair<int, int>{2, 1});
}

TEST_CASE("curvature of a constant metric vanishes") {
    auto cd = curvature(constant_metric_jet({-1, 2, 1, 3}, 2));
    CHECK(max_abs(cd.riemann) == 0.0);
    CHECK(cd.scalar == 0.0);
}

TEST_CASE("round 2-sphere has scalar curvature 2") {
    // g = diag(1, sin^2 theta) at theta = pi/4: g22 = 1/2, d g22 = sin 2theta = 1, d2 g22 = 2 cos 2theta = 0.
    JetPoint p(2, 3, 2);
    p.x = {M_PI / 4, 0};
    p.y = {1, 0, 0.5};
    p.Y1(2, 0) = 1;
    auto cd = curvature(p);
    CHECK(cd.scalar == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("curvature symmetries at random metric jets") {
    std::mt19937_64 rng(1);
    for (int n : {3, 4})
        for (int t = 0; t < 3; ++t) {
            auto cd = curvature(random_metric_jet(n, t % 2, 2, rng));
            double scale = max_abs(cd.riemann);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            CHECK(std::fabs(cd.R(i, j, k, l) + cd.R(i, j, l, k)) / scale <= 1e-9);
                            CHECK(std::fabs(cd.R(i, j, k, l) + cd.R(i, k, l, j) + cd.R(i, l, j, k)) / scale <= 1e-9);
                        }
        }
}

TEST_CASE("L_EH closed forms equal rho times scalar curvature") {
    std::mt19937_64 rng(2);
    for (int n : {2, 3, 4})
        for (int t = 0; t < 3; ++t) {
            auto p = random_metric_jet(n, t % 2, 2, rng);
            auto md = metric_data(p);
            double want = md.rho * scalar_curvature(p, md);
            CHECK(rel_err(eh_coordinate_form(p), want) < 1e-9);
            CHECK(rel_err(eh_reconstructed(p), want) < 1e-9);
        }
}

TEST_CASE("sigma_nabla") {
    auto z = sigma_nabla(2, std::vector<double>(8, 0.0), {1, 0, 0, 1}, {0, 0});
    for (double v : z.dy) CHECK(v == 0.0);

    auto one = sigma_nabla(1, {0.7}, {3.0}, {0.0});
    CHECK(one.Y1(0, 0) == doctest::Approx(2 * 0.7 * 3.0).epsilon(1e-15));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    int n = 3;
    std::vector<double> gamma(n * n * n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) gamma[(h * n + i) * n + j] = gamma[(h * n + j) * n + i] = U(rng);
    auto p = sigma_nabla(n, gamma, {2, 0.3, 0, 0.3, 1, 0.1, 0, 0.1, 1.5}, {0.1, 0.2, 0.3});
    CHECK(covariant_metric_residual(p, gamma) < 1e-13);
    auto G = christoffel(p);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) CHECK(G(h, i, k) == doctest::Approx(gamma[(h * n + i) * n + k]).epsilon(1e-12));
}
