#include "common.hpp"
#include "jetvar/eh.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/jetcalc.hpp"

using namespace jv;
using namespace jvt;

TEST_CASE("jet of a constant section has zero derivatives") {
    PolySection s(3, 2, {Poly::constant(3, 1.5), Poly::constant(3, -2.0)});
    auto p = s.jet(std::vector<double>{0.3, -1.0, 2.0}, 3);
    CHECK(p.y[0] == 1.5);
    CHECK(p.y[1] == -2.0);
    for (double v : p.dy) CHECK(v == 0.0);
    for (double v : p.d2y) CHECK(v == 0.0);
    for (double v : p.d3y) CHECK(v == 0.0);
}

TEST_CASE("jet of a linear section") {
    PolySection s(2, 1, {Poly::variable(2, 0)});
    auto p = s.jet(std::vector<double>{0.0, 0.0}, 2);
    CHECK(p.y[0] == 0.0);
    CHECK(p.Y1(0, 0) == 1.0);
    CHECK(p.Y1(0, 1) == 0.0);
    for (double v : p.d2y) CHECK(v == 0.0);
}

TEST_CASE("jet of (x1)^2 x2 at (1, 1) matches hand differentiation") {
    PolySection s(2, 1, {Poly::monomial(2, {2, 1})});
    auto p = jet_of_section(s, {1.0, 1.0}, 3);
    CHECK(p.y[0] == 2.0 / 2.0);
    CHECK(p.Y1(0, 0) == 2.0);
    CHECK(p.Y1(0, 1) == 1.0);
    CHECK(p.Y2(0, 0, 0) == 2.0);
    CHECK(p.Y2(0, 0, 1) == 2.0);
    CHECK(p.Y2(0, 1, 1) == 0.0);
    CHECK(p.Y3(0, 0, 0, 1) == 2.0);
    CHECK(p.Y3(0, 0, 0, 0) == 0.0);
    CHECK(p.Y3(0, 0, 1, 1) == 0.0);
    CHECK(p.Y3(0, 1, 1, 1) == 0.0);
}

TEST_CASE("jet order outside 0..3 is rejected") {
    CHECK_THROWS_AS(JetPoint(2, 1, 4), JetError);
    JetPoint p(2, 1, 1);
    CHECK_THROWS_AS(p.Y2(0, 0, 0), JetError);
}

TEST_CASE("total derivative of coordinate functions") {
    std::mt19937_64 rng(1);
    auto p = random_jet(3, 2, 2, rng);
    auto ya = ExprJetFunction::parse("y2", 3, 2, 1);
    auto xj = ExprJetFunction::parse("x3", 3, 2, 1);
    for (int j = 0; j < 3; ++j) CHECK(total_derivative(ya, j, p, 1) == doctest::Approx(p.Y1(1, j)).epsilon(1e-15));
    CHECK(total_derivative(xj, 2, p, 1) == 1.0);
    CHECK(total_derivative(xj, 0, p, 1) == 0.0);
}

TEST_CASE("total derivative product rule") {
    auto F = ExprJetFunction::parse("y1_1*y1_2", 2, 1, 1);
    JetPoint p(2, 1, 2);
    p.Y1(0, 0) = 2;
    p.Y1(0, 1) = 3;
    p.Y2(0, 0, 0) = 5;
    p.Y2(0, 0, 1) = 7;
    CHECK(total_derivative(F, 0, p, 1) == 29.0);
}

TEST_CASE("total derivative equals the derivative along a section") {
    std::mt19937_64 rng(2);
    auto F = ExprJetFunction::parse("x1*y1_12*y2 + sin(y2_2)*y1_11 + y1^2*x2", 2, 2, 2);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    for (int t = 0; t < 5; ++t) {
        std::vector<Poly> comps;
        for (int a = 0; a < 2; ++a) {
            Poly q(2);
            for (int i = 0; i <= 3; ++i)
                for (int j = 0; i + j <= 3; ++j) q.add_term({i, j}, U(rng));
            comps.push_back(q);
        }
        PolySection s(2, 2, comps);
        auto x = random_point(2, rng);
        for (int j = 0; j < 2; ++j) {
            double h = 1e-4;
            auto at = [&](double e) {
                auto y = x;
                y[j] += e;
                return F(s.jet(y, 2));
            };
            double fd = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
            CHECK(rel_err(total_derivative(F, j, s.jet(x, 3), 2), fd, 1e-3) < 1e-8);
        }
    }
}

TEST_CASE("jet partials of a quadratic monomial") {
    auto F = ExprJetFunction::parse("y1_11^2", 1, 1, 2);
    JetPoint p(1, 1, 2);
    p.Y2(0, 0, 0) = 3;
    auto d = jet_partials(F, p);
    int c = 1 + 1 + 1;  // x, y, y_1, then y_11
    CHECK(d.grad[c] == 6.0);
    CHECK(d.h(c, c) == 2.0);
    // F does not depend on x, y, y_1: those partials are exactly zero.
    for (int k = 0; k < c; ++k) {
        CHECK(d.grad[k] == 0.0);
        for (int l = 0; l < d.count; ++l) CHECK(d.h(k, l) == 0.0);
    }
}

TEST_CASE("jet partials of L_EH match central differences") {
    std::mt19937_64 rng(3);
    EHLagrangian L(2);
    for (int t = 0; t < 3; ++t) {
        auto p = random_metric_jet(2, 0, 2, rng);
        auto d = jet_partials(L, p, false);
        for (int c = 0; c < p.size(); ++c) {
            double h = 1e-5 * std::max(1.0, std::fabs(p.coord(c)));
            auto q = p, r = p;
            q.coord(c) += h;
            r.coord(c) -= h;
            double fd = (L(q) - L(r)) / (2 * h);
            if (std::fabs(d.grad[c]) < 1e-9) CHECK(std::fabs(fd) < 1e-6);
            else CHECK(rel_err(d.grad[c], fd) < 1e-6);
        }
    }
}

TEST_CASE("hessian from jet partials is symmetric") {
    std::mt19937_64 rng(4);
    EHLagrangian L(2);
    auto p = random_metric_jet(2, 1, 2, rng);
    auto d = jet_partials(L, p);
    for (int a = 0; a < d.count; ++a)
        for (int b = 0; b < d.count; ++b) CHECK(d.h(a, b) == d.h(b, a));
}
