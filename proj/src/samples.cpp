#include "jetvar/samples.hpp"

#include <functional>
#include <stdexcept>

namespace jv {

namespace {

void for_each_monomial(int n, int degree, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> e(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            e[i] = left;
            f(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    for (int d = 1; d <= degree; ++d) rec(0, d);
}

}  // namespace

PolySection random_poly_section(int n, const std::vector<double>& base, int degree, double amp, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-amp, amp);
    std::vector<Poly> comps;
    for (double b : base) {
        Poly p = Poly::constant(n, b);
        for_each_monomial(n, degree, [&](const std::vector<int>& e) { p.add_term(e, u(rng)); });
        comps.push_back(p);
    }
    return PolySection(n, static_cast<int>(base.size()), comps);
}

PolySection random_metric_section(int n, int n_minus, int degree, double amp, std::mt19937_64& rng) {
    if (n_minus < 0 || n_minus > n) throw std::invalid_argument("random_metric_section: bad signature");
    std::vector<double> base(sym2_count(n), 0.0);
    for (int i = 0; i < n; ++i) base[sym2(n, i, i)] = i < n_minus ? -1.0 : 1.0;
    return random_poly_section(n, base, degree, amp, rng);
}

PolySection random_metric_field(int n, int degree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> base(sym2_count(n));
    for (auto& b : base) b = u(rng);
    return random_poly_section(n, base, degree, 1.0, rng);
}

std::vector<Poly> quadratic_diffeo(int n, double c1, double c2) {
    std::vector<Poly> phi;
    for (int a = 0; a < n; ++a) {
        Poly b = Poly::variable(n, (a + 1) % n), c = Poly::variable(n, (a + 2) % n);
        phi.push_back(Poly::variable(n, a) + b * b * c1 + c * Poly::variable(n, a) * c2);
    }
    return phi;
}

PolySection pp_wave_metric(int n) {
    if (n != 3 && n != 4) throw std::invalid_argument("pp_wave_metric: n must be 3 or 4");
    int m = sym2_count(n);
    std::vector<Poly> c(m, Poly(n));
    c[sym2(n, 0, 1)] = Poly::constant(n, -1.0);
    c[sym2(n, 2, 2)] = Poly::constant(n, 1.0);
    if (n == 4) {
        c[sym2(n, 0, 0)] = Poly::variable(n, 2) * Poly::variable(n, 2) - Poly::variable(n, 3) * Poly::variable(n, 3);
        c[sym2(n, 3, 3)] = Poly::constant(n, 1.0);
    } else {
        c[sym2(n, 0, 0)] = Poly::variable(n, 2) * Poly::variable(n, 0);
    }
    return PolySection(n, m, c);
}

std::vector<double> lorentz_diag(int n) {
    std::vector<double> A(n * n, 0.0);
    for (int i = 0; i < n; ++i) A[i * n + i] = i == 0 ? -1.0 : 1.0;
    return A;
}

}  // namespace jv
