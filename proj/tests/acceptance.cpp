// Acceptance checks: one PASS/FAIL line per criterion.
// Exit status: without --expect-fail, nonzero when any criterion fails; with it, zero exactly
// when the failing set equals the expected one.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jetvar/bf.hpp"
#include "jetvar/eh.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/jacobi.hpp"
#include "jetvar/linalg.hpp"
#include "jetvar/samples.hpp"
#include "jetvar/torus.hpp"
#include "jetvar/varcore.hpp"

using namespace jv;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300}); }

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

std::vector<double> random_point(int n, std::mt19937_64& rng, double r) {
    std::uniform_real_distribution<double> U(-r, r);
    std::vector<double> x(n);
    for (auto& v : x) v = U(rng);
    return x;
}

JetPoint random_jet(int n, int m, int order, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1, 1);
    JetPoint p(n, m, order);
    for (int c = 0; c < p.size(); ++c) p.coord(c) = U(rng);
    return p;
}

std::vector<Poly> random_quadratic_field(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<Poly> u;
    for (int i = 0; i < n; ++i) {
        Poly q(n);
        q.add_term(std::vector<int>(n, 0), U(rng));
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
    return u;
}

Verdict c1_determinant(std::mt19937_64& rng) {
    double worst = 0, printed = 0;
    for (int n : {2, 3, 4})
        for (int t = 0; t < 100; ++t) {
            auto p = random_metric_jet(n, t % 2, 0, rng);
            auto md = metric_data(p);
            double d = regularity_determinant(p);
            worst = std::max(worst, rel(d, regularity_identity(n, md.det)));
            printed = std::max(printed, rel(d, regularity_identity_printed(n, md.rho)));
        }
    return {worst <= 1e-9, fmt("max rel err %.2e vs -(n-1) rho^{n(n+1)/2} (det g)^{-(n+1)} (tol 1e-9); printed exponent (n+1)(n+4)/2 is off by up to %.3g rel", worst, printed)};
}

Verdict c2_beta_eh(std::mt19937_64& rng) {
    double worst = 0;
    for (int n : {3, 4})
        for (int t = 0; t < 100; ++t) {
            auto p = random_metric_jet(n, t % 2, 2, rng);
            auto md = metric_data(p);
            worst = std::max(worst, rel(l_beta(BetaForm::eh(n), p), md.rho * scalar_curvature(p, md)));
        }
    return {worst <= 1e-9, fmt("max rel |L_beta_EH - rho R| = %.2e over 200 jets (tol 1e-9)", worst)};
}

Verdict c3_first_order(std::mt19937_64& rng) {
    int n = 3;
    EHLagrangian L(n);
    double worst = 0, worst_rel = 0;
    for (int t = 0; t < 20; ++t) {
        auto g = random_metric_section(n, t % 2, 3, 0.2, rng);
        auto x = random_point(n, rng, 0.2);
        BarLagrangian<EHLagrangian> Lb(L, g.jet(x, 1));
        auto a = euler_lagrange(L, g, x), b = euler_lagrange(Lb, g, x);
        worst = std::max(worst, max_diff(a, b));
        worst_rel = std::max(worst_rel, max_diff(a, b) / std::max(max_abs(a), 1e-300));
    }
    return {worst <= 1e-7, fmt("max |E(L_EH) - E(Lbar_EH)| = %.2e (rel %.2e) along 20 cubic sections (tol 1e-7)", worst, worst_rel)};
}

Verdict c4_helmholtz(std::mt19937_64& rng) {
    double worst = 0;
    for (int n : {2, 3})
        for (int t = 0; t < 50; ++t) {
            auto g = random_metric_section(n, t % 2, 3, 0.1, rng);
            worst = std::max(worst, helmholtz_residuals(EHLagrangian(n), g, random_point(n, rng, 0.3)).max());
        }
    return {worst <= 1e-7, fmt("max Helmholtz residual %.2e over 100 jets (tol 1e-7)", worst)};
}

Verdict c5_momenta(std::mt19937_64& rng) {
    int n = 4;
    EHLagrangian L(n);
    double wp = 0, wh = 0, wc = 0;
    for (int t = 0; t < 100; ++t) {
        auto q = random_metric_jet(n, t % 2, 1, rng, 0.5);
        auto mh = momenta_hamiltonian(L, q);
        auto co = eh_coefficients(q);
        wp = std::max(wp, max_diff(mh.p, co.p) / std::max(max_abs(co.p), 1e-300));
        wh = std::max(wh, rel(mh.H, eh_H_closed(q)));
        wc = std::max(wc, rel(eh_H_christoffel(q), eh_H_closed(q)));
    }
    return {wp <= 1e-8 && wh <= 1e-8 && wc <= 1e-9,
            fmt("p rel %.2e, H rel %.2e (tol 1e-8); Christoffel H rel %.2e (tol 1e-9)", wp, wh, wc)};
}

Verdict c6_b_form(std::mt19937_64& rng) {
    int n = 4, N = 10 * n;
    EHLagrangian L(n);
    double asym = 0, cmax = 0, cmin = 1e300;
    for (int t = 0; t < 100; ++t) {
        auto q = random_metric_jet(n, t % 2, 1, rng, 0.5);
        auto b = bilinear_form_b(L, q);
        double s = max_abs(b), d = 0;
        for (int u = 0; u < N; ++u)
            for (int v = 0; v < N; ++v) d = std::max(d, std::fabs(b[u * N + v] - b[v * N + u]));
        asym = std::max(asym, d / s);
        double c = condition_number(b, N);
        cmax = std::max(cmax, c);
        cmin = std::min(cmin, c);
    }
    return {asym <= 1e-9 && cmax < 1e12,
            fmt("symmetry defect %.2e (tol 1e-9); condition number %.3g..%.3g", asym, cmin, cmax)};
}

Verdict c7_quadratic() {
    auto op = flat_operator_matrix(torus_signature());
    auto s = polynomial_solution_space(op, 2);
    std::vector<bool> holds(10, true);
    for (const auto& U : s.basis) {
        auto v = eq_lambdas_values(U);
        for (int r = 0; r < 10; ++r)
            if (v[r] != 0) holds[r] = false;
    }
    std::string bad;
    for (int r = 0; r < 10; ++r)
        if (!holds[r]) bad += (bad.empty() ? "" : ",") + std::to_string(r + 1);
    return {s.dimension == 90 && bad.empty(),
            fmt("dimension %d (want 90); printed relations failing on the basis: %s", s.dimension, bad.empty() ? "none" : bad.c_str())};
}

Verdict c8_modes(std::mt19937_64& rng) {
    const int printed[4] = {1, 1, 3, 4};
    int seen[4] = {}, agree[4] = {};
    std::set<int> dims[4];
    int rel_vectors = 0, rel_fail = 0;
    std::uniform_int_distribution<int> d(-4, 4);
    // 50 modes per class: components past the class's leading one are zeroed.
    for (int t = 0; t < 200;) {
        Mode k{d(rng), d(rng), d(rng), d(rng)};
        int want = t / 50;
        if (want >= 1) k[1] = 0;
        if (want >= 2) k[3] = 0;
        if (want >= 3) k[2] = 0;
        if (k == Mode{0, 0, 0, 0} || static_cast<int>(mode_class(k)) != want) continue;
        ++t;
        auto s = mode_solve(k);
        int c = static_cast<int>(s.cls);
        ++seen[c];
        agree[c] += s.dimension == printed[c];
        dims[c].insert(s.dimension);
        if (s.cls == ModeClass::K2)
            for (const auto& v : s.basis) {
                ++rel_vectors;
                if (v[1] != Q(k[0]) / Q(2 * k[1]) * v[4]) ++rel_fail;
            }
    }
    std::ostringstream o;
    bool ok = rel_fail == 0;
    for (int c = 0; c < 4; ++c) {
        o << mode_class_name(static_cast<ModeClass>(c)) << ": " << agree[c] << "/" << seen[c] << " with dim " << printed[c]
          << " (seen";
        for (int v : dims[c]) o << " " << v;
        o << "); ";
        ok = ok && agree[c] == seen[c];
    }
    o << "U2 = (k1/2k2) U5 fails on " << rel_fail << "/" << rel_vectors << " k2 basis vectors";
    return {ok, o.str()};
}

Verdict c9_pairing(std::mt19937_64& rng) {
    auto fam = [](const std::vector<FamilyCheck>& v) {
        int ok = 0;
        for (const auto& f : v) ok += f.ok();
        return std::make_pair(ok, static_cast<int>(v.size()));
    };
    auto nf = fam(check_pairing_table(BasisConvention::Nullspace, 20, rng));
    auto nz = fam(check_zero_families(BasisConvention::Nullspace, 20, rng));
    auto ns = sweep_pairings(BasisConvention::Nullspace, 5, rng);
    auto tf = fam(check_pairing_table(BasisConvention::Tabulated, 20, rng));
    auto tz = fam(check_zero_families(BasisConvention::Tabulated, 20, rng));
    auto ts = sweep_pairings(BasisConvention::Tabulated, 5, rng);
    bool ok = nf.first == nf.second && nz.first == nz.second && ns.antisymmetric == ns.pairs && ns.closed == ns.pairs;
    return {ok, fmt("Jacobi-field amplitudes: families %d/%d, zero families %d/%d, antisymmetric %d/%d, closed %d/%d; "
                    "tabulated amplitudes: families %d/%d, zero families %d/%d, closed %d/%d",
                    nf.first, nf.second, nz.first, nz.second, ns.antisymmetric, ns.pairs, ns.closed, ns.pairs, tf.first,
                    tf.second, tz.first, tz.second, ts.closed, ts.pairs)};
}

Verdict c10_classes(std::mt19937_64& rng) {
    auto checks = check_class_table(BasisConvention::Nullspace, 20, rng);
    int vacuous = 0, admissible = 0, matched = 0, nonzero = 0;
    for (const auto& c : checks) {
        if (c.sampled == 0) {
            ++vacuous;
            continue;
        }
        ++admissible;
        matched += c.ok();
        nonzero += c.nonzero;
    }
    // A global normalisation cannot map zero classes onto nonzero printed values, so any
    // admissible entry must match exactly.
    bool ok = vacuous == 0 && matched == admissible;
    return {ok, fmt("%d/%d entries have no admissible (k,l); %d/%d admissible entries match; nonzero computed classes: %d",
                    vacuous, static_cast<int>(checks.size()), matched, admissible, nonzero)};
}

Verdict c11_projectability(std::mt19937_64& rng) {
    struct Case {
        std::string src;
        int n;
        bool affine, j1;
    };
    const std::vector<Case> family = {
        {"y1_11^2", 1, false, false},
        {"y1_2*y1_11", 2, true, false},
        {"y1_1*y1_22", 2, true, false},
        {"y1_1*y1_11", 1, true, true},
        {"y1*y1_11 + x1*y1_22", 2, true, true},
        {"y1_1*y1_2 + x1*y1^2", 2, true, true},
        {"y1_1*y1_2 + y1*y1_12 + sin(y1)*y1_1^2 + x2*y1_2*y1 + 0.5*y1_2^2", 2, true, true},
    };
    int wrong = 0, total = 0;
    std::string first;
    auto record = [&](const std::string& name, const ProjectabilityReport& r, bool affine, bool j1) {
        ++total;
        if (r.affine != affine || r.projects_to_J1 != j1) {
            ++wrong;
            if (first.empty()) first = name;
        }
    };
    for (int n : {2, 3, 4}) {
        std::vector<JetPoint> s;
        for (int t = 0; t < 4; ++t) s.push_back(random_metric_jet(n, t % 2, 2, rng));
        record("L_EH n=" + std::to_string(n), projectability_check(EHLagrangian(n), s), true, true);
    }
    for (const auto& c : family) {
        std::vector<JetPoint> s;
        for (int t = 0; t < 4; ++t) s.push_back(random_jet(c.n, 1, 2, rng));
        record(c.src, projectability_check(ExprJetFunction::parse(c.src, c.n, 1, 2), s), c.affine, c.j1);
    }
    return {wrong == 0, fmt("%d/%d verdicts correct%s%s", total - wrong, total, first.empty() ? "" : "; first wrong: ", first.c_str())};
}

Verdict c12_phi(std::mt19937_64& rng) {
    double min3 = 1e300, max4 = 0, stack = 1e300;
    int rank = 0;
    for (int t = 0; t < 20; ++t) {
        auto p3 = random_metric_jet(3, t % 2, 0, rng);
        auto a = phi_matrix(p3, 0, 0, 1, 2);
        min3 = std::min(min3, a.frobenius / max_abs(metric_data(p3).ginv));
        auto p4 = random_metric_jet(4, t % 2, 0, rng);
        auto b = phi_matrix(p4, 0, 1, 2, 3);
        int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(b.matrix.size()))));
        double unit = b.frobenius / std::sqrt(static_cast<double>(b.matrix.size()));
        max4 = std::max(max4, std::fabs(b.det) / std::pow(unit, d));
        auto st = phi_stack(p4);
        stack = std::min(stack, st.sv_min / st.sv_max);
        rank = std::max(rank, st.max_block_rank);
    }
    bool ok = min3 > 1e-6 && max4 > 1e-6;
    return {ok, fmt("min |Phi_{11,23}| (n=3) %.3g; max |det Phi_{12,34}| (n=4, unit scaled) %.2e, want > 1e-6; "
                    "block rank %d; stacked Phi smallest relative singular value %.3g",
                    min3, max4, rank, stack)};
}

Verdict c13_noether(std::mt19937_64& rng) {
    double agree = 0, div = 0;
    for (int n : {3, 4}) {
        auto A = lorentz_diag(n);
        std::vector<PolySection> backgrounds = {constant_metric_section(A, n), pullback_metric(A, quadratic_diffeo(n), n)};
        for (const auto& g : backgrounds)
            for (int t = 0; t < 3; ++t) {
                auto u = random_quadratic_field(n, rng);
                auto x = random_point(n, rng, 0.2);
                auto c = noether_current_eh(u, g, x);
                agree = std::max(agree, max_diff(c.jet_form, c.covariant_form) / std::max(max_abs(c.jet_form), 1e-300));
                double h = 1e-3, s = 0;
                for (int j = 0; j < n; ++j) {
                    auto at = [&](double e) {
                        auto y = x;
                        y[j] += e;
                        double v = noether_current_eh(u, g, y).jet_form[j];
                        return j % 2 == 0 ? v : -v;
                    };
                    s += (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
                }
                div = std::max(div, std::fabs(s));
            }
    }
    return {agree <= 1e-7 && div <= 1e-6, fmt("jet vs covariant rel %.2e (tol 1e-7); divergence %.2e (tol 1e-6)", agree, div)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> expect;
    std::uint64_t seed = 20240611;
    app.add_option("--expect-fail", expect, "criteria expected to fail")->delimiter(',');
    app.add_option("--seed", seed, "random seed");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds, 0 when none is stated
        std::function<Verdict(std::mt19937_64&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "determinant identity", 1, c1_determinant},
        {2, "beta_EH reproduction", 1, c2_beta_eh},
        {3, "first-order equivalence", 5, c3_first_order},
        {4, "Helmholtz conditions", 0, c4_helmholtz},
        {5, "momenta and Hamiltonian", 0, c5_momenta},
        {6, "b symmetry and regularity", 0, c6_b_form},
        {7, "quadratic Jacobi fields", 10, [](std::mt19937_64&) { return c7_quadratic(); }},
        {8, "Fourier mode classification", 0, c8_modes},
        {9, "presymplectic tables", 10, c9_pairing},
        {10, "cohomology classes", 0, c10_classes},
        {11, "projectability detector", 0, c11_projectability},
        {12, "Phi nondegeneracy", 0, c12_phi},
        {13, "Noether current", 0, c13_noether},
    };

    std::set<int> failed;
    for (const auto& c : criteria) {
        std::mt19937_64 rng(seed + c.id);
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run(rng);
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0 && secs > c.budget) {
            v.pass = false;
            v.detail += fmt("; over the %.0f s budget", c.budget);
        }
        if (!v.pass) failed.insert(c.id);
        std::printf("%s %2d %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
    if (app.count("--expect-fail")) {
        std::set<int> want(expect.begin(), expect.end());
        if (want != failed) {
            std::printf("failing set differs from the expected one\n");
            return 1;
        }
        return 0;
    }
    return failed.empty() ? 0 : 1;
}
