#include "jetvar/metric.hpp"

#include <Eigen/Dense>

namespace jv {

std::pair<int, int> signature_of(const JetPoint& p) {
    int n = p.n;
    Eigen::MatrixXd g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g(a, b) = p.y[sym2(n, a, b)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    int pos = 0, neg = 0;
    for (int i = 0; i < n; ++i) (es.eigenvalues()(i) > 0 ? pos : neg)++;
    return {pos, neg};
}

MetricJet make_metric_jet(const JetPoint& p, int n_plus, int n_minus) {
    if (p.m != sym2_count(p.n)) throw MetricError("metric jet: fibre dimension must be n(n+1)/2");
    if (n_plus + n_minus != p.n) throw MetricError("metric jet: signature does not add up to n");
    std::vector<double> g(p.n * p.n);
    for (int a = 0; a < p.n; ++a)
        for (int b = 0; b < p.n; ++b) g[a * p.n + b] = p.y[sym2(p.n, a, b)];
    if (std::fabs(determinant(g, p.n)) <= 1e-12) throw MetricError("metric jet: near-singular metric");
    auto [pos, neg] = signature_of(p);
    if (pos != n_plus || neg != n_minus) throw MetricError("metric jet: signature mismatch");
    return MetricJet{p, n_plus, n_minus};
}

JetPoint sigma_nabla(int n, const std::vector<double>& gamma, const std::vector<double>& g_full,
                     const std::vector<double>& x) {
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (std::fabs(gamma[(h * n + i) * n + k] - gamma[(h * n + k) * n + i]) > 1e-12)
                    throw MetricError("sigma_nabla: connection is not symmetric");
    JetPoint p(n, sym2_count(n), 1);
    p.x = x;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int a = sym2(n, i, j);
            p.y[a] = g_full[i * n + j];
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                for (int h = 0; h < n; ++h)
                    v += gamma[(h * n + i) * n + k] * g_full[h * n + j] + gamma[(h * n + j) * n + k] * g_full[h * n + i];
                p.Y1(a, k) = v;
            }
        }
    return p;
}

double covariant_metric_residual(const JetPoint& p, const std::vector<double>& gamma) {
    int n = p.n;
    double worst = 0.0;
    auto g = [&](int a, int b) { return p.y[sym2(n, a, b)]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = p.Y1(sym2(n, i, j), k);
                for (int h = 0; h < n; ++h)
                    v -= gamma[(h * n + k) * n + i] * g(h, j) + gamma[(h * n + k) * n + j] * g(i, h);
                worst = std::max(worst, std::fabs(v));
            }
    return worst;
}

JetPoint random_metric_jet(int n, int n_minus, int order, std::mt19937_64& rng, double deriv_scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd A(n, n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = (i == j ? 1.0 : 0.0) + 0.5 * u(rng);
        double d = std::fabs(A.determinant());
        if (d >= 0.5 && d <= 2.0) break;
    }
    Eigen::MatrixXd D = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n_minus; ++i) D(i, i) = -1.0;
    Eigen::MatrixXd g = A * D * A.transpose();
    JetPoint p(n, sym2_count(n), order);
    for (int i = 0; i < n; ++i) {
        p.x[i] = u(rng);
        for (int j = i; j < n; ++j) p.y[sym2(n, i, j)] = g(i, j);
    }
    for (auto& v : p.dy) v = deriv_scale * u(rng);
    for (auto& v : p.d2y) v = deriv_scale * u(rng);
    for (auto& v : p.d3y) v = deriv_scale * u(rng);
    return p;
}

JetPoint constant_metric_jet(const std::vector<double>& eps, int order) {
    int n = (int)eps.size();
    JetPoint p(n, sym2_count(n), order);
    for (int i = 0; i < n; ++i) p.y[sym2(n, i, i)] = eps[i];
    return p;
}

}  // namespace jv
