#pragma once
// Shared helpers for the unit tests.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "jetvar/jet.hpp"
#include "jetvar/poly.hpp"

namespace jvt {

inline double rel_err(double a, double b, double floor = 1e-300) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

inline std::vector<double> random_point(int n, std::mt19937_64& rng, double r = 0.3) {
    std::uniform_real_distribution<double> U(-r, r);
    std::vector<double> x(n);
    for (auto& v : x) v = U(rng);
    return x;
}

inline jv::JetPoint random_jet(int n, int m, int order, std::mt19937_64& rng, double r = 1.0) {
    std::uniform_real_distribution<double> U(-r, r);
    jv::JetPoint p(n, m, order);
    for (int c = 0; c < p.size(); ++c) p.coord(c) = U(rng);
    return p;
}

}  // namespace jvt
