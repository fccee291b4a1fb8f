#pragma once
// Random and reference sections used by tests, the acceptance run and the CLI.

#include <random>
#include <vector>

#include "jetvar/poly.hpp"

namespace jv {

// Polynomial section with every monomial of degree 1..degree drawn uniformly in [-amp, amp]
// on top of the constant values base (size m).
PolySection random_poly_section(int n, const std::vector<double>& base, int degree, double amp, std::mt19937_64& rng);
// Metric section diag(-1 x n_minus, +1 ...) plus a random polynomial perturbation.
PolySection random_metric_section(int n, int n_minus, int degree, double amp, std::mt19937_64& rng);
// Vertical field on the metric bundle with random coefficients of degree 0..degree.
PolySection random_metric_field(int n, int degree, std::mt19937_64& rng);
// Near-identity quadratic coordinate change x^a + c1 (x^{a+1})^2 + c2 x^{a+2} x^a.
std::vector<Poly> quadratic_diffeo(int n, double c1 = 0.2, double c2 = 0.1);
// Vacuum pp-wave: n = 4 uses g01 = -1, g00 = (x2)^2 - (x3)^2, g22 = g33 = 1; n = 3 uses
// g01 = -1, g00 = x2 x0, g22 = 1. Ricci-flat, not flat.
PolySection pp_wave_metric(int n);
// diag(-1, 1, ..., 1) as a constant vector of n*n entries.
std::vector<double> lorentz_diag(int n);

}  // namespace jv
