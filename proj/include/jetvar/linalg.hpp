#pragma once
// Small dense linear algebra at any scalar type (pivoting on the value part).

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetvar/ad.hpp"

namespace jv {

// Inverse of the n*n row-major matrix a; det receives the determinant.
template <class S>
std::vector<S> inverse_det(std::vector<S> a, int n, S& det) {
    std::vector<S> inv(n * n, S(0.0));
    for (int i = 0; i < n; ++i) inv[i * n + i] = S(1.0);
    det = S(1.0);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::fabs(value(a[c * n + c]));
        for (int r = c + 1; r < n; ++r) {
            double v = std::fabs(value(a[r * n + c]));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("singular matrix");
        if (piv != c) {
            for (int k = 0; k < n; ++k) {
                std::swap(a[c * n + k], a[piv * n + k]);
                std::swap(inv[c * n + k], inv[piv * n + k]);
            }
            det = -det;
        }
        S p = a[c * n + c];
        det = det * p;
        S ip = S(1.0) / p;
        for (int k = 0; k < n; ++k) {
            a[c * n + k] = a[c * n + k] * ip;
            inv[c * n + k] = inv[c * n + k] * ip;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            S f = a[r * n + c];
            if (value(f) == 0.0 && !is_dual<S>::value) continue;
            for (int k = 0; k < n; ++k) {
                a[r * n + k] = a[r * n + k] - f * a[c * n + k];
                inv[r * n + k] = inv[r * n + k] - f * inv[c * n + k];
            }
        }
    }
    return inv;
}

template <class S>
S determinant(std::vector<S> a, int n) {
    S det(1.0);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::fabs(value(a[c * n + c]));
        for (int r = c + 1; r < n; ++r) {
            double v = std::fabs(value(a[r * n + c]));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return S(0.0);
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            det = -det;
        }
        det = det * a[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            S f = a[r * n + c] / a[c * n + c];
            for (int k = c; k < n; ++k) a[r * n + k] = a[r * n + k] - f * a[c * n + k];
        }
    }
    return det;
}

// 2-norm condition number of a square double matrix.
double condition_number(const std::vector<double>& a, int n);
// Solve a x = b for a square double matrix (partial pivoting).
std::vector<double> solve(const std::vector<double>& a, const std::vector<double>& b, int n);

}  // namespace jv
