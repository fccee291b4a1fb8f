#pragma once
// Exact rational and Gaussian-rational linear algebra on GMP rationals.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace jv {

using Q = mpq_class;

// Dense row-major rational matrix.
struct QMatrix {
    int rows = 0, cols = 0;
    std::vector<Q> a;
    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Q& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Q& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(QMatrix& m);
int rank(QMatrix m);
Q det(QMatrix m);
// Nullspace basis, one vector per free column (free variable set to 1, others 0).
std::vector<std::vector<Q>> nullspace(QMatrix m);

std::string qstr(const Q& q);

// a + b i with rational a, b.
struct QC {
    Q re, im;
    QC() : re(0), im(0) {}
    QC(Q r) : re(std::move(r)), im(0) {}
    QC(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}
    static QC i() { return QC(0, 1); }
    bool is_zero() const { return re == 0 && im == 0; }
    QC operator+(const QC& o) const { return QC(re + o.re, im + o.im); }
    QC operator-(const QC& o) const { return QC(re - o.re, im - o.im); }
    QC operator-() const { return QC(-re, -im); }
    QC operator*(const QC& o) const { return QC(re * o.re - im * o.im, re * o.im + im * o.re); }
    QC operator/(const QC& o) const {
        Q d = o.re * o.re + o.im * o.im;
        return QC((re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d);
    }
    QC& operator+=(const QC& o) { return *this = *this + o; }
    QC& operator-=(const QC& o) { return *this = *this - o; }
    bool operator==(const QC& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QC& o) const { return !(*this == o); }
    std::string str() const;
};

struct QCMatrix {
    int rows = 0, cols = 0;
    std::vector<QC> a;
    QCMatrix() = default;
    QCMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    QC& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const QC& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

std::vector<int> rref(QCMatrix& m);
std::vector<std::vector<QC>> nullspace(QCMatrix m);

}  // namespace jv
