#pragma once
// Jet coordinates with symmetric multi-indices stored once per sorted tuple.
// Flat coordinate order: x(n), y(m), dy(a*n+i), d2y(a*s2+sym2), d3y(a*s3+sym3).

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetvar/ad.hpp"

namespace jv {

inline int sym2_count(int n) { return n * (n + 1) / 2; }
inline int sym3_count(int n) { return n * (n + 1) * (n + 2) / 6; }

// Index of the sorted pair (i<=j) in lexicographic order.
inline int sym2(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

int sym3(int n, int i, int j, int k);

// Sorted pair / triple for a symmetric slot.
std::array<int, 2> sym2_pair(int n, int idx);
std::array<int, 3> sym3_triple(int n, int idx);

struct MultiIndex {
    std::vector<int> e;
    int order() const {
        int s = 0;
        for (int v : e) s += v;
        return s;
    }
    static MultiIndex from_list(int n, const std::vector<int>& idx) {
        MultiIndex m{std::vector<int>(n, 0)};
        for (int i : idx) m.e.at(i) += 1;
        return m;
    }
};

struct JetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class S>
struct Jet {
    int n = 0, m = 0, order = 0;
    std::vector<S> x, y, dy, d2y, d3y;

    Jet() = default;
    Jet(int n_, int m_, int order_) : n(n_), m(m_), order(order_) {
        if (order_ < 0 || order_ > 3) throw JetError("jet order must be in 0..3");
        x.assign(n, S(0.0));
        y.assign(m, S(0.0));
        if (order >= 1) dy.assign(m * n, S(0.0));
        if (order >= 2) d2y.assign(m * sym2_count(n), S(0.0));
        if (order >= 3) d3y.assign(m * sym3_count(n), S(0.0));
    }

    int s2() const { return sym2_count(n); }
    int s3() const { return sym3_count(n); }

    void need(int r) const {
        if (order < r) throw JetError("jet coordinate above declared order " + std::to_string(order));
    }

    S& Y1(int a, int i) { need(1); return dy[a * n + i]; }
    const S& Y1(int a, int i) const { need(1); return dy[a * n + i]; }
    S& Y2(int a, int i, int j) { need(2); return d2y[a * s2() + sym2(n, i, j)]; }
    const S& Y2(int a, int i, int j) const { need(2); return d2y[a * s2() + sym2(n, i, j)]; }
    S& Y3(int a, int i, int j, int k) { need(3); return d3y[a * s3() + sym3(n, i, j, k)]; }
    const S& Y3(int a, int i, int j, int k) const { need(3); return d3y[a * s3() + sym3(n, i, j, k)]; }

    int size() const { return static_cast<int>(x.size() + y.size() + dy.size() + d2y.size() + d3y.size()); }

    S& coord(int c) {
        if (c < n) return x[c];
        c -= n;
        if (c < m) return y[c];
        c -= m;
        if (c < (int)dy.size()) return dy[c];
        c -= (int)dy.size();
        if (c < (int)d2y.size()) return d2y[c];
        c -= (int)d2y.size();
        return d3y.at(c);
    }
    const S& coord(int c) const { return const_cast<Jet*>(this)->coord(c); }

    // Copy of the jet truncated to order r.
    Jet truncated(int r) const {
        need(r);
        Jet o = *this;
        o.order = r;
        if (r < 3) o.d3y.clear();
        if (r < 2) o.d2y.clear();
        if (r < 1) o.dy.clear();
        return o;
    }
};

using JetPoint = Jet<double>;

template <class T, class S>
Jet<T> jet_cast(const Jet<S>& p) {
    Jet<T> o;
    o.n = p.n;
    o.m = p.m;
    o.order = p.order;
    auto cv = [](const std::vector<S>& v) {
        std::vector<T> r;
        r.reserve(v.size());
        for (const auto& s : v) r.push_back(T(s));
        return r;
    };
    o.x = cv(p.x);
    o.y = cv(p.y);
    o.dy = cv(p.dy);
    o.d2y = cv(p.d2y);
    o.d3y = cv(p.d3y);
    return o;
}

// Jet of order r whose first-layer derivative is the total derivative direction
// along x^j: d/de of p(x + e e_j) with y_I moving at rate y_{I+(j)}. Needs p.order > r.
template <class S>
Jet<Dual<S>> total_direction(const Jet<S>& p, int j, int r) {
    p.need(r + 1);
    Jet<Dual<S>> o(p.n, p.m, r);
    int n = p.n;
    for (int i = 0; i < n; ++i) o.x[i] = Dual<S>(p.x[i], S(i == j ? 1.0 : 0.0));
    for (int a = 0; a < p.m; ++a) {
        o.y[a] = Dual<S>(p.y[a], p.Y1(a, j));
        if (r >= 1)
            for (int i = 0; i < n; ++i) o.Y1(a, i) = Dual<S>(p.Y1(a, i), p.Y2(a, i, j));
        if (r >= 2)
            for (int i = 0; i < n; ++i)
                for (int k = i; k < n; ++k) o.Y2(a, i, k) = Dual<S>(p.Y2(a, i, k), p.Y3(a, i, k, j));
    }
    return o;
}

// Number of coordinates of a jet of order r.
inline int jet_coord_count(int n, int m, int r) {
    int c = n + m;
    if (r >= 1) c += m * n;
    if (r >= 2) c += m * sym2_count(n);
    if (r >= 3) c += m * sym3_count(n);
    return c;
}

// Human readable coordinate label, e.g. "y2_13".
std::string coord_label(int n, int m, int c);

}  // namespace jv
