#pragma once
// Derivative-carrying evaluation of jet functions.
// A jet function is any object with `template<class S> S operator()(const Jet<S>&) const`.

#include <vector>

#include "jetvar/jet.hpp"

namespace jv {

struct JetPartials {
    int count = 0;
    double value = 0.0;
    std::vector<double> grad;  // count
    std::vector<double> hess;  // count*count, row major, symmetric
    double h(int a, int b) const { return hess[a * count + b]; }
};

// Total derivative D_j F at p, where F has order r = p.order - 1 unless given.
template <class F>
double total_derivative(const F& f, int j, const JetPoint& p, int r = -1) {
    if (r < 0) r = p.order - 1;
    if (r < 0 || p.order < r + 1) throw JetError("total_derivative: jet order too low");
    return deriv(f(total_direction(p, j, r)));
}

// First and second partials of F w.r.t. every coordinate of p (order p.order).
template <class F>
JetPartials jet_partials(const F& f, const JetPoint& p, bool second = true) {
    JetPartials out;
    int N = p.size();
    out.count = N;
    out.grad.assign(N, 0.0);
    out.value = f(p);
    using D = Dual<double>;
    Jet<D> q = jet_cast<D>(p);
    for (int a = 0; a < N; ++a) {
        q.coord(a).d = 1.0;
        out.grad[a] = f(q).d;
        q.coord(a).d = 0.0;
    }
    if (!second) return out;
    out.hess.assign(N * N, 0.0);
    using DD = Dual<D>;
    Jet<DD> r = jet_cast<DD>(p);
    for (int a = 0; a < N; ++a) {
        r.coord(a).d.v = 1.0;
        for (int b = a; b < N; ++b) {
            r.coord(b).v.d = 1.0;
            double v = f(r).d.d;
            r.coord(b).v.d = 0.0;
            out.hess[a * N + b] = v;
            out.hess[b * N + a] = v;
        }
        r.coord(a).d.v = 0.0;
    }
    return out;
}

// Directional derivative of F at p along coordinate c, evaluated at an arbitrary scalar type.
template <class F, class S>
S coord_partial(const F& f, const Jet<S>& p, int c) {
    Jet<Dual<S>> q = jet_cast<Dual<S>>(p);
    q.coord(c).d = S(1.0);
    return f(q).d;
}

}  // namespace jv
