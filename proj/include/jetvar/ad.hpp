#pragma once
// Forward-mode dual numbers. Nesting Dual<Dual<double>> gives mixed second
// derivatives, and so on; value() strips every layer.

#include <cmath>
#include <type_traits>

namespace jv {

template <class T>
struct Dual {
    T v{};
    T d{};
    Dual() = default;
    Dual(double c) : v(c), d(0.0) {}
    template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
    Dual(const T& c) : v(c), d(0.0) {}
    Dual(const T& a, const T& b) : v(a), d(b) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
    Dual& operator*=(double c) { v *= c; d *= c; return *this; }
    Dual operator-() const { return Dual(-v, -d); }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(const Dual& a, const Dual& b) { return Dual(a.v * b.v, a.d * b.v + a.v * b.d); }
    friend Dual operator/(const Dual& a, const Dual& b) {
        T inv = T(1.0) / b.v;
        T q = a.v * inv;
        return Dual(q, (a.d - q * b.d) * inv);
    }
    friend Dual operator+(Dual a, double c) { a.v += c; return a; }
    friend Dual operator+(double c, Dual a) { a.v += c; return a; }
    friend Dual operator-(Dual a, double c) { a.v -= c; return a; }
    friend Dual operator-(double c, const Dual& a) { return Dual(c - a.v, -a.d); }
    friend Dual operator*(Dual a, double c) { a.v *= c; a.d *= c; return a; }
    friend Dual operator*(double c, Dual a) { a.v *= c; a.d *= c; return a; }
    friend Dual operator/(Dual a, double c) { a.v /= c; a.d /= c; return a; }
    friend Dual operator/(double c, const Dual& a) { return Dual(c) / a; }
};

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

inline double value(double x) { return x; }
template <class T> double value(const Dual<T>& x) { return value(x.v); }

// First-layer derivative of a nested scalar, as a double.
inline double deriv(double) { return 0.0; }
template <class T> double deriv(const Dual<T>& x) { return value(x.d); }

template <class T> Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    T r = sqrt(a.v);
    return Dual<T>(r, a.d / (2.0 * r));
}
template <class T> Dual<T> abs(const Dual<T>& a) { return value(a) < 0 ? -a : a; }
template <class T> Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    T e = exp(a.v);
    return Dual<T>(e, a.d * e);
}
template <class T> Dual<T> log(const Dual<T>& a) {
    using std::log;
    return Dual<T>(log(a.v), a.d / a.v);
}
template <class T> Dual<T> sin(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return Dual<T>(sin(a.v), a.d * cos(a.v));
}
template <class T> Dual<T> cos(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return Dual<T>(cos(a.v), -(a.d * sin(a.v)));
}
template <class T> Dual<T> pow(const Dual<T>& a, double e) {
    using std::pow;
    T p = pow(a.v, e - 1.0);
    return Dual<T>(p * a.v, a.d * (e * p));
}

template <class S> S ipow(const S& a, int e) {
    if (e == 0) return S(1.0);
    if (e < 0) return S(1.0) / ipow(a, -e);
    S r = a;
    for (int i = 1; i < e; ++i) r *= a;
    return r;
}

// Scalar with a single seeded derivative.
template <class S> Dual<S> seed(const S& v) { return Dual<S>(v, S(1.0)); }

}  // namespace jv
