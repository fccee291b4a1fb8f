#pragma once
// Sparse multivariate polynomials with real coefficients and polynomial sections.

#include <map>
#include <string>
#include <vector>

#include "jetvar/jet.hpp"

namespace jv {

struct Poly {
    int nv = 0;
    std::map<std::vector<int>, double> terms;

    Poly() = default;
    explicit Poly(int nvars) : nv(nvars) {}
    static Poly constant(int nvars, double c);
    static Poly variable(int nvars, int i, double c = 1.0);
    static Poly monomial(int nvars, const std::vector<int>& e, double c = 1.0);

    void add_term(const std::vector<int>& e, double c);
    Poly diff(int i) const;
    int degree() const;
    bool is_zero() const { return terms.empty(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(double c) const;

    template <class S>
    S eval(const std::vector<S>& x) const {
        S r(0.0);
        for (const auto& [e, c] : terms) {
            S t(c);
            for (int i = 0; i < nv; ++i)
                for (int k = 0; k < e[i]; ++k) t = t * x[i];
            r = r + t;
        }
        return r;
    }
    std::string str() const;
};

// Polynomial section x -> (y^1(x), ..., y^m(x)) with derivative polynomials
// cached up to third order.
class PolySection {
public:
    PolySection() = default;
    PolySection(int n, int m, std::vector<Poly> comps);

    int n() const { return n_; }
    int m() const { return m_; }
    const Poly& component(int a) const { return comps_[a]; }
    int degree() const;

    template <class S>
    Jet<S> jet(const std::vector<S>& x, int order) const {
        if (order < 0 || order > 3) throw JetError("jet_of_section: order must be in 0..3");
        Jet<S> p(n_, m_, order);
        p.x = x;
        int s2 = sym2_count(n_), s3 = sym3_count(n_);
        for (int a = 0; a < m_; ++a) {
            p.y[a] = comps_[a].eval(x);
            if (order >= 1)
                for (int i = 0; i < n_; ++i) p.dy[a * n_ + i] = d1_[a * n_ + i].eval(x);
            if (order >= 2)
                for (int c = 0; c < s2; ++c) p.d2y[a * s2 + c] = d2_[a * s2 + c].eval(x);
            if (order >= 3)
                for (int c = 0; c < s3; ++c) p.d3y[a * s3 + c] = d3_[a * s3 + c].eval(x);
        }
        return p;
    }

private:
    int n_ = 0, m_ = 0;
    std::vector<Poly> comps_, d1_, d2_, d3_;
};

JetPoint jet_of_section(const PolySection& s, const std::vector<double>& x, int order);

}  // namespace jv
