#include "jetvar/poly.hpp"

#include <cmath>
#include <sstream>

namespace jv {

Poly Poly::constant(int nvars, double c) {
    Poly p(nvars);
    p.add_term(std::vector<int>(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int i, double c) {
    std::vector<int> e(nvars, 0);
    e.at(i) = 1;
    return monomial(nvars, e, c);
}

Poly Poly::monomial(int nvars, const std::vector<int>& e, double c) {
    Poly p(nvars);
    p.add_term(e, c);
    return p;
}

void Poly::add_term(const std::vector<int>& e, double c) {
    if (c == 0.0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0.0) terms.erase(it);
}

Poly Poly::diff(int i) const {
    Poly r(nv);
    for (const auto& [e, c] : terms) {
        if (e[i] == 0) continue;
        auto f = e;
        f[i] -= 1;
        r.add_term(f, c * e[i]);
    }
    return r;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) {
        int s = 0;
        for (int v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    if (r.nv == 0) r.nv = o.nv;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o * -1.0; }

Poly Poly::operator*(const Poly& o) const {
    Poly r(std::max(nv, o.nv));
    for (const auto& [e1, c1] : terms)
        for (const auto& [e2, c2] : o.terms) {
            std::vector<int> e(r.nv, 0);
            for (int i = 0; i < r.nv; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Poly Poly::operator*(double c) const {
    Poly r(nv);
    if (c == 0.0) return r;
    for (const auto& [e, v] : terms) r.terms.emplace(e, v * c);
    return r;
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        double a = std::fabs(c);
        bool unit = a == 1.0;
        bool any = false;
        if (!unit) os << a;
        for (int i = 0; i < nv; ++i) {
            if (e[i] == 0) continue;
            if (!unit || any) os << "*";
            os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
            any = true;
        }
        if (unit && !any) os << "1";
    }
    return os.str();
}

PolySection::PolySection(int n, int m, std::vector<Poly> comps) : n_(n), m_(m), comps_(std::move(comps)) {
    if ((int)comps_.size() != m) throw JetError("PolySection: component count mismatch");
    for (auto& p : comps_)
        if (p.nv == 0) p.nv = n;
    int s2 = sym2_count(n), s3 = sym3_count(n);
    d1_.resize(m * n);
    d2_.resize(m * s2);
    d3_.resize(m * s3);
    for (int a = 0; a < m; ++a) {
        for (int i = 0; i < n; ++i) d1_[a * n + i] = comps_[a].diff(i);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                d2_[a * s2 + sym2(n, i, j)] = d1_[a * n + i].diff(j);
                for (int k = j; k < n; ++k) d3_[a * s3 + sym3(n, i, j, k)] = d1_[a * n + i].diff(j).diff(k);
            }
    }
}

int PolySection::degree() const {
    int d = -1;
    for (const auto& p : comps_) d = std::max(d, p.degree());
    return d;
}

JetPoint jet_of_section(const PolySection& s, const std::vector<double>& x, int order) { return s.jet(x, order); }

}  // namespace jv
