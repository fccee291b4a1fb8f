#include "jetvar/symmetry.hpp"

namespace jv {

VectorField::VectorField(int n_, int m_, std::vector<Poly> u_, std::vector<Poly> v_)
    : n(n_), m(m_), u(std::move(u_)), v(std::move(v_)) {
    int nv = n + m;
    if ((int)u.size() != n || (int)v.size() != m) throw std::invalid_argument("VectorField: component count mismatch");
    for (auto& p : u) {
        if (p.nv == 0) p.nv = nv;
        if (p.nv != nv) throw std::invalid_argument("VectorField: polynomials must use n+m variables");
        for (const auto& [e, c] : p.terms)
            for (int a = 0; a < m; ++a)
                if (e[n + a] != 0) throw std::invalid_argument("VectorField: base components must not depend on y");
    }
    for (auto& p : v) {
        if (p.nv == 0) p.nv = nv;
        if (p.nv != nv) throw std::invalid_argument("VectorField: polynomials must use n+m variables");
    }
    du.resize(n * n);
    ddu.resize(n * n * n);
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i) {
            du[h * n + i] = u[h].diff(i);
            for (int j = 0; j < n; ++j) ddu[(h * n + i) * n + j] = du[h * n + i].diff(j);
        }
    dv.resize(m * nv);
    ddv.resize(m * nv * nv);
    for (int a = 0; a < m; ++a)
        for (int k = 0; k < nv; ++k) {
            dv[a * nv + k] = v[a].diff(k);
            for (int l = 0; l < nv; ++l) ddv[(a * nv + k) * nv + l] = dv[a * nv + k].diff(l);
        }
}

VectorField VectorField::zero(int n, int m) {
    return VectorField(n, m, std::vector<Poly>(n, Poly(n + m)), std::vector<Poly>(m, Poly(n + m)));
}

Prolongation prolong(const VectorField& X, const JetPoint& p) {
    if (p.order < 1) throw JetError("prolong: order-1 jet required");
    Prolongation out;
    out.n = X.n;
    out.m = X.m;
    out.order = p.order >= 2 ? 2 : 1;
    auto z = field_args(p);
    for (int i = 0; i < X.n; ++i) out.u.push_back(X.u[i].eval(z));
    for (int a = 0; a < X.m; ++a) out.v.push_back(X.v[a].eval(z));
    out.v1 = prolong1(X, p);
    if (p.order >= 2) out.v2 = prolong2(X, p);
    return out;
}

}  // namespace jv
