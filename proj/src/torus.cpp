#include "jetvar/torus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "jetvar/eh.hpp"
#include "jetvar/metric.hpp"

namespace jv {

namespace {

constexpr int kN = 4, kM = 10;

int E(int a, int b) { return sym2(kN, a - 1, b - 1); }

std::vector<QC> unit(std::initializer_list<std::pair<int, Q>> entries) {
    std::vector<QC> v(kM);
    for (const auto& [A, c] : entries) v[A] = QC(c);
    return v;
}

const std::vector<Q>& dp_table() {
    static const std::vector<Q> t = [] {
        std::vector<double> g(kN * kN, 0.0);
        for (int i = 0; i < kN; ++i) g[i * kN + i] = torus_signature()[i];
        JetPoint p(kN, kM, 1);
        for (int a = 0; a < kN; ++a) p.y[sym2(kN, a, a)] = g[a * kN + a];
        auto md = metric_data(p);
        std::vector<Q> out(kN * kM * kM * kN);
        for (int i = 0; i < kN; ++i)
            for (int ab = 0; ab < kM; ++ab)
                for (int kl = 0; kl < kM; ++kl) {
                    auto [k, l] = sym2_pair(kN, kl);
                    auto [a, b] = sym2_pair(kN, ab);
                    for (int j = 0; j < kN; ++j)
                        // Entries are multiples of 1/4 with |g^{ij}| = rho = 1, so the double is exact.
                        out[((i * kM + ab) * kM + kl) * kN + j] = Q(eh_Y(md, i, k, l, j, a, b));
                }
        return out;
    }();
    return t;
}

}  // namespace

Mode mode_add(const Mode& a, const Mode& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

std::string mode_str(const Mode& k) {
    std::ostringstream o;
    o << "(" << k[0] << "," << k[1] << "," << k[2] << "," << k[3] << ")";
    return o.str();
}

const std::vector<int>& torus_signature() {
    static const std::vector<int> eps{-1, 1, 1, 1};
    return eps;
}

QMatrix mode_matrix(const Mode& k) {
    static const DiffOpMatrix op = flat_operator_matrix(torus_signature());
    QMatrix M(kM, kM);
    for (int A = 0; A < kM; ++A)
        for (int B = 0; B < kM; ++B) {
            Q v = 0;
            for (int i = 0; i < kN; ++i)
                for (int j = i; j < kN; ++j) v -= op.at(A, B, i, j) * k[i] * k[j];
            M(A, B) = v;
        }
    return M;
}

ModeClass mode_class(const Mode& k) {
    if (k[1] != 0) return ModeClass::K2;
    if (k[3] != 0) return ModeClass::K4;
    if (k[2] != 0) return ModeClass::K3;
    return ModeClass::K1;
}

const char* mode_class_name(ModeClass c) {
    switch (c) {
        case ModeClass::K2: return "k2!=0";
        case ModeClass::K4: return "k2=0,k4!=0";
        case ModeClass::K3: return "k2=k4=0,k3!=0";
        case ModeClass::K1: return "k2=k3=k4=0";
    }
    return "";
}

ModeSolution mode_solve(const Mode& k) {
    ModeSolution s;
    s.cls = mode_class(k);
    s.basis = nullspace(mode_matrix(k));
    s.dimension = static_cast<int>(s.basis.size());
    return s;
}

bool basis_side_condition(int h, const Mode& k, BasisConvention conv) {
    switch (h) {
        case 1: case 3: return k[2] != 0;
        case 2: return k[3] != 0;
        case 4: return k[1] != 0;
        case 6: return conv == BasisConvention::Tabulated || k[2] != 0;
        case 5: case 7: case 8: return true;
    }
    return false;
}

BasisField basis_field(int h, const Mode& k, BasisConvention conv) {
    if (h < 1 || h > 8) throw std::invalid_argument("basis_field: label must be 1..8");
    if (!basis_side_condition(h, k, conv))
        throw std::invalid_argument("basis_field: mode " + mode_str(k) + " violates the side condition of X" +
                                    std::to_string(h));
    Q k1 = k[0], k2 = k[1], k3 = k[2], k4 = k[3];
    BasisField X;
    X.h = h;
    switch (h) {
        case 1:
            X.k = {k[0], 0, k[2], 0};
            X.amp = unit({{E(3, 3), 1}, {E(1, 1), (conv == BasisConvention::Tabulated ? 1 : -1) * k1 * k1 / (k3 * k3)}});
            break;
        case 2:
            X.k = {k[0], 0, k[2], k[3]};
            X.amp = unit({{E(1, 2), k1 / k4}, {E(2, 3), k3 / k4}, {E(2, 4), 1}});
            break;
        case 3:
            X.k = {k[0], 0, k[2], 0};
            X.amp = unit({{E(1, 2), k1 / k3}, {E(2, 3), 1}});
            break;
        case 4:
            X.k = k;
            X.amp = unit({{E(1, 2), k1 / (2 * k2)}, {E(2, 2), 1}, {E(2, 3), k3 / (2 * k2)}, {E(2, 4), k4 / (2 * k2)}});
            break;
        case 5:
            X.k = {k[0], 0, 0, 0};
            X.amp = unit({{E(1, 4), 1}});
            break;
        case 6:
            X.k = {k[0], 0, k[2], 0};
            if (conv == BasisConvention::Tabulated)
                X.amp = unit({{E(1, 1), 2 * k3}, {E(1, 3), 1}});
            else
                X.amp = unit({{E(1, 1), 2 * k1 / k3}, {E(1, 3), 1}});
            break;
        case 7:
            X.k = {k[0], 0, 0, 0};
            X.amp = unit({{E(1, 2), 1}});
            break;
        case 8:
            X.k = {k[0], 0, 0, 0};
            X.amp = unit({{E(1, 1), 1}});
            break;
    }
    return X;
}

bool in_mode_nullspace(const FourierField& X) {
    for (const auto& t : X.terms) {
        QMatrix M = mode_matrix(t.k);
        for (int A = 0; A < kM; ++A) {
            QC v;
            for (int B = 0; B < kM; ++B) v += QC(M(A, B)) * t.amp[B];
            if (!v.is_zero()) return false;
        }
    }
    return true;
}

Q flat_dp(int i, int ab, int kl, int j) { return dp_table()[((i * kM + ab) * kM + kl) * kN + j]; }

std::array<QC, 4> PresymplecticValue::at(const Mode& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? std::array<QC, 4>{} : it->second;
}

bool PresymplecticValue::is_zero() const {
    for (const auto& [m, c] : terms)
        for (const auto& v : c)
            if (!v.is_zero()) return false;
    return true;
}

PresymplecticValue presymplectic_pair(const FourierField& X, const FourierField& Y) {
    const auto& dp = dp_table();
    PresymplecticValue w;
    for (const auto& tx : X.terms)
        for (const auto& ty : Y.terms) {
            // i k_j V^{kl} W^{ab} - i l_j V^{ab} W^{kl}
            std::array<QC, 4> c{};
            for (int ab = 0; ab < kM; ++ab)
                for (int kl = 0; kl < kM; ++kl) {
                    QC vw = tx.amp[kl] * ty.amp[ab], wv = tx.amp[ab] * ty.amp[kl];
                    if (vw.is_zero() && wv.is_zero()) continue;
                    for (int j = 0; j < kN; ++j) {
                        QC f = QC(0, tx.k[j]) * vw - QC(0, ty.k[j]) * wv;
                        if (f.is_zero()) continue;
                        for (int i = 0; i < kN; ++i) {
                            const Q& d = dp[((i * kM + ab) * kM + kl) * kN + j];
                            if (d != 0) c[i] += QC(d) * f;
                        }
                    }
                }
            auto& slot = w.terms[mode_add(tx.k, ty.k)];
            for (int i = 0; i < kN; ++i) slot[i] += c[i];
        }
    return w;
}

PresymplecticValue presymplectic_pair(const BasisField& X, const BasisField& Y) {
    return presymplectic_pair(X.field(), Y.field());
}

PresymplecticValue operator+(const PresymplecticValue& a, const PresymplecticValue& b) {
    PresymplecticValue w = a;
    for (const auto& [m, c] : b.terms) {
        auto& slot = w.terms[m];
        for (int i = 0; i < kN; ++i) slot[i] += c[i];
    }
    return w;
}

bool is_negation(const PresymplecticValue& a, const PresymplecticValue& b) { return (a + b).is_zero(); }

bool is_closed(const PresymplecticValue& w) {
    for (const auto& [m, c] : w.terms) {
        QC s;
        for (int i = 0; i < kN; ++i) s += QC(Q(m[i])) * c[i];
        if (!s.is_zero()) return false;
    }
    return true;
}

std::array<QC, 4> cohomology_class(const PresymplecticValue& w) { return w.at({0, 0, 0, 0}); }

Q upsilon_determinant() {
    QMatrix U(kN * kM, kN * kM);
    for (int i = 0; i < kN; ++i)
        for (int ab = 0; ab < kM; ++ab)
            for (int j = 0; j < kN; ++j)
                for (int kl = 0; kl < kM; ++kl) U(ab * kN + i, kl * kN + j) = flat_dp(i, ab, kl, j);
    return det(U);
}

RadicalReport radical_probe(const Mode& k) {
    RadicalReport r;
    r.k = k;
    Mode mk{-k[0], -k[1], -k[2], -k[3]};
    std::vector<BasisField> xs, ys;
    for (int h = 1; h <= 8; ++h) {
        if (basis_side_condition(h, k)) xs.push_back(basis_field(h, k));
        if (basis_side_condition(h, mk)) ys.push_back(basis_field(h, mk));
    }
    r.fields = static_cast<int>(xs.size());
    // Rows: (partner, mode, component); columns: the fields at k.
    std::vector<std::vector<QC>> rows;
    for (const auto& y : ys) {
        std::map<Mode, std::vector<std::array<QC, 4>>> byMode;
        for (size_t c = 0; c < xs.size(); ++c) {
            auto w = presymplectic_pair(xs[c], y);
            for (const auto& [m, v] : w.terms) {
                auto& col = byMode[m];
                col.resize(xs.size());
                col[c] = v;
            }
        }
        for (const auto& [m, cols] : byMode)
            for (int i = 0; i < kN; ++i) {
                std::vector<QC> row(xs.size());
                for (size_t c = 0; c < xs.size(); ++c) row[c] = cols[c][i];
                rows.push_back(std::move(row));
            }
    }
    QCMatrix P(static_cast<int>(rows.size()), r.fields);
    for (size_t a = 0; a < rows.size(); ++a)
        for (int c = 0; c < r.fields; ++c) P(static_cast<int>(a), c) = rows[a][c];
    r.kernel = nullspace(P);
    r.kernel_dimension = static_cast<int>(r.kernel.size());
    r.pairing_rank = r.fields - r.kernel_dimension;
    r.upsilon_det = upsilon_determinant();
    r.upsilon_nonsingular = r.upsilon_det != 0;
    return r;
}

namespace {

#define KL                                                       \
    [[maybe_unused]] Q k1 = k[0], k2 = k[1], k3 = k[2], k4 = k[3]; \
    [[maybe_unused]] Q l1 = l[0], l2 = l[1], l3 = l[2], l4 = l[3]

QC I(const Q& q) { return QC(0, q); }

}  // namespace

const std::vector<PairingOracle>& printed_pairing_table() {
    static const std::vector<PairingOracle> t = {
        {"c21", 2, 1, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k4 == 0 || l3 == 0) return false;
             o = I(((k4 * k4 + k1 * l1 - k3 * l3) * (l1 * l1 - l3 * l3) + (k1 * k1 + k3 * k3) * (l1 * l1 + l3 * l3)) /
                   (2 * k4 * l3 * l3));
             return true;
         }},
        {"c31", 3, 1, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k3 == 0 || l3 == 0) return false;
             o = I(((k1 * l1 - k3 * l3) * (l1 * l1 - l3 * l3) + (k1 * k1 + k3 * k3) * (l1 * l1 + l3 * l3)) /
                   (2 * k3 * l3 * l3));
             return true;
         }},
        {"w2(X5,X2)", 5, 2, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(2 * l1);
             return true;
         }},
        {"c62", 6, 2, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l4 == 0) return false;
             o = I(-(k3 * k1 * l1 - k3 * k3 * l3 - 2 * l1 * l3 + k3 * l1 * l1 + k3 * l3 * l3 + k3 * l4 * l4) / l4);
             return true;
         }},
        {"c63", 6, 3, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(-(k3 * k1 * l1 - k3 * k3 * l3 + k3 * l1 * l1 - 2 * l1 * l3 + k3 * l3 * l3) / l3);
             return true;
         }},
        {"w2(X7,X6)", 7, 6, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I((k1 + l1) * l3);
             return true;
         }},
        {"w2(X8,X2)", 8, 2, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l4 == 0) return false;
             o = I(-(k1 * l1 + l1 * l1 + l3 * l3 + l4 * l4) / (2 * l4));
             return true;
         }},
        {"w2(X8,X3)", 8, 3, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(-(k1 * l1 + l1 * l1 + l3 * l3) / (2 * l3));
             return true;
         }},
        {"w2(X8,X7)", 8, 7, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-(k1 + l1) / 2);
             return true;
         }},
        {"w2(X6,X5)", 6, 5, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-k3 * (k1 + l1));
             return true;
         }},
        {"w2(X8,X5)", 8, 5, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-(k1 + l1) / 2);
             return true;
         }},
        {"c41^1", 4, 1, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(-(k1 * l1 * l1 + k1 * l3 * l3 - 2 * l1 * l3 * l3) / (4 * l3 * l3));
             return true;
         }},
        {"c41^2", 4, 1, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k2 == 0 || l3 == 0) return false;
             o = I((k1 * l1 * l1 * l1 - k3 * l1 * l1 * l3 + (k1 * k1 + k3 * k3) * (l1 * l1 + l3 * l3) -
                    k1 * l1 * l3 * l3 + k3 * l3 * l3 * l3 + k4 * k4 * (l1 * l1 - l3 * l3)) /
                   (4 * k2 * l3 * l3));
             return true;
         }},
        {"c41^3", 4, 1, 2,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(-(k3 * l3 * l3 - 2 * l1 * l1 * l3 + k3 * l1 * l1) / (4 * l3 * l3));
             return true;
         }},
        {"c41^4", 4, 1, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(-k4 * (l1 * l1 - l3 * l3) / (4 * l3 * l3));
             return true;
         }},
        {"w2^1(X4,X2)", 4, 2, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l4 == 0) return false;
             o = I(k2 * l1 / (2 * l4));
             return true;
         }},
        {"c42", 4, 2, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l4 == 0) return false;
             o = I(-((l1 + k1) * l1 - (l3 + k3) * l3 - (l4 + k4) * l4) / (2 * l4));
             return true;
         }},
        {"w2^3(X4,X2)", 4, 2, 2,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l4 == 0) return false;
             o = I(-k2 * l3 / (2 * l4));
             return true;
         }},
        {"w2^4(X4,X2)", 4, 2, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-k2 / 2);
             return true;
         }},
        {"w2^1(X4,X3)", 4, 3, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(k2 * l1 / (2 * l3));
             return true;
         }},
        {"c43", 4, 3, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(-((l1 + k1) * l1 - (k3 + l3) * l3) / (2 * l3));
             return true;
         }},
        {"w2^3(X4,X3)", 4, 3, 2,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-k2 / 2);
             return true;
         }},
        {"w2^4(X4,X3)", 4, 3, 3,
         [](const Mode&, const Mode&, QC& o) {
             o = QC();
             return true;
         }},
        {"c44^1", 4, 4, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k2 == 0 || l2 == 0) return false;
             o = I(-(k1 * l2 - l1 * k2) * (l2 + k2) / (4 * k2 * l2));
             return true;
         }},
        {"c44^2", 4, 4, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k2 == 0 || l2 == 0) return false;
             o = I(((k1 + l1) * (l2 * k1 - k2 * l1) + (l3 + k3) * (k2 * l3 - l2 * k3) +
                    (l4 + k4) * (k2 * l4 - l2 * k4)) /
                   (4 * k2 * l2));
             return true;
         }},
        {"c44^3", 4, 4, 2,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k2 == 0 || l2 == 0) return false;
             o = I(-(l3 * k2 - k3 * l2) * (l2 + k2) / (4 * l2 * k2));
             return true;
         }},
        {"c44^4", 4, 4, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k2 == 0 || l2 == 0) return false;
             o = I(-(l4 * k2 - k4 * l2) * (l2 + k2) / (4 * l2 * k2));
             return true;
         }},
        {"w2^4(X5,X1)", 5, 1, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I((l1 * l1 * l1 + k1 * l1 * l1 + k1 * l3 * l3 - l1 * l3 * l3) / (2 * l3 * l3));
             return true;
         }},
        {"w2^1(X5,X4)", 5, 4, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-l4 / 2);
             return true;
         }},
        {"w2^2(X5,X4)", 5, 4, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l2 == 0) return false;
             o = I(l1 * l4 / l2);
             return true;
         }},
        {"w2^3(X5,X4)", 5, 4, 2,
         [](const Mode&, const Mode&, QC& o) {
             o = QC();
             return true;
         }},
        {"w2^4(X5,X4)", 5, 4, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I((k1 - l1) / 2);
             return true;
         }},
        {"c64^1", 6, 4, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I((k3 * l1 + k3 - l3) / 2);
             return true;
         }},
        {"c64^2", 6, 4, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l2 == 0) return false;
             o = I(-(k1 * k3 * l1 - k3 * k3 * l3 + k3 * l1 * l1 - 2 * l3 * l1 + k3 * l3 * l3 + k3 * l4 * l4) / (2 * l2));
             return true;
         }},
        {"c64^3", 6, 4, 2,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I((k1 - l1 + k3 * l3 - 2 * k3 * k3) / 2);
             return true;
         }},
        {"c64^4", 6, 4, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(k3 * l4 / 2);
             return true;
         }},
        {"w2^1(X6,X6)", 6, 6, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(k3 * k3 - l3 * l3);
             return true;
         }},
        {"w2^2(X6,X6)", 6, 6, 1,
         [](const Mode&, const Mode&, QC& o) {
             o = QC();
             return true;
         }},
        {"w2^3(X6,X6)", 6, 6, 2,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-(k1 + l1) * (k3 - l3));
             return true;
         }},
        {"w2^4(X6,X6)", 6, 6, 3,
         [](const Mode&, const Mode&, QC& o) {
             o = QC();
             return true;
         }},
        {"w2^1(X7,X4)", 7, 4, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-l2 / 2);
             return true;
         }},
        {"w2^2(X7,X4)", 7, 4, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I((k1 + l1) / 2);
             return true;
         }},
        {"w2^3(X7,X4)", 7, 4, 2,
         [](const Mode&, const Mode&, QC& o) {
             o = QC();
             return true;
         }},
        {"w2^4(X7,X4)", 7, 4, 3,
         [](const Mode&, const Mode&, QC& o) {
             o = QC();
             return true;
         }},
        {"c84^1", 8, 4, 0,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(l1 / 4);
             return true;
         }},
        {"c84^2", 8, 4, 1,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l2 == 0) return false;
             o = I(-(k1 * l1 + l1 * l1 + l3 * l3 + l4 * l4) / (4 * l2));
             return true;
         }},
        {"c84^3", 8, 4, 2,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(l3 / 4);
             return true;
         }},
        {"c84^4", 8, 4, 3,
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(l4 / 4);
             return true;
         }},
    };
    return t;
}

const std::vector<ZeroFamily>& printed_zero_families() {
    static const std::vector<ZeroFamily> t = [] {
        std::vector<ZeroFamily> v;
        const std::array<bool, 4> all{true, true, true, true}, not4{true, true, true, false},
            not2{true, false, true, true}, first3{true, true, true, false};
        for (auto [a, b] : std::vector<std::pair<int, int>>{
                 {1, 1}, {2, 2}, {3, 2}, {7, 2}, {3, 3}, {5, 3}, {5, 5}, {7, 3}, {7, 5}, {7, 7}, {8, 8}})
            v.push_back({a, b, all});
        for (auto [a, b] : std::vector<std::pair<int, int>>{{6, 5}, {8, 5}}) v.push_back({a, b, not4});
        for (auto [a, b] : std::vector<std::pair<int, int>>{
                 {2, 1}, {3, 1}, {5, 2}, {6, 2}, {6, 3}, {7, 6}, {8, 2}, {8, 3}, {8, 7}})
            v.push_back({a, b, not2});
        v.push_back({5, 1, first3});
        return v;
    }();
    return t;
}

const std::vector<ClassOracle>& printed_class_table() {
    static const std::vector<ClassOracle> t = {
        {"[w2(X5,X4)] v4", 5, 4, 3, false,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] == 0 && l[1] == 0 && l[2] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(k1);
             return true;
         }},
        {"[w2(X6,X4)] v2", 6, 4, 1, false,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] == 0 && k[2] + l[2] == 0 && l[3] == 0 && l[1] != 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(-k3 * (k3 * k3 - k1) / l2);
             return true;
         }},
        {"[w2(X6,X4)] v3", 6, 4, 2, false,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] == 0 && l[1] == 0 && l[3] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I((2 * k1 + k3 * l3 - 2 * k3 * k3) / 2);
             return true;
         }},
        {"[w2(X6,X4)] v4", 6, 4, 3, false,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] == 0 && k[2] + l[2] == 0 && l[1] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(k3 * l4 / 2);
             return true;
         }},
        {"[w2(X8,X4)] v1", 8, 4, 0, false,
         [](const Mode&, const Mode& l) { return l[1] == 0 && l[2] == 0 && l[3] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(l1 / 4);
             return true;
         }},
        {"[w2(X8,X4)] v3", 8, 4, 2, false,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] == 0 && l[1] == 0 && l[3] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(l3 / 4);
             return true;
         }},
        {"[w2(X8,X4)] v4", 8, 4, 3, false,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] == 0 && l[1] == 0 && l[2] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             o = I(l4 / 4);
             return true;
         }},
        {"[w2(X4,X1)] v2", 4, 1, 1, true, [](const Mode& k, const Mode&) { return k[1] != 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k2 == 0) return false;
             o = I(k1 * k1 / k2);
             return true;
         }},
        {"[w2(X4,X1)] v1", 4, 1, 0, true,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] != 0 && k[1] == 0 && k[3] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k3 == 0) return false;
             o = I(-(k1 * l1 * l1 + k1 * k3 * k3 - 2 * l1 * k3 * k3) / (4 * k3 * k3));
             return true;
         }},
        {"[w2(X4,X1)] v3", 4, 1, 2, true,
         [](const Mode& k, const Mode& l) { return k[0] + l[0] == 0 && k[1] == 0 && k[3] == 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (l3 == 0) return false;
             o = I(-(k3 * l3 * l3 - 2 * k1 * k1 * l3 + k3 * k1 * k1) / (4 * l3 * l3));
             return true;
         }},
        {"[w2(X4,X1)] v4", 4, 1, 3, true, [](const Mode& k, const Mode&) { return k[1] == 0 && k[3] != 0; },
         [](const Mode& k, const Mode& l, QC& o) {
             KL;
             if (k3 == 0) return false;
             o = I(-k4 * (k1 * k1 - k3 * k3) / (4 * k3 * k3));
             return true;
         }},
    };
    return t;
}

#undef KL

Mode random_admissible_mode(int h, BasisConvention conv, std::mt19937_64& rng, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    for (;;) {
        Mode k{d(rng), d(rng), d(rng), d(rng)};
        if (basis_side_condition(h, k, conv)) return k;
    }
}

std::vector<FamilyCheck> check_pairing_table(BasisConvention conv, int per_family, std::mt19937_64& rng, int range) {
    std::vector<FamilyCheck> out;
    for (const auto& o : printed_pairing_table()) {
        FamilyCheck fc;
        fc.name = o.name;
        for (int t = 0; t < 50 * per_family && fc.sampled < per_family; ++t) {
            Mode k = random_admissible_mode(o.h1, conv, rng, range), l = random_admissible_mode(o.h2, conv, rng, range);
            QC want;
            if (!o.value(k, l, want)) continue;
            auto X = basis_field(o.h1, k, conv), Y = basis_field(o.h2, l, conv);
            QC got = presymplectic_pair(X, Y).at(mode_add(X.k, Y.k))[o.component];
            ++fc.sampled;
            if (got == want) ++fc.matched;
            else if (fc.mismatch.empty())
                fc.mismatch = mode_str(k) + " " + mode_str(l) + " got " + got.str() + " want " + want.str();
            if (!got.is_zero()) ++fc.nonzero;
        }
        out.push_back(fc);
    }
    return out;
}

std::vector<FamilyCheck> check_zero_families(BasisConvention conv, int per_family, std::mt19937_64& rng, int range) {
    std::vector<FamilyCheck> out;
    for (const auto& z : printed_zero_families()) {
        FamilyCheck fc;
        fc.name = "w2(X" + std::to_string(z.h1) + ",X" + std::to_string(z.h2) + ")";
        for (int t = 0; t < per_family; ++t) {
            Mode k = random_admissible_mode(z.h1, conv, rng, range), l = random_admissible_mode(z.h2, conv, rng, range);
            auto w = presymplectic_pair(basis_field(z.h1, k, conv), basis_field(z.h2, l, conv));
            bool zero = true;
            for (const auto& [m, c] : w.terms)
                for (int i = 0; i < 4; ++i)
                    if (z.components[i] && !c[i].is_zero()) zero = false;
            ++fc.sampled;
            if (zero) ++fc.matched;
            else {
                ++fc.nonzero;
                if (fc.mismatch.empty()) fc.mismatch = mode_str(k) + " " + mode_str(l) + " nonzero";
            }
        }
        out.push_back(fc);
    }
    return out;
}

std::vector<FamilyCheck> check_class_table(BasisConvention conv, int per_entry, std::mt19937_64& rng, int range) {
    int w = 2 * range + 1, w4 = w * w * w * w;
    auto decode = [&](int c) {
        Mode k;
        for (int i = 3; i >= 0; --i) {
            k[i] = c % w - range;
            c /= w;
        }
        return k;
    };
    std::vector<FamilyCheck> out;
    for (const auto& e : printed_class_table()) {
        FamilyCheck fc;
        fc.name = e.name;
        std::vector<std::pair<int, int>> adm;
        for (int a = 0; a < w4; ++a) {
            Mode k = decode(a);
            if (!basis_side_condition(e.h1, k, conv)) continue;
            for (int b = 0; b < w4; ++b) {
                Mode l = decode(b);
                if (e.condition(k, l) && basis_side_condition(e.h2, l, conv)) adm.push_back({a, b});
            }
        }
        std::shuffle(adm.begin(), adm.end(), rng);
        for (const auto& [a, b] : adm) {
            if (fc.sampled >= per_entry) break;
            Mode k = decode(a), l = decode(b);
            QC want;
            if (!e.value(k, l, want)) continue;
            QC got = cohomology_class(presymplectic_pair(basis_field(e.h1, k, conv), basis_field(e.h2, l, conv)))[e.component];
            ++fc.sampled;
            if (!got.is_zero()) ++fc.nonzero;
            if (got == want) ++fc.matched;
            else if (fc.mismatch.empty())
                fc.mismatch = mode_str(k) + " " + mode_str(l) + " got " + got.str() + " want " + want.str();
        }
        out.push_back(fc);
    }
    return out;
}

PairingSweep sweep_pairings(BasisConvention conv, int per_pair, std::mt19937_64& rng, int range) {
    PairingSweep s;
    for (int a = 1; a <= 8; ++a)
        for (int b = 1; b <= 8; ++b)
            for (int t = 0; t < per_pair; ++t) {
                auto X = basis_field(a, random_admissible_mode(a, conv, rng, range), conv);
                auto Y = basis_field(b, random_admissible_mode(b, conv, rng, range), conv);
                auto xy = presymplectic_pair(X, Y);
                ++s.pairs;
                s.antisymmetric += is_negation(xy, presymplectic_pair(Y, X));
                s.closed += is_closed(xy);
            }
    return s;
}

}  // namespace jv
