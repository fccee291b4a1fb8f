#pragma once
// Jacobi fields on the flat Lorentzian 4-torus diag(-1, 1, 1, 1) by Fourier modes, the basis
// fields X_1..X_8, the presymplectic pairing and its cohomology classes. Amplitudes are
// Gaussian rationals; exp(i k.x) is carried as the integer mode label k.

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "jetvar/jacobi.hpp"
#include "jetvar/rational.hpp"

namespace jv {

using Mode = std::array<int, 4>;

Mode mode_add(const Mode& a, const Mode& b);
std::string mode_str(const Mode& k);

// Torus background signature.
const std::vector<int>& torus_signature();

// M(k) = P(D -> i k): entry (A, B) is -sum_{i<=j} c_{ij} k_i k_j, A and B indexed by sym2.
QMatrix mode_matrix(const Mode& k);

// Case order of the mode classification: k2 != 0, then k4 != 0, then k3 != 0, then pure k1.
enum class ModeClass { K2, K4, K3, K1 };
ModeClass mode_class(const Mode& k);
const char* mode_class_name(ModeClass c);

struct ModeSolution {
    ModeClass cls = ModeClass::K1;
    int dimension = 0;
    std::vector<std::vector<Q>> basis;  // nullspace of M(k), one 10-vector per element
};
ModeSolution mode_solve(const Mode& k);

// One Fourier term A exp(i k.x) of a vertical field, A indexed by sym2(a, b).
struct FourierTerm {
    Mode k{};
    std::vector<QC> amp;
};
struct FourierField {
    std::vector<FourierTerm> terms;
};

// Nullspace: amplitudes solving M(k) A = 0, X_1 = E8 - (k1/k3)^2 E1, X_6 = (2 k1/k3) E1 + E3.
// Tabulated: the amplitudes the printed pairing table is consistent with, X_1 = E8 + (k1/k3)^2 E1
// and X_6 = 2 k3 E1 + E3. Neither of these two is a Jacobi field.
enum class BasisConvention { Nullspace, Tabulated };

struct BasisField {
    int h = 0;
    Mode k{};
    std::vector<QC> amp;
    FourierField field() const { return {{FourierTerm{k, amp}}}; }
};

// Throws std::invalid_argument when k violates the side condition of X_h. The mode of X_h
// keeps only the components it depends on: X_1, X_3, X_6 use (k1, 0, k3, 0), X_2 uses
// (k1, 0, k3, k4), X_4 uses k, X_5, X_7, X_8 use (k1, 0, 0, 0).
BasisField basis_field(int h, const Mode& k, BasisConvention conv = BasisConvention::Nullspace);
bool basis_side_condition(int h, const Mode& k, BasisConvention conv = BasisConvention::Nullspace);
// M(k) A = 0 for every term.
bool in_mode_nullspace(const FourierField& X);

// d p^i_{ab} / d y_{kl,j} at the flat torus metric, exact.
Q flat_dp(int i, int ab, int kl, int j);

// omega_2^i(X, Y) per total mode; the 3-form is sum_i (-1)^{i-1} omega_2^i v_i with
// v_i = dx^1 ^ .. (omit i) .. ^ dx^4.
struct PresymplecticValue {
    std::map<Mode, std::array<QC, 4>> terms;
    std::array<QC, 4> at(const Mode& m) const;
    bool is_zero() const;
};
PresymplecticValue presymplectic_pair(const FourierField& X, const FourierField& Y);
PresymplecticValue presymplectic_pair(const BasisField& X, const BasisField& Y);
PresymplecticValue operator+(const PresymplecticValue& a, const PresymplecticValue& b);
// Componentwise a + b == 0.
bool is_negation(const PresymplecticValue& a, const PresymplecticValue& b);
// d omega_2 = 0: sum_i m_i omega_2^i = 0 on every mode m.
bool is_closed(const PresymplecticValue& w);

// Constant-mode coefficients of omega_2^i. The class of the 3-form is
// sum_i (-1)^{i-1} c_i [v_i]; the raw c_i are returned. Integrating over the 3-torus
// dual to v_i multiplies by the volume (2 pi)^3.
std::array<QC, 4> cohomology_class(const PresymplecticValue& w);

struct RadicalReport {
    Mode k{};
    int fields = 0;             // admissible basis fields at k and -k
    int pairing_rank = 0;       // rank of the pointwise pairing block
    int kernel_dimension = 0;
    std::vector<std::vector<QC>> kernel;
    bool upsilon_nonsingular = false;  // Hessian block d p / d y' at the flat metric
    Q upsilon_det;
};
// Pairs the admissible X_h^k against the admissible X_h^{-k} (so every product lands on the
// constant mode) over all four components and reports the kernel in the k block.
RadicalReport radical_probe(const Mode& k);
// det of the (i, ab) x (j, kl) matrix d p^i_{ab} / d y_{kl,j} at the flat torus metric.
Q upsilon_determinant();

// One printed coefficient family of the pairing table, used as an oracle.
struct PairingOracle {
    std::string name;
    int h1, h2;
    int component;  // 0..3
    // Returns false when (k, l) is outside the family's domain (division by zero etc.).
    bool (*value)(const Mode& k, const Mode& l, QC& out);
};
const std::vector<PairingOracle>& printed_pairing_table();
// Families whose printed value is zero for every component listed.
struct ZeroFamily {
    int h1, h2;
    std::array<bool, 4> components;
};
const std::vector<ZeroFamily>& printed_zero_families();

// Printed cohomology class entries: condition on (k, l) and the class component.
struct ClassOracle {
    std::string name;
    int h1, h2;
    int component;
    bool volume_scaled;  // printed with the factor 8 pi^3
    bool (*condition)(const Mode& k, const Mode& l);
    bool (*value)(const Mode& k, const Mode& l, QC& out);
};
const std::vector<ClassOracle>& printed_class_table();

// Sampled comparison of one printed family against the computed pairing or class.
struct FamilyCheck {
    std::string name;
    int sampled = 0, matched = 0;
    int nonzero = 0;       // computed values that are nonzero (class table)
    std::string mismatch;  // first mismatch, "k l got .. want .."
    bool ok() const { return matched == sampled; }
};
// Up to per_family admissible (k, l) with components in [-range, range] per family.
std::vector<FamilyCheck> check_pairing_table(BasisConvention conv, int per_family, std::mt19937_64& rng, int range = 4);
std::vector<FamilyCheck> check_zero_families(BasisConvention conv, int per_family, std::mt19937_64& rng, int range = 4);
// Exhaustive over k, l in [-range, range]^4 filtered by the entry's conditions, then up to
// per_entry admissible pairs drawn from those. sampled = 0 marks a vacuous entry.
std::vector<FamilyCheck> check_class_table(BasisConvention conv, int per_entry, std::mt19937_64& rng, int range = 2);

struct PairingSweep {
    int pairs = 0, antisymmetric = 0, closed = 0;
};
// per_pair random admissible (k, l) for every (h1, h2).
PairingSweep sweep_pairings(BasisConvention conv, int per_pair, std::mt19937_64& rng, int range = 4);
// A random admissible mode for X_h, components in [-range, range].
Mode random_admissible_mode(int h, BasisConvention conv, std::mt19937_64& rng, int range = 4);

}  // namespace jv
