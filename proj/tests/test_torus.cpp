#include "common.hpp"
#include "jetvar/torus.hpp"

using namespace jv;

namespace {

// Value of one nullspace vector component, 1-based U^A.
const Q& U(const std::vector<Q>& v, int A) { return v[A - 1]; }

}  // namespace

TEST_CASE("mode matrix is the operator symbol") {
    auto op = flat_operator_matrix(torus_signature());
    Mode k = {2, -1, 3, 1};
    auto M = mode_matrix(k);
    for (int A = 0; A < 10; ++A)
        for (int B = 0; B < 10; ++B) {
            Q want = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) want -= op.at(A, B, i, j) * k[i] * k[j];
            CHECK(M(A, B) == want);
        }
}

TEST_CASE("mode classification order") {
    CHECK(mode_class({1, 2, 3, 4}) == ModeClass::K2);
    CHECK(mode_class({1, 0, 3, 4}) == ModeClass::K4);
    CHECK(mode_class({1, 0, 3, 0}) == ModeClass::K3);
    CHECK(mode_class({5, 0, 0, 0}) == ModeClass::K1);
}

TEST_CASE("mode nullspace dimensions") {
    CHECK(mode_solve({0, 0, 0, 0}).dimension == 10);
    CHECK(mode_solve({1, 2, 0, 0}).dimension == 4);
    CHECK(mode_solve({1, 1, 0, 0}).dimension == 6);  // null covector
    CHECK(mode_solve({3, 0, 2, 0}).dimension == 4);
}

TEST_CASE("k2 relation fails on part of the nullspace") {
    auto s = mode_solve({1, 2, 0, 0});
    int fails = 0;
    for (const auto& v : s.basis) fails += U(v, 2) != Q(1, 4) * U(v, 5);
    CHECK(fails > 0);
}

TEST_CASE("k3 relations hold on the whole nullspace") {
    auto s = mode_solve({3, 0, 2, 0});
    REQUIRE(s.cls == ModeClass::K3);
    for (const auto& v : s.basis) {
        CHECK(U(v, 2) == Q(3, 2) * U(v, 6));
        CHECK(U(v, 1) == Q(-3, 4) * (3 * U(v, 8) - 4 * U(v, 3)));
    }
}

TEST_CASE("basis fields") {
    auto X8 = basis_field(8, {3, 1, 2, 5});
    CHECK(X8.k == Mode{3, 0, 0, 0});
    CHECK(X8.amp[0] == QC(1));
    for (int A = 1; A < 10; ++A) CHECK(X8.amp[A].is_zero());

    CHECK_THROWS_AS(basis_field(1, {1, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(basis_field(4, {1, 0, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(basis_field(9, {1, 1, 1, 1}), std::invalid_argument);

    std::mt19937_64 rng(1);
    for (int h = 1; h <= 8; ++h)
        for (int t = 0; t < 10; ++t) CHECK(in_mode_nullspace(basis_field(h, random_admissible_mode(h, BasisConvention::Nullspace, rng)).field()));

    // The tabulated X_6 leaves the nullspace unless k1 = k3^2.
    CHECK_FALSE(in_mode_nullspace(basis_field(6, {2, 0, 5, 0}, BasisConvention::Tabulated).field()));
    CHECK(in_mode_nullspace(basis_field(6, {4, 0, 2, 0}, BasisConvention::Tabulated).field()));
}

TEST_CASE("pairing of a field with itself vanishes") {
    auto X = basis_field(1, {2, 0, 3, 0});
    CHECK(presymplectic_pair(X, X).is_zero());
}

TEST_CASE("pairing is antisymmetric and closed on Jacobi fields") {
    std::mt19937_64 rng(2);
    auto s = sweep_pairings(BasisConvention::Nullspace, 1, rng);
    CHECK(s.pairs == 64);
    CHECK(s.antisymmetric == s.pairs);
    CHECK(s.closed == s.pairs);
}

TEST_CASE("printed pairing families") {
    std::mt19937_64 rng(3);
    int ok = 0, total = 0;
    for (const auto& f : check_pairing_table(BasisConvention::Tabulated, 5, rng)) {
        ++total;
        ok += f.ok();
        CHECK_MESSAGE(f.ok(), f.name << ": " << f.mismatch);
    }
    CHECK(total == static_cast<int>(printed_pairing_table().size()));
    for (const auto& f : check_zero_families(BasisConvention::Nullspace, 5, rng)) CHECK_MESSAGE(f.ok(), f.name << ": " << f.mismatch);
}

TEST_CASE("cohomology class of a pairing without a constant mode is zero") {
    auto w = presymplectic_pair(basis_field(8, {1, 0, 0, 0}), basis_field(7, {2, 0, 0, 0}));
    for (const auto& c : cohomology_class(w)) CHECK(c.is_zero());
    auto v = presymplectic_pair(basis_field(8, {2, 0, 0, 0}), basis_field(5, {-2, 0, 0, 0}));
    CHECK(is_closed(v));
}

TEST_CASE("printed class entries with X4 on l2 = 0 are vacuous") {
    std::mt19937_64 rng(4);
    auto checks = check_class_table(BasisConvention::Nullspace, 5, rng);
    int vacuous = 0;
    for (const auto& c : checks) vacuous += c.sampled == 0;
    CHECK(vacuous == 9);
}

TEST_CASE("zero field") {
    FourierField z{{FourierTerm{{1, 2, 3, 4}, std::vector<QC>(10)}}};
    CHECK(in_mode_nullspace(z));
    CHECK(presymplectic_pair(z, basis_field(5, {1, 0, 0, 0}).field()).is_zero());
}

TEST_CASE("radical probe and Upsilon") {
    CHECK(upsilon_determinant() == 81);
    auto r = radical_probe({1, 2, 3, 1});
    CHECK(r.fields == 8);
    CHECK(r.pairing_rank == 8);
    CHECK(r.kernel_dimension == 0);
    CHECK(r.upsilon_nonsingular);
}
