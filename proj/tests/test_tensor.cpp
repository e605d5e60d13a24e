/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <catch2/catch_amalgamated.hpp>

#include "choitwirl/tensor.hpp"

#include "test_support.hpp"

using namespace choitwirl;

TEST_CASE("kron basics") {
    CHECK(max_abs(kron(cidentity(2), cidentity(2)) - cidentity(4)) == 0.0);

    CMat a = czero(2, 2);
    a(0, 0) = 1;
    a(1, 1) = 2;
    CMat b = czero(2, 2);
    b(0, 0) = 3;
    b(1, 1) = 4;
    CMat expected = czero(4, 4);
    expected(0, 0) = 3;
    expected(1, 1) = 4;
    expected(2, 2) = 6;
    expected(3, 3) = 8;
    CHECK(max_abs(kron(a, b) - expected) == 0.0);

    // kron(X, X) |00> = |11>
    CMat xx = kron(ctest::pauli_x(), ctest::pauli_x());
    CVec ket00 = CVec::Zero(4);
    ket00(0) = 1;
    CVec mapped = xx * ket00;
    CHECK(std::abs(mapped(3) - Complex(1, 0)) < 1e-15);
    CHECK(mapped.head(3).norm() < 1e-15);
}

TEST_CASE("kron mixed-product law") {
    RngEngine rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        CMat a = ctest::random_matrix(2, 2, rng);
        CMat b = ctest::random_matrix(3, 3, rng);
        CMat c = ctest::random_matrix(2, 2, rng);
        CMat d = ctest::random_matrix(3, 3, rng);
        CMat lhs = kron(a, b) * kron(c, d);
        CMat ac = a * c;
        CMat bd = b * d;
        CHECK(fro_norm(lhs - kron(ac, bd)) < 1e-12);
    }
}

TEST_CASE("partial transpose") {
    TensorSpace two_qubits(2, 2);

    SECTION("full subset equals transpose") {
        RngEngine rng(5);
        CMat m = ctest::random_matrix(4, 4, rng);
        CMat pt = partial_transpose(m, two_qubits, FactorSubset::all(2));
        CMat mt = m.transpose();
        CHECK(max_abs(pt - mt) == 0.0);
    }

    SECTION("rho_ME^Gamma is SWAP") {
        CMat rho_me = czero(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) rho_me(i * 2 + i, j * 2 + j) = 1;
        CMat pt = partial_transpose(rho_me, two_qubits, FactorSubset{{1}});
        CHECK(max_abs(pt - ctest::swap_2q()) == 0.0);
    }

    SECTION("involution and trace preservation") {
        RngEngine rng(7);
        for (int rep = 0; rep < 10; ++rep) {
            CMat m = ctest::random_matrix(4, 4, rng);
            CMat pt = partial_transpose(m, two_qubits, FactorSubset{{1}});
            CHECK(std::abs(pt.trace() - m.trace()) < 1e-14);
            CMat back = partial_transpose(pt, two_qubits, FactorSubset{{1}});
            CHECK(max_abs(back - m) == 0.0);
        }
    }

    SECTION("shape error") {
        CMat m = czero(3, 3);
        CHECK_THROWS_AS(partial_transpose(m, two_qubits, FactorSubset{{1}}), shape_error);
    }
}

TEST_CASE("partial trace") {
    TensorSpace two_qubits(2, 2);

    SECTION("product state") {
        RngEngine rng(3);
        CMat a = ctest::random_matrix(2, 2, rng);
        CMat b = ctest::random_matrix(2, 2, rng);
        CMat reduced = partial_trace(kron(a, b), two_qubits, FactorSubset{{1}});
        CMat expected = a * b.trace();
        CHECK(max_abs(reduced - expected) < 1e-14);
    }

    SECTION("SWAP traces to identity") {
        // Independent oracle: direct index sum over the 4x4 SWAP.
        CMat s = ctest::swap_2q();
        CMat oracle = czero(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) oracle(i, j) += s(i * 2 + k, j * 2 + k);
        CHECK(max_abs(oracle - cidentity(2)) == 0.0);
        CMat reduced = partial_trace(s, two_qubits, FactorSubset{{1}});
        CHECK(max_abs(reduced - oracle) == 0.0);
    }

    SECTION("empty subset returns input, trace preserved") {
        RngEngine rng(9);
        CMat m = ctest::random_matrix(4, 4, rng);
        CHECK(max_abs(partial_trace(m, two_qubits, FactorSubset{}) - m) == 0.0);
        CMat reduced = partial_trace(m, two_qubits, FactorSubset{{0}});
        CHECK(std::abs(reduced.trace() - m.trace()) < 1e-14);
    }
}

TEST_CASE("permutation operators") {
    SECTION("identity and transposition") {
        TensorSpace space(2, 2);
        CHECK(max_abs(permutation_matrix({0, 1}, space).matrix - cidentity(4)) == 0.0);
        CHECK(max_abs(permutation_matrix({1, 0}, space).matrix - ctest::swap_2q()) == 0.0);
    }

    SECTION("3-cycle has order 3") {
        TensorSpace space(2, 3);
        CMat p = permutation_matrix({1, 2, 0}, space).matrix;
        CMat p3 = p * p * p;
        CHECK(max_abs(p3 - cidentity(8)) == 0.0);
    }

    SECTION("unitarity") {
        TensorSpace space(3, 3);
        CMat p = permutation_matrix({2, 0, 1}, space).matrix;
        CHECK(max_abs(p * p.adjoint() - cidentity(27)) == 0.0);
    }

    SECTION("homomorphism on all of S3 for d=2") {
        TensorSpace space(2, 3);
        auto perms = all_permutations(3);
        for (const auto& sigma : perms)
            for (const auto& tau : perms) {
                CMat lhs = permutation_matrix(sigma, space).matrix * permutation_matrix(tau, space).matrix;
                CMat rhs = permutation_matrix(compose_permutations(sigma, tau), space).matrix;
                CHECK(max_abs(lhs - rhs) == 0.0);
            }
    }

    SECTION("trace counts cycles") {
        for (int d : {2, 3}) {
            TensorSpace space(d, 4);
            for (const auto& sigma : all_permutations(4)) {
                CMat p = permutation_matrix(sigma, space).matrix;
                const double expected = std::pow(static_cast<double>(d), cycle_count(sigma));
                CHECK(std::abs(p.trace().real() - expected) < 1e-12);
                CHECK(std::abs(p.trace().imag()) < 1e-12);
            }
        }
    }
}

TEST_CASE("hs_inner") {
    CHECK(std::abs(hs_inner(cidentity(4), cidentity(4)) - Complex(4, 0)) < 1e-15);
    CHECK(std::abs(hs_inner(cidentity(4), ctest::swap_2q()) - Complex(2, 0)) < 1e-15);
    CHECK(std::abs(hs_inner(ctest::pauli_x(), ctest::pauli_z())) < 1e-15);
    CHECK_THROWS_AS(hs_inner(cidentity(2), cidentity(3)), shape_error);
}
