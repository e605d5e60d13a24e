/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <catch2/catch_amalgamated.hpp>

#include "choitwirl/montecarlo.hpp"

#include "choitwirl/commutant.hpp"
#include "test_support.hpp"

using namespace choitwirl;

namespace {

/// A state rho as the Choi operator of a preparation-style channel with
/// t_in = 0; its twirl is the plain state twirl E[U rho U^H].
ChoiOperator state_as_choi(int d, int t_out, const CMat& rho) {
    return ChoiOperator{d, 0, t_out, rho};
}

} // namespace

TEST_CASE("haar_unitary sampling") {
    RngEngine rng(2024);

    SECTION("unitarity") {
        for (int d : {1, 2, 3, 7}) {
            CMat u = haar_unitary(d, rng);
            CHECK(fro_norm(u.adjoint() * u - cidentity(d)) < 1e-12);
        }
    }

    SECTION("d=1 gives a unit-modulus scalar") {
        CMat u = haar_unitary(1, rng);
        CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-14);
    }

    SECTION("special unitary has unit determinant") {
        for (int d : {2, 3}) {
            CMat u = haar_special_unitary(d, rng);
            CHECK(std::abs(u.determinant() - Complex(1, 0)) < 1e-12);
            CHECK(fro_norm(u.adjoint() * u - cidentity(d)) < 1e-12);
        }
    }
}

TEST_CASE("t=1 twirl depolarizes") {
    RngEngine rng(5);
    CMat rho = ctest::random_density(2, rng);
    McOptions opts;
    opts.n = 100000;
    opts.seed = 7;
    SampleEstimate est = mc_channel_twirl(state_as_choi(2, 1, rho), RepresentationSpec::collective(2, 1),
                                          RepresentationSpec::collective(2, 0), opts);
    CMat expected = rho.trace() / 2.0 * cidentity(2);
    CHECK(fro_norm(est.mean - expected) < 5.0 * est.stderr_proxy);
}

TEST_CASE("Haar invariance of the sample mean") {
    // E[f(UV)] = E[f(U)] for fixed V; two estimates with independent seeds
    // must agree within combined statistical error.
    RngEngine rng(6);
    CMat rho = ctest::random_density(2, rng);
    CMat v = haar_unitary(2, rng);
    CMat rho_v = v * rho * v.adjoint();
    McOptions a;
    a.n = 100000;
    a.seed = 11;
    McOptions b = a;
    b.seed = 12;
    SampleEstimate est_a = mc_channel_twirl(state_as_choi(2, 1, rho), RepresentationSpec::collective(2, 1),
                                            RepresentationSpec::collective(2, 0), a);
    SampleEstimate est_b = mc_channel_twirl(state_as_choi(2, 1, rho_v), RepresentationSpec::collective(2, 1),
                                            RepresentationSpec::collective(2, 0), b);
    CHECK(fro_norm(est_a.mean - est_b.mean) < 5.0 * (est_a.stderr_proxy + est_b.stderr_proxy));
}

TEST_CASE("stderr decreases like 1/sqrt(n)") {
    RngEngine rng(8);
    CMat rho = ctest::random_density(2, rng);
    ChoiOperator j = state_as_choi(2, 1, rho);
    RepresentationSpec out1 = RepresentationSpec::collective(2, 1);
    RepresentationSpec in0 = RepresentationSpec::collective(2, 0);
    double ratio_sum = 0.0;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
        McOptions small;
        small.n = 4000;
        small.seed = 100 + rep;
        McOptions large;
        large.n = 16000;
        large.seed = 200 + rep;
        ratio_sum += mc_channel_twirl(j, out1, in0, large).stderr_proxy /
                     mc_channel_twirl(j, out1, in0, small).stderr_proxy;
    }
    CHECK(ratio_sum / 10.0 <= 0.6);
}

TEST_CASE("mc_channel_twirl") {
    SECTION("trivial representation leaves the input unchanged") {
        CMat j = CMat::Ones(1, 1);
        SampleEstimate est = mc_channel_twirl(ChoiOperator{2, 0, 0, j}, RepresentationSpec::collective(2, 0),
                                              RepresentationSpec::collective(2, 0), McOptions{100, 3, 1});
        CHECK(max_abs(est.mean - j) == 0.0);
        CHECK(est.stderr_proxy == 0.0);
    }

    SECTION("identity channel is a fixed point") {
        McOptions opts;
        opts.n = 50000;
        opts.seed = 21;
        ChoiOperator j{2, 1, 1, max_entangled(2)};
        SampleEstimate est = mc_channel_twirl(j, RepresentationSpec::collective(2, 1),
                                              RepresentationSpec::collective(2, 1), opts);
        CHECK(fro_norm(est.mean - j.matrix) < 5.0 * est.stderr_proxy);
    }

    SECTION("X channel matches the exact commutant projection") {
        KrausChannel ch;
        ch.d = 2;
        ch.t_in = 1;
        ch.t_out = 1;
        ch.kraus = {ctest::pauli_x()};
        ChoiOperator j = choi_from_kraus(ch);
        McOptions opts;
        opts.n = 100000;
        opts.seed = 23;
        SampleEstimate est = mc_channel_twirl(j, RepresentationSpec::collective(2, 1),
                                              RepresentationSpec::collective(2, 1), opts);
        CMat exact = (2.0 / 3.0) * cidentity(4) - (1.0 / 3.0) * max_entangled(2);
        CHECK(fro_norm(est.mean - exact) < 5.0 * est.stderr_proxy);
    }

    SECTION("custom representations cannot be sampled") {
        RepresentationSpec custom = RepresentationSpec::custom({ctest::pauli_x()});
        ChoiOperator j{2, 1, 1, max_entangled(2)};
        CHECK_THROWS_AS(mc_channel_twirl(j, custom, custom), contract_error);
    }
}

TEST_CASE("mc determinism") {
    RngEngine rng(9);
    ChoiOperator j = choi_from_kraus(ctest::random_cptp_channel(2, 1, 1, 2, rng));
    RepresentationSpec out1 = RepresentationSpec::collective(2, 1);
    RepresentationSpec in1 = RepresentationSpec::collective(2, 1);

    SECTION("same seed reproduces bit-identical estimates") {
        McOptions opts;
        opts.n = 5000;
        opts.seed = 33;
        SampleEstimate a = mc_channel_twirl(j, out1, in1, opts);
        SampleEstimate b = mc_channel_twirl(j, out1, in1, opts);
        CHECK(max_abs(a.mean - b.mean) == 0.0);
        CHECK(a.stderr_proxy == b.stderr_proxy);
    }

    SECTION("stream splitting is deterministic and consistent") {
        McOptions opts;
        opts.n = 5000;
        opts.seed = 33;
        opts.streams = 4;
        SampleEstimate a = mc_channel_twirl(j, out1, in1, opts);
        SampleEstimate b = mc_channel_twirl(j, out1, in1, opts);
        CHECK(max_abs(a.mean - b.mean) == 0.0);
        // Different stream counts draw different samples but stay consistent
        // with the exact result.
        ChoiOperator exact = twirl_channel_exact(j, out1, in1, TwirlRoute::gamma);
        CHECK(fro_norm(a.mean - exact.matrix) < 5.0 * a.stderr_proxy);
    }
}

TEST_CASE("mc_cartan_twirl") {
    RngEngine rng(10);
    ChoiOperator j = choi_from_kraus(ctest::random_cptp_channel(2, 1, 1, 2, rng));
    CartanGroupSpec spec;
    spec.d = 2;

    SECTION("point mass at zero agrees with the compact twirl") {
        McOptions opts;
        opts.n = 50000;
        opts.seed = 41;
        SampleEstimate est = mc_cartan_twirl(j, spec, point_measure(2), opts);
        ChoiOperator exact = twirl_channel_exact(j, RepresentationSpec::collective(2, 1),
                                                 RepresentationSpec::collective(2, 1), TwirlRoute::gamma);
        CHECK(fro_norm(est.mean - exact.matrix) < 5.0 * est.stderr_proxy);
    }

    SECTION("trace is nonincreasing") {
        McOptions opts;
        opts.n = 20000;
        opts.seed = 43;
        AbelianMeasure measure = gaussian_measure(2, 1.0, 3.0, 21);
        SampleEstimate est = mc_cartan_twirl(j, spec, measure, opts);
        CHECK(est.mean.trace().real() <= j.matrix.trace().real() + 5.0 * est.stderr_proxy);
    }

    SECTION("unnormalized measures are rejected") {
        AbelianMeasure bad;
        bad.nodes = {{0.5, -0.5}};
        bad.weights = {0.7};
        CHECK_THROWS_AS(mc_cartan_twirl(j, spec, bad), contract_error);
    }
}
