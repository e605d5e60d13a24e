/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <random>

#include "choitwirl/tensor.hpp"

namespace choitwirl {

/// Seed for a reproducible sample stream.
struct RngSeed {
    std::uint64_t seed = 1;
};

using RngEngine = std::mt19937_64;

/// Fixed splitting function for per-stream sub-seeds (splitmix64 step).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// d x d matrix with i.i.d. standard complex Gaussian entries.
inline CMat ginibre(std::int64_t d, RngEngine& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat g(d, d);
    for (std::int64_t r = 0; r < d; ++r)
        for (std::int64_t c = 0; c < d; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(r, c) = Complex(re, im);
        }
    return g;
}

/// Haar-random element of U(d): Ginibre + QR with the R-diagonal phases
/// pushed into Q.
inline CMat haar_unitary(std::int64_t d, RngEngine& rng) {
    if (d < 1) throw contract_error("haar_unitary: d must be >= 1");
    CMat g = ginibre(d, rng);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::int64_t k = 0; k < d; ++k) {
        Complex diag = r(k, k);
        double mag = std::abs(diag);
        Complex phase = mag > 0.0 ? diag / mag : Complex(1.0, 0.0);
        q.col(k) *= phase;
    }
    return q;
}

/// Haar-random element of SU(d): U(d) sample divided by det(U)^{1/d}
/// (principal root).
inline CMat haar_special_unitary(std::int64_t d, RngEngine& rng) {
    CMat u = haar_unitary(d, rng);
    const Complex det = u.determinant();
    const double theta = std::arg(det);
    const Complex root = std::polar(std::pow(std::abs(det), 1.0 / static_cast<double>(d)),
                                    theta / static_cast<double>(d));
    return u / root;
}

} // namespace choitwirl
