/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "choitwirl/cartan.hpp"

namespace choitwirl {

/// D^2 unitaries on C^D, pairwise HS-orthogonal with norm^2 = D; uniform
/// mixing over one is a unitary 1-design.
struct UnitaryOperatorBasis {
    int D = 1;
    std::vector<CMat> elements;
};

/// Heisenberg-Weyl basis {w^{ij} Z^i X^j} with w = e^{2 pi i / D},
/// Z the clock and X the cyclic shift.
inline UnitaryOperatorBasis heisenberg_weyl(int D) {
    if (D < 1) throw contract_error("heisenberg_weyl: D must be >= 1");
    const double theta = 2.0 * M_PI / static_cast<double>(D);
    CMat z = czero(D, D);
    CMat x = czero(D, D);
    for (int k = 0; k < D; ++k) {
        z(k, k) = std::polar(1.0, theta * k);
        x((k + 1) % D, k) = Complex(1.0, 0.0);
    }
    UnitaryOperatorBasis basis;
    basis.D = D;
    CMat zi = cidentity(D);
    for (int i = 0; i < D; ++i) {
        CMat xj = cidentity(D);
        for (int j = 0; j < D; ++j) {
            basis.elements.push_back(std::polar(1.0, theta * i * j) * zi * xj);
            xj = x * xj;
        }
        zi = z * zi;
    }
    return basis;
}

/// Kraus set supported on one sector: the unitary basis on C^{D_U} pushed
/// into the full space through the pi operator basis,
/// gamma_l -> sum_{m1 m2} (gamma_l)_{m1 m2} pi_k^{m1 m2}.
struct EmbeddedKrausSet {
    int sector_index = 0;
    std::vector<CMat> ops;
};

inline EmbeddedKrausSet embed_basis(const UnitaryOperatorBasis& basis, const Sector& sector,
                                    int sector_index = 0) {
    if (basis.D != sector.D_U)
        throw contract_error("embed_basis: basis dimension must equal the sector's D_U");
    EmbeddedKrausSet set;
    set.sector_index = sector_index;
    const std::int64_t dim = sector.projector.rows();
    for (const CMat& gamma : basis.elements) {
        CMat tilde = czero(dim, dim);
        for (int m1 = 0; m1 < sector.D_U; ++m1)
            for (int m2 = 0; m2 < sector.D_U; ++m2) tilde += gamma(m1, m2) * sector.pi(m1, m2);
        set.ops.push_back(std::move(tilde));
    }
    return set;
}

using UnitaryBasisProvider = std::function<UnitaryOperatorBasis(int)>;

/// Dual averaging: the weighted-sector twirl realized as a probabilistic
/// mixture of unitary-1-design channels acting inside each invariant sector,
/// sum_k (beta_k / D_k) (1/D_U^2) sum_l gamma~_l J gamma~_l^H.
/// Numerically identical to the direct-route cartan_channel_twirl built from
/// the same decomposition.
inline ChoiOperator dual_channel_twirl(const ChoiOperator& j, const SectorDecomposition& dec,
                                       const BetaWeights& beta,
                                       const UnitaryBasisProvider& basis_provider = {}) {
    j.validate();
    if (dec.dim() != j.dim())
        throw contract_error("dual_channel_twirl: decomposition does not match the Choi dimension");
    if (beta.beta.size() != dec.sectors.size())
        throw contract_error("dual_channel_twirl: beta weights inconsistent with the decomposition");
    const UnitaryBasisProvider& provider =
        basis_provider ? basis_provider : UnitaryBasisProvider([](int D) { return heisenberg_weyl(D); });

    CMat acc = czero(j.dim(), j.dim());
    for (std::size_t k = 0; k < dec.sectors.size(); ++k) {
        const Sector& sector = dec.sectors[k];
        EmbeddedKrausSet kraus = embed_basis(provider(sector.D_U), sector, static_cast<int>(k));
        CMat mix = czero(j.dim(), j.dim());
        for (const CMat& op : kraus.ops) mix += op * j.matrix * op.adjoint();
        const double d_u = static_cast<double>(sector.D_U);
        acc += (beta.beta[k] / beta.sector_dim[k]) / (d_u * d_u) * mix;
    }
    return ChoiOperator{j.d, j.t_in, j.t_out, std::move(acc)};
}

} // namespace choitwirl
