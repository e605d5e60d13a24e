/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "choitwirl/schur.hpp"

namespace choitwirl {

/// Reductive group averaged over via KAK decomposition. SL(d,C) with
/// compact part SU(d) and Abelian part A(a) = diag(e^{a_1},...,e^{a_d}),
/// sum a_i = 0; compact groups are the degenerate case of a point measure
/// at a = 0.
struct CartanGroupSpec {
    enum class Kind { sl_complex };
    Kind kind = Kind::sl_complex;
    int d = 2;
};

/// Finite normalized measure on the Abelian Cartan parameters.
struct AbelianMeasure {
    std::vector<std::vector<double>> nodes; // each of length d, sum 0
    std::vector<double> weights;            // positive, sum 1

    void validate(int d) const {
        if (nodes.size() != weights.size() || nodes.empty())
            throw contract_error("AbelianMeasure: nodes and weights must be nonempty and equal-length");
        double total = 0.0;
        for (double w : weights) {
            if (w <= 0.0) throw contract_error("AbelianMeasure: weights must be positive");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw contract_error("AbelianMeasure: weights must sum to 1, got " + std::to_string(total));
        for (const auto& a : nodes) {
            if (static_cast<int>(a.size()) != d)
                throw contract_error("AbelianMeasure: node length must equal d");
            double s = 0.0;
            for (double v : a) s += v;
            if (std::abs(s) > 1e-12)
                throw contract_error("AbelianMeasure: Cartan parameters must sum to 0");
        }
    }
};

/// Point mass at a = 0 (the compact degenerate case).
inline AbelianMeasure point_measure(int d) {
    AbelianMeasure m;
    m.nodes.push_back(std::vector<double>(static_cast<std::size_t>(d), 0.0));
    m.weights.push_back(1.0);
    return m;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Golub-Welsch.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw contract_error("gauss_legendre: need n >= 1");
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jac(k, k - 1) = b;
        jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    std::vector<double> nodes(static_cast<std::size_t>(n));
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        nodes[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        weights[static_cast<std::size_t>(k)] = 2.0 * v0 * v0;
    }
    return {nodes, weights};
}

} // namespace detail

/// Truncated Gaussian on the single Cartan parameter tau in [-cutoff, cutoff],
/// discretized by Gauss-Legendre quadrature and renormalized; the node vector
/// is a = (tau/2, -tau/2, 0, ..., 0).
inline AbelianMeasure gaussian_measure(int d, double sigma, double cutoff, int n_nodes) {
    if (sigma <= 0.0 || cutoff <= 0.0) throw contract_error("gaussian_measure: sigma and cutoff must be positive");
    if (d < 2) throw contract_error("gaussian_measure: need d >= 2");
    auto [x, w] = detail::gauss_legendre(n_nodes);
    AbelianMeasure m;
    double total = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double tau = cutoff * x[k];
        const double weight = w[k] * std::exp(-0.5 * tau * tau / (sigma * sigma));
        std::vector<double> a(static_cast<std::size_t>(d), 0.0);
        a[0] = 0.5 * tau;
        a[1] = -0.5 * tau;
        m.nodes.push_back(std::move(a));
        m.weights.push_back(weight);
        total += weight;
    }
    for (double& weight : m.weights) weight /= total;
    return m;
}

/// pi(A(a)) / ||pi(A(a))||, spectral norm, so the conjugation map is
/// trace-nonincreasing. Conjugated factors also receive A(a) itself since
/// the Abelian part is real diagonal.
inline CMat normalize_abelian(const std::vector<double>& a, const RepresentationSpec& rep) {
    if (rep.is_custom())
        throw contract_error("normalize_abelian: custom representations have no Abelian parameterization");
    if (static_cast<int>(a.size()) != rep.d)
        throw contract_error("normalize_abelian: parameter vector length must equal d");
    double sum = 0.0;
    for (double v : a) sum += v;
    if (std::abs(sum) > 1e-12) throw contract_error("normalize_abelian: Cartan parameters must sum to 0");

    const int t = static_cast<int>(rep.factors.size());
    const std::int64_t dim = rep.dim();
    Eigen::VectorXd exponents = Eigen::VectorXd::Zero(dim);
    std::vector<int> digits(static_cast<std::size_t>(std::max(t, 1)));
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        detail::index_digits(idx, rep.d, t, digits.data());
        double e = 0.0;
        for (int k = 0; k < t; ++k) e += a[static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
        exponents(idx) = e;
    }
    const double e_max = t == 0 ? 0.0 : exponents.maxCoeff();
    CMat out = czero(dim, dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) out(idx, idx) = Complex(std::exp(exponents(idx) - e_max), 0.0);
    return out;
}

/// M = sum_j w_j (pi_A(A_n(a_j)))^2; PSD diagonal with entries in (0, 1].
inline CMat abelian_second_moment(const AbelianMeasure& measure, const RepresentationSpec& rep) {
    measure.validate(rep.d);
    const std::int64_t dim = rep.dim();
    CMat out = czero(dim, dim);
    for (std::size_t j = 0; j < measure.nodes.size(); ++j) {
        CMat n = normalize_abelian(measure.nodes[j], rep);
        out += measure.weights[j] * (n * n);
    }
    return out;
}

/// Per-sector weights beta_k = Tr(M pi_k^H) and dimensions D_k = D_U D_C.
struct BetaWeights {
    std::vector<double> beta;
    std::vector<double> sector_dim;

    double sum() const {
        double s = 0.0;
        for (double b : beta) s += b;
        return s;
    }
};

inline BetaWeights beta_weights(const AbelianMeasure& measure, const RepresentationSpec& rep,
                                const SectorDecomposition& dec) {
    if (dec.dim() != rep.dim())
        throw contract_error("beta_weights: decomposition does not match the representation dimension");
    const CMat m = abelian_second_moment(measure, rep);
    BetaWeights out;
    for (const Sector& s : dec.sectors) {
        out.beta.push_back(hs_inner(s.projector, m).real());
        out.sector_dim.push_back(static_cast<double>(s.total_dim()));
    }
    return out;
}

/// Choi operator of the Cartan (KAK) channel twirl.
///
/// gamma: exact for collective actions. Decomposes the plain collective
/// action of SU(d) on t_in + t_out factors, weights each sector component of
/// J^Gamma by beta_k / D_k and transposes back; equals the iterated
/// K x A x K' integral.
///
/// direct: the invariant-sector form over the sectors of
/// pi_out (x) conj(pi_in) restricted to SU(d). This weighted sector sum
/// agrees with the iterated integral exactly when the normalized Abelian
/// action is block-scalar on those sectors (always for a point measure, and
/// whenever one of t_in, t_out is zero); for genuinely mixed
/// representations under spread-out measures it is a distinct, still
/// CP-monotone, averaging map. See the gamma route for the integral itself.
inline ChoiOperator cartan_channel_twirl(const ChoiOperator& j, const CartanGroupSpec& spec,
                                         const AbelianMeasure& measure,
                                         TwirlRoute route = TwirlRoute::gamma,
                                         const DecomposeOptions& opts = {}) {
    j.validate();
    if (spec.d != j.d) throw contract_error("cartan_channel_twirl: group and channel dimensions differ");
    measure.validate(spec.d);

    if (route == TwirlRoute::gamma) {
        RepresentationSpec rep = RepresentationSpec::collective(j.d, j.t_in + j.t_out, GroupKind::special_unitary);
        SectorDecomposition dec = decompose(rep, opts);
        BetaWeights beta = beta_weights(measure, rep, dec);
        CMat jg = j.gamma();
        CMat acc = czero(j.dim(), j.dim());
        for (std::size_t k = 0; k < dec.sectors.size(); ++k)
            acc += (beta.beta[k] / beta.sector_dim[k]) * dec.sectors[k].twirl_component(jg);
        CMat back = partial_transpose(acc, j.space(), j.input_factors());
        return ChoiOperator{j.d, j.t_in, j.t_out, std::move(back)};
    }

    RepresentationSpec rep = RepresentationSpec::choi_induced(j.d, j.t_out, j.t_in, GroupKind::special_unitary);
    SectorDecomposition dec = decompose(rep, opts);
    BetaWeights beta = beta_weights(measure, rep, dec);
    CMat acc = czero(j.dim(), j.dim());
    for (std::size_t k = 0; k < dec.sectors.size(); ++k)
        acc += (beta.beta[k] / beta.sector_dim[k]) * dec.sectors[k].twirl_component(j.matrix);
    return ChoiOperator{j.d, j.t_in, j.t_out, std::move(acc)};
}

} // namespace choitwirl
