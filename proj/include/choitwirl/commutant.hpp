/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "choitwirl/channel.hpp"
#include "choitwirl/representation.hpp"

namespace choitwirl {

/// Spanning set of a commutant algebra with its Hilbert-Schmidt Gram data.
/// The elements need not be HS-orthogonal; projections go through the Gram
/// pseudo-inverse.
struct CommutantBasis {
    std::vector<CMat> elements;
    CMat gram;
    CMat gram_pinv;
    int numerical_rank = 0;
};

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix; eigenvalues below
/// cutoff_rel * lambda_max are treated as zero.
inline CMat hermitian_pinv(const CMat& gram, int* rank_out = nullptr, double cutoff_rel = 1e-10) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (gram + gram.adjoint()));
    const Eigen::VectorXd evals = es.eigenvalues();
    const double lambda_max = evals.size() ? std::max(evals.cwiseAbs().maxCoeff(), 0.0) : 0.0;
    const double cutoff = cutoff_rel * std::max(lambda_max, 1e-300);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(evals.size());
    int rank = 0;
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        if (evals(k) > cutoff) {
            inv(k) = 1.0 / evals(k);
            ++rank;
        }
    }
    if (rank_out) *rank_out = rank;
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

inline constexpr int kMaxPermutationFactors = 6;
inline constexpr std::int64_t kMaxRepresentationDim = 256;

/// Schur-Weyl spanning set of the commutant of the collective plain action
/// on (C^d)^{x t}: all t! permutation operators plus the Gram matrix
/// Tr(P(s)^H P(tau)) = d^{cycles(s^-1 tau)}. The pseudo-inverse absorbs the
/// linear dependence that appears for d < t.
inline CommutantBasis permutation_commutant_basis(int d, int t) {
    if (t > kMaxPermutationFactors)
        throw resource_error("permutation_commutant_basis: t > " + std::to_string(kMaxPermutationFactors) +
                             " (factorial guard)");
    if (t < 0 || d < 1) throw contract_error("permutation_commutant_basis: need d >= 1, t >= 0");
    const TensorSpace space(d, t);
    const auto perms = all_permutations(t);
    const std::size_t n = perms.size();

    CommutantBasis basis;
    basis.elements.reserve(n);
    for (const auto& sigma : perms)
        basis.elements.push_back(permutation_matrix(sigma, space).matrix);

    basis.gram = czero(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        const auto inv_a = inverse_permutation(perms[a]);
        for (std::size_t b = 0; b < n; ++b) {
            const int cycles = cycle_count(compose_permutations(inv_a, perms[b]));
            basis.gram(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)) =
                Complex(std::pow(static_cast<double>(d), cycles), 0.0);
        }
    }
    basis.gram_pinv = hermitian_pinv(basis.gram, &basis.numerical_rank);
    return basis;
}

struct CommutantOptions {
    int n_samples = 20;
    std::uint64_t seed = 0x5eed5eedULL;
};

namespace detail {

/// HS-orthonormal basis of {X : E X = X E for all constraint elements E},
/// via the nullspace of the accumulated commutation constraints in vec form.
inline std::vector<CMat> commutation_nullspace(const std::vector<CMat>& constraints, std::int64_t dim) {
    const std::int64_t v = dim * dim;
    const CMat eye = cidentity(dim);
    CMat h = czero(v, v);
    for (const CMat& e : constraints) {
        CMat et = e.transpose();
        CMat l = kron(e, eye) - kron(eye, et);
        h.noalias() += l.adjoint() * l;
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const Eigen::VectorXd evals = es.eigenvalues();
    const double cutoff = 1e-8 * std::max(1.0, evals.cwiseAbs().maxCoeff());
    std::vector<CMat> out;
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        if (evals(k) > cutoff) continue;
        CMat x(dim, dim);
        for (std::int64_t r = 0; r < dim; ++r)
            for (std::int64_t c = 0; c < dim; ++c)
                x(r, c) = es.eigenvectors()(r * dim + c, k);
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace detail

/// HS-orthonormal basis of the commutant of an arbitrary representation.
/// Collective specs use Haar-sampled elements as a generating set; custom
/// specs use exactly the declared generators (their constraints already
/// determine the commutant of the generated group).
inline CommutantBasis numerical_commutant(const RepresentationSpec& rep,
                                          const CommutantOptions& opts = {}) {
    const std::int64_t dim = rep.dim();
    if (dim > kMaxRepresentationDim)
        throw resource_error("numerical_commutant: representation dimension " + std::to_string(dim) +
                             " exceeds guard " + std::to_string(kMaxRepresentationDim));
    std::vector<CMat> constraints;
    if (rep.is_custom()) {
        constraints = rep.generators;
    } else {
        RngEngine rng(opts.seed);
        constraints = rep.sample_elements(opts.n_samples, rng);
    }

    CommutantBasis basis;
    basis.elements = detail::commutation_nullspace(constraints, dim);
    const auto r = static_cast<std::int64_t>(basis.elements.size());
    basis.gram = cidentity(r);
    basis.gram_pinv = cidentity(r);
    basis.numerical_rank = static_cast<int>(r);
    return basis;
}

/// HS-orthogonal projection onto span(basis):
/// x -> sum_{ab} (gram_pinv)_{ab} B_a Tr(B_b^H x).
inline CMat project_onto_commutant(const CMat& x, const CommutantBasis& basis) {
    if (basis.elements.empty()) throw contract_error("project_onto_commutant: empty basis");
    const auto n = static_cast<std::int64_t>(basis.elements.size());
    for (const CMat& b : basis.elements)
        if (b.rows() != x.rows() || b.cols() != x.cols())
            throw shape_error("project_onto_commutant: shape mismatch between input and basis");
    CVec overlaps(n);
    for (std::int64_t b = 0; b < n; ++b) overlaps(b) = hs_inner(basis.elements[static_cast<std::size_t>(b)], x);
    CVec coeff = basis.gram_pinv * overlaps;
    CMat out = czero(x.rows(), x.cols());
    for (std::int64_t a = 0; a < n; ++a) out += coeff(a) * basis.elements[static_cast<std::size_t>(a)];
    return out;
}

enum class TwirlRoute { gamma, direct };

inline TwirlRoute twirl_route_from_string(const std::string& s) {
    if (s == "gamma") return TwirlRoute::gamma;
    if (s == "direct") return TwirlRoute::direct;
    throw contract_error("unknown twirl route '" + s + "' (expected gamma|direct)");
}

namespace detail {

inline void check_channel_reps(const ChoiOperator& j, const RepresentationSpec& rep_out,
                               const RepresentationSpec& rep_in) {
    if (rep_out.dim() != j.dim_out())
        throw shape_error("channel twirl: output representation dimension does not match d^t_out");
    if (rep_in.dim() != j.dim_in())
        throw shape_error("channel twirl: input representation dimension does not match d^t_in");
}

} // namespace detail

/// Exact Haar twirl of a channel, as a Hilbert-Schmidt projection of its
/// Choi operator.
///
/// gamma: valid for collective plain powers only; projects J^Gamma onto the
///        permutation span on t_in + t_out factors and transposes back.
/// direct: projects J onto the numerically computed commutant of
///        pi_out (x) conj(pi_in); works for arbitrary representations.
inline ChoiOperator twirl_channel_exact(const ChoiOperator& j, const RepresentationSpec& rep_out,
                                        const RepresentationSpec& rep_in,
                                        TwirlRoute route = TwirlRoute::gamma,
                                        const CommutantOptions& opts = {}) {
    j.validate();
    detail::check_channel_reps(j, rep_out, rep_in);
    if (route == TwirlRoute::gamma) {
        if (!rep_out.is_collective_plain() || !rep_in.is_collective_plain())
            throw contract_error("twirl_channel_exact: gamma route requires collective plain tensor powers");
        const int t = j.t_in + j.t_out;
        CommutantBasis basis = permutation_commutant_basis(j.d, t);
        CMat projected = project_onto_commutant(j.gamma(), basis);
        CMat back = partial_transpose(projected, j.space(), j.input_factors());
        return ChoiOperator{j.d, j.t_in, j.t_out, std::move(back)};
    }
    RepresentationSpec combined = choi_rep_from(rep_out, rep_in);
    CommutantBasis basis = numerical_commutant(combined, opts);
    CMat projected = project_onto_commutant(j.matrix, basis);
    return ChoiOperator{j.d, j.t_in, j.t_out, std::move(projected)};
}

} // namespace choitwirl
