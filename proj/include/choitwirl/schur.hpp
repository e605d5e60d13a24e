/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "choitwirl/commutant.hpp"

namespace choitwirl {

/// One isotypic sector of a representation: the projector, the dimensions
/// (D_U group-irrep dimension, D_C multiplicity), and the two Schur operator
/// bases. lambda(l1,l2) spans the commutant block, pi(m1,m2) the
/// group-algebra block.
struct Sector {
    int D_U = 0;
    int D_C = 0;
    CMat projector;
    std::vector<CMat> lambda_basis; // D_C^2 entries, index l1*D_C + l2
    std::vector<CMat> pi_basis;     // D_U^2 entries, index m1*D_U + m2

    const CMat& lambda(int l1, int l2) const {
        return lambda_basis[static_cast<std::size_t>(l1 * D_C + l2)];
    }
    const CMat& pi(int m1, int m2) const {
        return pi_basis[static_cast<std::size_t>(m1 * D_U + m2)];
    }
    std::int64_t total_dim() const { return static_cast<std::int64_t>(D_U) * D_C; }

    /// Sector component of the Haar twirl:
    /// (1/D_U) sum_{l1 l2} Tr(x lambda^H) lambda.
    CMat twirl_component(const CMat& x) const {
        CMat out = czero(x.rows(), x.cols());
        for (const CMat& l : lambda_basis) out += hs_inner(l, x) * l;
        return out / static_cast<double>(D_U);
    }
};

struct SectorDecomposition {
    RepresentationSpec rep;
    std::vector<Sector> sectors;
    int commutant_rank = 0;

    std::int64_t dim() const { return rep.dim(); }

    /// Haar twirl reconstructed from the Schur operator bases.
    CMat twirl(const CMat& x) const {
        CMat out = czero(x.rows(), x.cols());
        for (const Sector& s : sectors) out += s.twirl_component(x);
        return out;
    }
};

struct DecomposeOptions {
    std::uint64_t seed = 0x0d5eed01ULL;
    int n_samples = 20;
    int max_retries = 5;
    double validate_tol = 1e-9;
};

struct DualityReport {
    double completeness = 0.0;        // || sum_k proj_k - I ||_F
    double projector_laws = 0.0;      // hermiticity, idempotence, orthogonality
    double lambda_commutation = 0.0;  // || [lambda, pi(g)] || over sampled g
    double pi_commutation = 0.0;      // || [pi_basis, commutant element] ||
    double lambda_gram = 0.0;         // deviation from delta * D_U
    double pi_gram = 0.0;             // deviation from delta * D_C
    double diagonal_sums = 0.0;       // sum_l lambda^{ll} = sum_m pi^{mm} = proj

    double max_violation() const {
        return std::max({completeness, projector_laws, lambda_commutation, pi_commutation,
                         lambda_gram, pi_gram, diagonal_sums});
    }
};

namespace detail {

inline CMat random_span_element(const std::vector<CMat>& span, RngEngine& rng, bool hermitian) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m = czero(span.front().rows(), span.front().cols());
    for (const CMat& e : span) m += Complex(gauss(rng), gauss(rng)) * e;
    if (hermitian) {
        CMat adj = m.adjoint();
        m = 0.5 * (m + adj);
    }
    const double norm = fro_norm(m);
    if (norm > 0) m /= norm;
    return m;
}

/// Contiguous eigenvalue clusters of an ascending spectrum.
inline std::vector<std::pair<int, int>> cluster_eigenvalues(const Eigen::VectorXd& evals, double gap_tol) {
    std::vector<std::pair<int, int>> clusters; // [first, last)
    int first = 0;
    for (int k = 1; k <= evals.size(); ++k) {
        if (k == evals.size() || evals(k) - evals(k - 1) > gap_tol) {
            clusters.emplace_back(first, k);
            first = k;
        }
    }
    return clusters;
}

inline Complex first_significant_entry(const CMat& m, double rel_tol = 1e-8) {
    const double scale = max_abs(m);
    for (std::int64_t r = 0; r < m.rows(); ++r)
        for (std::int64_t c = 0; c < m.cols(); ++c)
            if (std::abs(m(r, c)) > rel_tol * scale) return m(r, c);
    return Complex(1.0, 0.0);
}

struct SectorDraft {
    std::vector<CMat> copy_bases; // D x D_U orthonormal columns per copy
    int first_cluster = 0;
};

} // namespace detail

/// Verify all sector invariants of a decomposition against fresh group
/// samples; returns the maximum violations found.
inline DualityReport verify_duality(const SectorDecomposition& dec, const RepresentationSpec& rep,
                                    int n_checks = 10, std::uint64_t seed = 0xd0a117ULL) {
    DualityReport report;
    const std::int64_t dim = dec.dim();
    RngEngine rng(seed);
    std::vector<CMat> samples = rep.sample_elements(n_checks, rng);

    CMat proj_sum = czero(dim, dim);
    for (const Sector& s : dec.sectors) proj_sum += s.projector;
    report.completeness = fro_norm(proj_sum - cidentity(dim));

    for (std::size_t a = 0; a < dec.sectors.size(); ++a) {
        const Sector& s = dec.sectors[a];
        report.projector_laws = std::max(report.projector_laws, fro_norm(s.projector - s.projector.adjoint()));
        report.projector_laws =
            std::max(report.projector_laws, fro_norm(s.projector * s.projector - s.projector));
        for (std::size_t b = a + 1; b < dec.sectors.size(); ++b)
            report.projector_laws =
                std::max(report.projector_laws, fro_norm(s.projector * dec.sectors[b].projector));

        for (const CMat& g : samples)
            for (const CMat& l : s.lambda_basis)
                report.lambda_commutation = std::max(report.lambda_commutation, fro_norm(g * l - l * g));

        for (const CMat& p : s.pi_basis)
            for (const Sector& other : dec.sectors)
                for (const CMat& l : other.lambda_basis)
                    report.pi_commutation = std::max(report.pi_commutation, fro_norm(p * l - l * p));

        // Gram relations, within and across sectors.
        for (std::size_t b = 0; b < dec.sectors.size(); ++b) {
            const Sector& t = dec.sectors[b];
            for (int l1 = 0; l1 < s.D_C; ++l1)
                for (int l2 = 0; l2 < s.D_C; ++l2)
                    for (int m1 = 0; m1 < t.D_C; ++m1)
                        for (int m2 = 0; m2 < t.D_C; ++m2) {
                            const Complex ip = hs_inner(s.lambda(l1, l2), t.lambda(m1, m2));
                            const double expected =
                                (a == b && l1 == m1 && l2 == m2) ? static_cast<double>(s.D_U) : 0.0;
                            report.lambda_gram = std::max(report.lambda_gram, std::abs(ip - Complex(expected, 0)));
                        }
            for (int m1 = 0; m1 < s.D_U; ++m1)
                for (int m2 = 0; m2 < s.D_U; ++m2)
                    for (int n1 = 0; n1 < t.D_U; ++n1)
                        for (int n2 = 0; n2 < t.D_U; ++n2) {
                            const Complex ip = hs_inner(s.pi(m1, m2), t.pi(n1, n2));
                            const double expected =
                                (a == b && m1 == n1 && m2 == n2) ? static_cast<double>(s.D_C) : 0.0;
                            report.pi_gram = std::max(report.pi_gram, std::abs(ip - Complex(expected, 0)));
                        }
        }

        CMat lambda_diag = czero(dim, dim);
        for (int l = 0; l < s.D_C; ++l) lambda_diag += s.lambda(l, l);
        CMat pi_diag = czero(dim, dim);
        for (int m = 0; m < s.D_U; ++m) pi_diag += s.pi(m, m);
        report.diagonal_sums = std::max(report.diagonal_sums, fro_norm(lambda_diag - s.projector));
        report.diagonal_sums = std::max(report.diagonal_sums, fro_norm(pi_diag - s.projector));
    }
    return report;
}

/// Numerical isotypic decomposition of a representation.
///
/// Pipeline: (i) commutant basis, (ii) eigenspaces of a random Hermitian
/// commutant element split the space into irrep copies, (iii) a random
/// Hermitian group-algebra element fixes a basis inside the base copy,
/// (iv) copies are aligned by polar-normalized intertwiners. Degenerate
/// random draws are retried with fresh randomness.
inline SectorDecomposition decompose(const RepresentationSpec& rep, const DecomposeOptions& opts = {}) {
    const std::int64_t dim = rep.dim();
    if (dim > kMaxRepresentationDim)
        throw resource_error("decompose: representation dimension " + std::to_string(dim) +
                             " exceeds guard " + std::to_string(kMaxRepresentationDim));

    RngEngine rng(opts.seed);
    std::string failure = "decompose: did not converge";
    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
        std::vector<CMat> samples = rep.sample_elements(opts.n_samples, rng);
        const std::vector<CMat>& constraints = rep.is_custom() ? rep.generators : samples;
        std::vector<CMat> commutant = detail::commutation_nullspace(constraints, dim);
        if (commutant.empty()) {
            failure = "decompose: empty commutant";
            continue;
        }

        // (ii) a generic Hermitian commutant element: each eigenspace is one
        // irrep copy.
        CMat r = detail::random_span_element(commutant, rng, true);
        Eigen::SelfAdjointEigenSolver<CMat> es(r);
        auto clusters = detail::cluster_eigenvalues(es.eigenvalues(), 1e-7);

        std::vector<CMat> copies;
        for (auto [first, last] : clusters) copies.push_back(es.eigenvectors().middleCols(first, last - first));

        // Group copies connected by the commutant into sectors.
        const int n_copies = static_cast<int>(copies.size());
        std::vector<int> sector_of(static_cast<std::size_t>(n_copies), -1);
        std::vector<detail::SectorDraft> drafts;
        bool grouping_ok = true;
        for (int i = 0; i < n_copies && grouping_ok; ++i) {
            if (sector_of[static_cast<std::size_t>(i)] >= 0) continue;
            detail::SectorDraft draft;
            draft.first_cluster = i;
            draft.copy_bases.push_back(copies[static_cast<std::size_t>(i)]);
            sector_of[static_cast<std::size_t>(i)] = static_cast<int>(drafts.size());
            for (int j = i + 1; j < n_copies; ++j) {
                if (sector_of[static_cast<std::size_t>(j)] >= 0) continue;
                double weight = 0.0;
                for (const CMat& c : commutant)
                    weight += fro_norm(copies[static_cast<std::size_t>(i)].adjoint() * c *
                                       copies[static_cast<std::size_t>(j)]);
                if (weight > 1e-6) {
                    if (copies[static_cast<std::size_t>(j)].cols() != copies[static_cast<std::size_t>(i)].cols()) {
                        grouping_ok = false; // merged clusters, dimensions disagree
                        break;
                    }
                    sector_of[static_cast<std::size_t>(j)] = static_cast<int>(drafts.size());
                    draft.copy_bases.push_back(copies[static_cast<std::size_t>(j)]);
                }
            }
            drafts.push_back(std::move(draft));
        }
        if (!grouping_ok) {
            failure = "decompose: degenerate eigenvalue clustering";
            continue;
        }

        // (iii) a generic Hermitian group-algebra element restricted to the
        // base copy fixes the irrep basis.
        CMat s_elem = detail::random_span_element(samples, rng, true);

        std::vector<Sector> sectors;
        std::vector<int> order_keys;
        bool build_ok = true;
        for (const detail::SectorDraft& draft : drafts) {
            const int d_u = static_cast<int>(draft.copy_bases.front().cols());
            const int d_c = static_cast<int>(draft.copy_bases.size());

            const CMat& base = draft.copy_bases.front();
            CMat m0 = base.adjoint() * s_elem * base;
            CMat m0_adj = m0.adjoint();
            m0 = 0.5 * (m0 + m0_adj);
            Eigen::SelfAdjointEigenSolver<CMat> ms(m0);
            bool distinct = true;
            for (int k = 1; k < d_u; ++k)
                if (ms.eigenvalues()(k) - ms.eigenvalues()(k - 1) < 1e-8) distinct = false;
            if (!distinct && d_u > 1) {
                build_ok = false;
                failure = "decompose: degenerate group-algebra spectrum";
                break;
            }
            CMat base_coords = ms.eigenvectors();
            for (int m = 0; m < d_u; ++m) {
                const Complex lead = detail::first_significant_entry(base_coords.col(m));
                base_coords.col(m) *= std::conj(lead) / std::abs(lead);
            }

            Sector sector;
            sector.D_U = d_u;
            sector.D_C = d_c;

            std::vector<CMat> aligned; // D x D_U, columns |k,m,lambda>
            CMat q0 = base * base_coords;
            aligned.push_back(q0);
            for (int lam = 1; lam < d_c; ++lam) {
                const CMat& b_lam = draft.copy_bases[static_cast<std::size_t>(lam)];
                CMat w;
                bool found = false;
                for (int tries = 0; tries < 5 && !found; ++tries) {
                    CMat x = detail::random_span_element(commutant, rng, false);
                    CMat t = b_lam.adjoint() * x * base;
                    Eigen::JacobiSVD<CMat> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
                    if (svd.singularValues()(d_u - 1) > 1e-8 * svd.singularValues()(0)) {
                        w = svd.matrixU() * svd.matrixV().adjoint();
                        found = true;
                    }
                }
                if (!found) {
                    build_ok = false;
                    failure = "decompose: could not align an irrep copy";
                    break;
                }
                CMat q_lam = b_lam * (w * base_coords);
                CMat link = q_lam * q0.adjoint();
                const Complex lead = detail::first_significant_entry(link);
                q_lam *= std::conj(lead) / std::abs(lead);
                aligned.push_back(q_lam);
            }
            if (!build_ok) break;

            sector.projector = czero(dim, dim);
            for (const CMat& q : aligned) sector.projector += q * q.adjoint();

            sector.lambda_basis.resize(static_cast<std::size_t>(d_c) * d_c);
            for (int l1 = 0; l1 < d_c; ++l1)
                for (int l2 = 0; l2 < d_c; ++l2)
                    sector.lambda_basis[static_cast<std::size_t>(l1 * d_c + l2)] =
                        aligned[static_cast<std::size_t>(l1)] * aligned[static_cast<std::size_t>(l2)].adjoint();

            sector.pi_basis.resize(static_cast<std::size_t>(d_u) * d_u);
            for (int m1 = 0; m1 < d_u; ++m1)
                for (int m2 = 0; m2 < d_u; ++m2) {
                    CMat acc = czero(dim, dim);
                    for (const CMat& q : aligned) acc += q.col(m1) * q.col(m2).adjoint();
                    sector.pi_basis[static_cast<std::size_t>(m1 * d_u + m2)] = std::move(acc);
                }

            sectors.push_back(std::move(sector));
            order_keys.push_back(draft.first_cluster);
        }
        if (!build_ok) continue;

        // Structural consistency.
        std::int64_t total = 0;
        int rank = 0;
        for (const Sector& s : sectors) {
            total += s.total_dim();
            rank += s.D_C * s.D_C;
        }
        if (total != dim || rank != static_cast<int>(commutant.size())) {
            failure = "decompose: inconsistent sector bookkeeping";
            continue;
        }

        // Deterministic ordering: by decreasing D_U, then decreasing D_C,
        // then discovery order.
        std::vector<std::size_t> idx(sectors.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (sectors[a].D_U != sectors[b].D_U) return sectors[a].D_U > sectors[b].D_U;
            if (sectors[a].D_C != sectors[b].D_C) return sectors[a].D_C > sectors[b].D_C;
            return order_keys[a] < order_keys[b];
        });

        SectorDecomposition dec;
        dec.rep = rep;
        dec.commutant_rank = static_cast<int>(commutant.size());
        for (std::size_t k : idx) dec.sectors.push_back(std::move(sectors[k]));

        DualityReport report = verify_duality(dec, rep, 5, split_seed(opts.seed, static_cast<std::uint64_t>(attempt)));
        if (report.max_violation() <= opts.validate_tol) return dec;
        failure = "decompose: invariant violation " + std::to_string(report.max_violation());
    }
    throw convergence_error(failure + " after " + std::to_string(opts.max_retries) + " retries");
}

} // namespace choitwirl
