/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "choitwirl/cartan.hpp"
#include "choitwirl/commutant.hpp"

namespace choitwirl {

/// Finite weighted set {(G_i, w_i)} reproducing t-th moments of a group
/// average. For group "sl2c" the reproduced average is the Cartan twirl with
/// the declared measure.
struct WeightedDesign {
    int t = 1;
    std::string group = "unitary";
    std::vector<CMat> elements;
    std::vector<double> weights;
    bool verified = false;
    std::optional<AbelianMeasure> measure; // sl2c designs carry their measure

    std::int64_t d() const { return elements.empty() ? 0 : elements.front().rows(); }

    void validate() const {
        if (elements.empty() || elements.size() != weights.size())
            throw contract_error("WeightedDesign: elements and weights must be nonempty and equal-length");
        for (const CMat& g : elements)
            if (g.rows() != g.cols() || g.rows() != d())
                throw shape_error("WeightedDesign: elements must be square and equal-sized");
        double total = 0.0;
        for (double w : weights) {
            if (w <= 0.0) throw contract_error("WeightedDesign: weights must be positive");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw contract_error("WeightedDesign: weights must sum to 1, got " + std::to_string(total));
    }
};

struct DesignReport {
    double max_deviation = 0.0;
    bool pass = false;
};

inline constexpr int kMaxDesignOrder = 4;
inline constexpr int kMaxDesignLocalDim = 3;

/// Compare the finite moment superoperator X -> sum_i w_i G^{(x)t} X G^{(x)t H}
/// against the exact group average on a complete basis of matrix units.
/// Passing sets the design's verified flag.
inline DesignReport verify_design(WeightedDesign& design, double tol = 1e-10,
                                  const DecomposeOptions& opts = {}) {
    design.validate();
    if (design.t > kMaxDesignOrder || design.d() > kMaxDesignLocalDim)
        throw resource_error("verify_design: guard exceeded (t <= 4, d <= 3)");
    const int d = static_cast<int>(design.d());
    const int t = design.t;
    const std::int64_t dim = TensorSpace(d, t).dim();

    std::vector<CMat> powers;
    powers.reserve(design.elements.size());
    for (const CMat& g : design.elements) powers.push_back(kron_pow(g, t));

    // Exact target: Haar twirl for unitary-type groups, the Cartan twirl with
    // the declared measure for sl2c.
    std::function<CMat(const CMat&)> exact;
    CommutantBasis perm_basis = permutation_commutant_basis(d, t);
    SectorDecomposition dec;
    BetaWeights beta;
    if (design.group == "sl2c") {
        if (!design.measure) throw contract_error("verify_design: sl2c design carries no measure");
        RepresentationSpec rep = RepresentationSpec::collective(d, t, GroupKind::special_unitary);
        dec = decompose(rep, opts);
        beta = beta_weights(*design.measure, rep, dec);
        exact = [&](const CMat& x) {
            CMat out = czero(dim, dim);
            for (std::size_t k = 0; k < dec.sectors.size(); ++k)
                out += (beta.beta[k] / beta.sector_dim[k]) * dec.sectors[k].twirl_component(x);
            return out;
        };
    } else {
        exact = [&](const CMat& x) { return project_onto_commutant(x, perm_basis); };
    }

    DesignReport report;
    CMat unit = czero(dim, dim);
    for (std::int64_t a = 0; a < dim; ++a)
        for (std::int64_t b = 0; b < dim; ++b) {
            unit(a, b) = Complex(1.0, 0.0);
            CMat finite = czero(dim, dim);
            for (std::size_t i = 0; i < powers.size(); ++i)
                finite += design.weights[i] * (powers[i].col(a) * powers[i].row(b).conjugate());
            report.max_deviation = std::max(report.max_deviation, max_abs(finite - exact(unit)));
            unit(a, b) = Complex(0.0, 0.0);
        }
    report.pass = report.max_deviation <= tol;
    if (report.pass) design.verified = true;
    return report;
}

struct DesignTwirlResult {
    ChoiOperator choi;
    bool design_verified = false;
};

/// Finite reconstruction of the averaged channel,
/// J -> [sum_i w_i G^{(x)t} J^Gamma G^{(x)t H}]^Gamma with t = t_in + t_out.
/// Using an unverified design is allowed but flagged in the result.
inline DesignTwirlResult design_channel_twirl(const ChoiOperator& j, const WeightedDesign& design) {
    j.validate();
    design.validate();
    if (design.t != j.t_in + j.t_out)
        throw contract_error("design_channel_twirl: design order t = " + std::to_string(design.t) +
                             " must equal t_in + t_out = " + std::to_string(j.t_in + j.t_out));
    if (design.d() != j.d)
        throw contract_error("design_channel_twirl: design and channel local dimensions differ");
    CMat jg = j.gamma();
    CMat acc = czero(j.dim(), j.dim());
    for (std::size_t i = 0; i < design.elements.size(); ++i) {
        CMat p = kron_pow(design.elements[i], design.t);
        acc += design.weights[i] * (p * jg * p.adjoint());
    }
    CMat back = partial_transpose(acc, j.space(), j.input_factors());
    return DesignTwirlResult{ChoiOperator{j.d, j.t_in, j.t_out, std::move(back)}, design.verified};
}

namespace detail {

inline CMat canonical_phase(const CMat& m) {
    const Complex lead = first_significant_entry(m);
    return m * (std::conj(lead) / std::abs(lead));
}

inline std::string matrix_key(const CMat& m) {
    std::string key;
    for (std::int64_t r = 0; r < m.rows(); ++r)
        for (std::int64_t c = 0; c < m.cols(); ++c) {
            key += std::to_string(std::llround(m(r, c).real() * 1e6));
            key += ',';
            key += std::to_string(std::llround(m(r, c).imag() * 1e6));
            key += ';';
        }
    return key;
}

/// The 24 single-qubit Clifford elements, generated from H and S and stored
/// with the global phase stripped (first nonzero entry real positive).
inline std::vector<CMat> clifford_1q_elements() {
    CMat h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CMat s = czero(2, 2);
    s(0, 0) = Complex(1, 0);
    s(1, 1) = Complex(0, 1);

    std::map<std::string, CMat> seen;
    std::vector<CMat> frontier = {canonical_phase(cidentity(2))};
    seen[matrix_key(frontier[0])] = frontier[0];
    while (!frontier.empty()) {
        std::vector<CMat> next;
        for (const CMat& g : frontier)
            for (const CMat* gen : {&h, &s}) {
                CMat prod = canonical_phase(*gen * g);
                std::string key = matrix_key(prod);
                if (!seen.count(key)) {
                    seen[key] = prod;
                    next.push_back(prod);
                }
            }
        frontier = std::move(next);
    }
    std::vector<CMat> out;
    for (auto& [key, g] : seen) out.push_back(g); // key order: deterministic
    return out;
}

} // namespace detail

/// Catalog of built-in designs. sl2c_product_t2 pairs every element of the
/// single-qubit Clifford 2-design with every quadrature node of the measure,
/// K A_n K' over the design x nodes x design grid, weights multiplied.
inline WeightedDesign builtin_design(const std::string& name,
                                     const std::optional<AbelianMeasure>& measure = std::nullopt) {
    WeightedDesign design;
    if (name == "pauli_1q_t1") {
        design.t = 1;
        design.group = "unitary";
        CMat y(2, 2);
        y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
        CMat x(2, 2);
        x << 0, 1, 1, 0;
        CMat z(2, 2);
        z << 1, 0, 0, -1;
        design.elements = {cidentity(2), x, y, z};
        design.weights.assign(4, 0.25);
        return design;
    }
    if (name == "clifford_1q_t2" || name == "clifford_1q_t3") {
        design.t = name == "clifford_1q_t2" ? 2 : 3;
        design.group = "unitary";
        design.elements = detail::clifford_1q_elements();
        design.weights.assign(design.elements.size(), 1.0 / static_cast<double>(design.elements.size()));
        return design;
    }
    if (name == "sl2c_product_t2") {
        if (!measure) throw contract_error("builtin_design: sl2c_product_t2 requires an Abelian measure");
        measure->validate(2);
        design.t = 2;
        design.group = "sl2c";
        design.measure = measure;
        std::vector<CMat> clifford = detail::clifford_1q_elements();
        const double wk = 1.0 / static_cast<double>(clifford.size());
        RepresentationSpec rep1 = RepresentationSpec::collective(2, 1);
        for (std::size_t jn = 0; jn < measure->nodes.size(); ++jn) {
            CMat an = normalize_abelian(measure->nodes[jn], rep1);
            for (const CMat& k1 : clifford)
                for (const CMat& k2 : clifford) {
                    design.elements.push_back(k1 * an * k2);
                    design.weights.push_back(wk * measure->weights[jn] * wk);
                }
        }
        return design;
    }
    throw contract_error("builtin_design: unknown design '" + name + "'");
}

} // namespace choitwirl
