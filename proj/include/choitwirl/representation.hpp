/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <utility>
#include <vector>

#include "choitwirl/rng.hpp"
#include "choitwirl/tensor.hpp"

namespace choitwirl {

enum class FactorTag { plain, conjugate };

/// Group the collective sample elements are drawn from.
enum class GroupKind { unitary, special_unitary };

/// How a group element acts on a tensor space: either a collective power
/// with per-factor plain/conjugate tags, or a custom finite generating set
/// of invertible matrices.
struct RepresentationSpec {
    int d = 2;
    std::vector<FactorTag> factors;   // collective action, one tag per factor
    std::vector<CMat> generators;     // nonempty => custom representation
    GroupKind group = GroupKind::unitary;

    bool is_custom() const { return !generators.empty(); }

    static RepresentationSpec collective(int d, int t_plain, GroupKind group = GroupKind::unitary) {
        RepresentationSpec rep;
        rep.d = d;
        rep.factors.assign(static_cast<std::size_t>(t_plain), FactorTag::plain);
        rep.group = group;
        return rep;
    }

    /// The induced action on a Choi space: t_out plain factors followed by
    /// t_in conjugated ones.
    static RepresentationSpec choi_induced(int d, int t_out, int t_in, GroupKind group = GroupKind::unitary) {
        RepresentationSpec rep;
        rep.d = d;
        rep.factors.assign(static_cast<std::size_t>(t_out), FactorTag::plain);
        rep.factors.insert(rep.factors.end(), static_cast<std::size_t>(t_in), FactorTag::conjugate);
        rep.group = group;
        return rep;
    }

    static RepresentationSpec custom(std::vector<CMat> generators) {
        if (generators.empty())
            throw contract_error("RepresentationSpec::custom: empty generator list");
        RepresentationSpec rep;
        rep.d = static_cast<int>(generators.front().rows());
        for (const CMat& g : generators) {
            if (g.rows() != g.cols() || g.rows() != generators.front().rows())
                throw shape_error("RepresentationSpec::custom: generators must be square and equal-sized");
            if (std::abs(g.determinant()) < 1e-12)
                throw contract_error("RepresentationSpec::custom: generators must be invertible");
        }
        rep.generators = std::move(generators);
        return rep;
    }

    std::int64_t dim() const {
        if (is_custom()) return generators.front().rows();
        return TensorSpace(d, static_cast<int>(factors.size())).dim();
    }

    bool is_collective_plain() const {
        if (is_custom()) return false;
        for (FactorTag tag : factors)
            if (tag != FactorTag::plain) return false;
        return true;
    }

    /// pi(U) for a collective spec: tensor product of U or conj(U) per factor.
    CMat apply(const CMat& u) const {
        if (is_custom())
            throw contract_error("RepresentationSpec::apply: custom representation has no collective action");
        if (u.rows() != d || u.cols() != d)
            throw shape_error("RepresentationSpec::apply: element must be d x d");
        CMat out = CMat::Ones(1, 1);
        for (FactorTag tag : factors) {
            if (tag == FactorTag::plain)
                out = kron(out, u);
            else {
                CMat uc = u.conjugate();
                out = kron(out, uc);
            }
        }
        return out;
    }

    /// A sampled or declared set of represented group elements, used as
    /// commutation constraints and as generic group-algebra elements.
    std::vector<CMat> sample_elements(int n_samples, RngEngine& rng) const {
        std::vector<CMat> out;
        if (is_custom()) {
            out = generators;
            // Random short words enrich the sampled group-algebra span.
            std::uniform_int_distribution<int> pick(0, static_cast<int>(generators.size()) - 1);
            std::uniform_int_distribution<int> len(2, 4);
            while (static_cast<int>(out.size()) < n_samples) {
                CMat w = generators[static_cast<std::size_t>(pick(rng))];
                const int l = len(rng);
                for (int k = 1; k < l; ++k) w = w * generators[static_cast<std::size_t>(pick(rng))];
                out.push_back(std::move(w));
            }
            return out;
        }
        for (int k = 0; k < n_samples; ++k) {
            CMat u = group == GroupKind::unitary ? haar_unitary(d, rng) : haar_special_unitary(d, rng);
            out.push_back(apply(u));
        }
        return out;
    }
};

/// Representation of the same group on H_out (x) H_in via
/// pi_out(g) (x) conj(pi_in(g)); for custom specs the generator lists must
/// correspond elementwise.
inline RepresentationSpec choi_rep_from(const RepresentationSpec& rep_out, const RepresentationSpec& rep_in) {
    if (rep_out.is_custom() != rep_in.is_custom())
        throw contract_error("choi representation: cannot mix collective and custom specs");
    if (rep_out.is_custom()) {
        if (rep_out.generators.size() != rep_in.generators.size())
            throw contract_error("choi representation: custom generator lists must correspond elementwise");
        std::vector<CMat> gens;
        for (std::size_t k = 0; k < rep_out.generators.size(); ++k) {
            CMat conj_in = rep_in.generators[k].conjugate();
            gens.push_back(kron(rep_out.generators[k], conj_in));
        }
        return RepresentationSpec::custom(std::move(gens));
    }
    if (rep_out.d != rep_in.d)
        throw contract_error("choi representation: local dimensions must agree");
    RepresentationSpec rep;
    rep.d = rep_out.d;
    rep.group = rep_out.group;
    rep.factors = rep_out.factors;
    for (FactorTag tag : rep_in.factors)
        rep.factors.push_back(tag == FactorTag::plain ? FactorTag::conjugate : FactorTag::plain);
    return rep;
}

} // namespace choitwirl
