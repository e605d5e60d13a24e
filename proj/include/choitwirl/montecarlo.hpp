/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "choitwirl/cartan.hpp"
#include "choitwirl/channel.hpp"
#include "choitwirl/representation.hpp"

namespace choitwirl {

/// Monte-Carlo estimate of a matrix-valued integral. stderr_proxy is the
/// Frobenius-norm spread of 20 batch means (standard error of the overall
/// mean), a single scalar usable in acceptance gates.
struct SampleEstimate {
    CMat mean;
    std::int64_t n_samples = 0;
    double stderr_proxy = 0.0;
};

struct McOptions {
    std::int64_t n = 100000;
    std::uint64_t seed = 1;
    int streams = 1;
};

namespace detail {

inline int thread_cap_from_env() {
    const char* env = std::getenv("CHOI_TWIRL_THREADS");
    if (!env) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 1;
}

/// Deterministic stream-parallel sample mean: stream s draws a contiguous
/// chunk from its own sub-seeded engine; batch sums are merged by stream
/// order, so the result depends only on (seed, n, streams).
inline SampleEstimate sample_mean(std::int64_t n, std::uint64_t seed, int streams, std::int64_t dim,
                                  const std::function<CMat(RngEngine&)>& draw) {
    if (n < 1) throw contract_error("monte carlo: need n >= 1 samples");
    if (streams < 1) throw contract_error("monte carlo: need streams >= 1");
    streams = static_cast<int>(std::min<std::int64_t>(streams, n));
    const int n_batches = static_cast<int>(std::min<std::int64_t>(20, n));

    std::vector<std::vector<CMat>> stream_batches(static_cast<std::size_t>(streams));
    std::vector<std::int64_t> starts(static_cast<std::size_t>(streams) + 1);
    for (int s = 0; s <= streams; ++s) starts[static_cast<std::size_t>(s)] = n * s / streams;

    auto run_stream = [&](int s) {
        RngEngine rng(streams == 1 ? seed : split_seed(seed, static_cast<std::uint64_t>(s)));
        auto& batches = stream_batches[static_cast<std::size_t>(s)];
        batches.assign(static_cast<std::size_t>(n_batches), czero(dim, dim));
        for (std::int64_t i = starts[static_cast<std::size_t>(s)]; i < starts[static_cast<std::size_t>(s) + 1]; ++i) {
            const auto b = static_cast<std::size_t>(i * n_batches / n);
            batches[b] += draw(rng);
        }
    };

    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const int cap = thread_cap_from_env();
    const int n_threads = std::min(streams, cap > 0 ? std::min(hw, cap) : hw);
    if (n_threads <= 1) {
        for (int s = 0; s < streams; ++s) run_stream(s);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&, t] {
                for (int s = t; s < streams; s += n_threads) run_stream(s);
            });
        for (std::thread& t : pool) t.join();
    }

    std::vector<CMat> batch_sums(static_cast<std::size_t>(n_batches), czero(dim, dim));
    for (int s = 0; s < streams; ++s)
        for (int b = 0; b < n_batches; ++b)
            batch_sums[static_cast<std::size_t>(b)] += stream_batches[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];

    CMat total = czero(dim, dim);
    for (const CMat& b : batch_sums) total += b;
    SampleEstimate est;
    est.n_samples = n;
    est.mean = total / static_cast<double>(n);

    if (n_batches >= 2) {
        double acc = 0.0;
        for (int b = 0; b < n_batches; ++b) {
            const std::int64_t nb = (b + 1 < n_batches ? (static_cast<std::int64_t>(b) + 1) * n / n_batches
                                                       : n) -
                                    static_cast<std::int64_t>(b) * n / n_batches;
            CMat diff = batch_sums[static_cast<std::size_t>(b)] / static_cast<double>(nb) - est.mean;
            acc += diff.squaredNorm();
        }
        est.stderr_proxy = std::sqrt(acc / (static_cast<double>(n_batches) * (n_batches - 1)));
    }
    return est;
}

} // namespace detail

/// Brute-force channel twirl: sample mean of
/// (pi_out(U) (x) conj(pi_in(U))) J (...)^H over Haar samples U. The mean is
/// symmetrized to be exactly Hermitian.
inline SampleEstimate mc_channel_twirl(const ChoiOperator& j, const RepresentationSpec& rep_out,
                                       const RepresentationSpec& rep_in, const McOptions& opts = {}) {
    j.validate();
    if (rep_out.is_custom() || rep_in.is_custom())
        throw contract_error("mc_channel_twirl: sampling requires collective representations");
    detail::check_channel_reps(j, rep_out, rep_in);
    RepresentationSpec combined = choi_rep_from(rep_out, rep_in);
    const int d = combined.d;
    const GroupKind group = combined.group;

    SampleEstimate est = detail::sample_mean(
        opts.n, opts.seed, opts.streams, j.dim(), [&](RngEngine& rng) -> CMat {
            CMat u = group == GroupKind::unitary ? haar_unitary(d, rng) : haar_special_unitary(d, rng);
            CMat w = combined.apply(u);
            return w * j.matrix * w.adjoint();
        });
    CMat adj = est.mean.adjoint();
    est.mean = 0.5 * (est.mean + adj);
    return est;
}

/// Brute-force Cartan twirl: sample mean over K, A, K' with K, K' Haar on
/// SU(d) and A drawn from the normalized Abelian measure.
inline SampleEstimate mc_cartan_twirl(const ChoiOperator& j, const CartanGroupSpec& spec,
                                      const AbelianMeasure& measure, const McOptions& opts = {}) {
    j.validate();
    if (spec.d != j.d) throw contract_error("mc_cartan_twirl: group and channel dimensions differ");
    measure.validate(spec.d);
    RepresentationSpec combined = RepresentationSpec::choi_induced(j.d, j.t_out, j.t_in, GroupKind::special_unitary);

    std::vector<CMat> node_ops;
    node_ops.reserve(measure.nodes.size());
    for (const auto& a : measure.nodes) node_ops.push_back(normalize_abelian(a, combined));
    std::vector<double> cumulative(measure.weights.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < measure.weights.size(); ++k) {
        acc += measure.weights[k];
        cumulative[k] = acc;
    }

    const int d = j.d;
    SampleEstimate est = detail::sample_mean(
        opts.n, opts.seed, opts.streams, j.dim(), [&](RngEngine& rng) -> CMat {
            CMat k1 = combined.apply(haar_special_unitary(d, rng));
            CMat k2 = combined.apply(haar_special_unitary(d, rng));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const double u = unif(rng);
            std::size_t node = 0;
            while (node + 1 < cumulative.size() && cumulative[node] < u) ++node;
            CMat w = k1 * node_ops[node] * k2;
            return w * j.matrix * w.adjoint();
        });
    CMat adj = est.mean.adjoint();
    est.mean = 0.5 * (est.mean + adj);
    return est;
}

} // namespace choitwirl
