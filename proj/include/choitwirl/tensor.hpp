/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "choitwirl/errors.hpp"

namespace choitwirl {

using Complex = std::complex<double>;

/// Dense complex matrix with row-major entry layout.
using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;

/// Default absolute tolerance for numerical checks.
inline constexpr double kDefaultTol = 1e-10;

/// A tensor-power space (C^d)^{x t}. Factor 0 is the leftmost (most
/// significant) slot; basis kets are enumerated row-major.
struct TensorSpace {
    int local_dim = 2;
    int factor_count = 1;

    TensorSpace() = default;
    TensorSpace(int d, int t) : local_dim(d), factor_count(t) {
        if (d < 1) throw contract_error("TensorSpace: local_dim must be >= 1");
        if (t < 0) throw contract_error("TensorSpace: factor_count must be >= 0");
    }

    std::int64_t dim() const {
        std::int64_t n = 1;
        for (int k = 0; k < factor_count; ++k) n *= local_dim;
        return n;
    }
};

/// Sorted list of distinct factor positions in [0, t).
struct FactorSubset {
    std::vector<int> indices;

    FactorSubset() = default;
    explicit FactorSubset(std::vector<int> idx) : indices(std::move(idx)) {
        std::sort(indices.begin(), indices.end());
    }

    static FactorSubset all(int t) {
        std::vector<int> idx(static_cast<std::size_t>(t));
        std::iota(idx.begin(), idx.end(), 0);
        return FactorSubset{std::move(idx)};
    }

    static FactorSubset range(int first, int last) { // [first, last)
        std::vector<int> idx;
        for (int k = first; k < last; ++k) idx.push_back(k);
        return FactorSubset{std::move(idx)};
    }

    void validate(const TensorSpace& space) const {
        int prev = -1;
        for (int k : indices) {
            if (k <= prev || k >= space.factor_count)
                throw contract_error("FactorSubset: indices must be strictly increasing and < t");
            prev = k;
        }
    }
};

inline CMat cidentity(std::int64_t n) { return CMat::Identity(n, n); }

inline CMat czero(std::int64_t rows, std::int64_t cols) { return CMat::Zero(rows, cols); }

/// Kronecker product a (x) b.
inline CMat kron(const CMat& a, const CMat& b) {
    CMat out = Eigen::kroneckerProduct(a, b);
    return out;
}

/// t-fold Kronecker power; t = 0 gives the 1x1 identity.
inline CMat kron_pow(const CMat& a, int t) {
    if (t < 0) throw contract_error("kron_pow: negative power");
    CMat out = CMat::Ones(1, 1);
    for (int k = 0; k < t; ++k) out = kron(out, a);
    return out;
}

inline double fro_norm(const CMat& a) { return a.norm(); }

inline double max_abs(const CMat& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Hilbert-Schmidt inner product Tr(a^H b).
inline Complex hs_inner(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw shape_error("hs_inner: operands must have equal shape");
    return (a.adjoint() * b).trace();
}

namespace detail {

inline void check_square_dim(const CMat& x, const TensorSpace& space, const char* op) {
    if (x.rows() != x.cols())
        throw shape_error(std::string(op) + ": matrix must be square");
    if (x.rows() != space.dim())
        throw shape_error(std::string(op) + ": matrix size " + std::to_string(x.rows()) +
                          " does not match d^t = " + std::to_string(space.dim()));
}

// Digits of a basis index, factor 0 most significant.
inline void index_digits(std::int64_t idx, int d, int t, int* digits) {
    for (int k = t - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(idx % d);
        idx /= d;
    }
}

inline std::int64_t digits_index(const int* digits, int d, int t) {
    std::int64_t idx = 0;
    for (int k = 0; k < t; ++k) idx = idx * d + digits[k];
    return idx;
}

} // namespace detail

/// Partial transpose on the selected factors. Involutive and trace-preserving.
inline CMat partial_transpose(const CMat& x, const TensorSpace& space, const FactorSubset& subset) {
    detail::check_square_dim(x, space, "partial_transpose");
    subset.validate(space);
    const int d = space.local_dim;
    const int t = space.factor_count;
    const std::int64_t n = space.dim();

    std::vector<char> sel(static_cast<std::size_t>(std::max(t, 1)), 0);
    for (int k : subset.indices) sel[static_cast<std::size_t>(k)] = 1;

    CMat out(n, n);
    std::vector<int> ri(static_cast<std::size_t>(std::max(t, 1)));
    std::vector<int> ci(ri.size()), rs(ri.size()), cs(ri.size());
    for (std::int64_t r = 0; r < n; ++r) {
        detail::index_digits(r, d, t, ri.data());
        for (std::int64_t c = 0; c < n; ++c) {
            detail::index_digits(c, d, t, ci.data());
            for (int k = 0; k < t; ++k) {
                rs[static_cast<std::size_t>(k)] = sel[static_cast<std::size_t>(k)] ? ci[static_cast<std::size_t>(k)] : ri[static_cast<std::size_t>(k)];
                cs[static_cast<std::size_t>(k)] = sel[static_cast<std::size_t>(k)] ? ri[static_cast<std::size_t>(k)] : ci[static_cast<std::size_t>(k)];
            }
            out(r, c) = x(detail::digits_index(rs.data(), d, t), detail::digits_index(cs.data(), d, t));
        }
    }
    return out;
}

/// Trace out the selected factors. Empty subset returns x unchanged.
inline CMat partial_trace(const CMat& x, const TensorSpace& space, const FactorSubset& subset) {
    detail::check_square_dim(x, space, "partial_trace");
    subset.validate(space);
    const int d = space.local_dim;
    const int t = space.factor_count;
    if (subset.indices.empty()) return x;

    std::vector<char> sel(static_cast<std::size_t>(t), 0);
    for (int k : subset.indices) sel[static_cast<std::size_t>(k)] = 1;
    const int t_keep = t - static_cast<int>(subset.indices.size());
    TensorSpace kept(d, t_keep);
    const std::int64_t n = space.dim();
    const std::int64_t m = kept.dim();

    CMat out = czero(m, m);
    std::vector<int> ri(static_cast<std::size_t>(t)), ci(static_cast<std::size_t>(t));
    std::vector<int> rk(static_cast<std::size_t>(std::max(t_keep, 1)));
    std::vector<int> ck(rk.size());
    for (std::int64_t r = 0; r < n; ++r) {
        detail::index_digits(r, d, t, ri.data());
        for (std::int64_t c = 0; c < n; ++c) {
            detail::index_digits(c, d, t, ci.data());
            bool diagonal = true;
            int pos = 0;
            for (int k = 0; k < t; ++k) {
                if (sel[static_cast<std::size_t>(k)]) {
                    if (ri[static_cast<std::size_t>(k)] != ci[static_cast<std::size_t>(k)]) { diagonal = false; break; }
                } else {
                    rk[static_cast<std::size_t>(pos)] = ri[static_cast<std::size_t>(k)];
                    ck[static_cast<std::size_t>(pos)] = ci[static_cast<std::size_t>(k)];
                    ++pos;
                }
            }
            if (!diagonal) continue;
            out(detail::digits_index(rk.data(), d, t_keep), detail::digits_index(ck.data(), d, t_keep)) += x(r, c);
        }
    }
    return out;
}

/// Permutation of t symbols together with its operator on (C^d)^{x t}.
struct PermutationOperator {
    std::vector<int> sigma; // sigma[k] = image of symbol k
    CMat matrix;
};

inline void validate_permutation(const std::vector<int>& sigma) {
    std::vector<char> seen(sigma.size(), 0);
    for (int v : sigma) {
        if (v < 0 || v >= static_cast<int>(sigma.size()) || seen[static_cast<std::size_t>(v)])
            throw contract_error("permutation: not a bijection on [0, t)");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

inline std::vector<int> inverse_permutation(const std::vector<int>& sigma) {
    std::vector<int> inv(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) inv[static_cast<std::size_t>(sigma[k])] = static_cast<int>(k);
    return inv;
}

inline std::vector<int> compose_permutations(const std::vector<int>& sigma, const std::vector<int>& tau) {
    // (sigma o tau)(k) = sigma(tau(k))
    std::vector<int> out(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) out[k] = sigma[static_cast<std::size_t>(tau[k])];
    return out;
}

inline int cycle_count(const std::vector<int>& sigma) {
    std::vector<char> seen(sigma.size(), 0);
    int cycles = 0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (seen[k]) continue;
        ++cycles;
        std::size_t j = k;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<std::size_t>(sigma[j]);
        }
    }
    return cycles;
}

/// 0/1 unitary realizing sigma on (C^d)^{x t}:
/// matrix |i_0 ... i_{t-1}> = |i_{sigma^-1(0)} ... i_{sigma^-1(t-1)}>.
inline PermutationOperator permutation_matrix(const std::vector<int>& sigma, const TensorSpace& space) {
    if (static_cast<int>(sigma.size()) != space.factor_count)
        throw contract_error("permutation_matrix: sigma must permute exactly t symbols");
    validate_permutation(sigma);
    const int d = space.local_dim;
    const int t = space.factor_count;
    const std::int64_t n = space.dim();
    const std::vector<int> inv = inverse_permutation(sigma);

    CMat out = czero(n, n);
    std::vector<int> ci(static_cast<std::size_t>(std::max(t, 1)));
    std::vector<int> ro(ci.size());
    for (std::int64_t c = 0; c < n; ++c) {
        detail::index_digits(c, d, t, ci.data());
        for (int k = 0; k < t; ++k) ro[static_cast<std::size_t>(k)] = ci[static_cast<std::size_t>(inv[static_cast<std::size_t>(k)])];
        out(detail::digits_index(ro.data(), d, t), c) = Complex(1.0, 0.0);
    }
    return PermutationOperator{sigma, std::move(out)};
}

/// All permutations of t symbols in a deterministic (lexicographic) order.
inline std::vector<std::vector<int>> all_permutations(int t) {
    std::vector<int> sigma(static_cast<std::size_t>(t));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

} // namespace choitwirl
