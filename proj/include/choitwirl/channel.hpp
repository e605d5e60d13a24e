/*
 * This code is part of choitwirl.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "choitwirl/tensor.hpp"

namespace choitwirl {

/// Unnormalized maximally entangled operator sum_{i,j} |ii><jj| of size dim^2.
/// Trace equals dim; rank 1.
inline CMat max_entangled(std::int64_t dim) {
    if (dim < 1) throw contract_error("max_entangled: dim must be >= 1");
    CMat out = czero(dim * dim, dim * dim);
    for (std::int64_t i = 0; i < dim; ++i)
        for (std::int64_t j = 0; j < dim; ++j)
            out(i * dim + i, j * dim + j) = Complex(1.0, 0.0);
    return out;
}

/// A channel in Kraus form, mapping t_in to t_out qu-d-its. Channels may be
/// trace-nonincreasing; trace preservation is checked, not enforced.
struct KrausChannel {
    int d = 2;
    int t_in = 1;
    int t_out = 1;
    std::vector<CMat> kraus;

    std::int64_t dim_in() const { return TensorSpace(d, t_in).dim(); }
    std::int64_t dim_out() const { return TensorSpace(d, t_out).dim(); }

    void validate() const {
        if (kraus.empty()) throw contract_error("KrausChannel: needs at least one Kraus operator");
        for (const CMat& k : kraus)
            if (k.rows() != dim_out() || k.cols() != dim_in())
                throw shape_error("KrausChannel: Kraus operator shape must be d^t_out x d^t_in");
    }

    /// || sum_k K_k^H K_k - I ||_F
    double tp_residual() const {
        CMat acc = czero(dim_in(), dim_in());
        for (const CMat& k : kraus) acc += k.adjoint() * k;
        return fro_norm(acc - cidentity(dim_in()));
    }

    bool is_trace_preserving(double tol = kDefaultTol) const { return tp_residual() <= tol; }
};

/// Choi operator J on H_out (x) H_in; out factors precede in factors.
/// Convention: J = sum_k (K_k (x) I) rho_ME (K_k (x) I)^H with rho_ME
/// unnormalized, so Tr(J) = d^t_in for trace-preserving channels.
struct ChoiOperator {
    int d = 2;
    int t_in = 1;
    int t_out = 1;
    CMat matrix;

    std::int64_t dim_in() const { return TensorSpace(d, t_in).dim(); }
    std::int64_t dim_out() const { return TensorSpace(d, t_out).dim(); }
    std::int64_t dim() const { return dim_in() * dim_out(); }
    TensorSpace space() const { return TensorSpace(d, t_in + t_out); }

    /// Factor positions of H_in inside the out-then-in layout.
    FactorSubset input_factors() const { return FactorSubset::range(t_out, t_out + t_in); }

    void validate() const {
        if (matrix.rows() != dim() || matrix.cols() != dim())
            throw shape_error("ChoiOperator: matrix size must be d^{t_out+t_in}");
    }

    /// Partial transpose over the input factors (the Gamma map).
    CMat gamma() const { return partial_transpose(matrix, space(), input_factors()); }
};

/// J = (Phi (x) id)(rho_ME), built directly from the Kraus form.
inline ChoiOperator choi_from_kraus(const KrausChannel& ch) {
    ch.validate();
    const std::int64_t din = ch.dim_in();
    const CMat rho_me = max_entangled(din);
    const CMat eye_in = cidentity(din);
    CMat j = czero(ch.dim_out() * din, ch.dim_out() * din);
    for (const CMat& k : ch.kraus) {
        CMat ext = kron(k, eye_in);
        j += ext * rho_me * ext.adjoint();
    }
    return ChoiOperator{ch.d, ch.t_in, ch.t_out, std::move(j)};
}

/// Eigendecomposition-based Kraus extraction. Eigenvalues below
/// tol * lambda_max are dropped; eigenvalues below -tol * lambda_max raise
/// a contract error naming the most negative one.
inline KrausChannel kraus_from_choi(const ChoiOperator& j, double tol = kDefaultTol) {
    j.validate();
    CMat herm = 0.5 * (j.matrix + j.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(herm);
    const Eigen::VectorXd evals = es.eigenvalues();
    const double lambda_max = std::max(evals.cwiseAbs().maxCoeff(), 1.0);
    const double cutoff = tol * lambda_max;
    if (evals.minCoeff() < -cutoff)
        throw contract_error("kraus_from_choi: Choi operator is not PSD, most negative eigenvalue " +
                             std::to_string(evals.minCoeff()));

    KrausChannel ch;
    ch.d = j.d;
    ch.t_in = j.t_in;
    ch.t_out = j.t_out;
    const std::int64_t dout = j.dim_out();
    const std::int64_t din = j.dim_in();
    for (std::int64_t idx = evals.size() - 1; idx >= 0; --idx) {
        const double lambda = evals(idx);
        if (lambda <= cutoff) continue;
        const CVec v = es.eigenvectors().col(idx);
        CMat k(dout, din);
        for (std::int64_t o = 0; o < dout; ++o)
            for (std::int64_t i = 0; i < din; ++i)
                k(o, i) = std::sqrt(lambda) * v(o * din + i);
        ch.kraus.push_back(std::move(k));
    }
    if (ch.kraus.empty()) ch.kraus.push_back(czero(dout, din));
    return ch;
}

/// Apply a channel through its Choi operator: Phi(rho) = Tr_in[J (I (x) rho^T)].
inline CMat apply_channel(const ChoiOperator& j, const CMat& rho) {
    j.validate();
    const std::int64_t din = j.dim_in();
    const std::int64_t dout = j.dim_out();
    if (rho.rows() != din || rho.cols() != din)
        throw shape_error("apply_channel: state must be square of size d^t_in");
    CMat out = czero(dout, dout);
    for (std::int64_t o = 0; o < dout; ++o)
        for (std::int64_t op = 0; op < dout; ++op) {
            Complex acc(0.0, 0.0);
            for (std::int64_t i = 0; i < din; ++i)
                for (std::int64_t ip = 0; ip < din; ++ip)
                    acc += j.matrix(o * din + i, op * din + ip) * rho(i, ip);
            out(o, op) = acc;
        }
    return out;
}

/// Direct Kraus application sum_k K rho K^H.
inline CMat apply_kraus(const KrausChannel& ch, const CMat& rho) {
    ch.validate();
    if (rho.rows() != ch.dim_in() || rho.cols() != ch.dim_in())
        throw shape_error("apply_kraus: state must be square of size d^t_in");
    CMat out = czero(ch.dim_out(), ch.dim_out());
    for (const CMat& k : ch.kraus) out += k * rho * k.adjoint();
    return out;
}

struct CpTpReport {
    bool is_cp = false;
    bool is_tp = false;
    double min_eigenvalue = 0.0;
    double tp_residual = 0.0;
};

/// CP iff min eigenvalue >= -tol; TP iff ||Tr_out(J) - I||_F <= tol.
inline CpTpReport check_cp_tp(const ChoiOperator& j, double tol = kDefaultTol) {
    j.validate();
    CpTpReport report;
    CMat herm = 0.5 * (j.matrix + j.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(herm, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = es.eigenvalues().minCoeff();
    report.is_cp = report.min_eigenvalue >= -tol;

    CMat tr_out = partial_trace(j.matrix, j.space(), FactorSubset::range(0, j.t_out));
    report.tp_residual = fro_norm(tr_out - cidentity(j.dim_in()));
    report.is_tp = report.tp_residual <= tol;
    return report;
}

} // namespace choitwirl
