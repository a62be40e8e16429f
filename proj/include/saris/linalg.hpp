// SPDX-License-Identifier: Apache-2.0
//
// saris-sim: scattering-aware RIS channel simulator and optimizer
// Copyright (C) 2026 The saris-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SARIS_LINALG_HPP
#define SARIS_LINALG_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "saris/errors.hpp"

namespace saris {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Blocks whose (estimated) condition number exceeds this are rejected.
inline constexpr double kMaxConditionNumber = 1e12;

// LU factorization of a square block, rejected when numerically singular.
// The condition number is the reciprocal of Eigen's 1-norm rcond estimate.
class checked_lu {
  public:
    checked_lu(const CMatrix &a, std::string block) : block_(std::move(block)) {
        if (a.rows() != a.cols())
            throw dimension_error("block " + block_ + " is not square");
        if (a.rows() == 0) {
            condition_ = 1.0;
            return;
        }
        lu_.compute(a);
        const double rc = lu_.rcond();
        // rcond() misses exactly zero pivots, so check them directly
        const auto pivots = lu_.matrixLU().diagonal().cwiseAbs();
        const bool zero_pivot = !(pivots.minCoeff() > 0.0) || !pivots.allFinite();
        condition_ = (rc > 0.0 && std::isfinite(rc) && !zero_pivot) ? 1.0 / rc
                                                                     : std::numeric_limits<double>::infinity();
        if (!(condition_ <= kMaxConditionNumber) || !a.allFinite())
            throw singularity_error(block_, condition_);
    }

    template <typename Rhs>
    CMatrix solve(const Eigen::MatrixBase<Rhs> &rhs) const {
        if (rhs.rows() == 0)
            return CMatrix(0, rhs.cols());
        return lu_.solve(rhs);
    }

    CMatrix inverse() const {
        if (lu_.rows() == 0)
            return CMatrix(0, 0);
        return lu_.inverse();
    }

    double condition() const noexcept { return condition_; }
    const std::string &block() const noexcept { return block_; }

  private:
    std::string block_;
    Eigen::PartialPivLU<CMatrix> lu_;
    double condition_ = 1.0;
};

// Largest singular value by power iteration on A^H A.
//
// Stops when two successive estimates agree to rel_tol or after max_iter
// sweeps. The start vector is fixed, so the result is deterministic.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived> &a, double rel_tol = 1e-6, int max_iter = 200) {
    using Scalar = typename Derived::Scalar;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (a.size() == 0)
        return 0.0;
    Vec v = Vec::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
    double estimate = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const Vec av = a * v;
        const Vec w = a.adjoint() * av;
        const double wn = w.norm();
        if (wn == 0.0)
            return std::sqrt(av.squaredNorm());
        const double next = std::sqrt(wn);
        v = w / wn;
        if (it > 0 && std::abs(next - estimate) <= rel_tol * next)
            return next;
        estimate = next;
    }
    return estimate;
}

inline double relative_error(const CMatrix &value, const CMatrix &reference) {
    const double ref = reference.norm();
    const double diff = (value - reference).norm();
    return ref > 0.0 ? diff / ref : diff;
}

// Largest entrywise |a - b| / max(|b|, floor), floor = 1e-300.
inline double max_entry_relative_error(const CMatrix &value, const CMatrix &reference, double scale_floor = 0.0) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < value.rows(); ++i)
        for (Eigen::Index j = 0; j < value.cols(); ++j) {
            const double denom = std::max({std::abs(reference(i, j)), scale_floor, 1e-300});
            worst = std::max(worst, std::abs(value(i, j) - reference(i, j)) / denom);
        }
    return worst;
}

} // namespace saris

#endif // SARIS_LINALG_HPP
