// SPDX-License-Identifier: Apache-2.0
//
// tlsm: two-level spatial multiplexing link simulator for mmWave backhaul
// Copyright (C) 2026 The tlsm authors
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

#ifndef TLSM_NUMKIT_HPP
#define TLSM_NUMKIT_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tlsm
{
    using cx = std::complex<double>;
    using ComplexVector = std::vector<cx>;

    // Dense complex matrix, row-major storage.
    class ComplexMatrix
    {
    public:
        ComplexMatrix() = default;
        ComplexMatrix(std::size_t rows, std::size_t cols);
        ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries);
        ComplexMatrix(std::initializer_list<std::initializer_list<cx>> rows);

        static ComplexMatrix identity(std::size_t n);
        static ComplexMatrix diagonal(std::span<const double> d);
        static ComplexMatrix diagonal(std::span<const cx> d);
        static ComplexMatrix column(std::span<const cx> v);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        std::size_t size() const { return data_.size(); }
        bool empty() const { return data_.empty(); }
        bool is_square() const { return rows_ == cols_; }

        cx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const cx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        std::span<cx> entries() { return data_; }
        std::span<const cx> entries() const { return data_; }

        ComplexMatrix adjoint() const;
        ComplexMatrix transpose() const;
        ComplexMatrix conj() const;
        ComplexVector col(std::size_t c) const;

        ComplexMatrix &operator+=(const ComplexMatrix &o);
        ComplexMatrix &operator-=(const ComplexMatrix &o);
        ComplexMatrix &operator*=(cx s);

        bool operator==(const ComplexMatrix &o) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cx> data_;
    };

    ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
    ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
    ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    ComplexMatrix operator*(cx s, ComplexMatrix a);
    ComplexMatrix operator*(ComplexMatrix a, cx s);
    ComplexVector operator*(const ComplexMatrix &a, std::span<const cx> v);

    // Unconjugated bilinear product a^T b.
    cx dot_transpose(std::span<const cx> a, std::span<const cx> b);

    struct SvdResult
    {
        ComplexMatrix u;
        std::vector<double> sigma; // descending, nonnegative
        ComplexMatrix v;
    };

    struct HermEigResult
    {
        std::vector<double> eigenvalues; // descending
        ComplexMatrix eigenvectors;      // column k pairs with eigenvalues[k]
    };

    struct InvSqrtResult
    {
        ComplexMatrix matrix;
        std::size_t rank = 0;     // eigenvalues above the threshold
        std::size_t dimension = 0;
        bool full_rank() const { return rank == dimension; }
    };

    // Kronecker product; block (i,j) of the result is a(i,j) * b.
    ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

    double frobenius_norm_sq(const ComplexMatrix &a);
    double frobenius_norm(const ComplexMatrix &a);
    cx trace(const ComplexMatrix &a);

    // ||a - a^H||_F <= tol * ||a||_F
    bool is_hermitian(const ComplexMatrix &a, double tol = 1e-10);

    // Cyclic Jacobi. Eigenvalues descending; each eigenvector scaled so its first
    // nonzero component is real and nonnegative.
    // Throws std::invalid_argument for non-square or non-Hermitian input and
    // NumericalError when 100 sweeps do not bring the off-diagonal mass below
    // 1e-14 relative.
    HermEigResult herm_eig(const ComplexMatrix &a);

    // One-sided (Hestenes) Jacobi SVD of a square matrix.
    // Singular values descending. The first nonzero component of every right
    // singular vector is real and nonnegative; left vectors follow, and left
    // vectors of (numerically) zero singular values complete an orthonormal basis.
    SvdResult svd(const ComplexMatrix &a);

    // Inverse square root of a Hermitian PSD matrix. Eigenvalues <= eps * lambda_max
    // are treated as zero (left out of the inverse) and lower the reported rank.
    // Throws std::invalid_argument for non-Hermitian input, std::domain_error
    // for eigenvalues below -1e-10 * lambda_max.
    InvSqrtResult inv_sqrt_psd(const ComplexMatrix &a, double eps = 1e-12);
}

#endif
