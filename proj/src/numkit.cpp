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

#include "tlsm/numkit.hpp"
#include "tlsm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tlsm
{
    namespace
    {
        constexpr int kMaxSweeps = 100;
        constexpr double kOffDiagTol = 1e-14;
        constexpr double kNegligible = 1e-30;

        void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what)
        {
            if (a.rows() != b.rows() || a.cols() != b.cols())
                throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
        }

        // Multiply column c of m by s.
        void scale_column(ComplexMatrix &m, std::size_t c, cx s)
        {
            for (std::size_t r = 0; r < m.rows(); ++r)
                m(r, c) *= s;
        }

        // Rotate column c so its first component with |x| > 1e-12 * max|x| is real >= 0.
        // Returns the applied unit factor.
        cx normalize_phase(ComplexMatrix &m, std::size_t c)
        {
            double colmax = 0.0;
            for (std::size_t r = 0; r < m.rows(); ++r)
                colmax = std::max(colmax, std::abs(m(r, c)));
            if (colmax == 0.0)
                return 1.0;
            for (std::size_t r = 0; r < m.rows(); ++r)
            {
                const double mag = std::abs(m(r, c));
                if (mag > 1e-12 * colmax)
                {
                    const cx f = std::conj(m(r, c)) / mag;
                    scale_column(m, c, f);
                    m(r, c) = mag;
                    return f;
                }
            }
            return 1.0;
        }

        std::vector<std::size_t> descending_order(const std::vector<double> &v)
        {
            std::vector<std::size_t> idx(v.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
            return idx;
        }

        ComplexMatrix permute_columns(const ComplexMatrix &m, const std::vector<std::size_t> &order)
        {
            ComplexMatrix out(m.rows(), m.cols());
            for (std::size_t k = 0; k < order.size(); ++k)
                for (std::size_t r = 0; r < m.rows(); ++r)
                    out(r, k) = m(r, order[k]);
            return out;
        }

        double column_norm_sq(const ComplexMatrix &m, std::size_t c)
        {
            double s = 0.0;
            for (std::size_t r = 0; r < m.rows(); ++r)
                s += std::norm(m(r, c));
            return s;
        }

        // Replace columns flagged in `missing` by unit vectors orthogonal to all others
        // (modified Gram-Schmidt against the canonical basis, two passes).
        void complete_orthonormal_basis(ComplexMatrix &u, const std::vector<bool> &missing)
        {
            const std::size_t n = u.rows();
            std::size_t candidate = 0;
            for (std::size_t k = 0; k < u.cols(); ++k)
            {
                if (!missing[k])
                    continue;
                bool placed = false;
                while (!placed && candidate < n)
                {
                    ComplexVector e(n, 0.0);
                    e[candidate++] = 1.0;
                    for (int pass = 0; pass < 2; ++pass)
                        for (std::size_t j = 0; j < u.cols(); ++j)
                        {
                            if (j == k || (missing[j] && j > k))
                                continue;
                            cx proj = 0.0;
                            for (std::size_t r = 0; r < n; ++r)
                                proj += std::conj(u(r, j)) * e[r];
                            for (std::size_t r = 0; r < n; ++r)
                                e[r] -= proj * u(r, j);
                        }
                    double nrm = 0.0;
                    for (const cx &x : e)
                        nrm += std::norm(x);
                    nrm = std::sqrt(nrm);
                    if (nrm > 1e-8)
                    {
                        for (std::size_t r = 0; r < n; ++r)
                            u(r, k) = e[r] / nrm;
                        placed = true;
                    }
                }
                if (!placed)
                    throw NumericalError("svd: unable to complete orthonormal basis");
            }
        }
    }

    // ------------------------------------------------------------------------
    // ComplexMatrix

    ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols)
    {
        if (cols != 0 && rows > std::numeric_limits<std::size_t>::max() / cols)
            throw std::length_error("ComplexMatrix: dimension overflow");
        data_.assign(rows * cols, cx(0.0, 0.0));
    }

    ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows * cols)
            throw std::invalid_argument("ComplexMatrix: entry count does not match rows x cols");
    }

    ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cx>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows)
        {
            if (row.size() != cols_)
                throw std::invalid_argument("ComplexMatrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    ComplexMatrix ComplexMatrix::identity(std::size_t n)
    {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d)
    {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    ComplexMatrix ComplexMatrix::diagonal(std::span<const cx> d)
    {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    ComplexMatrix ComplexMatrix::column(std::span<const cx> v)
    {
        return ComplexMatrix(v.size(), 1, std::vector<cx>(v.begin(), v.end()));
    }

    ComplexMatrix ComplexMatrix::adjoint() const
    {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    ComplexMatrix ComplexMatrix::transpose() const
    {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = (*this)(r, c);
        return out;
    }

    ComplexMatrix ComplexMatrix::conj() const
    {
        ComplexMatrix out = *this;
        for (cx &x : out.data_)
            x = std::conj(x);
        return out;
    }

    ComplexVector ComplexMatrix::col(std::size_t c) const
    {
        ComplexVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o)
    {
        require_same_shape(*this, o, "operator+");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o)
    {
        require_same_shape(*this, o, "operator-");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix &ComplexMatrix::operator*=(cx s)
    {
        for (cx &x : data_)
            x *= s;
        return *this;
    }

    ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }
    ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }

    ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        if (a.cols() != b.rows())
            throw std::invalid_argument("matrix product: inner dimensions differ (" + std::to_string(a.cols()) +
                                        " vs " + std::to_string(b.rows()) + ")");
        ComplexMatrix out(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
            {
                const cx aik = a(i, k);
                if (aik == cx(0.0, 0.0))
                    continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    ComplexVector operator*(const ComplexMatrix &a, std::span<const cx> v)
    {
        if (a.cols() != v.size())
            throw std::invalid_argument("matrix-vector product: dimension mismatch");
        ComplexVector out(a.rows(), 0.0);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
                out[i] += a(i, k) * v[k];
        return out;
    }

    cx dot_transpose(std::span<const cx> a, std::span<const cx> b)
    {
        if (a.size() != b.size())
            throw std::invalid_argument("dot_transpose: length mismatch");
        cx s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s;
    }

    // ------------------------------------------------------------------------
    // Kernels

    ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        constexpr auto max = std::numeric_limits<std::size_t>::max();
        if ((b.rows() != 0 && a.rows() > max / b.rows()) || (b.cols() != 0 && a.cols() > max / b.cols()))
            throw std::length_error("kron: result dimension overflow");
        ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
            {
                const cx aij = a(i, j);
                for (std::size_t k = 0; k < b.rows(); ++k)
                    for (std::size_t l = 0; l < b.cols(); ++l)
                        out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
            }
        return out;
    }

    double frobenius_norm_sq(const ComplexMatrix &a)
    {
        double s = 0.0;
        for (const cx &x : a.entries())
            s += std::norm(x);
        return s;
    }

    double frobenius_norm(const ComplexMatrix &a) { return std::sqrt(frobenius_norm_sq(a)); }

    cx trace(const ComplexMatrix &a)
    {
        if (!a.is_square())
            throw std::invalid_argument("trace: matrix is not square");
        cx s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            s += a(i, i);
        return s;
    }

    bool is_hermitian(const ComplexMatrix &a, double tol)
    {
        if (!a.is_square())
            return false;
        double diff = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                diff += std::norm(a(r, c) - std::conj(a(c, r)));
        return std::sqrt(diff) <= tol * frobenius_norm(a);
    }

    HermEigResult herm_eig(const ComplexMatrix &input)
    {
        if (!input.is_square())
            throw std::invalid_argument("herm_eig: matrix is not square");
        if (!is_hermitian(input))
            throw std::invalid_argument("herm_eig: matrix is not Hermitian");

        const std::size_t n = input.rows();
        ComplexMatrix a = input;
        // Work on the exactly Hermitian part.
        for (std::size_t r = 0; r < n; ++r)
        {
            a(r, r) = a(r, r).real();
            for (std::size_t c = r + 1; c < n; ++c)
            {
                cx m = 0.5 * (a(r, c) + std::conj(a(c, r)));
                a(r, c) = m;
                a(c, r) = std::conj(m);
            }
        }
        ComplexMatrix v = ComplexMatrix::identity(n);
        const double total = frobenius_norm(a);

        auto off_mass = [&]() {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (r != c)
                        s += std::norm(a(r, c));
            return std::sqrt(s);
        };

        bool converged = false;
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep)
        {
            if (off_mass() <= kOffDiagTol * total)
            {
                converged = true;
                break;
            }
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                {
                    const double mag = std::abs(a(p, q));
                    if (mag == 0.0)
                        continue;
                    const cx phase = a(p, q) / mag; // e^{i phi}
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double zeta = (aqq - app) / (2.0 * mag);
                    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = c * t;

                    // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on (p, q)
                    const cx jpp = c;
                    const cx jpq = s;
                    const cx jqp = -s * std::conj(phase);
                    const cx jqq = c * std::conj(phase);

                    for (std::size_t i = 0; i < n; ++i) // A <- A J
                    {
                        const cx aip = a(i, p), aiq = a(i, q);
                        a(i, p) = aip * jpp + aiq * jqp;
                        a(i, q) = aip * jpq + aiq * jqq;
                    }
                    for (std::size_t i = 0; i < n; ++i) // A <- J^H A
                    {
                        const cx api = a(p, i), aqi = a(q, i);
                        a(p, i) = std::conj(jpp) * api + std::conj(jqp) * aqi;
                        a(q, i) = std::conj(jpq) * api + std::conj(jqq) * aqi;
                    }
                    for (std::size_t i = 0; i < n; ++i) // V <- V J
                    {
                        const cx vip = v(i, p), viq = v(i, q);
                        v(i, p) = vip * jpp + viq * jqp;
                        v(i, q) = vip * jpq + viq * jqq;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = a(p, p).real();
                    a(q, q) = a(q, q).real();
                }
        }
        if (!converged && off_mass() > kOffDiagTol * total)
            throw NumericalError("herm_eig: no convergence after " + std::to_string(kMaxSweeps) + " sweeps");

        std::vector<double> lambda(n);
        for (std::size_t i = 0; i < n; ++i)
            lambda[i] = a(i, i).real();
        const auto order = descending_order(lambda);
        HermEigResult out;
        out.eigenvalues.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            out.eigenvalues[k] = lambda[order[k]];
        out.eigenvectors = permute_columns(v, order);
        for (std::size_t k = 0; k < n; ++k)
            normalize_phase(out.eigenvectors, k);
        return out;
    }

    SvdResult svd(const ComplexMatrix &a)
    {
        if (!a.is_square())
            throw std::invalid_argument("svd: only square matrices are supported");
        for (const cx &x : a.entries())
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
                throw std::invalid_argument("svd: non-finite entry");

        const std::size_t n = a.rows();
        ComplexMatrix w = a;
        ComplexMatrix v = ComplexMatrix::identity(n);

        // pairs of columns that are both numerically zero are left alone
        const double floor = kNegligible * frobenius_norm_sq(a);
        bool converged = n < 2;
        for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep)
        {
            bool rotated = false;
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                {
                    double alpha = 0.0, beta = 0.0;
                    cx gamma = 0.0;
                    for (std::size_t i = 0; i < n; ++i)
                    {
                        alpha += std::norm(w(i, p));
                        beta += std::norm(w(i, q));
                        gamma += std::conj(w(i, p)) * w(i, q);
                    }
                    const double g = std::abs(gamma);
                    if (g <= floor || g <= kOffDiagTol * std::sqrt(alpha * beta))
                        continue;
                    rotated = true;

                    // Make <w_p, w_q> real positive, then apply a real Jacobi rotation.
                    const cx unphase = std::conj(gamma) / g;
                    const double zeta = (beta - alpha) / (2.0 * g);
                    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = c * t;
                    for (std::size_t i = 0; i < n; ++i)
                    {
                        const cx wp = w(i, p), wq = w(i, q) * unphase;
                        w(i, p) = c * wp - s * wq;
                        w(i, q) = s * wp + c * wq;
                        const cx vp = v(i, p), vq = v(i, q) * unphase;
                        v(i, p) = c * vp - s * vq;
                        v(i, q) = s * vp + c * vq;
                    }
                }
            converged = !rotated;
        }
        if (!converged)
            throw NumericalError("svd: no convergence after " + std::to_string(kMaxSweeps) + " sweeps");

        std::vector<double> sigma(n);
        for (std::size_t k = 0; k < n; ++k)
            sigma[k] = std::sqrt(column_norm_sq(w, k));
        const auto order = descending_order(sigma);

        SvdResult out;
        out.sigma.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            out.sigma[k] = sigma[order[k]];
        out.v = permute_columns(v, order);
        ComplexMatrix wsorted = permute_columns(w, order);

        const double sigma_max = n ? out.sigma.front() : 0.0;
        const double zero_tol = 1e-13 * sigma_max;
        out.u = ComplexMatrix(n, n);
        std::vector<bool> missing(n, false);
        for (std::size_t k = 0; k < n; ++k)
        {
            if (out.sigma[k] <= zero_tol || out.sigma[k] == 0.0)
            {
                missing[k] = true;
                continue;
            }
            for (std::size_t i = 0; i < n; ++i)
                out.u(i, k) = wsorted(i, k) / out.sigma[k];
        }
        if (std::find(missing.begin(), missing.end(), true) != missing.end())
            complete_orthonormal_basis(out.u, missing);

        for (std::size_t k = 0; k < n; ++k)
        {
            const cx f = normalize_phase(out.v, k);
            if (!missing[k])
                scale_column(out.u, k, f);
        }
        return out;
    }

    InvSqrtResult inv_sqrt_psd(const ComplexMatrix &a, double eps)
    {
        if (!a.is_square())
            throw std::invalid_argument("inv_sqrt_psd: matrix is not square");
        if (!is_hermitian(a))
            throw std::invalid_argument("inv_sqrt_psd: matrix is not Hermitian");

        const HermEigResult eig = herm_eig(a);
        const std::size_t n = a.rows();
        const double lmax = n ? std::max(eig.eigenvalues.front(), 0.0) : 0.0;
        const double neg_tol = 1e-10 * lmax;

        InvSqrtResult out;
        out.dimension = n;
        std::vector<double> scale(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
        {
            const double lambda = eig.eigenvalues[k];
            if (lambda < -neg_tol)
                throw std::domain_error("inv_sqrt_psd: negative eigenvalue " + std::to_string(lambda));
            if (lmax > 0.0 && lambda > eps * lmax)
            {
                scale[k] = 1.0 / std::sqrt(lambda);
                ++out.rank;
            }
        }
        out.matrix = ComplexMatrix(n, n);
        const ComplexMatrix &v = eig.eigenvectors;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
            {
                cx s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += v(r, k) * scale[k] * std::conj(v(c, k));
                out.matrix(r, c) = s;
            }
        return out;
    }
}
