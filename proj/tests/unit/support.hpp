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

#ifndef TLSM_TEST_SUPPORT_HPP
#define TLSM_TEST_SUPPORT_HPP

#include "tlsm/numkit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

namespace tlsm::test
{
    inline ComplexMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, double scale = 1.0)
    {
        std::normal_distribution<double> nd(0.0, scale);
        ComplexMatrix m(r, c);
        for (auto &e : m.entries())
            e = {nd(rng), nd(rng)};
        return m;
    }

    inline ComplexMatrix random_hermitian(std::mt19937_64 &rng, std::size_t n)
    {
        const ComplexMatrix a = random_matrix(rng, n, n);
        return 0.5 * (a + a.adjoint());
    }

    inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m)
    {
        Eigen::MatrixXcd e(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                e(r, c) = m(r, c);
        return e;
    }

    inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
        return d;
    }

    inline ComplexMatrix reconstruct(const SvdResult &s)
    {
        return s.u * ComplexMatrix::diagonal(std::span<const double>(s.sigma)) * s.v.adjoint();
    }
}

#endif
