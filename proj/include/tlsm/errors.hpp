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

#ifndef TLSM_ERRORS_HPP
#define TLSM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tlsm
{
    // Invalid scenario or sweep description. CLI exit code 2.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Iteration cap reached, singular covariance, and similar. CLI exit code 3.
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class Side
    {
        tx,
        rx
    };

    inline const char *to_string(Side s) { return s == Side::tx ? "tx" : "rx"; }

    // Whitening Gram matrix of one link side is not invertible (usually a duplicate codeword).
    class RankDeficientGram : public NumericalError
    {
    public:
        RankDeficientGram(Side side, std::size_t rank, std::size_t dim)
            : NumericalError(std::string("rank-deficient ") + to_string(side) + " RF Gram matrix (rank " +
                             std::to_string(rank) + " of " + std::to_string(dim) +
                             "); check for duplicate beam patterns on the " + to_string(side) + " side"),
              side_(side) {}

        Side side() const { return side_; }

    private:
        Side side_;
    };
}

#endif
