# SPDX-License-Identifier: Apache-2.0
#
# tlsm: two-level spatial multiplexing link simulator for mmWave backhaul
# Copyright (C) 2026 The tlsm authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Two-path line-of-sight MIMO with subarray hybrid beamforming.

The compiled core lives in ``tlsm._core``. ``tlsm.figures`` only needs CSV files
and works without it.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import ConfigError, NumericalError  # noqa: F401
except ImportError:  # figures-only install
    pass

__version__ = "0.1.0"
