# Copyright 2026 The certmarket Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Certification markets with noisy tests.

Thin wrapper over the C++ engine. Levels and outcome indices are 0-based.
"""

from ._core import (
    CertmarketError,
    Environment,
    EquilibriumReport,
    Market,
    NoisyVsAccurate,
    OffEqPolicy,
    SlopeReport,
    ThresholdProfile,
    TwoTypeRegion,
    accurate_level,
    beliefs,
    bertrand,
    equilibria,
    estimate_loss_aversion,
    ex_ante_profit,
    joint_gross_profit,
    loss_term_slope,
    loss_term_slope_fd,
    noisy_vs_accurate,
    run_cli,
    two_type_region,
    verify,
)

__all__ = [
    "CertmarketError",
    "Environment",
    "EquilibriumReport",
    "Market",
    "NoisyVsAccurate",
    "OffEqPolicy",
    "SlopeReport",
    "ThresholdProfile",
    "TwoTypeRegion",
    "accurate_level",
    "beliefs",
    "bertrand",
    "equilibria",
    "estimate_loss_aversion",
    "ex_ante_profit",
    "joint_gross_profit",
    "loss_term_slope",
    "loss_term_slope_fd",
    "noisy_vs_accurate",
    "run_cli",
    "two_type_region",
    "verify",
]
