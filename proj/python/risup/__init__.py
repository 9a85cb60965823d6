# risup: link-level simulation of multi-RIS-aided multi-user uplinks
# Copyright (C) 2026 The risup authors
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

"""Python front end for the risup simulation core.

Configurations are passed as dicts (or JSON text) in the same schema the
command-line tool reads.
"""

import json as _json

from . import _risup
from ._risup import (  # noqa: F401
    Channel,
    ConfigError,
    GammaFit,
    anchor_phases,
    cdf_ak,
    coherent_gain,
    effective_channel,
    gain_ideal,
    gen_gamma_pdf,
    jr_optimize,
    los_pathloss_db,
    noise_power_watts,
    outage_or,
    outage_su,
    run_scheme,
    umi_pathloss_db,
)

__version__ = _risup.__version__


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def canonical_config(config):
    return _json.loads(_risup.canonical_config(_text(config)))


def config_hash(config):
    return _risup.config_hash(_text(config))


def draw_channel(config, point=0, trial=0, stream=0):
    return _risup.draw_channel(_text(config), point, trial, stream)


def fit_users(config):
    return _risup.fit_users(_text(config))


def outage_ir_upper_bound(fits, r0, snr, samples=100000, seed=0):
    return _risup.outage_ir_upper_bound(fits, r0, snr, samples, seed)


def run_sweep(config, threads=0):
    """Outage curves keyed by scheme name."""
    curves = _risup.run_sweep(_text(config), threads)
    return {c["scheme"]: c["points"] for c in curves}
