# Copyright 2026 The Sectorsim Authors
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

"""Python front end for the sectorsim library.

States, operators, models and specifications are plain dicts in the JSON
schemas used by the command-line tool.
"""

import json

from . import _sectorsim
from ._sectorsim import SectorsimError

__all__ = [
    "SectorsimError",
    "classify_product",
    "same_sector",
    "truncated_overlap",
    "overlap_sweep",
    "expectation_sweep",
    "sector_action",
    "truncated_density",
    "decoherence_horizon",
    "sample_counts",
    "spin_sweep",
    "run_cascade",
    "run_cli",
]


def _enc(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def classify_product(spec, budget=100000, tol=1e-10):
    return json.loads(_sectorsim.classify_product(_enc(spec), budget, tol))


def same_sector(a, b):
    return json.loads(_sectorsim.same_sector(_enc(a), _enc(b)))


def truncated_overlap(a, b, n):
    return _sectorsim.truncated_overlap(_enc(a), _enc(b), n)


def overlap_sweep(a, b, n_max):
    """Rows of (N, overlap, log10 |overlap|)."""
    return _sectorsim.overlap_sweep(_enc(a), _enc(b), n_max)


def expectation_sweep(op, state, n_max):
    return _sectorsim.expectation_sweep(_enc(op), _enc(state), n_max)


def sector_action(op, state):
    """(kind, reason) for the action of op on the sector of state."""
    return _sectorsim.sector_action(_enc(op), _enc(state))


def truncated_density(model, n):
    return _sectorsim.truncated_density(_enc(model), n)


def decoherence_horizon(model, eps):
    return _sectorsim.decoherence_horizon(_enc(model), eps)


def sample_counts(model, shots, seed):
    return _sectorsim.sample_counts(_enc(model), shots, seed)


def spin_sweep(xi, n_max):
    """Rows of (N, overlap, log10 overlap, probability)."""
    return _sectorsim.spin_sweep(str(xi), n_max)


def run_cascade(spec, seed):
    return json.loads(_sectorsim.run_cascade(_enc(spec), seed))


def run_cli(args):
    """(exit code, stdout, stderr) of one command-line invocation."""
    return _sectorsim.run_cli(list(args))
