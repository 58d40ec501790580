# Copyright 2026 The Hullkit Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for hullkit.

Errors raised by the core library surface as ``HullkitError`` (a
``ValueError``); ``err.args`` is ``(message, code_name)``.
"""

from ._hullkit import (
    FacetSystem,
    HullkitError,
    Instance,
    choose_one_lowerbound,
    facets,
    generate_best_subset,
    generate_gmrf,
    hull_2x2_facets,
    rank_one_lowerbound,
    separate,
    solve,
    technical_condition,
    vertices,
)

__all__ = [
    "FacetSystem",
    "HullkitError",
    "Instance",
    "choose_one_lowerbound",
    "facets",
    "generate_best_subset",
    "generate_gmrf",
    "hull_2x2_facets",
    "rank_one_lowerbound",
    "separate",
    "solve",
    "technical_condition",
    "vertices",
]
