# Copyright 2026 The icnfed Authors
#
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

"""Federated spatial databases over a simulated information-centric network."""

from ._icnfed import (
    AlreadyExists,
    Error,
    Federation,
    Grid,
    InvalidArgument,
    NotFound,
    ParseError,
    Point,
    Rect,
    ScenarioConfig,
    Site,
    SpatialStore,
    Tile,
    compute_smin,
    covers,
    find_max_rate,
    is_antichain,
    run_trial,
    serialize_tiles,
    synth_pois,
    tessellate,
    tessellation_cost,
    translate,
    uniform_tessellation,
)

__all__ = [
    "AlreadyExists",
    "Error",
    "Federation",
    "Grid",
    "InvalidArgument",
    "NotFound",
    "ParseError",
    "Point",
    "Rect",
    "ScenarioConfig",
    "Site",
    "SpatialStore",
    "Tile",
    "compute_smin",
    "covers",
    "find_max_rate",
    "is_antichain",
    "run_trial",
    "serialize_tiles",
    "synth_pois",
    "tessellate",
    "tessellation_cost",
    "translate",
    "uniform_tessellation",
]
