# Copyright 2026 The ContrastiveCrop Sim Authors.
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
"""ContrastiveCrop view sampling and Monte-Carlo harness.

Rects are (x0, y0, x1, y1) tuples in normalized image coordinates. Heatmaps
are lists of rows. Config mappings use the keys of the config-file grammar.
"""

from contrastive_crop._core import (
    BoxStore,
    InputError,
    InvariantViolation,
    PairStats,
    SceneSpec,
    compare_samplers,
    default_config,
    format_config,
    format_scenes,
    intersection_area,
    iou,
    localize,
    normalize,
    parse_config,
    parse_heatmap,
    parse_scenes,
    random_crop_can_miss,
    random_scenes,
    sample_crops,
    sampler_for_epoch,
    sweep_csv,
    update_epochs,
    validate_config,
)

__all__ = [
    "BoxStore",
    "InputError",
    "InvariantViolation",
    "PairStats",
    "SceneSpec",
    "compare_samplers",
    "default_config",
    "format_config",
    "format_scenes",
    "intersection_area",
    "iou",
    "localize",
    "normalize",
    "parse_config",
    "parse_heatmap",
    "parse_scenes",
    "random_crop_can_miss",
    "random_scenes",
    "sample_crops",
    "sampler_for_epoch",
    "sweep_csv",
    "update_epochs",
    "validate_config",
]
