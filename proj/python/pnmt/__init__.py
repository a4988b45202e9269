# Copyright 2026 The pnmt Authors.
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


"""Phonetic encodings, subword segmentation and embedding geometry."""

from pnmt._core import (
    BpeModel,
    PnmtError,
    __version__,
    bleu,
    concentration_factor,
    convex_hull,
    density,
    directory_digest,
    edit_distance,
    encode,
    hull_volume,
    kmeans,
    metaphone,
    nysiis,
    pca_project,
    perturb,
    random_cluster,
    run_pipeline,
    soundex,
    train_embeddings,
)

__all__ = [
    "BpeModel",
    "PnmtError",
    "__version__",
    "bleu",
    "concentration_factor",
    "convex_hull",
    "density",
    "directory_digest",
    "edit_distance",
    "encode",
    "hull_volume",
    "kmeans",
    "metaphone",
    "nysiis",
    "pca_project",
    "perturb",
    "random_cluster",
    "run_pipeline",
    "soundex",
    "train_embeddings",
]
