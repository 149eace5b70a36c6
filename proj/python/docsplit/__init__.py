# Copyright 2026 The DocSplit Authors.
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

"""Python bindings for the docsplit core library."""

from docsplit._core import (
    GenerationError,
    ValidationError,
    generate,
    kendall_tau_b,
    normalize_type_code,
    prompt,
    rand_index,
    score,
    selftest,
    synthetic_corpus,
    taxonomy,
    v_measure,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "GenerationError",
    "ValidationError",
    "generate",
    "kendall_tau_b",
    "normalize_type_code",
    "prompt",
    "rand_index",
    "score",
    "selftest",
    "synthetic_corpus",
    "taxonomy",
    "v_measure",
    "validate",
]
