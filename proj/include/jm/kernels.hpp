// Copyright 2026 The jm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "jm/operator.hpp"

/// Data-parallel building blocks. Every kernel has a serial reference path
/// selected by Exec::Serial; the OpenMP path must produce bitwise-identical
/// results because each index writes only its own output slot.
namespace jm::kernels {

enum class Exec { Serial, Parallel };

/// Runs body(i) for i in [0, n). With Exec::Parallel the iterations are
/// distributed over OpenMP threads. If any iteration throws, the exception
/// from the lowest failing index is rethrown after the loop.
void for_each_index(Exec exec, std::size_t n, const std::function<void(std::size_t)>& body);

/// Replaces m by its PSD part (negative eigenvalues set to zero) and returns
/// the magnitude of the most negative eigenvalue that was removed (0 if none).
double clip_psd_inplace(Matrix& m);

/// Batched clip_psd_inplace; returns the max removed magnitude over the batch.
double clip_psd_batch(std::span<Matrix> cells, Exec exec);

/// Smallest eigenvalue of a Hermitian matrix without constructing a
/// HermitianOperator (closed form at dimension 2).
double min_eigenvalue_raw(const Matrix& m);
double max_eigenvalue_raw(const Matrix& m);

int max_threads();

}  // namespace jm::kernels
