// Copyright 2026 The chiralq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <string>
#include <vector>

namespace chiralq {

using Objective = std::function<double(std::span<const double>)>;

enum class OptimizerKind { Cobyla, NelderMead };

enum class OptimizerStatus {
  Converged,       // step size reached rho_end
  MaxEvaluations,  // evaluation budget exhausted
  RoundingError,   // simplex inverse drifted; best point returned
};

struct OptimizerOptions {
  double rho_begin = 0.5;
  double rho_end = 1e-4;
  std::size_t max_evaluations = 20000;
};

struct OptimizerResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  OptimizerStatus status = OptimizerStatus::MaxEvaluations;
  double final_rho = 0.0;
  /// Decrease of the best value during the last step-size level.
  double last_level_decrease = 0.0;
};

/// Linear-model trust-region method without constraints. Throws ComputeError
/// when the objective returns a non-finite value.
OptimizerResult minimize_cobyla(const Objective& f, std::vector<double> x0,
                                const OptimizerOptions& options = {});

OptimizerResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                     const OptimizerOptions& options = {});

OptimizerResult minimize(OptimizerKind kind, const Objective& f,
                         std::vector<double> x0,
                         const OptimizerOptions& options = {});

const char* to_string(OptimizerKind kind) noexcept;
OptimizerKind parse_optimizer_kind(const std::string& text);

}  // namespace chiralq
