// Copyright 2026 The Authors.
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


// Helpers shared by the experiment drivers.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "infobid/experiments.hpp"

namespace infobid::detail {

/// Row i: true-label loss gradient of sample i at `model`.
RowMatrix label_gradients(const LogisticModel& model, const Dataset& data);

void write_gradient_csv(const std::filesystem::path& path, const RowMatrix& g);

double mean(std::span<const double> v);
double stddev(std::span<const double> v);

std::string seed_tag(std::uint64_t seed);

}  // namespace infobid::detail
