// Copyright 2026 The swsl authors. All rights reserved.
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

#ifndef SWSL_TOOLS_RUN_CONFIG_HPP_
#define SWSL_TOOLS_RUN_CONFIG_HPP_

#include <filesystem>
#include <string>

#include "swsl/model.hpp"

namespace swsl::tools {

// Structured run configuration shared by train/cv/benchmark. JSON sections
// "kernel", "graph", "solver" and "svm" are all optional; unknown keys are
// rejected. kernel.gamma and solver.lambda3 accept the string "auto".
TrainSettings settings_from_json(const std::string& text);
TrainSettings load_settings(const std::filesystem::path& path);

}  // namespace swsl::tools

#endif  // SWSL_TOOLS_RUN_CONFIG_HPP_
