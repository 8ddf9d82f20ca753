// Copyright 2026 The qtnec Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace qtnec::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "qtnec.result/1";

enum ExitCode : int { kOk = 0, kInputError = 2, kSemanticFailure = 3 };

/// Runs one command line (args excludes the program name). Results go to
/// `out` (or the --out file); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtnec::cli
