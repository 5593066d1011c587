// Copyright 2026 The attrsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The attrsel command line. Kept out of main() so tests can drive it.

#ifndef ATTRSEL_TOOLS_CLI_H_
#define ATTRSEL_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace attrsel {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitThresholdUnreachable = 2;

// Environment variable naming the default datasets directory. Also used to
// resolve a bare --dataset name ("table1" -> $DIR/table1.csv).
inline constexpr char kDatasetsDirEnv[] = "ATTRSEL_DATASETS_DIR";

// |args| excludes the program name. Returns the process exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace attrsel

#endif  // ATTRSEL_TOOLS_CLI_H_
