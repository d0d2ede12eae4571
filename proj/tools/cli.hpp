// Copyright 2026 The AspeCiS Weaver Authors
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

#ifndef ASPECIS_TOOLS_CLI_HPP
#define ASPECIS_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace aspecis::cli {

/// Runs one `aspecis` invocation. `args` excludes the program name. Data
/// goes to `out`, diagnostics to `err`. Returns 0 on success, 1 for
/// validation or usage problems, 2 for unresolved conflicts and 3 for I/O
/// or parse failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aspecis::cli

#endif  // ASPECIS_TOOLS_CLI_HPP
