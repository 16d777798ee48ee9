// Copyright 2026 The convsql Authors.
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

#ifndef CONVSQL_CLI_H_
#define CONVSQL_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace convsql {

// Entry point for the `convsql` tool. `args` excludes the program name.
// Returns 0 on success, 1 on domain errors, 2 on usage errors. Data goes
// to `out` or files; diagnostics go to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace convsql

#endif  // CONVSQL_CLI_H_
