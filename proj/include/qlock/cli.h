// Copyright 2026 The qlock Authors
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

#ifndef QLOCK_CLI_H
#define QLOCK_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace qlock {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitNumerical = 2,
};

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

struct IntRange {
    long long start = 0;
    long long stop = 0;
    long long step = 1;

    std::vector<long long> values() const;
};

/// Parses "start:stop:step" (stop exclusive), "start:stop" or a single integer.
IntRange parse_range(const std::string &text);

}  // namespace qlock

#endif
