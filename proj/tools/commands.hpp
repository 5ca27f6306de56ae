/*
 * Copyright 2026 The cmpg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <vector>

namespace cmpg::cli {

enum ExitCode : int {
    Ok = 0,
    ClaimFailed = 1,
    InputError = 2,
    InternalError = 3,
};

struct CommandResult
{
    int exit_code = Ok;
    std::string out;
    std::string err;
};

/// Runs one command line (without the program name).
CommandResult run(const std::vector<std::string>& args);

} // namespace cmpg::cli
