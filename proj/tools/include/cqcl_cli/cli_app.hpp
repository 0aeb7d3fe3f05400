// Copyright 2026 The cqcl Authors
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

namespace cqcl::cli
{
enum ExitCode : int
{
    exit_ok = 0,
    exit_config = 2,
    exit_physics = 3,
    exit_io = 4,
};

//! Entry point of the cqcl tool; returns the process exit code.
int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);
} // namespace cqcl::cli
