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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqcl
{
enum class ErrorCode
{
    // medium
    OutOfRange,
    NearResonance,
    NegativeEnergy,
    BelowThreshold,
    // emitter
    UnsupportedVariant,
    GridTooCoarse,
    GridTooNarrow,
    NonPositiveRadius,
    TruncationFailure,
    // radiation
    OutOfWindow,
    DegenerateEnvelope,
    // reconstruction
    FitFailure,
    IllConditioned,
    NegativeVariance,
    NondispersiveDivergence,
    // oracle
    TooLarge,
    // generic precondition violations
    InvalidArgument,
    // scenario / io
    ConfigError,
    IoError,
    FormatError,
};

//! Coarse grouping used to pick CLI exit codes.
enum class ErrorCategory
{
    Physics,
    Config,
    Io,
};

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

//! Single exception type; the code identifies the failure mode.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, std::string const& message);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, std::string const& message);
} // namespace cqcl
