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
#include "cqcl/error.hpp"

namespace cqcl
{
std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NearResonance: return "NearResonance";
        case ErrorCode::NegativeEnergy: return "NegativeEnergy";
        case ErrorCode::BelowThreshold: return "BelowThreshold";
        case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::GridTooNarrow: return "GridTooNarrow";
        case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
        case ErrorCode::TruncationFailure: return "TruncationFailure";
        case ErrorCode::OutOfWindow: return "OutOfWindow";
        case ErrorCode::DegenerateEnvelope: return "DegenerateEnvelope";
        case ErrorCode::FitFailure: return "FitFailure";
        case ErrorCode::IllConditioned: return "IllConditioned";
        case ErrorCode::NegativeVariance: return "NegativeVariance";
        case ErrorCode::NondispersiveDivergence: return "NondispersiveDivergence";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::FormatError: return "FormatError";
    }
    return "Unknown";
}

ErrorCategory category(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::ConfigError: return ErrorCategory::Config;
        case ErrorCode::IoError:
        case ErrorCode::FormatError: return ErrorCategory::Io;
        default: return ErrorCategory::Physics;
    }
}

Error::Error(ErrorCode code, std::string const& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

void fail(ErrorCode code, std::string const& message)
{
    throw Error(code, message);
}
} // namespace cqcl
