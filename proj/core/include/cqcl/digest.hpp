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

#include <filesystem>
#include <string>
#include <string_view>

namespace cqcl
{
//! Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(std::filesystem::path const& path);
} // namespace cqcl
