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

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cqcl/radiation.hpp"

namespace cqcl
{
//! Ordered key-value metadata carried by matrix files.
class MatrixMetadata
{
  public:
    void set(std::string key, std::string value);
    void set(std::string key, double value);
    std::string const* find(std::string_view key) const;
    std::string const& get(std::string_view key) const;
    double number(std::string_view key) const;
    std::vector<std::pair<std::string, std::string>> const& entries() const { return entries_; }

    friend bool operator==(MatrixMetadata const&, MatrixMetadata const&) = default;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct MatrixFile
{
    Eigen::MatrixXcd data;
    MatrixMetadata meta;
};

enum class MatrixFormat
{
    Text,
    Binary,
};

MatrixFormat matrix_format_from_string(std::string_view tag);
std::string_view to_string(MatrixFormat format);
std::string_view file_extension(MatrixFormat format);

inline constexpr char binary_magic[4] = {'C', 'Q', 'C', 'L'};
inline constexpr std::uint16_t binary_version = 1;

/*!
 * Text layout: '#' header lines ("# key = value"), then one line per row
 * with 2N numbers "re im re im ...", printed with 17 significant digits.
 */
std::string encode_matrix_text(MatrixFile const& file);
MatrixFile decode_matrix_text(std::string_view text, std::string_view source = "<text>");

/*!
 * Binary layout, little-endian: "CQCL", u16 version, u32 N, N*N row-major
 * (re, im) f64 pairs, u32 metadata byte count, metadata as "key=value\n".
 */
std::string encode_matrix_binary(MatrixFile const& file);
MatrixFile decode_matrix_binary(std::string_view bytes, std::string_view source = "<binary>");

void write_matrix(std::filesystem::path const& path, MatrixFile const& file, MatrixFormat format);
//! Format is detected from the leading magic bytes.
MatrixFile read_matrix(std::filesystem::path const& path);

std::string read_file(std::filesystem::path const& path);
void write_file(std::filesystem::path const& path, std::string_view bytes);

MatrixFile to_matrix_file(PhotonDensityMatrix const& pdm);
PhotonDensityMatrix pdm_from_matrix_file(MatrixFile const& file);
MatrixFile to_matrix_file(ShockwaveProfile const& profile);
} // namespace cqcl
