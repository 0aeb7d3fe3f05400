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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqcl
{
//---------------------------------------------------------------------------//
/*!
 * Line-oriented key-value text with section headers.
 *
 *     # comment            (also after a value: `key = 1  # note`)
 *     [section]
 *     key = value
 *
 * Keys are unique within a section and sections are unique within a
 * document. Every entry remembers its line so schema errors can point at it.
 */
struct KeyValueEntry
{
    std::string key;
    std::string value;
    int line = 0;
};

struct KeyValueSection
{
    std::string name;
    int line = 0;
    std::vector<KeyValueEntry> entries;

    KeyValueEntry const* find(std::string_view key) const;
};

class KeyValueDocument
{
  public:
    static KeyValueDocument parse(std::string_view text, std::string source);

    std::vector<KeyValueSection> const& sections() const { return sections_; }
    KeyValueSection const* section(std::string_view name) const;
    std::string const& source() const { return source_; }

    //! "source:line: message"
    std::string where(int line) const;

  private:
    std::string source_;
    std::vector<KeyValueSection> sections_;
};

// Typed accessors; all throw ConfigError naming the source, line and field.
double parse_number(KeyValueDocument const& doc, KeyValueEntry const& entry);
long long parse_integer(KeyValueDocument const& doc, KeyValueEntry const& entry);
std::vector<double> parse_number_list(KeyValueDocument const& doc, KeyValueEntry const& entry);
std::vector<std::string> parse_word_list(KeyValueEntry const& entry);

std::string_view trim(std::string_view text);
} // namespace cqcl
