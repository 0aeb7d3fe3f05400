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
#include "cqcl/keyvalue.hpp"

#include <charconv>
#include <cmath>

#include "cqcl/error.hpp"

namespace cqcl
{
std::string_view trim(std::string_view text)
{
    auto const first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    auto const last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

KeyValueEntry const* KeyValueSection::find(std::string_view key) const
{
    for (auto const& entry : entries)
    {
        if (entry.key == key)
            return &entry;
    }
    return nullptr;
}

KeyValueDocument KeyValueDocument::parse(std::string_view text, std::string source)
{
    KeyValueDocument doc;
    doc.source_ = std::move(source);
    doc.sections_.push_back({"", 0, {}});

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        auto const eol = text.find('\n', pos);
        auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        if (auto const hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        auto const line = trim(raw);
        if (line.empty())
            continue;

        if (line.front() == '[')
        {
            if (line.back() != ']')
                fail(ErrorCode::ConfigError, doc.where(line_no) + ": unterminated section header");
            auto const name = std::string(trim(line.substr(1, line.size() - 2)));
            if (name.empty())
                fail(ErrorCode::ConfigError, doc.where(line_no) + ": empty section name");
            if (doc.section(name))
                fail(ErrorCode::ConfigError,
                     doc.where(line_no) + ": duplicate section [" + name + "]");
            doc.sections_.push_back({name, line_no, {}});
            continue;
        }

        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::ConfigError,
                 doc.where(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
        auto key = std::string(trim(line.substr(0, eq)));
        auto value = std::string(trim(line.substr(eq + 1)));
        if (key.empty())
            fail(ErrorCode::ConfigError, doc.where(line_no) + ": missing key before '='");

        auto& current = doc.sections_.back();
        if (current.find(key))
            fail(ErrorCode::ConfigError,
                 doc.where(line_no) + ": duplicate key '" + key + "' in section ["
                     + current.name + "]");
        current.entries.push_back({std::move(key), std::move(value), line_no});
    }
    return doc;
}

KeyValueSection const* KeyValueDocument::section(std::string_view name) const
{
    for (auto const& s : sections_)
    {
        if (s.name == name)
            return &s;
    }
    return nullptr;
}

std::string KeyValueDocument::where(int line) const
{
    return source_ + ":" + std::to_string(line);
}

namespace
{
[[noreturn]] void bad_field(KeyValueDocument const& doc,
                            KeyValueEntry const& entry,
                            std::string_view expected)
{
    fail(ErrorCode::ConfigError,
         doc.where(entry.line) + ": field '" + entry.key + "': expected " + std::string(expected)
             + ", got '" + entry.value + "'");
}

std::optional<double> to_double(std::string_view text)
{
    double value = 0.0;
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        return std::nullopt;
    return value;
}
} // namespace

double parse_number(KeyValueDocument const& doc, KeyValueEntry const& entry)
{
    auto const value = to_double(entry.value);
    if (!value)
        bad_field(doc, entry, "a finite number");
    return *value;
}

long long parse_integer(KeyValueDocument const& doc, KeyValueEntry const& entry)
{
    long long value = 0;
    auto const* end = entry.value.data() + entry.value.size();
    auto [ptr, ec] = std::from_chars(entry.value.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        bad_field(doc, entry, "an integer");
    return value;
}

std::vector<double> parse_number_list(KeyValueDocument const& doc, KeyValueEntry const& entry)
{
    std::vector<double> values;
    for (auto const& word : parse_word_list(entry))
    {
        auto const value = to_double(word);
        if (!value)
            bad_field(doc, entry, "a list of numbers");
        values.push_back(*value);
    }
    return values;
}

std::vector<std::string> parse_word_list(KeyValueEntry const& entry)
{
    std::vector<std::string> words;
    std::string current;
    for (char ch : entry.value)
    {
        if (ch == ',' || ch == ' ' || ch == '\t')
        {
            if (!current.empty())
                words.push_back(std::move(current));
            current.clear();
        }
        else
        {
            current.push_back(ch);
        }
    }
    if (!current.empty())
        words.push_back(std::move(current));
    return words;
}
} // namespace cqcl
