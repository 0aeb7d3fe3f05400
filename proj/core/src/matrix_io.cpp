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
#include "cqcl/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cqcl/error.hpp"
#include "cqcl/keyvalue.hpp"

namespace cqcl
{
namespace
{
std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view s, std::string_view where)
{
    double v = 0.0;
    auto const* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        fail(ErrorCode::FormatError, std::string(where) + ": bad number '" + std::string(s) + "'");
    return v;
}

void put_u16(std::string& out, std::uint16_t v)
{
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v)
{
    auto const bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader
{
  public:
    Reader(std::string_view bytes, std::string_view source) : bytes_(bytes), source_(source) {}

    std::uint64_t uint(int width)
    {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += static_cast<std::size_t>(width);
        return v;
    }
    double f64() { return std::bit_cast<double>(uint(8)); }
    std::string_view take(std::size_t n)
    {
        need(n);
        auto s = bytes_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == bytes_.size(); }

  private:
    void need(std::size_t n) const
    {
        if (bytes_.size() - pos_ < n)
            fail(ErrorCode::FormatError, std::string(source_) + ": truncated binary matrix");
    }
    std::string_view bytes_;
    std::string_view source_;
    std::size_t pos_ = 0;
};

void check_meta_text(std::string const& key, std::string const& value)
{
    if (key.empty() || key.find_first_of("=\n# ") != std::string::npos
        || value.find('\n') != std::string::npos)
        fail(ErrorCode::InvalidArgument, "metadata entry '" + key + "' is not representable");
}
} // namespace

void MatrixMetadata::set(std::string key, std::string value)
{
    check_meta_text(key, value);
    for (auto& [k, v] : entries_)
    {
        if (k == key)
        {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

void MatrixMetadata::set(std::string key, double value)
{
    set(std::move(key), format_double(value));
}

std::string const* MatrixMetadata::find(std::string_view key) const
{
    for (auto const& [k, v] : entries_)
    {
        if (k == key)
            return &v;
    }
    return nullptr;
}

std::string const& MatrixMetadata::get(std::string_view key) const
{
    auto const* v = find(key);
    if (!v)
        fail(ErrorCode::FormatError, "matrix metadata lacks '" + std::string(key) + "'");
    return *v;
}

double MatrixMetadata::number(std::string_view key) const
{
    return parse_double(get(key), "metadata '" + std::string(key) + "'");
}

MatrixFormat matrix_format_from_string(std::string_view tag)
{
    if (tag == "text")
        return MatrixFormat::Text;
    if (tag == "binary")
        return MatrixFormat::Binary;
    fail(ErrorCode::ConfigError, "unknown matrix format '" + std::string(tag) + "' (supported: text, binary)");
}

std::string_view to_string(MatrixFormat format)
{
    return format == MatrixFormat::Text ? "text" : "binary";
}

std::string_view file_extension(MatrixFormat format)
{
    return format == MatrixFormat::Text ? ".txt" : ".bin";
}

//---------------------------------------------------------------------------//

std::string encode_matrix_text(MatrixFile const& file)
{
    auto const n = file.data.rows();
    if (file.data.cols() != n)
        fail(ErrorCode::InvalidArgument, "matrix must be square");
    std::string out = "# cqcl-matrix 1 " + std::to_string(n) + "\n";
    for (auto const& [k, v] : file.meta.entries())
        out += "# " + k + " = " + v + "\n";
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j < n; ++j)
        {
            if (j > 0)
                out += ' ';
            out += format_double(file.data(i, j).real());
            out += ' ';
            out += format_double(file.data(i, j).imag());
        }
        out += '\n';
    }
    return out;
}

MatrixFile decode_matrix_text(std::string_view text, std::string_view source)
{
    MatrixFile file;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no); };

    if (!std::getline(in, line))
        fail(ErrorCode::FormatError, std::string(source) + ": empty matrix file");
    ++line_no;
    long long n = -1;
    {
        std::istringstream hs(line);
        std::string hash, tag;
        int version = 0;
        if (!(hs >> hash >> tag >> version >> n) || hash != "#" || tag != "cqcl-matrix" || version != 1 || n < 0)
            fail(ErrorCode::FormatError, where() + ": missing '# cqcl-matrix 1 N' header");
    }
    file.data.resize(n, n);
    Eigen::Index row = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        if (line.front() == '#')
        {
            if (row > 0)
                fail(ErrorCode::FormatError, where() + ": header line after data");
            auto body = trim(std::string_view(line).substr(1));
            auto eq = body.find(" = ");
            if (eq == std::string_view::npos)
                fail(ErrorCode::FormatError, where() + ": expected '# key = value'");
            file.meta.set(std::string(body.substr(0, eq)), std::string(body.substr(eq + 3)));
            continue;
        }
        if (row >= n)
            fail(ErrorCode::FormatError, where() + ": more rows than declared");
        std::string_view rest = line;
        for (Eigen::Index j = 0; j < 2 * n; ++j)
        {
            rest = rest.substr(std::min(rest.size(), rest.find_first_not_of(' ')));
            auto const sp = rest.find(' ');
            auto const tok = rest.substr(0, sp);
            if (tok.empty())
                fail(ErrorCode::FormatError, where() + ": row has too few values");
            double const v = parse_double(tok, where());
            if (j % 2 == 0)
                file.data(row, j / 2).real(v);
            else
                file.data(row, j / 2).imag(v);
            rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp);
        }
        if (!trim(rest).empty())
            fail(ErrorCode::FormatError, where() + ": row has too many values");
        ++row;
    }
    if (row != n)
        fail(ErrorCode::FormatError, std::string(source) + ": fewer rows than declared");
    return file;
}

std::string encode_matrix_binary(MatrixFile const& file)
{
    auto const n = file.data.rows();
    if (file.data.cols() != n)
        fail(ErrorCode::InvalidArgument, "matrix must be square");
    std::string out(binary_magic, 4);
    put_u16(out, binary_version);
    put_u32(out, static_cast<std::uint32_t>(n));
    out.reserve(out.size() + static_cast<std::size_t>(16 * n * n) + 256);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j < n; ++j)
        {
            put_f64(out, file.data(i, j).real());
            put_f64(out, file.data(i, j).imag());
        }
    }
    std::string meta;
    for (auto const& [k, v] : file.meta.entries())
        meta += k + "=" + v + "\n";
    put_u32(out, static_cast<std::uint32_t>(meta.size()));
    out += meta;
    return out;
}

MatrixFile decode_matrix_binary(std::string_view bytes, std::string_view source)
{
    Reader r(bytes, source);
    if (r.take(4) != std::string_view(binary_magic, 4))
        fail(ErrorCode::FormatError, std::string(source) + ": missing CQCL magic");
    auto const version = r.uint(2);
    if (version != binary_version)
        fail(ErrorCode::FormatError, std::string(source) + ": unsupported version " + std::to_string(version));
    auto const n = static_cast<Eigen::Index>(r.uint(4));
    MatrixFile file;
    file.data.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j < n; ++j)
        {
            double const re = r.f64();
            double const im = r.f64();
            file.data(i, j) = {re, im};
        }
    }
    auto const len = static_cast<std::size_t>(r.uint(4));
    auto meta = r.take(len);
    if (!r.done())
        fail(ErrorCode::FormatError, std::string(source) + ": trailing bytes after metadata");
    while (!meta.empty())
    {
        auto const nl = meta.find('\n');
        auto const line = meta.substr(0, nl);
        meta = nl == std::string_view::npos ? std::string_view{} : meta.substr(nl + 1);
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::FormatError, std::string(source) + ": malformed metadata line");
        file.meta.set(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    }
    return file;
}

std::string read_file(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(std::filesystem::path const& path, std::string_view bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::IoError, "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        fail(ErrorCode::IoError, "write failed for " + path.string());
}

void write_matrix(std::filesystem::path const& path, MatrixFile const& file, MatrixFormat format)
{
    write_file(path, format == MatrixFormat::Text ? encode_matrix_text(file) : encode_matrix_binary(file));
}

MatrixFile read_matrix(std::filesystem::path const& path)
{
    auto const bytes = read_file(path);
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), binary_magic, 4) == 0)
        return decode_matrix_binary(bytes, path.string());
    return decode_matrix_text(bytes, path.string());
}

//---------------------------------------------------------------------------//

MatrixFile to_matrix_file(PhotonDensityMatrix const& pdm)
{
    MatrixFile f;
    f.data = pdm.m;
    auto& m = f.meta;
    m.set("kind", "photon_density_matrix");
    m.set("units", "J/(rad/s)^2, scaled by 2 r^2 eps0 n c");
    m.set("axis", "omega");
    m.set("axis_unit", "rad/s");
    m.set("axis_start", pdm.omega.start);
    m.set("axis_step", pdm.omega.step);
    m.set("axis_count", std::to_string(pdm.omega.count));
    m.set("emitter_hash", pdm.meta.emitter_hash.empty() ? "-" : pdm.meta.emitter_hash);
    m.set("emitter_kind", pdm.meta.emitter_kind.empty() ? "-" : pdm.meta.emitter_kind);
    m.set("material", pdm.meta.material.empty() ? "-" : pdm.meta.material);
    m.set("beta", pdm.meta.beta);
    m.set("omega_0", pdm.meta.omega_0);
    m.set("theta_c", pdm.meta.theta_c);
    m.set("azimuth", pdm.meta.azimuth);
    m.set("distance", pdm.meta.distance);
    m.set("index_0", pdm.meta.index_0);
    m.set("group_index_0", pdm.meta.group_index_0);
    m.set("r_hat_x", pdm.meta.r_hat.x());
    m.set("r_hat_y", pdm.meta.r_hat.y());
    m.set("r_hat_z", pdm.meta.r_hat.z());
    return f;
}

PhotonDensityMatrix pdm_from_matrix_file(MatrixFile const& file)
{
    auto const& m = file.meta;
    if (m.get("kind") != "photon_density_matrix")
        fail(ErrorCode::FormatError, "file does not hold a photon density matrix");
    PhotonDensityMatrix pdm;
    pdm.omega.start = m.number("axis_start");
    pdm.omega.step = m.number("axis_step");
    pdm.omega.count = static_cast<std::size_t>(m.number("axis_count"));
    if (static_cast<Eigen::Index>(pdm.omega.count) != file.data.rows())
        fail(ErrorCode::FormatError, "axis_count does not match the matrix size");
    pdm.m = file.data;
    auto text = [&](char const* key) {
        auto const& v = m.get(key);
        return v == "-" ? std::string{} : v;
    };
    pdm.meta.emitter_hash = text("emitter_hash");
    pdm.meta.emitter_kind = text("emitter_kind");
    pdm.meta.material = text("material");
    pdm.meta.beta = m.number("beta");
    pdm.meta.omega_0 = m.number("omega_0");
    pdm.meta.theta_c = m.number("theta_c");
    pdm.meta.azimuth = m.number("azimuth");
    pdm.meta.distance = m.number("distance");
    pdm.meta.index_0 = m.number("index_0");
    pdm.meta.group_index_0 = m.number("group_index_0");
    pdm.meta.r_hat = {m.number("r_hat_x"), m.number("r_hat_y"), m.number("r_hat_z")};
    return pdm;
}

MatrixFile to_matrix_file(ShockwaveProfile const& profile)
{
    MatrixFile f;
    f.data = profile.c;
    auto& m = f.meta;
    m.set("kind", "temporal_autocorrelation");
    m.set("units", "W, scaled by 2 r^2 eps0 n c");
    m.set("axis", "time");
    m.set("axis_unit", "s");
    m.set("axis_start", profile.time.start);
    m.set("axis_step", profile.time.step);
    m.set("axis_count", std::to_string(profile.time.count));
    m.set("padded_size", std::to_string(profile.padded_size));
    m.set("first_index", std::to_string(profile.first_index));
    return f;
}
} // namespace cqcl
