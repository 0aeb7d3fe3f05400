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
#include <cstring>
#include <limits>
#include <random>

#include <doctest.h>

#include "cqcl/digest.hpp"
#include "cqcl/error.hpp"
#include "cqcl/matrix_io.hpp"
#include "fixtures.hpp"

using namespace cqcl;
using namespace cqcl::test;

namespace
{
MatrixFile awkward_matrix(Eigen::Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MatrixFile f;
    f.data.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            f.data(i, j) = {u(rng) * std::pow(10.0, 40 * u(rng)), u(rng)};
    f.data(0, 0) = {-0.0, std::numeric_limits<double>::denorm_min()};
    f.data(0, 1) = {std::numeric_limits<double>::max(), -std::numeric_limits<double>::min()};
    f.data(1, 0) = {0.1, 1.0 / 3.0};
    f.meta.set("kind", "test");
    f.meta.set("value", 0.1);
    f.meta.set("text", "spaces are fine");
    return f;
}

bool bit_equal(Eigen::MatrixXcd const& a, Eigen::MatrixXcd const& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols()
           && std::memcmp(a.data(), b.data(), sizeof(std::complex<double>) * static_cast<std::size_t>(a.size())) == 0;
}
} // namespace

TEST_CASE("text round trip is bit exact")
{
    auto const f = awkward_matrix(9, 1);
    auto const text = encode_matrix_text(f);
    CHECK(text.rfind("# cqcl-matrix 1 9\n", 0) == 0);
    auto const back = decode_matrix_text(text);
    CHECK(bit_equal(back.data, f.data));
    CHECK(back.meta == f.meta);
    CHECK(encode_matrix_text(back) == text);
}

TEST_CASE("binary round trip is bit exact")
{
    auto const f = awkward_matrix(7, 2);
    auto const bytes = encode_matrix_binary(f);
    auto const back = decode_matrix_binary(bytes);
    CHECK(bit_equal(back.data, f.data));
    CHECK(back.meta == f.meta);

    SUBCASE("layout")
    {
        CHECK(bytes.substr(0, 4) == "CQCL");
        CHECK(static_cast<unsigned char>(bytes[4]) == 1);
        CHECK(static_cast<unsigned char>(bytes[5]) == 0);
        CHECK(static_cast<unsigned char>(bytes[6]) == 7);
        CHECK(bytes[7] == 0);
        std::size_t const head = 4 + 2 + 4;
        std::size_t const body = 16 * 49;
        double first = 0.0;
        std::memcpy(&first, bytes.data() + head + 16, sizeof first); // element (0, 1), row-major
        CHECK(first == std::numeric_limits<double>::max());
        std::uint32_t meta_len = 0;
        std::memcpy(&meta_len, bytes.data() + head + body, sizeof meta_len);
        CHECK(bytes.size() == head + body + 4 + meta_len);
        CHECK(bytes.substr(head + body + 4) == "kind=test\nvalue=0.10000000000000001\ntext=spaces are fine\n");
    }
    SUBCASE("corruption is reported")
    {
        CQCL_CHECK_THROWS_CODE(decode_matrix_binary("XQCL" + bytes.substr(4)), ErrorCode::FormatError);
        CQCL_CHECK_THROWS_CODE(decode_matrix_binary(bytes.substr(0, bytes.size() - 3)), ErrorCode::FormatError);
        CQCL_CHECK_THROWS_CODE(decode_matrix_binary(bytes + "x"), ErrorCode::FormatError);
        auto bad_version = bytes;
        bad_version[4] = 2;
        CQCL_CHECK_THROWS_CODE(decode_matrix_binary(bad_version), ErrorCode::FormatError);
    }
}

TEST_CASE("text decoder errors")
{
    CQCL_CHECK_THROWS_CODE(decode_matrix_text(""), ErrorCode::FormatError);
    CQCL_CHECK_THROWS_CODE(decode_matrix_text("1 2\n"), ErrorCode::FormatError);
    CQCL_CHECK_THROWS_CODE(decode_matrix_text("# cqcl-matrix 1 1\n1\n"), ErrorCode::FormatError);
    CQCL_CHECK_THROWS_CODE(decode_matrix_text("# cqcl-matrix 1 1\n1 2 3\n"), ErrorCode::FormatError);
    CQCL_CHECK_THROWS_CODE(decode_matrix_text("# cqcl-matrix 1 2\n1 2 3 4\n"), ErrorCode::FormatError);
    CQCL_CHECK_THROWS_CODE(decode_matrix_text("# cqcl-matrix 1 1\n1 zz\n"), ErrorCode::FormatError);
    CHECK(decode_matrix_text("# cqcl-matrix 1 1\n# a = b\n1 2\n").data(0, 0) == std::complex<double>(1, 2));
}

TEST_CASE("files, format detection and density matrices")
{
    auto const dir = scratch_dir("matrix-io");
    Setup const s(64);
    auto const pdm = s.pdm(ElectronState::spherical_gaussian(254 * nm));
    for (auto fmt : {MatrixFormat::Text, MatrixFormat::Binary})
    {
        auto const path = dir / ("m" + std::string(file_extension(fmt)));
        write_matrix(path, to_matrix_file(pdm), fmt);
        auto const back = pdm_from_matrix_file(read_matrix(path));
        CAPTURE(to_string(fmt));
        CHECK(bit_equal(back.m, pdm.m));
        CHECK(back.omega == pdm.omega);
        CHECK(back.meta.emitter_hash == pdm.meta.emitter_hash);
        CHECK(back.meta.group_index_0 == pdm.meta.group_index_0);
        CHECK(back.meta.r_hat == pdm.meta.r_hat);
    }
    CHECK(matrix_format_from_string("binary") == MatrixFormat::Binary);
    CQCL_CHECK_THROWS_CODE(matrix_format_from_string("hdf5"), ErrorCode::ConfigError);
    CQCL_CHECK_THROWS_CODE(read_matrix(dir / "absent.txt"), ErrorCode::IoError);
    CQCL_CHECK_THROWS_CODE(write_file(dir / "no" / "such" / "dir.txt", "x"), ErrorCode::IoError);

    MatrixFile other;
    other.data = Eigen::MatrixXcd::Identity(2, 2);
    other.meta.set("kind", "something_else");
    CQCL_CHECK_THROWS_CODE(pdm_from_matrix_file(other), ErrorCode::FormatError);
}

TEST_CASE("metadata")
{
    MatrixMetadata m;
    m.set("a", "1");
    m.set("b", 2.5);
    m.set("a", "3");
    REQUIRE(m.entries().size() == 2);
    CHECK(m.entries()[0].first == "a");
    CHECK(m.get("a") == "3");
    CHECK(m.number("b") == 2.5);
    CHECK(m.find("c") == nullptr);
    CQCL_CHECK_THROWS_CODE(m.get("c"), ErrorCode::FormatError);
    CQCL_CHECK_THROWS_CODE(m.set("bad\nkey", "v"), ErrorCode::InvalidArgument);
}

TEST_CASE("sha256")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    auto const dir = scratch_dir("sha");
    write_file(dir / "abc.txt", "abc");
    CHECK(sha256_file(dir / "abc.txt") == sha256_hex("abc"));
}
