// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "axial/distributions.hpp"
#include "axial/io.hpp"
#include "axial/rng.hpp"

namespace axial::io {
namespace {

TEST(ParseCsv, ReadsRowsAndSkipsBlankLines) {
  const auto rows = parse_csv_matrix("1, 2,3\n\n2,5,6\r\n3,6,9\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], (std::vector<double>{2, 5, 6}));
}

TEST(ParseCsv, RejectsGarbage) {
  EXPECT_THROW(parse_csv_matrix("1,x\n2,3\n"), Error);
  EXPECT_THROW(parse_csv_matrix("\n\n"), Error);
  EXPECT_THROW(parse_csv_matrix("1,,2\n"), Error);
}

TEST(ParseJson, ReadsMatrixField) {
  const auto rows = parse_json_matrix(R"({"matrix": [[2, 0.5], [0.5, 1e-3]]})");
  EXPECT_EQ(rows, (std::vector<std::vector<double>>{{2, 0.5}, {0.5, 1e-3}}));
}

TEST(ParseJson, RejectsWrongShapes) {
  EXPECT_THROW(parse_json_matrix(R"([[1,0],[0,1]])"), Error);
  EXPECT_THROW(parse_json_matrix(R"({"matrix": [[1,"a"],[0,1]]})"), Error);
  EXPECT_THROW(parse_json_matrix("{not json"), Error);
}

TEST(Formats, CsvAndJsonAgree) {
  const auto a = ingest_matrix(parse_csv_matrix("4,1\n1,3\n"));
  const auto b = ingest_matrix(parse_json_matrix(R"({"matrix": [[4,1],[1,3]]})"));
  EXPECT_EQ(a.values(), b.values());
}

TEST(FormatDouble, RoundTrips) {
  RngStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(uniform01(rng) - 0.5, static_cast<int>(rng.next_u64() % 200) - 100);
    ASSERT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(ParseVector, CommaSeparated) {
  EXPECT_EQ(parse_vector("1,0,-0.5"), (std::vector<double>{1, 0, -0.5}));
  EXPECT_THROW(parse_vector("1;2"), Error);
}

}  // namespace
}  // namespace axial::io
