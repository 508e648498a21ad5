/*
 * Copyright 2026 The rddce Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rddce/errors.hpp"
#include "rddce/random.hpp"
#include "rddce/types.hpp"

namespace rddce {
namespace {

TEST(IndexSet, AcceptsIncreasingIndicesBelowLimit) {
  const IndexSet s({0, 3, 7}, 8);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1], 3u);
  EXPECT_THROW(IndexSet({0, 8}, 8), InvalidArgument);
  EXPECT_THROW(IndexSet({3, 3}, 8), InvalidArgument);
  EXPECT_THROW(IndexSet({4, 2}, 8), InvalidArgument);
}

TEST(ComplexMatrix, ProductsAgreeWithEigen) {
  const ComplexMatrix a(3, 4, testing::random_vector(12, 1));
  const ComplexMatrix b(4, 2, testing::random_vector(8, 2));
  const auto x = testing::random_vector(4, 3);
  const Eigen::MatrixXcd ab = testing::to_eigen(a) * testing::to_eigen(b);
  const auto got = a * b;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 2; ++c) EXPECT_LT(std::abs(got(r, c) - ab(r, c)), 1e-13);
  }
  const Eigen::VectorXcd ax = testing::to_eigen(a) * testing::to_eigen(x);
  const auto gx = a * x;
  for (std::size_t r = 0; r < 3; ++r) EXPECT_LT(std::abs(gx[r] - ax(r)), 1e-13);
  EXPECT_THROW(b * b, InvalidArgument);
}

TEST(ComplexMatrix, ConjugateTransposeAndRowBlock) {
  const ComplexMatrix a(2, 3, {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}, {11, 12}});
  const auto h = a.conjugate_transpose();
  EXPECT_EQ(h.rows(), 3u);
  EXPECT_EQ(h(2, 1), Complex(11, -12));
  const auto block = a.row_block(1, 1);
  EXPECT_EQ(block.rows(), 1u);
  EXPECT_EQ(block(0, 0), Complex(7, 8));
  EXPECT_EQ(max_abs_deviation_from_identity(ComplexMatrix::identity(4)), 0.0);
}

TEST(RandomStream, SameKeyReplaysSameSequence) {
  RandomStream a(9, 2, 5, StreamPurpose::noise);
  RandomStream b(9, 2, 5, StreamPurpose::noise);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.cscg(1.0), b.cscg(1.0));
}

TEST(RandomStream, DistinctKeysGiveDistinctStreams) {
  std::set<std::uint64_t> first_draws;
  for (std::uint64_t sample = 0; sample < 20; ++sample) {
    for (std::uint64_t symbol = 0; symbol < 50; ++symbol) {
      for (auto purpose : {StreamPurpose::channel, StreamPurpose::payload, StreamPurpose::noise,
                           StreamPurpose::partition}) {
        RandomStream s(1, sample, symbol, purpose);
        first_draws.insert(s.engine()());
      }
    }
  }
  EXPECT_EQ(first_draws.size(), 20u * 50u * 4u);
}

TEST(RandomStream, CircularGaussianHasRequestedVariance) {
  RandomStream rng(3, 0, 0, StreamPurpose::noise);
  const int n = 200000;
  double power = 0.0;
  Complex mean = 0.0;
  double cross = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = rng.cscg(0.5);
    power += std::norm(z);
    mean += z;
    cross += z.real() * z.imag();
  }
  EXPECT_NEAR(power / n, 0.5, 0.01);
  EXPECT_LT(std::abs(mean / static_cast<double>(n)), 0.01);
  EXPECT_NEAR(cross / n, 0.0, 0.005);
}

TEST(RandomStream, BitsAndIndicesAreBalanced) {
  RandomStream rng(4, 0, 0, StreamPurpose::payload);
  int ones = 0;
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    ones += rng.bit();
    ++hist[rng.uniform_index(7)];
  }
  EXPECT_NEAR(ones / 70000.0, 0.5, 0.01);
  for (int h : hist) EXPECT_NEAR(h / 10000.0, 1.0, 0.05);
}

}  // namespace
}  // namespace rddce
