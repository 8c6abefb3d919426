#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "test_support.hpp"

using namespace msrd;
using namespace msrd::testing;

namespace {

FqmLinearCode gf9_line_code() {
  auto t9 = FieldTower::make(3, 1, 2);
  FqmMat g(1, 2);
  g.at(0, 0) = 1;
  g.at(0, 1) = 3;  // (1, alpha): every nonzero multiple has full rank
  return FqmLinearCode(t9, LengthPartition({2}), g);
}

}  // namespace

TEST_CASE("fq-linear codes validate their basis", "[codes]") {
  auto t3 = FieldTower::make(3, 1, 1);
  const BlockProfile prof({{2, 2}});
  MatrixTuple a = zero_tuple(prof);
  a.blocks[0].at(0, 0) = 1;
  MatrixTuple b = zero_tuple(prof);
  b.blocks[0].at(0, 0) = 2;  // dependent on a
  CHECK_THROWS_AS(FqLinearCode(t3, prof, {a, b}), Error);
  MatrixTuple c = zero_tuple(prof);
  c.blocks[0].at(1, 1) = 1;
  CHECK_NOTHROW(FqLinearCode(t3, prof, {a, c}));
  CHECK_THROWS_AS(FqLinearCode(t3, BlockProfile({{2, 1}}), {a}), Error);  // shape mismatch
}

TEST_CASE("fqm-linear codes demand full row rank", "[codes]") {
  auto t9 = FieldTower::make(3, 1, 2);
  FqmMat g(2, 2);
  g.at(0, 0) = 1;
  g.at(0, 1) = 3;
  g.at(1, 0) = 2;
  g.at(1, 1) = 6;  // row 2 = 2 * row 1
  CHECK_THROWS_AS(FqmLinearCode(t9, LengthPartition({2}), g), Error);
  CHECK_THROWS_AS(FqmLinearCode(t9, LengthPartition({3}), FqmMat(1, 3)), Error);  // n_i > m
}

TEST_CASE("expansion to the subfield view", "[codes]") {
  auto t9 = FieldTower::make(3, 1, 2);
  const FqLinearCode empty = to_fq_linear(FqmLinearCode(t9, LengthPartition({2}), FqmMat(0, 2)));
  CHECK(empty.dim() == 0);

  const FqLinearCode line = to_fq_linear(gf9_line_code());
  CHECK(line.dim() == 2);

  const FqLinearCode lrs = to_fq_linear(build_lrs(t9, 2, 2));
  CHECK(lrs.dim() == 4);
}

TEST_CASE("codeword enumeration is canonical and complete", "[codes]") {
  auto t3 = FieldTower::make(3, 1, 1);
  const BlockProfile prof({{2, 2}});

  const FqLinearCode zero(t3, prof, {});
  const auto only = enumerate_codewords(zero);
  REQUIRE(only.size() == 1);
  CHECK(only[0].is_zero());

  MatrixTuple a = zero_tuple(prof);
  a.blocks[0].at(0, 0) = 1;
  MatrixTuple b = zero_tuple(prof);
  b.blocks[0].at(1, 1) = 1;
  const FqLinearCode dim2(t3, prof, {a, b});
  const auto all = enumerate_codewords(dim2);
  CHECK(all.size() == 9);
  std::set<std::vector<u32>> distinct;
  for (const MatrixTuple& t : all) distinct.insert(tuple_flatten(t));
  CHECK(distinct.size() == all.size());  // each codeword exactly once

  // basis {B}: scalar multiples in order 0, B, 2B
  const FqLinearCode dim1(t3, prof, {a});
  const auto scalars = enumerate_codewords(dim1);
  REQUIRE(scalars.size() == 3);
  CHECK(scalars[0].is_zero());
  CHECK(scalars[1] == a);
  CHECK(scalars[2] == tuple_scale(*t3, a, 2));

  CHECK_THROWS_AS(enumerate_codewords(dim2, 5), GuardError);
}

TEST_CASE("minimum distance oracle", "[codes]") {
  auto t9 = FieldTower::make(3, 1, 2);

  // A one-dimensional code keeps the weight of its generator.
  const FqLinearCode line = to_fq_linear(gf9_line_code());
  MatrixTuple gen = line.basis()[0];
  const FqLinearCode span_one(t9, line.profile(), {gen});
  CHECK(min_sumrank_distance(span_one) == sumrank_weight(*t9, gen));

  const FqLinearCode lrs = to_fq_linear(build_lrs(t9, 2, 2));
  CHECK(min_sumrank_distance(lrs) == 3);

  // Full ambient space contains a rank-1 tuple.
  auto t2 = FieldTower::make(2, 1, 1);
  const BlockProfile prof({{2, 2}});
  std::vector<MatrixTuple> units;
  for (u32 i = 0; i < 2; ++i)
    for (u32 j = 0; j < 2; ++j) {
      MatrixTuple u = zero_tuple(prof);
      u.blocks[0].at(i, j) = 1;
      units.push_back(u);
    }
  const FqLinearCode full(t2, prof, units);
  CHECK(min_sumrank_distance(full) == 1);

  CHECK_THROWS_AS(min_sumrank_distance(FqLinearCode(t2, prof, {})), Error);  // zero code
}

TEST_CASE("msrd certificates", "[codes]") {
  auto t9 = FieldTower::make(3, 1, 2);
  const MsrdCertificate lrs = is_msrd(to_fq_linear(build_lrs(t9, 2, 2)));
  CHECK(lrs.msrd);
  CHECK(lrs.distance == 3);
  CHECK(lrs.dimension == 4);
  CHECK(lrs.bound == 4);

  auto t2 = FieldTower::make(2, 1, 1);
  const BlockProfile prof({{2, 2}});
  std::vector<MatrixTuple> units;
  for (u32 i = 0; i < 2; ++i)
    for (u32 j = 0; j < 2; ++j) {
      MatrixTuple u = zero_tuple(prof);
      u.blocks[0].at(i, j) = 1;
      units.push_back(u);
    }
  const MsrdCertificate full = is_msrd(FqLinearCode(t2, prof, units));
  CHECK(full.msrd);
  CHECK(full.distance == 1);
  CHECK(full.dimension == prof.total_area());

  MatrixTuple rank1 = zero_tuple(prof);
  rank1.blocks[0].a = {1, 1, 1, 1};
  const MsrdCertificate low = is_msrd(FqLinearCode(t2, prof, {rank1}));
  CHECK_FALSE(low.msrd);
  CHECK(low.distance == 1);
  CHECK(low.dimension == 1);
  CHECK(low.bound == 4);
}

TEST_CASE("weight distributions", "[codes]") {
  auto t3 = FieldTower::make(3, 1, 1);
  const BlockProfile prof({{2, 2}});
  const FqLinearCode zero(t3, prof, {});
  CHECK(weight_distribution(zero) == std::map<u32, u64>{{0, 1}});

  MatrixTuple w2 = zero_tuple(prof);
  w2.blocks[0].at(0, 0) = 1;
  w2.blocks[0].at(1, 1) = 1;
  const FqLinearCode dim1(t3, prof, {w2});
  CHECK(weight_distribution(dim1) == std::map<u32, u64>{{0, 1}, {2, 2}});
  CHECK(is_one_weight(dim1));

  auto t9 = FieldTower::make(3, 1, 2);
  const FqLinearCode lrs = to_fq_linear(build_lrs(t9, 2, 2));
  const auto dist = weight_distribution(lrs);
  u64 total = 0;
  for (const auto& [w, count] : dist) total += count;
  CHECK(total == 81);
  CHECK(dist.at(0) == 1);
  CHECK(dist.count(3) == 1);
  CHECK(dist.count(4) == 1);  // both weights occur, so not one-weight
  CHECK_FALSE(is_one_weight(lrs));
}

TEST_CASE("dual codes under the coordinatewise form", "[codes]") {
  auto t9 = FieldTower::make(3, 1, 2);
  const FqmLinearCode lrs = build_lrs(t9, 2, 2);

  const FqmLinearCode dual = dual_code(lrs);
  CHECK(dual.dim() == 2);
  const MsrdCertificate cert = is_msrd(to_fq_linear(dual));
  CHECK(cert.msrd);
  CHECK(cert.distance == 3);

  // Every pairing of rows is orthogonal.
  for (u32 i = 0; i < lrs.dim(); ++i)
    for (u32 j = 0; j < dual.dim(); ++j) {
      u64 acc = 0;
      for (u32 c = 0; c < lrs.length(); ++c)
        acc = t9->add(acc, t9->mul(lrs.genmat().at(i, c), dual.genmat().at(j, c)));
      CHECK(acc == 0);
    }

  CHECK(fqm_same_rowspace(*t9, dual_code(dual).genmat(), lrs.genmat()));

  // Dual of the full space is the zero code and vice versa.
  FqmMat full(2, 2);
  full.at(0, 0) = 1;
  full.at(1, 1) = 1;
  const FqmLinearCode whole(t9, LengthPartition({2}), full);
  CHECK(dual_code(whole).dim() == 0);
  const FqmLinearCode none(t9, LengthPartition({2}), FqmMat(0, 2));
  CHECK(dual_code(none).dim() == 2);
}

TEST_CASE("the two oracle routes agree on every suite code", "[codes]") {
  auto t9 = FieldTower::make(3, 1, 2);
  auto t8 = FieldTower::make(2, 1, 3);
  const std::vector<FqmLinearCode> codes = {
      build_lrs(t9, 2, 1), build_lrs(t9, 2, 2), build_lrs(t9, 2, 3),
      build_lrs(t8, 3, 1), build_lrs(t8, 3, 2), gf9_line_code(),
      dual_code(build_lrs(t9, 2, 2)),
  };
  for (const FqmLinearCode& code : codes) {
    CAPTURE(code.dim(), code.length());
    CHECK(min_sumrank_distance(to_fq_linear(code)) == min_distance_via_messages(code));
  }
}

TEST_CASE("distribution counts always close", "[codes]") {
  Rng rng(test_seed());
  auto t3 = FieldTower::make(3, 1, 1);
  const BlockProfile prof({{2, 2}, {2, 1}});
  for (int s = 0; s < 10; ++s) {
    const FqLinearCode code = random_code(rng, t3, prof, 1 + random_digit(rng, 3));
    const auto dist = weight_distribution(code);
    u64 total = 0;
    for (const auto& [w, count] : dist) total += count;
    CHECK(total == detail::pow_capped(3, code.dim(), u64{1} << 40));
    CHECK(dist.at(0) == 1);
  }
}
