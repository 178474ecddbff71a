#include <catch2/catch_amalgamated.hpp>

#include "hda/iso.hpp"
#include "hda/tensor.hpp"
#include "common.hpp"
#include "oracles.hpp"

using namespace hda;
using testutil::compile_text;
using testutil::sigma_abcde;
using testutil::tuple;

TEST_CASE("sync_grid") {
  SECTION("independent labels: plain grid") {
    Lps z = sync_grid(1, tuple({"a"}), 1, tuple({"b"}), sigma_abcde());
    CHECK(z.count(0) == 4);
    CHECK(z.count(1) == 4);
    CHECK(validate(z).empty());
  }

  SECTION("complementary labels add a tau diagonal") {
    Lps z = sync_grid(1, tuple({"a"}), 1, tuple({"~a"}), sigma_abcde());
    CHECK(z.count(0) == 4);
    CHECK(z.count(1) == 5);
    std::size_t taus = 0;
    for (CubeIdx e = 0; e < z.count(1); ++e)
      if (z.label(1, e)[0] == z.sigma()->tau()) {
        ++taus;
        CHECK(z.face(1, e, 1, 0) == 0b00);
        CHECK(z.face(1, e, 1, 1) == 0b11);
      }
    CHECK(taus == 1);
  }

  SECTION("product with a point is the 1-skeleton of the cube") {
    Lps z = sync_grid(0, tuple({}), 2, tuple({"a", "b"}), sigma_abcde());
    Lps sk = truncate(standard_cube(2, tuple({"a", "b"}), sigma_abcde()), 1);
    REQUIRE(iso_check(z, sk).has_value());
  }
}

TEST_CASE("tensor_sigma basic shapes") {
  SECTION("two independent actions fill one square") {
    PointedLps r = compile_text("a.nil || b.nil");
    CHECK(r.lps.count(0) == 4);
    CHECK(r.lps.count(1) == 4);
    CHECK(r.lps.count(2) == 1);
    CHECK(r.lps.label(2, 0) == tuple({"a", "b"}));
    CHECK(validate(r.lps).empty());
  }

  SECTION("synchronized pair has a tau diagonal and one square") {
    PointedLps r = compile_text("a.nil || ~a.nil");
    CHECK(r.lps.count(0) == 4);
    CHECK(r.lps.count(1) == 5);
    CHECK(r.lps.count(2) == 1);
    CHECK(r.lps.label(2, 0) == tuple({"a", "~a"}));
  }

  SECTION("unit: tensor with a point") {
    PointedLps p = compile_text("a.b.nil + c.nil");
    PointedLps unit = compile_text("nil");
    PointedLps r = tensor_sigma(p, unit);
    REQUIRE(iso_check(r.lps, p.lps).has_value());
  }
}

TEST_CASE("tensor_sigma agrees with the naive double-colimit oracle") {
  for (const char* lhs : {"a.nil", "a.b.nil", "a.nil + b.nil"})
    for (const char* rhs : {"c.nil", "~a.nil", "c.d.nil"}) {
      PointedLps p = compile_text(lhs);
      PointedLps q = compile_text(rhs);
      // rebuild both over the full alphabet so sync pairs line up
      auto sigma = sigma_abcde();
      CompileOptions opts;
      p = hda::compile(hda::parse(lhs), opts, sigma);
      q = hda::compile(hda::parse(rhs), opts, sigma);
      PointedLps fast = tensor_sigma(p, q);
      Lps naive = oracles::naive_tensor(p, q);
      CAPTURE(lhs, rhs);
      REQUIRE(validate(fast.lps).empty());
      REQUIRE(iso_check(fast.lps, naive).has_value());
    }
}

TEST_CASE("tensor_sigma structural invariants") {
  auto sigma = sigma_abcde();
  CompileOptions opts;
  PointedLps p = hda::compile(hda::parse("a.b.nil"), opts, sigma);
  PointedLps q = hda::compile(hda::parse("c.nil + d.nil"), opts, sigma);
  PointedLps r = tensor_sigma(p, q);

  SECTION("dimension bound") {
    CHECK(r.lps.dim() <= p.lps.dim() + q.lps.dim());
  }

  SECTION("1-skeleton is the global synchronization grid") {
    // no complementary labels here: vertices K0 x L0, edges
    // K1 x L0 + K0 x L1
    CHECK(r.lps.count(0) == p.lps.count(0) * q.lps.count(0));
    CHECK(r.lps.count(1) == p.lps.count(1) * q.lps.count(0) +
                                p.lps.count(0) * q.lps.count(1));
  }

  SECTION("pure interleaving product counts") {
    for (std::size_t n = 0; n <= r.lps.dim(); ++n) {
      std::size_t want = 0;
      for (std::size_t i = 0; i <= n; ++i)
        want += p.lps.count(i) * q.lps.count(n - i);
      CHECK(r.lps.count(n) == want);
    }
  }

  SECTION("associativity up to iso (empirical)") {
    PointedLps s = hda::compile(hda::parse("e.nil"), opts, sigma);
    PointedLps left = tensor_sigma(tensor_sigma(p, q), s);
    PointedLps right = tensor_sigma(p, tensor_sigma(q, s));
    REQUIRE(iso_check(left.lps, right.lps).has_value());
  }
}

TEST_CASE("tensor_sigma synchronization against the oracle") {
  auto sigma = sigma_abcde();
  CompileOptions opts;
  PointedLps p = hda::compile(hda::parse("a.nil"), opts, sigma);
  PointedLps q = hda::compile(hda::parse("~a.b.nil"), opts, sigma);
  PointedLps fast = tensor_sigma(p, q);
  Lps naive = oracles::naive_tensor(p, q);
  REQUIRE(iso_check(fast.lps, naive).has_value());
  std::size_t taus = 0;
  for (CubeIdx e = 0; e < fast.lps.count(1); ++e)
    if (fast.lps.label(1, e)[0] == sigma->tau()) ++taus;
  CHECK(taus == 1);
}
