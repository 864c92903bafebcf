#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fractile/selfsim.hpp"

using namespace fractile;

namespace {

ResidueMatrix carpet(std::size_t side)
{
  return delannoy_matrix(Coefficients(1, 1, 1, 3), side, side);
}

} // namespace

TEST_CASE("block views")
{
  const auto m = carpet(9);
  const Block zero = block(m, 3, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(zero(i, j) == 0);

  const Block one = block(m, 0, 0, 1);
  CHECK(one.size() == 1);
  CHECK(one(0, 0) == 1);

  const auto pascal = pascal_matrix(2, 4, 4);
  const Block b = block(pascal, 2, 2, 2);
  CHECK(b(0, 0) == 0);
  CHECK(b(0, 1) == 0);
  CHECK(b(1, 0) == 0);
  CHECK(b(1, 1) == 0);

  CHECK_THROWS_AS(block(m, 7, 0, 3), std::out_of_range);
  CHECK_THROWS_AS(block(m, 0, 9, 1), std::out_of_range);
  CHECK_NOTHROW(block(m, 6, 6, 3));
}

TEST_CASE("is_n_block")
{
  const auto m = carpet(9);
  const Block unit = block(m, 0, 0, 3);
  CHECK(is_n_block(block(m, 3, 3, 3), unit, 0, 3));
  CHECK(is_n_block(unit, unit, 1, 3));
  CHECK(m(1, 2) == 2);
  CHECK(is_n_block(block(m, 3, 6, 3), unit, 2, 3));
  CHECK_FALSE(is_n_block(block(m, 3, 6, 3), unit, 1, 3));
  CHECK_THROWS_AS(is_n_block(block(m, 3, 6, 3), block(m, 0, 0, 2), 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(is_n_block(block(m, 3, 6, 3), block(m, 3, 3, 3), 2, 3), std::invalid_argument);
}

TEST_CASE("check_self_similarity on theorem instances")
{
  const auto r = check_self_similarity(carpet(243), 3);
  CHECK(r.holds);
  CHECK(r.max_k == 4);
  CHECK_FALSE(r.first_violation);

  CHECK(check_self_similarity(pascal_matrix(2, 256, 256), 2).holds);
  CHECK(check_self_similarity(delannoy_matrix(Coefficients(1, 2, 2, 5), 125, 125), 5).holds);

  const auto tiny = check_self_similarity(carpet(1), 3);
  CHECK(tiny.holds);
  CHECK(tiny.max_k == -1);
}

TEST_CASE("check_self_similarity preconditions")
{
  CHECK_THROWS_AS(check_self_similarity(delannoy_matrix(Coefficients(1, 1, 1, 3), 9, 8), 3), std::invalid_argument);
  CHECK_THROWS_AS(check_self_similarity(carpet(9), 5), std::invalid_argument);
}

TEST_CASE("random coefficient triples are self-similar, zeros included")
{
  std::mt19937_64 rng(31337);
  for (Residue p : {2u, 3u, 5u, 7u}) {
    std::uniform_int_distribution<std::uint64_t> digit(0, p - 1);
    const std::size_t side = p <= 3 ? p * p * p * p : p * p * p;
    for (int sample = 0; sample < 10; ++sample) {
      const Coefficients k(digit(rng), digit(rng), digit(rng), p);
      INFO("a=" << k.a() << " b=" << k.b() << " c=" << k.c() << " p=" << p);
      REQUIRE(check_self_similarity(delannoy_matrix(k, side, side), p).holds);
    }
  }
}

TEST_CASE("corrupting cell [4,4] is caught with a valid witness")
{
  auto m = carpet(27);
  m = m.with_entry(4, 4, (m(4, 4) + 1) % 3);
  const auto r = check_self_similarity(m, 3);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.first_violation);
  CHECK(witness_violates(m, *r.first_violation));
  CHECK_FALSE(witness_violates(carpet(27), *r.first_violation));
}

TEST_CASE("every single-cell corruption is detected")
{
  SUBCASE("carpet 27x27")
  {
    const auto base = carpet(27);
    for (std::size_t x = 0; x < 27; ++x)
      for (std::size_t y = 0; y < 27; ++y)
        for (Residue delta : {1u, 2u}) {
          const auto m = base.with_entry(x, y, (base(x, y) + delta) % 3);
          const auto r = check_self_similarity(m, 3);
          INFO("cell " << x << "," << y << " delta " << delta);
          REQUIRE_FALSE(r.holds);
          REQUIRE(witness_violates(m, *r.first_violation));
        }
  }
  SUBCASE("Pascal mod 2, 32x32")
  {
    const auto base = pascal_matrix(2, 32, 32);
    for (std::size_t x = 0; x < 32; ++x)
      for (std::size_t y = 0; y < 32; ++y) {
        const auto m = base.with_entry(x, y, base(x, y) ^ 1u);
        INFO("cell " << x << "," << y);
        REQUIRE_FALSE(check_self_similarity(m, 2).holds);
      }
  }
}

TEST_CASE("witness coordinates")
{
  const SelfSimWitness w{2, 1, 2, 3, 4};
  CHECK(w.row(3) == 12);
  CHECK(w.col(3) == 22);
}

TEST_CASE("check_lemmas on the carpet")
{
  const auto r = check_lemmas(Coefficients(1, 1, 1, 3), 3);
  CHECK(r.side == 81);
  CHECK(r.all_hold());
  for (const char* name : {"corner", "row_repeat", "column_repeat", "edge_sum_row", "edge_sum_column", "run_row",
                           "run_column", "alternating_column"}) {
    INFO(name);
    const auto* l = r.find(name);
    REQUIRE(l != nullptr);
    CHECK(l->status == LemmaStatus::pass);
    CHECK(l->instances > 0);
  }
  // a M[1,2] + b M[0,2] with everything equal to 1.
  const auto m = carpet(3);
  CHECK((m(0, 2) + m(1, 2)) % 3 == 0);
  CHECK(m(0, 0) == 1);
}

TEST_CASE("check_lemmas across small primes")
{
  for (std::uint64_t p : {2, 3, 5})
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b)
        for (std::uint64_t c = 0; c < p; ++c) {
          const unsigned k_max = p == 5 ? 2 : 3;
          const auto r = check_lemmas(Coefficients(a, b, c, p), k_max);
          INFO("a=" << a << " b=" << b << " c=" << c << " p=" << p);
          for (const auto& l : r.lemmas) {
            INFO(l.name << " " << l.counterexample.value_or(""));
            CHECK(l.status != LemmaStatus::fail);
          }
        }
}

TEST_CASE("check_lemmas applicability")
{
  const auto zero_a = check_lemmas(Coefficients(0, 1, 1, 3), 2);
  const auto* corner = zero_a.find("corner");
  REQUIRE(corner != nullptr);
  CHECK(corner->skipped > 0);
  CHECK(corner->status != LemmaStatus::fail);

  const auto other = check_lemmas(Coefficients(1, 2, 1, 3), 2);
  const auto* alt = other.find("alternating_column");
  REQUIRE(alt != nullptr);
  CHECK(alt->status == LemmaStatus::not_applicable);
  CHECK(alt->instances == 0);
  CHECK_THROWS_AS(check_lemmas(Coefficients(1, 1, 1, 3), 0), std::invalid_argument);
  CHECK_THROWS_AS(check_lemmas(Coefficients(1, 1, 1, 7), 5, 1000), std::length_error);
}

TEST_CASE("alternating last column for a = b = c = 1")
{
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const auto m = delannoy_matrix(Coefficients(1, 1, 1, p), p, p);
    for (std::size_t i = 0; i < p; ++i)
      CHECK(m(i, p - 1) == (i % 2 == 0 ? 1 : p - 1));
  }
}

TEST_CASE("fractal_set")
{
  const auto m = carpet(3);
  const auto pts = fractal_set(m, {1, 2});
  CHECK(pts.size() == 8);
  CHECK(std::find(pts.begin(), pts.end(), Point{1, 1}) == pts.end());
  CHECK(fractal_set(m, {}).empty());
  CHECK(fractal_set(pascal_matrix(2, 4, 4), {1}).size() == 9);
  CHECK_THROWS_AS(fractal_set(m, {3}), std::invalid_argument);
  CHECK(nonzero_residues(5) == std::set<Residue>{1, 2, 3, 4});
}

TEST_CASE("nonzero set is geometrically self-similar")
{
  for (const auto& k : {Coefficients(1, 1, 1, 3), Coefficients(1, 2, 2, 5), Coefficients(1, 0, 1, 2)}) {
    const std::size_t p = k.p();
    std::size_t side = 1;
    while (side * p <= 200)
      side *= p;
    const auto m = delannoy_matrix(k, side, side);
    const auto pts = fractal_set(m, nonzero_residues(k.p()));
    const std::set<Point> all(pts.begin(), pts.end());
    for (std::size_t q = 1; q * p <= side; q *= p) {
      std::set<Point> unit;
      for (const auto& pt : all)
        if (pt.x < q && pt.y < q)
          unit.insert(pt);
      for (std::size_t s = 0; s < p; ++s)
        for (std::size_t t = 0; t < p; ++t) {
          std::set<Point> square;
          for (const auto& pt : all)
            if (pt.x / q == s && pt.y / q == t && pt.x < p * q && pt.y < p * q)
              square.insert({pt.x - s * q, pt.y - t * q});
          INFO("q=" << q << " s=" << s << " t=" << t);
          if (m(s, t) == 0)
            CHECK(square.empty());
          else
            CHECK(square == unit);
        }
    }
  }
}
