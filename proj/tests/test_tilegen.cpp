#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "fractile/tilegen.hpp"

using namespace fractile;

namespace {

constexpr Symbol B = kBottom;

// n = 3, binary alphabet: parity of the defined window entries, 1 on the
// all-bottom window.
LocalRule parity3_rule()
{
  return LocalRule(WindowSpec(3), 2, [](const WindowContent& w) -> Symbol {
    if (w.west_all_bottom() && w.south_all_bottom())
      return 1;
    int sum = 0;
    for (Symbol s : w.west)
      sum += is_bottom(s) ? 0 : s;
    for (const auto& row : w.south)
      for (Symbol s : row)
        sum += is_bottom(s) ? 0 : s;
    return sum % 2;
  }, "parity3");
}

// Same rule evaluated straight from the definition on a growing grid.
std::vector<std::vector<int>> parity3_oracle(int rows, int cols)
{
  std::vector<std::vector<int>> m(rows, std::vector<int>(cols, 0));
  const auto at = [&](int x, int y) { return x < 0 || y < 0 ? -1 : m[x][y]; };
  for (int x = 0; x < rows; ++x)
    for (int y = 0; y < cols; ++y) {
      int sum = 0;
      bool any = false;
      for (int dx = -2; dx <= 0; ++dx)
        for (int dy = -2; dy <= 0; ++dy) {
          if (dx == 0 && dy == 0)
            continue;
          const int v = at(x + dx, y + dy);
          if (v >= 0) {
            any = true;
            sum += v;
          }
        }
      m[x][y] = any ? sum % 2 : 1;
    }
  return m;
}

WindowContent window2(Symbol west, Symbol sw, Symbol s)
{
  return WindowContent{{west}, {{sw, s}}};
}

} // namespace

TEST_CASE("glue serialization")
{
  CHECK(west_glue({1}) == "1");
  CHECK(west_glue({B}) == "_");
  CHECK(west_glue({0, 2}) == "(0,2)");
  CHECK(south_glue({{B, B}}) == "(_,_)");
  // Rows print bottom to top; south[0] is the row just below the target.
  CHECK(south_glue({{1, 1}, {0, 2}}) == "(0,2)|(1,1)");
}

TEST_CASE("LocalRule checks")
{
  const LocalRule carpet = carpet_rule();
  CHECK(carpet.n() == 2);
  CHECK(carpet.alphabet_size() == 3);
  CHECK_THROWS_AS(carpet.evaluate(WindowContent{{1, 1}, {{0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(carpet.evaluate(WindowContent{{1}, {{0, 0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(carpet.evaluate(window2(3, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(carpet.evaluate(window2(-2, 0, 0)), std::invalid_argument);
  const LocalRule broken(WindowSpec(2), 2, [](const WindowContent&) { return Symbol{5}; });
  CHECK_THROWS_AS(broken.evaluate(window2(0, 0, 0)), std::logic_error);
  CHECK_THROWS_AS(LocalRule(WindowSpec(2), 0, [](const WindowContent&) { return Symbol{0}; }), std::invalid_argument);
}

TEST_CASE("rule_matrix examples")
{
  const LabelMatrix m = rule_matrix(carpet_rule(), 3, 3);
  CHECK(m.entries() == std::vector<Symbol>{1, 1, 1, 1, 0, 2, 1, 2, 1});

  const LabelMatrix c = rule_matrix(constant_rule(4, 3), 5, 6);
  CHECK(std::all_of(c.entries().begin(), c.entries().end(), [](Symbol s) { return s == 3; }));

  const LabelMatrix parity = rule_matrix(parity3_rule(), 2, 2);
  CHECK(parity.entries() == std::vector<Symbol>{1, 1, 1, 1});

  CHECK(m.at(-1, 2) == kBottom);
  CHECK_THROWS_AS(m.at(3, 0), std::out_of_range);
}

TEST_CASE("n = 3 rule_matrix matches a direct evaluation")
{
  const auto oracle = parity3_oracle(20, 17);
  const LabelMatrix m = rule_matrix(parity3_rule(), 20, 17);
  for (int x = 0; x < 20; ++x)
    for (int y = 0; y < 17; ++y)
      REQUIRE(m(x, y) == oracle[x][y]);
}

TEST_CASE("rule_matrix of the Delannoy rule equals delannoy_matrix")
{
  std::mt19937_64 rng(8);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    std::uniform_int_distribution<std::uint64_t> digit(0, p - 1);
    for (int sample = 0; sample < 5; ++sample) {
      const Coefficients k(digit(rng), digit(rng), digit(rng), p);
      CHECK(same_entries(rule_matrix(delannoy_rule(k), 30, 25), delannoy_matrix(k, 30, 25)));
    }
  }
}

TEST_CASE("window_at")
{
  const LabelMatrix m = rule_matrix(carpet_rule(), 3, 3);
  CHECK(window_at(m, 0, 0, 2) == window2(B, B, B));
  CHECK(window_at(m, 0, 2, 2) == window2(1, B, B));
  CHECK(window_at(m, 2, 0, 2) == window2(B, B, 1));
  CHECK(window_at(m, 2, 2, 2) == window2(2, 0, 2));
  const WindowContent w3 = window_at(rule_matrix(parity3_rule(), 3, 3), 2, 2, 3);
  CHECK(w3.west.size() == 2);
  CHECK(w3.south.size() == 2);
  CHECK(w3.south[0].size() == 3);
}

TEST_CASE("classify")
{
  CHECK(classify(window2(B, B, B)) == TileRole::seed);
  CHECK(classify(window2(1, B, B)) == TileRole::row0);
  CHECK(classify(window2(B, B, 1)) == TileRole::column0);
  CHECK(classify(window2(1, 0, 2)) == TileRole::interior);
}

TEST_CASE("build_tile examples")
{
  const LocalRule rule = carpet_rule();

  const TileType seed = build_tile(rule, window2(B, B, B));
  CHECK(seed.label == 1);
  CHECK(seed.glue(Direction::E) == Glue{"1", 2});
  CHECK(seed.glue(Direction::N) == Glue{"(_,1)", 2});
  CHECK(seed.glue(Direction::W) == Glue{"_", 1});
  CHECK(seed.glue(Direction::S) == Glue{"(_,_)", 1});

  const TileType row0 = build_tile(rule, window2(1, B, B));
  CHECK(row0.label == 1);
  CHECK(row0.glue(Direction::W) == Glue{"1", 2});
  CHECK(row0.glue(Direction::E) == Glue{"1", 2});
  CHECK(row0.glue(Direction::N) == Glue{"(1,1)", 1});

  const TileType inner = build_tile(rule, window2(1, 0, 2));
  CHECK(inner.label == 0);
  CHECK(inner.glue(Direction::W) == Glue{"1", 1});
  CHECK(inner.glue(Direction::S) == Glue{"(0,2)", 1});
  CHECK(inner.glue(Direction::E) == Glue{"0", 1});
  CHECK(inner.glue(Direction::N) == Glue{"(1,0)", 1});

  const TileType col0 = build_tile(rule, window2(B, B, 1));
  CHECK(col0.glue(Direction::S) == Glue{"(_,1)", 2});
  CHECK(col0.glue(Direction::N) == Glue{"(_,1)", 2});
  CHECK(col0.glue(Direction::E) == Glue{"1", 1});

  CHECK_THROWS_AS(build_tile(rule, WindowContent{{1}, {}}), std::invalid_argument);
}

TEST_CASE("build_full_system sizes and order")
{
  const TileSystem carpet = build_full_system(carpet_rule());
  CHECK(carpet.size() == 64);
  CHECK(carpet.seed() == 0);
  CHECK(carpet.temperature() == 2);
  CHECK(carpet.tile(0).glue(Direction::E).strength == 2);
  CHECK(build_full_system(constant_rule(1, 0)).size() == 8);
  CHECK(build_full_system(delannoy_rule(Coefficients(1, 0, 1, 2))).size() == 27);
  CHECK(build_full_system(parity3_rule()).size() == 6561);
  CHECK_THROWS_AS(build_full_system(carpet_rule(), 63), std::length_error);

  // Lexicographic window order, bottom first: (_,_,_), (_,_,0), (_,_,1), ...
  CHECK(carpet.tile(1).color(Direction::S) == "(_,0)");
  CHECK(carpet.tile(2).color(Direction::S) == "(_,1)");
  CHECK(carpet.tile(63).color(Direction::W) == "2");
  CHECK(carpet.tile(63).color(Direction::S) == "(2,2)");
}

TEST_CASE("windows of the carpet matrix")
{
  // Independent count straight from delannoy_matrix.
  const auto m = delannoy_matrix(Coefficients(1, 1, 1, 3), 243, 243);
  std::set<std::tuple<Symbol, Symbol, Symbol>> seen;
  const auto at = [&](long x, long y) { return x < 0 || y < 0 ? B : static_cast<Symbol>(m(x, y)); };
  for (long x = 0; x < 243; ++x)
    for (long y = 0; y < 243; ++y)
      seen.insert({at(x, y - 1), at(x - 1, y - 1), at(x - 1, y)});
  CHECK(seen.size() == 26);

  const WindowCensus census = census_windows(carpet_rule(), 243, 243);
  CHECK(census.windows.size() == seen.size());
  CHECK(census.saturated);
  for (const auto& [w, sw, s] : {std::tuple{0, 1, 0}, std::tuple{0, 2, 0}, std::tuple{1, 0, 2}, std::tuple{2, 0, 1}})
    CHECK(census.windows.count(window2(w, sw, s)) == 0);
}

TEST_CASE("prune_reachable")
{
  const LocalRule rule = carpet_rule();
  const TileSystem pruned = prune_reachable(build_full_system(rule), rule, 243, 243);
  CHECK(pruned.size() == 26);
  CHECK(pruned.seed() == 0);
  const TileSystem hand = carpet_system();
  for (const TileType& t : pruned.tiles()) {
    const bool found = std::any_of(hand.tiles().begin(), hand.tiles().end(),
                                   [&](const TileType& h) { return h.same_faces(t); });
    CHECK(found);
  }
  CHECK(prune_reachable(build_full_system(constant_rule(1, 0)), constant_rule(1, 0), 10, 10).size() == 4);
  CHECK(prune_reachable(build_full_system(rule), rule, 1, 1).size() == 1);
  const TileSystem lonely({build_tile(rule, window2(B, B, B))}, 0);
  CHECK_THROWS_AS(prune_reachable(lonely, rule, 3, 3), std::invalid_argument);
}

TEST_CASE("carpet_system")
{
  const TileSystem c = carpet_system();
  REQUIRE(c.size() == 30);
  CHECK(c.seed() == 0);
  const LocalRule rule = carpet_rule();
  CHECK(c.tile(0).same_faces(build_tile(rule, window2(B, B, B))));
  CHECK(c.tile(1).same_faces(build_tile(rule, window2(B, B, 1))));
  CHECK(c.tile(11).same_faces(build_tile(rule, window2(1, B, B))));
  for (Symbol x = 0; x < 3; ++x)
    for (Symbol y = 0; y < 3; ++y)
      for (Symbol z = 0; z < 3; ++z) {
        const Symbol w = (x + y + z) % 3;
        const TileId id = static_cast<TileId>(x == 0 ? 2 + 3 * y + z : 3 + 9 * x + 3 * y + z);
        const TileType& t = c.tile(id);
        INFO("x=" << x << " y=" << y << " z=" << z);
        CHECK(t.same_faces(build_tile(rule, window2(x, y, z))));
        CHECK(t.label == w);
        CHECK(t.color(Direction::N) == "(" + std::to_string(x) + "," + std::to_string(w) + ")");
      }
  CHECK(c.tile(29).label == 0);
  CHECK(c.tile(29).color(Direction::N) == "(2,0)");
  CHECK(c.tile(2).label == 0);
  CHECK(c.tile(2).color(Direction::E) == "0");
  CHECK(c.tile(2).color(Direction::N) == "(0,0)");
}

TEST_CASE("constructed systems reproduce their rule matrix")
{
  std::vector<LocalRule> rules = {carpet_rule(), constant_rule(3, 2), delannoy_rule(Coefficients(1, 0, 1, 2)),
                                  delannoy_rule(Coefficients(1, 2, 2, 5)), delannoy_rule(Coefficients(0, 1, 2, 3)),
                                  parity3_rule()};
  for (const LocalRule& rule : rules) {
    const TileSystem full = build_full_system(rule);
    for (std::int64_t side : {1, 2, 5, 16}) {
      const Bound bound{side, side};
      const LabelMatrix want = rule_matrix(rule, side, side);
      for (std::uint64_t seed : {0u, 7u}) {
        const Assembly a = assemble_bounded(full, bound, seed);
        INFO(rule.name() << " side " << side << " seed " << seed);
        REQUIRE(a.size() == bound.cells());
        for (std::int64_t x = 0; x < side; ++x)
          for (std::int64_t y = 0; y < side; ++y)
            REQUIRE(full.tile(*a.at({x, y})).label == want(x, y));
      }
    }
  }
}

TEST_CASE("pruning does not change the assembly")
{
  for (const LocalRule& rule : {carpet_rule(), delannoy_rule(Coefficients(2, 1, 1, 3)), parity3_rule()}) {
    const TileSystem full = build_full_system(rule);
    const TileSystem pruned = prune_reachable(full, rule, 40, 40);
    const Assembly a = assemble_bounded(full, {40, 40}, 3);
    const Assembly b = assemble_bounded(pruned, {40, 40}, 3);
    REQUIRE(a.size() == b.size());
    for (const auto& [pos, id] : a.placements())
      REQUIRE(full.tile(id).same_faces(pruned.tile(*b.at(pos))));
  }
}

TEST_CASE("east and north glues meet the neighbouring tiles")
{
  for (const LocalRule& rule : {carpet_rule(), parity3_rule()}) {
    const LabelMatrix m = rule_matrix(rule, 25, 25);
    for (std::int64_t x = 0; x + 1 < 25; ++x)
      for (std::int64_t y = 0; y + 1 < 25; ++y) {
        const TileType here = build_tile(rule, window_at(m, x, y, rule.n()));
        const TileType east = build_tile(rule, window_at(m, x, y + 1, rule.n()));
        const TileType north = build_tile(rule, window_at(m, x + 1, y, rule.n()));
        REQUIRE(bond_strength(here, Direction::E, east) > 0);
        REQUIRE(bond_strength(here, Direction::N, north) > 0);
      }
  }
}

TEST_CASE("strength-2 edges stay on the axes")
{
  const TileSystem carpet = carpet_system();
  const Assembly a = assemble_bounded(carpet, {27, 27}, 12);
  for (const auto& [pos, id] : a.placements()) {
    const TileType& t = carpet.tile(id);
    if (t.strength(Direction::E) == 2)
      CHECK(pos.x == 0);
    if (t.strength(Direction::N) == 2)
      CHECK(pos.y == 0);
  }
}
