#include "fractile/conformance.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace fractile {

ConformanceReport verify_system(const TileSystem& system, const LocalRule& rule, Bound bound,
                                const VerifyOptions& options, std::string system_id)
{
  ConformanceReport report;
  report.system_id = std::move(system_id);
  report.bound = bound;
  report.tile_count = system.size();
  report.trials = options.trials;

  const LabelMatrix expected = rule_matrix(rule, static_cast<std::size_t>(bound.rows), static_cast<std::size_t>(bound.cols));
  std::optional<PlacementList> reference;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t seed = options.first_seed + trial;
    const Assembly run = assemble_bounded(system, bound, seed, options.mode);

    if (report.matches) {
      for (std::int64_t x = 0; x < bound.rows && report.matches; ++x) {
        for (std::int64_t y = 0; y < bound.cols; ++y) {
          const Symbol want = expected.at(x, y);
          const auto id = run.at({x, y});
          if (!id || system.tile(*id).label != want) {
            report.matches = false;
            report.mismatch = LabelMismatch{{x, y}, want, id ? std::optional<Symbol>(system.tile(*id).label) : std::nullopt, seed};
            break;
          }
        }
      }
    }

    auto placed = sorted_placements(run);
    if (!reference) {
      reference = std::move(placed);
    } else if (report.directed && placed != *reference) {
      report.directed = false;
      report.divergence = first_difference(*reference, placed);
      report.divergence->seed_a = options.first_seed;
      report.divergence->seed_b = seed;
    }
  }
  return report;
}

ConformanceReport verify_self_assembly(const LocalRule& rule, Bound bound, const VerifyOptions& options)
{
  TileSystem system = build_full_system(rule, options.tile_budget);
  if (options.prune) {
    const std::size_t side = options.prune_horizon != 0
                               ? options.prune_horizon
                               : std::max<std::size_t>({kDefaultPruneHorizon, static_cast<std::size_t>(bound.rows),
                                                        static_cast<std::size_t>(bound.cols)});
    system = prune_reachable(system, rule, side, side);
  }
  return verify_system(system, rule, bound, options, rule.name());
}

bool ClauseReport::holds(char clause) const
{
  return std::none_of(violations.begin(), violations.end(), [clause](const ClauseViolation& v) { return v.clause == clause; });
}

ClauseReport check_induction_clauses(const Assembly& assembly, const TileSystem& system, const LocalRule& rule)
{
  ClauseReport report;
  const auto& order = assembly.attachment_order();
  report.steps = order.size();
  if (order.empty())
    return report;

  std::int64_t max_x = 0, max_y = 0;
  for (const Position& p : order) {
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const LabelMatrix labels = rule_matrix(rule, static_cast<std::size_t>(max_x + 1), static_cast<std::size_t>(max_y + 1));

  std::unordered_set<Position, PositionHash> placed;
  const auto flag = [&](char clause, std::size_t step, Position pos, std::string detail) {
    report.violations.push_back({clause, step, pos, std::move(detail)});
  };

  for (std::size_t step = 0; step < order.size(); ++step) {
    const Position pos = order[step];
    const TileType& tile = system.tile(*assembly.at(pos));
    placed.insert(pos);

    if (pos.x < 0 || pos.y < 0) {
      flag('b', step, pos, "placement at a negative coordinate");
      continue;
    }
    // The region was closed before this step, so it stays closed iff the
    // two cells immediately below and to the left are present.
    if ((pos.x > 0 && placed.count({pos.x - 1, pos.y}) == 0) || (pos.y > 0 && placed.count({pos.x, pos.y - 1}) == 0))
      flag('a', step, pos, "filled region is not closed below/left");
    if (tile.strength(Direction::E) == 2 && pos.x != 0)
      flag('c', step, pos, "strength-2 east edge outside row 0");
    if (tile.strength(Direction::N) == 2 && pos.y != 0)
      flag('d', step, pos, "strength-2 north edge outside column 0");
    if (!tile.same_faces(build_tile(rule, window_at(labels, pos.x, pos.y, rule.n()))))
      flag('e', step, pos, "tile " + std::to_string(tile.id) + " is not the tile of its window");
  }
  return report;
}

namespace {

std::string pos_text(Position p)
{
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

} // namespace

std::string render_text(const ConformanceReport& r)
{
  std::ostringstream os;
  os << "system " << r.system_id << " tiles " << r.tile_count << "\n";
  os << "bound " << r.bound.rows << "x" << r.bound.cols << " trials " << r.trials << "\n";
  os << "labels " << (r.matches ? "match" : "MISMATCH") << "\n";
  if (r.mismatch) {
    os << "mismatch at " << pos_text(r.mismatch->pos) << " seed " << r.mismatch->seed << " expected "
       << symbol_to_string(r.mismatch->expected) << " observed "
       << (r.mismatch->observed ? symbol_to_string(*r.mismatch->observed) : std::string("none")) << "\n";
  }
  os << "directed " << (r.directed ? "yes" : "NO") << "\n";
  if (r.divergence) {
    const auto tile = [](const std::optional<TileId>& t) { return t ? std::to_string(*t) : std::string("none"); };
    os << "divergence at " << pos_text(r.divergence->pos) << " seed " << r.divergence->seed_a << " tile "
       << tile(r.divergence->tile_a) << " vs seed " << r.divergence->seed_b << " tile " << tile(r.divergence->tile_b)
       << "\n";
  }
  os << "result " << (r.ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string render_text(const ClauseReport& r)
{
  std::ostringstream os;
  os << "steps " << r.steps << "\n";
  for (char c : {'a', 'b', 'c', 'd', 'e'})
    os << "clause " << c << " " << (r.holds(c) ? "holds" : "VIOLATED") << "\n";
  for (const auto& v : r.violations)
    os << "violation " << v.clause << " step " << v.step << " at " << pos_text(v.pos) << ": " << v.detail << "\n";
  return os.str();
}

std::string render_json(const ConformanceReport& r)
{
  using nlohmann::json;
  json j;
  j["format"] = "fractile-conformance";
  j["version"] = 1;
  j["system"] = r.system_id;
  j["tiles"] = r.tile_count;
  j["bound"] = {{"rows", r.bound.rows}, {"cols", r.bound.cols}};
  j["trials"] = r.trials;
  j["matches"] = r.matches;
  j["directed"] = r.directed;
  j["ok"] = r.ok();
  if (r.mismatch) {
    j["mismatch"] = {{"x", r.mismatch->pos.x},
                     {"y", r.mismatch->pos.y},
                     {"seed", r.mismatch->seed},
                     {"expected", r.mismatch->expected},
                     {"observed", r.mismatch->observed ? json(*r.mismatch->observed) : json(nullptr)}};
  } else {
    j["mismatch"] = nullptr;
  }
  if (r.divergence) {
    const auto tile = [](const std::optional<TileId>& t) { return t ? json(*t) : json(nullptr); };
    j["divergence"] = {{"x", r.divergence->pos.x},
                       {"y", r.divergence->pos.y},
                       {"seed_a", r.divergence->seed_a},
                       {"seed_b", r.divergence->seed_b},
                       {"tile_a", tile(r.divergence->tile_a)},
                       {"tile_b", tile(r.divergence->tile_b)}};
  } else {
    j["divergence"] = nullptr;
  }
  return j.dump(2) + "\n";
}

} // namespace fractile
