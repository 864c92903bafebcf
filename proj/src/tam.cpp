#include "fractile/tam.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace fractile {

Direction opposite(Direction d)
{
  switch (d) {
  case Direction::N: return Direction::S;
  case Direction::E: return Direction::W;
  case Direction::S: return Direction::N;
  case Direction::W: return Direction::E;
  }
  throw std::logic_error("bad direction");
}

Position step(Position p, Direction d)
{
  switch (d) {
  case Direction::N: return {p.x + 1, p.y};
  case Direction::E: return {p.x, p.y + 1};
  case Direction::S: return {p.x - 1, p.y};
  case Direction::W: return {p.x, p.y - 1};
  }
  throw std::logic_error("bad direction");
}

char direction_name(Direction d)
{
  static constexpr char names[] = {'N', 'E', 'S', 'W'};
  return names[static_cast<std::size_t>(d)];
}

void validate_tile(const TileType& t)
{
  for (Direction d : kDirections) {
    const int s = t.strength(d);
    if (s < 0 || s > 2)
      throw std::invalid_argument("tile " + std::to_string(t.id) + ": strength " + std::to_string(s) +
                                  " on " + direction_name(d) + " edge is outside {0,1,2}");
  }
}

TileSystem::TileSystem(std::vector<TileType> tiles, TileId seed, int temperature)
  : tiles_(std::move(tiles)), seed_(seed), temperature_(temperature)
{
  if (temperature < 1)
    throw std::invalid_argument("temperature must be at least 1");
  if (!tiles_.empty() && seed >= tiles_.size())
    throw std::invalid_argument("seed tile id out of range");
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    tiles_[i].id = static_cast<TileId>(i);
    validate_tile(tiles_[i]);
  }
}

Assembly Assembly::seeded(const TileSystem& system)
{
  Assembly a;
  if (!system.empty())
    a.place({0, 0}, system.seed());
  return a;
}

void Assembly::place(Position pos, TileId tile)
{
  if (!placements_.emplace(pos, tile).second)
    throw std::logic_error("position (" + std::to_string(pos.x) + "," + std::to_string(pos.y) +
                           ") already occupied");
  order_.push_back(pos);
}

std::optional<TileId> Assembly::at(Position pos) const
{
  auto it = placements_.find(pos);
  if (it == placements_.end())
    return std::nullopt;
  return it->second;
}

void Assembly::replace_for_testing(Position pos, TileId tile)
{
  auto it = placements_.find(pos);
  if (it == placements_.end())
    throw std::logic_error("replace_for_testing: position not occupied");
  it->second = tile;
}

int bond_strength(const TileType& t1, Direction d, const TileType& t2)
{
  const Glue& mine = t1.glue(d);
  const Glue& theirs = t2.glue(opposite(d));
  return mine == theirs ? mine.strength : 0;
}

bool can_attach(const Assembly& assembly, const TileSystem& system, Position pos, const TileType& tile,
                int temperature, MismatchMode mode)
{
  if (assembly.occupied(pos))
    throw std::logic_error("can_attach: position already occupied");
  int total = 0;
  for (Direction d : kDirections) {
    const auto neighbour = assembly.at(step(pos, d));
    if (!neighbour)
      continue;
    const TileType& other = system.tile(*neighbour);
    if (tile.glue(d) == other.glue(opposite(d)))
      total += tile.strength(d);
    else if (mode == MismatchMode::strict)
      return false;
  }
  return total >= temperature;
}

std::vector<FrontierEntry> frontier(const Assembly& assembly, const TileSystem& system, MismatchMode mode)
{
  std::set<Position> candidates;
  for (const auto& [pos, id] : assembly.placements())
    for (Direction d : kDirections) {
      const Position q = step(pos, d);
      if (!assembly.occupied(q))
        candidates.insert(q);
    }
  std::vector<FrontierEntry> out;
  for (const Position& q : candidates)
    for (const TileType& t : system.tiles())
      if (can_attach(assembly, system, q, t, system.temperature(), mode))
        out.push_back({q, t.id});
  return out;
}

BoundedFrontier::BoundedFrontier(const TileSystem& system, Bound bound, MismatchMode mode)
  : system_(&system), bound_(bound), mode_(mode)
{
}

void BoundedFrontier::drop(Position pos)
{
  auto it = index_.find(pos);
  if (it == index_.end())
    return;
  std::vector<std::size_t> slots = std::move(it->second);
  index_.erase(it);
  // Remove from the highest slot down so pending slots stay valid.
  std::sort(slots.rbegin(), slots.rend());
  for (std::size_t slot : slots) {
    const std::size_t last = entries_.size() - 1;
    if (slot != last) {
      entries_[slot] = entries_[last];
      auto& moved = index_[entries_[slot].pos];
      *std::find(moved.begin(), moved.end(), last) = slot;
    }
    entries_.pop_back();
  }
}

void BoundedFrontier::refresh(Position pos)
{
  drop(pos);
  if (!bound_.contains(pos) || assembly_.occupied(pos))
    return;
  for (const TileType& t : system_->tiles()) {
    if (can_attach(assembly_, *system_, pos, t, system_->temperature(), mode_)) {
      index_[pos].push_back(entries_.size());
      entries_.push_back({pos, t.id});
    }
  }
}

void BoundedFrontier::place(Position pos, TileId tile)
{
  assembly_.place(pos, tile);
  drop(pos);
  for (Direction d : kDirections)
    refresh(step(pos, d));
}

std::size_t OrderRng::below(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("OrderRng::below(0)");
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<std::size_t>(r % range);
}

Assembly assemble_bounded(const TileSystem& system, Bound bound, std::uint64_t order_seed, MismatchMode mode)
{
  if (!bound.contains({0, 0}))
    throw std::invalid_argument("bound must contain the seed position (0,0)");
  if (system.empty())
    return Assembly{};
  BoundedFrontier grow(system, bound, mode);
  grow.place({0, 0}, system.seed());
  OrderRng rng(order_seed);
  while (!grow.entries().empty()) {
    const FrontierEntry pick = grow.entries()[rng.below(grow.entries().size())];
    grow.place(pick.pos, pick.tile);
  }
  return grow.take_assembly();
}

std::optional<std::size_t> validate_replay(const Assembly& assembly, const TileSystem& system, MismatchMode mode)
{
  const auto& order = assembly.attachment_order();
  Assembly partial;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Position pos = order[i];
    const TileId id = *assembly.at(pos);
    if (i == 0) {
      if (pos != Position{0, 0} || id != system.seed())
        return 0;
    } else if (id >= system.size() || !can_attach(partial, system, pos, system.tile(id), system.temperature(), mode)) {
      return i;
    }
    partial.place(pos, id);
  }
  return std::nullopt;
}

std::vector<std::pair<Position, TileId>> sorted_placements(const Assembly& assembly)
{
  std::vector<std::pair<Position, TileId>> out(assembly.placements().begin(), assembly.placements().end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<DirectednessWitness> first_difference(const std::vector<std::pair<Position, TileId>>& a,
                                                    const std::vector<std::pair<Position, TileId>>& b)
{
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      return DirectednessWitness{a[i].first, 0, 0, a[i].second, std::nullopt};
    if (i == a.size() || b[j].first < a[i].first)
      return DirectednessWitness{b[j].first, 0, 0, std::nullopt, b[j].second};
    if (a[i].second != b[j].second)
      return DirectednessWitness{a[i].first, 0, 0, a[i].second, b[j].second};
    ++i;
    ++j;
  }
  return std::nullopt;
}

DirectednessResult is_directed_empirically(const TileSystem& system, Bound bound, std::size_t trials,
                                           std::uint64_t first_seed, MismatchMode mode)
{
  if (trials < 2)
    throw std::invalid_argument("directedness check needs at least 2 trials");

  // Trials are independent; run them in parallel batches and compare in
  // seed order so the reported witness does not depend on scheduling.
  std::vector<std::vector<std::pair<Position, TileId>>> maps(trials);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(trials, std::thread::hardware_concurrency()));
  for (std::size_t begin = 0; begin < trials; begin += workers) {
    std::vector<std::future<void>> batch;
    for (std::size_t t = begin; t < std::min(trials, begin + workers); ++t)
      batch.push_back(std::async(std::launch::async, [&, t] {
        maps[t] = sorted_placements(assemble_bounded(system, bound, first_seed + t, mode));
      }));
    for (auto& f : batch)
      f.get();
  }

  DirectednessResult result;
  result.trials = trials;
  for (std::size_t t = 1; t < trials; ++t) {
    if (auto diff = first_difference(maps[0], maps[t])) {
      diff->seed_a = first_seed;
      diff->seed_b = first_seed + t;
      result.directed = false;
      result.witness = diff;
      break;
    }
  }
  return result;
}

} // namespace fractile
