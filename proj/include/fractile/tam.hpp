#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "fractile/symbol.hpp"

namespace fractile {

// North and south move along the row index x, east and west along the
// column index y.
enum class Direction : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::N, Direction::E, Direction::S,
                                                         Direction::W};

Direction opposite(Direction d);
Position step(Position p, Direction d);
char direction_name(Direction d);

struct Glue {
  std::string color;
  int strength = 0;

  friend bool operator==(const Glue&, const Glue&) = default;
};

using TileId = std::uint32_t;

struct TileType {
  TileId id = 0;
  Symbol label = 0;
  std::array<Glue, 4> glues; // indexed by Direction

  const Glue& glue(Direction d) const { return glues[static_cast<std::size_t>(d)]; }
  Glue& glue(Direction d) { return glues[static_cast<std::size_t>(d)]; }
  int strength(Direction d) const { return glue(d).strength; }
  const std::string& color(Direction d) const { return glue(d).color; }

  /// Same faces and label, ignoring the id.
  bool same_faces(const TileType& other) const { return label == other.label && glues == other.glues; }
};

/// Throws std::invalid_argument unless every strength is in {0, 1, 2}.
void validate_tile(const TileType& t);

/// How an occupied neighbour whose abutting glue does not match is treated.
enum class MismatchMode {
  strict, ///< any mismatch with an occupied neighbour blocks attachment
  lax,    ///< mismatches contribute strength 0
};

/// A finite tile set, a single seed tile at (0,0) and a temperature.
/// tiles[i].id == i.
class TileSystem {
public:
  TileSystem() = default;
  /// Renumbers ids to positions. Throws std::invalid_argument on a bad
  /// strength, an out-of-range seed or temperature < 1.
  TileSystem(std::vector<TileType> tiles, TileId seed, int temperature = 2);

  const std::vector<TileType>& tiles() const { return tiles_; }
  const TileType& tile(TileId id) const { return tiles_.at(id); }
  std::size_t size() const { return tiles_.size(); }
  bool empty() const { return tiles_.empty(); }
  TileId seed() const { return seed_; }
  int temperature() const { return temperature_; }

private:
  std::vector<TileType> tiles_;
  TileId seed_ = 0;
  int temperature_ = 2;
};

/// Partial map from positions to tile ids, plus the order in which the
/// positions were filled (seed first). Placements are never removed.
class Assembly {
public:
  Assembly() = default;

  static Assembly seeded(const TileSystem& system);

  /// Records a placement; throws std::logic_error if the position is taken.
  /// No attachment check is made here (see can_attach / validate_replay).
  void place(Position pos, TileId tile);

  std::optional<TileId> at(Position pos) const;
  bool occupied(Position pos) const { return placements_.count(pos) != 0; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  const std::vector<Position>& attachment_order() const { return order_; }
  const std::unordered_map<Position, TileId, PositionHash>& placements() const { return placements_; }

  /// Overwrites an existing placement; only for building negative controls.
  void replace_for_testing(Position pos, TileId tile);

private:
  std::unordered_map<Position, TileId, PositionHash> placements_;
  std::vector<Position> order_;
};

/// str(t1, d) if t1's d-edge and t2's opposite edge agree in color and
/// strength, 0 otherwise.
int bond_strength(const TileType& t1, Direction d, const TileType& t2);

/// Whether `tile` may attach at the unoccupied position `pos`. Throws
/// std::logic_error if `pos` is occupied.
bool can_attach(const Assembly& assembly, const TileSystem& system, Position pos, const TileType& tile,
                int temperature, MismatchMode mode = MismatchMode::strict);

struct FrontierEntry {
  Position pos;
  TileId tile = 0;
  friend auto operator<=>(const FrontierEntry&, const FrontierEntry&) = default;
};

/// Every (position, tile) pair that can attach, sorted.
std::vector<FrontierEntry> frontier(const Assembly& assembly, const TileSystem& system,
                                    MismatchMode mode = MismatchMode::strict);

/// Rectangle [0, rows) x [0, cols).
struct Bound {
  std::int64_t rows = 0;
  std::int64_t cols = 0;

  bool contains(Position p) const { return p.x >= 0 && p.y >= 0 && p.x < rows && p.y < cols; }
  std::size_t cells() const { return static_cast<std::size_t>(rows * cols); }
};

/// Incrementally maintained frontier restricted to a bound. After each
/// place() only the four neighbours of the new tile are re-examined.
class BoundedFrontier {
public:
  BoundedFrontier(const TileSystem& system, Bound bound, MismatchMode mode);

  /// Places without an attachment check and refreshes the neighbourhood.
  void place(Position pos, TileId tile);

  const std::vector<FrontierEntry>& entries() const { return entries_; }
  const Assembly& assembly() const { return assembly_; }
  Assembly take_assembly() { return std::move(assembly_); }

private:
  void refresh(Position pos);
  void drop(Position pos);

  const TileSystem* system_;
  Bound bound_;
  MismatchMode mode_;
  Assembly assembly_;
  std::vector<FrontierEntry> entries_;
  std::unordered_map<Position, std::vector<std::size_t>, PositionHash> index_;
};

/// Uniform draw from [0, n) over std::mt19937_64, whose output sequence is
/// fixed by the standard. The bounded draw is done here by rejection rather
/// than with std::uniform_int_distribution, which differs between library
/// implementations.
class OrderRng {
public:
  explicit OrderRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n);

private:
  std::mt19937_64 engine_;
};

/// Grows the seed one tile at a time, each step choosing uniformly among
/// the in-bound frontier pairs, until nothing in the bound can attach.
Assembly assemble_bounded(const TileSystem& system, Bound bound, std::uint64_t order_seed,
                          MismatchMode mode = MismatchMode::strict);

/// Replays the attachment order from the seed and returns the index of
/// the first step that was not a legal attachment, if any.
std::optional<std::size_t> validate_replay(const Assembly& assembly, const TileSystem& system,
                                           MismatchMode mode = MismatchMode::strict);

struct DirectednessWitness {
  Position pos;
  std::uint64_t seed_a = 0, seed_b = 0;
  std::optional<TileId> tile_a, tile_b;
};

struct DirectednessResult {
  bool directed = true;
  std::size_t trials = 0;
  std::optional<DirectednessWitness> witness;
};

/// Runs `trials` (>= 2) bounded assemblies with seeds first_seed,
/// first_seed + 1, ... and compares their placement maps.
DirectednessResult is_directed_empirically(const TileSystem& system, Bound bound, std::size_t trials,
                                           std::uint64_t first_seed = 0,
                                           MismatchMode mode = MismatchMode::strict);

using PlacementList = std::vector<std::pair<Position, TileId>>;

/// Placements sorted by position.
PlacementList sorted_placements(const Assembly& assembly);

/// First position where two sorted placement lists disagree (seeds left 0).
std::optional<DirectednessWitness> first_difference(const PlacementList& a, const PlacementList& b);

} // namespace fractile
