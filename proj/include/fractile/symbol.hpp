#pragma once

#include <cstdint>
#include <string>

namespace fractile {

/// A cell value of a labelled matrix. Non-negative values are alphabet
/// symbols (residues, for the modular matrices); `kBottom` marks positions
/// outside the first quadrant.
using Symbol = std::int32_t;

inline constexpr Symbol kBottom = -1;

inline bool is_bottom(Symbol s) { return s == kBottom; }

/// "_" for bottom, decimal otherwise. Used for glue labels and dumps.
inline std::string symbol_to_string(Symbol s)
{
  return is_bottom(s) ? std::string("_") : std::to_string(s);
}

/// Lattice position. `x` is the row (grows northward), `y` the column
/// (grows eastward).
struct Position {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept
  {
    auto h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(p.y) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

} // namespace fractile
