#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fractile/matrix.hpp"
#include "fractile/symbol.hpp"
#include "fractile/tam.hpp"

namespace fractile {

/// The n*n - 1 cells a local rule reads for the target cell (x, y):
///   west[k]     = M[x, y - n + 1 + k]          k = 0 .. n-2
///   south[i][k] = M[x - 1 - i, y - n + 1 + k]  i = 0 .. n-2, k = 0 .. n-1
/// so south[0] is the row directly below the target and the last entry of
/// each south row sits in the target's column. Ordering is lexicographic
/// over (west, south) with bottom below every symbol.
struct WindowContent {
  std::vector<Symbol> west;
  std::vector<std::vector<Symbol>> south;

  friend bool operator==(const WindowContent&, const WindowContent&) = default;
  friend auto operator<=>(const WindowContent&, const WindowContent&) = default;

  bool west_all_bottom() const;
  bool south_all_bottom() const;
};

/// A total function from windows over L ∪ {bottom} to L, with
/// L = {0, ..., alphabet_size - 1}.
class LocalRule {
public:
  using Function = std::function<Symbol(const WindowContent&)>;

  LocalRule(WindowSpec window, int alphabet_size, Function f, std::string name = "rule");

  int n() const { return n_; }
  int alphabet_size() const { return alphabet_size_; }
  const std::string& name() const { return name_; }

  /// Throws std::invalid_argument on a malformed window, std::logic_error
  /// if the function returns a value outside the alphabet.
  Symbol evaluate(const WindowContent& w) const;

  /// Throws std::invalid_argument unless w has the shape for this n and
  /// only holds bottom or alphabet symbols.
  void check_window(const WindowContent& w) const;

private:
  int n_;
  int alphabet_size_;
  Function f_;
  std::string name_;
};

/// Row-major window of symbols produced by a local rule.
class LabelMatrix {
public:
  LabelMatrix(std::size_t rows, std::size_t cols, std::vector<Symbol> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Symbol operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  /// kBottom for negative coordinates; std::out_of_range past the window.
  Symbol at(std::int64_t x, std::int64_t y) const;
  const std::vector<Symbol>& entries() const { return entries_; }

  friend bool operator==(const LabelMatrix&, const LabelMatrix&) = default;

private:
  std::size_t rows_, cols_;
  std::vector<Symbol> entries_;
};

bool same_entries(const LabelMatrix& labels, const ResidueMatrix& residues);

/// The window of `m` read for cell (x, y) with side n.
WindowContent window_at(const LabelMatrix& m, std::int64_t x, std::int64_t y, int n);

/// Evaluates the rule cell by cell in row-major order.
LabelMatrix rule_matrix(const LocalRule& rule, std::size_t rows, std::size_t cols);

/// Glue serialization: a west-type vector of length 1 prints as the bare
/// symbol, longer ones as "(a,b,...)"; a south-type block prints its rows
/// bottom-to-top joined by '|'. Bottom prints as '_'.
std::string west_glue(const std::vector<Symbol>& west);
std::string south_glue(const std::vector<std::vector<Symbol>>& south);

/// Which boundary case a window falls into.
enum class TileRole { seed, row0, column0, interior };
TileRole classify(const WindowContent& w);

/// Tile for one window. Glues: W = west, S = south, E = west shifted left
/// with the new symbol appended, N = south with (west + symbol) pushed on
/// top and the bottom row dropped. Strengths are 1 except
///   seed     (all bottom)                     N = E = 2
///   row0     (south all bottom, west not)     W = E = 2
///   column0  (west all bottom, south not)     S = N = 2
TileType build_tile(const LocalRule& rule, const WindowContent& w);

inline constexpr std::uint64_t kDefaultTileBudget = 1'000'000;

/// One tile per element of the rule's domain, in lexicographic window
/// order; the all-bottom seed tile is id 0. Throws std::length_error when
/// (|L| + 1)^(n^2 - 1) exceeds `budget`.
TileSystem build_full_system(const LocalRule& rule, std::uint64_t budget = kDefaultTileBudget);

/// Windows that occur in rule_matrix over the horizon.
struct WindowCensus {
  std::set<WindowContent> windows;
  /// True when the last row and last column of the horizon contribute no
  /// window that does not already occur elsewhere in it.
  bool saturated = false;
};

WindowCensus census_windows(const LocalRule& rule, std::size_t rows, std::size_t cols);

inline constexpr std::size_t kDefaultPruneHorizon = 243;

/// Keeps the tiles of `system` that correspond to windows occurring in the
/// horizon, preserving their relative order and renumbering densely.
/// Throws std::invalid_argument if an occurring window has no tile in
/// `system`.
TileSystem prune_reachable(const TileSystem& system, const LocalRule& rule, std::size_t rows, std::size_t cols);

/// M[i,j] = a M[i,j-1] + b M[i-1,j-1] + c M[i-1,j] mod p as an n = 2 rule;
/// bottom cells count as 0 and the all-bottom window yields 1.
LocalRule delannoy_rule(const Coefficients& coeffs);

/// a = b = c = 1, p = 3.
LocalRule carpet_rule();

/// f == value everywhere.
LocalRule constant_rule(int alphabet_size, Symbol value, int n = 2);

/// The 30-tile carpet set written out directly: seed, one row-0 tile, one
/// column-0 tile and the 27 tiles W = x, S = (y,z), E = w, N = (x,w) with
/// w = x + y + z mod 3. Ordered like prune_reachable's output.
TileSystem carpet_system();

} // namespace fractile
