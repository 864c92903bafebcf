#include "fractile/tilegen.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace fractile {

namespace {

bool all_bottom(const std::vector<Symbol>& v)
{
  return std::all_of(v.begin(), v.end(), is_bottom);
}

} // namespace

bool WindowContent::west_all_bottom() const
{
  return all_bottom(west);
}

bool WindowContent::south_all_bottom() const
{
  return std::all_of(south.begin(), south.end(), [](const auto& row) { return all_bottom(row); });
}

LocalRule::LocalRule(WindowSpec window, int alphabet_size, Function f, std::string name)
  : n_(window.n()), alphabet_size_(alphabet_size), f_(std::move(f)), name_(std::move(name))
{
  if (alphabet_size < 1)
    throw std::invalid_argument("alphabet must be non-empty");
  if (!f_)
    throw std::invalid_argument("local rule needs a function");
}

void LocalRule::check_window(const WindowContent& w) const
{
  const auto bad = [&](Symbol s) { return s != kBottom && (s < 0 || s >= alphabet_size_); };
  if (w.west.size() != static_cast<std::size_t>(n_ - 1) || w.south.size() != static_cast<std::size_t>(n_ - 1))
    throw std::invalid_argument("window shape does not match n = " + std::to_string(n_));
  if (std::any_of(w.west.begin(), w.west.end(), bad))
    throw std::invalid_argument("window holds a symbol outside the alphabet");
  for (const auto& row : w.south) {
    if (row.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("window shape does not match n = " + std::to_string(n_));
    if (std::any_of(row.begin(), row.end(), bad))
      throw std::invalid_argument("window holds a symbol outside the alphabet");
  }
}

Symbol LocalRule::evaluate(const WindowContent& w) const
{
  check_window(w);
  const Symbol out = f_(w);
  if (out < 0 || out >= alphabet_size_)
    throw std::logic_error("rule '" + name_ + "' produced " + std::to_string(out) + " outside its alphabet");
  return out;
}

LabelMatrix::LabelMatrix(std::size_t rows, std::size_t cols, std::vector<Symbol> entries)
  : rows_(rows), cols_(cols), entries_(std::move(entries))
{
  if (entries_.size() != rows * cols)
    throw std::invalid_argument("entry count does not match window shape");
}

Symbol LabelMatrix::at(std::int64_t x, std::int64_t y) const
{
  if (x < 0 || y < 0)
    return kBottom;
  if (static_cast<std::uint64_t>(x) >= rows_ || static_cast<std::uint64_t>(y) >= cols_)
    throw std::out_of_range("position outside label window");
  return (*this)(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
}

bool same_entries(const LabelMatrix& labels, const ResidueMatrix& residues)
{
  if (labels.rows() != residues.rows() || labels.cols() != residues.cols())
    return false;
  for (std::size_t i = 0; i < labels.rows(); ++i)
    for (std::size_t j = 0; j < labels.cols(); ++j)
      if (labels(i, j) != static_cast<Symbol>(residues(i, j)))
        return false;
  return true;
}

namespace {

// `get(x, y)` must return kBottom for negative coordinates.
template <class Get>
WindowContent read_window(Get&& get, std::int64_t x, std::int64_t y, int n)
{
  WindowContent w;
  w.west.reserve(n - 1);
  for (int k = 0; k < n - 1; ++k)
    w.west.push_back(get(x, y - n + 1 + k));
  w.south.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    w.south[i].reserve(n);
    for (int k = 0; k < n; ++k)
      w.south[i].push_back(get(x - 1 - i, y - n + 1 + k));
  }
  return w;
}

} // namespace

WindowContent window_at(const LabelMatrix& m, std::int64_t x, std::int64_t y, int n)
{
  return read_window([&m](std::int64_t i, std::int64_t j) { return m.at(i, j); }, x, y, n);
}

LabelMatrix rule_matrix(const LocalRule& rule, std::size_t rows, std::size_t cols)
{
  // Row-major fill: every cell a window reads is negative (bottom) or
  // already computed.
  std::vector<Symbol> entries(rows * cols, 0);
  const auto get = [&](std::int64_t i, std::int64_t j) -> Symbol {
    return (i < 0 || j < 0) ? kBottom : entries[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)];
  };
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      entries[i * cols + j] = rule.evaluate(read_window(get, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), rule.n()));
  return LabelMatrix(rows, cols, std::move(entries));
}

std::string west_glue(const std::vector<Symbol>& west)
{
  if (west.size() == 1)
    return symbol_to_string(west.front());
  std::string out = "(";
  for (std::size_t k = 0; k < west.size(); ++k) {
    if (k > 0)
      out += ',';
    out += symbol_to_string(west[k]);
  }
  return out + ")";
}

std::string south_glue(const std::vector<std::vector<Symbol>>& south)
{
  std::string out;
  for (auto row = south.rbegin(); row != south.rend(); ++row) {
    if (!out.empty())
      out += '|';
    out += '(';
    for (std::size_t k = 0; k < row->size(); ++k) {
      if (k > 0)
        out += ',';
      out += symbol_to_string((*row)[k]);
    }
    out += ')';
  }
  return out;
}

TileRole classify(const WindowContent& w)
{
  const bool west = w.west_all_bottom(), south = w.south_all_bottom();
  if (west && south)
    return TileRole::seed;
  if (south)
    return TileRole::row0;
  if (west)
    return TileRole::column0;
  return TileRole::interior;
}

TileType build_tile(const LocalRule& rule, const WindowContent& w)
{
  const Symbol b = rule.evaluate(w);

  std::vector<Symbol> east(w.west.begin() + 1, w.west.end());
  east.push_back(b);

  std::vector<Symbol> top = w.west;
  top.push_back(b);
  std::vector<std::vector<Symbol>> north;
  north.push_back(std::move(top));
  north.insert(north.end(), w.south.begin(), w.south.end() - 1);

  TileType t;
  t.label = b;
  t.glue(Direction::W) = {west_glue(w.west), 1};
  t.glue(Direction::S) = {south_glue(w.south), 1};
  t.glue(Direction::E) = {west_glue(east), 1};
  t.glue(Direction::N) = {south_glue(north), 1};

  switch (classify(w)) {
  case TileRole::seed:
    t.glue(Direction::N).strength = 2;
    t.glue(Direction::E).strength = 2;
    break;
  case TileRole::row0:
    t.glue(Direction::W).strength = 2;
    t.glue(Direction::E).strength = 2;
    break;
  case TileRole::column0:
    t.glue(Direction::S).strength = 2;
    t.glue(Direction::N).strength = 2;
    break;
  case TileRole::interior:
    break;
  }
  return t;
}

TileSystem build_full_system(const LocalRule& rule, std::uint64_t budget)
{
  const int n = rule.n();
  const std::size_t cells = static_cast<std::size_t>(n) * n - 1;
  const std::uint64_t radix = static_cast<std::uint64_t>(rule.alphabet_size()) + 1;
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < cells; ++k) {
    if (count > budget / radix)
      throw std::length_error("full tile set for rule '" + rule.name() + "' exceeds budget of " +
                              std::to_string(budget) + " tiles");
    count *= radix;
  }

  // Odometer over the domain, last cell fastest: lexicographic in
  // (west, south) because digit 0 is bottom.
  std::vector<std::uint64_t> digits(cells, 0);
  std::vector<TileType> tiles;
  tiles.reserve(count);
  for (std::uint64_t index = 0; index < count; ++index) {
    WindowContent w;
    std::size_t d = 0;
    for (int k = 0; k < n - 1; ++k)
      w.west.push_back(static_cast<Symbol>(digits[d++]) - 1);
    w.south.resize(n - 1);
    for (int i = 0; i < n - 1; ++i)
      for (int k = 0; k < n; ++k)
        w.south[i].push_back(static_cast<Symbol>(digits[d++]) - 1);
    tiles.push_back(build_tile(rule, w));

    for (std::size_t pos = cells; pos-- > 0;) {
      if (++digits[pos] < radix)
        break;
      digits[pos] = 0;
    }
  }
  return TileSystem(std::move(tiles), 0, 2);
}

WindowCensus census_windows(const LocalRule& rule, std::size_t rows, std::size_t cols)
{
  const LabelMatrix m = rule_matrix(rule, rows, cols);
  WindowCensus census;
  std::set<WindowContent> edge;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      auto w = window_at(m, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), rule.n());
      if (i + 1 == rows || j + 1 == cols)
        edge.insert(w);
      else
        census.windows.insert(std::move(w));
    }
  }
  census.saturated = std::includes(census.windows.begin(), census.windows.end(), edge.begin(), edge.end());
  census.windows.insert(edge.begin(), edge.end());
  return census;
}

namespace {

std::string face_signature(const TileType& t)
{
  std::string sig = std::to_string(t.label);
  for (Direction d : kDirections)
    sig += ' ' + t.color(d) + '@' + std::to_string(t.strength(d));
  return sig;
}

} // namespace

TileSystem prune_reachable(const TileSystem& system, const LocalRule& rule, std::size_t rows, std::size_t cols)
{
  const WindowCensus census = census_windows(rule, rows, cols);
  std::map<std::string, TileId> by_faces;
  for (const TileType& t : system.tiles())
    by_faces.emplace(face_signature(t), t.id);

  std::vector<bool> keep(system.size(), false);
  keep[system.seed()] = true;
  for (const WindowContent& w : census.windows) {
    auto it = by_faces.find(face_signature(build_tile(rule, w)));
    if (it == by_faces.end())
      throw std::invalid_argument("tile system has no tile for window " + west_glue(w.west) + " / " +
                                  south_glue(w.south));
    keep[it->second] = true;
  }
  std::vector<TileType> kept;
  TileId seed = 0;
  for (const TileType& t : system.tiles()) {
    if (!keep[t.id])
      continue;
    if (t.id == system.seed())
      seed = static_cast<TileId>(kept.size());
    kept.push_back(t);
  }
  return TileSystem(std::move(kept), seed, system.temperature());
}

LocalRule delannoy_rule(const Coefficients& coeffs)
{
  const std::uint64_t a = coeffs.a(), b = coeffs.b(), c = coeffs.c(), p = coeffs.p();
  auto f = [a, b, c, p](const WindowContent& w) -> Symbol {
    const Symbol west = w.west[0], south_west = w.south[0][0], south = w.south[0][1];
    if (is_bottom(west) && is_bottom(south_west) && is_bottom(south))
      return static_cast<Symbol>(1 % p);
    const auto v = [](Symbol s) -> std::uint64_t { return is_bottom(s) ? 0 : static_cast<std::uint64_t>(s); };
    return static_cast<Symbol>((a * v(west) + b * v(south_west) + c * v(south)) % p);
  };
  return LocalRule(WindowSpec(2), static_cast<int>(p), f,
                   "delannoy(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ";" +
                     std::to_string(p) + ")");
}

LocalRule carpet_rule()
{
  return delannoy_rule(Coefficients(1, 1, 1, 3));
}

LocalRule constant_rule(int alphabet_size, Symbol value, int n)
{
  if (value < 0 || value >= alphabet_size)
    throw std::invalid_argument("constant rule value outside alphabet");
  return LocalRule(WindowSpec(n), alphabet_size, [value](const WindowContent&) { return value; },
                   "constant(" + std::to_string(value) + ")");
}

TileSystem carpet_system()
{
  using Key = std::tuple<Symbol, Symbol, Symbol>; // west, south-west, south
  std::map<Key, TileType> by_window;

  const auto tile = [](Symbol label, Glue n, Glue e, Glue s, Glue w) {
    TileType t;
    t.label = label;
    t.glue(Direction::N) = std::move(n);
    t.glue(Direction::E) = std::move(e);
    t.glue(Direction::S) = std::move(s);
    t.glue(Direction::W) = std::move(w);
    return t;
  };

  by_window[{kBottom, kBottom, kBottom}] = tile(1, {"(_,1)", 2}, {"1", 2}, {"(_,_)", 1}, {"_", 1});
  by_window[{kBottom, kBottom, 1}] = tile(1, {"(_,1)", 2}, {"1", 1}, {"(_,1)", 2}, {"_", 1});
  by_window[{1, kBottom, kBottom}] = tile(1, {"(1,1)", 1}, {"1", 2}, {"(_,_)", 1}, {"1", 2});
  for (Symbol x = 0; x < 3; ++x)
    for (Symbol y = 0; y < 3; ++y)
      for (Symbol z = 0; z < 3; ++z) {
        const Symbol w = (x + y + z) % 3;
        const std::string xs = std::to_string(x), ws = std::to_string(w);
        by_window[{x, y, z}] = tile(w, {"(" + xs + "," + ws + ")", 1}, {ws, 1},
                                    {"(" + std::to_string(y) + "," + std::to_string(z) + ")", 1}, {xs, 1});
      }

  std::vector<TileType> tiles;
  for (auto& [key, t] : by_window)
    tiles.push_back(std::move(t));
  return TileSystem(std::move(tiles), 0, 2);
}

} // namespace fractile
