#include "fractile/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace fractile {

FormatError::FormatError(std::size_t line, const std::string& what)
  : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
{
}

namespace {

class LineReader {
public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-blank line split on whitespace; throws at end of input.
  std::vector<std::string> next(const char* expecting)
  {
    std::string text;
    while (std::getline(is_, text)) {
      ++line_;
      std::istringstream ss(text);
      std::vector<std::string> words;
      for (std::string w; ss >> w;)
        words.push_back(w);
      if (!words.empty())
        return words;
    }
    throw FormatError(line_, std::string("unexpected end of input, expected ") + expecting);
  }

  void expect_end()
  {
    std::string text;
    while (std::getline(is_, text)) {
      ++line_;
      if (text.find_first_not_of(" \t\r") != std::string::npos)
        throw FormatError(line_, "trailing content");
    }
  }

  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(line_, what); }

  std::int64_t integer(const std::string& word, std::int64_t lo, std::int64_t hi) const
  {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(word, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + word + "'");
    }
    if (used != word.size())
      fail("expected an integer, got '" + word + "'");
    if (v < lo || v > hi)
      fail("value " + word + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  // "<keyword> <int>" on one line.
  std::int64_t keyed(const char* keyword, std::int64_t lo, std::int64_t hi)
  {
    const auto words = next(keyword);
    if (words.size() != 2 || words[0] != keyword)
      fail(std::string("expected '") + keyword + " <n>'");
    return integer(words[1], lo, hi);
  }

  void header(const char* magic)
  {
    const auto words = next(magic);
    if (words.size() != 2 || words[0] != magic)
      fail(std::string("missing '") + magic + "' header");
    if (words[1] != "v1")
      fail("unsupported version " + words[1]);
  }

private:
  std::istream& is_;
  std::size_t line_ = 0;
};

constexpr std::int64_t kMaxSide = 1 << 20;
constexpr std::int64_t kIntMax = std::numeric_limits<std::int32_t>::max();

std::string color_token(const std::string& color)
{
  if (color.empty())
    return "-";
  if (color == "-" || std::any_of(color.begin(), color.end(), [](unsigned char ch) { return std::isspace(ch); }))
    throw std::invalid_argument("glue color '" + color + "' cannot be serialized");
  return color;
}

} // namespace

void write_grid(std::ostream& os, const ResidueMatrix& m)
{
  os << "fractile-grid v1\n";
  os << "rows " << m.rows() << " cols " << m.cols() << " modulus " << m.modulus() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? " " : "") << m(i, j);
    os << "\n";
  }
}

ResidueMatrix read_grid(std::istream& is)
{
  LineReader in(is);
  in.header("fractile-grid");
  const auto dims = in.next("dimensions");
  if (dims.size() != 6 || dims[0] != "rows" || dims[2] != "cols" || dims[4] != "modulus")
    in.fail("expected 'rows R cols C modulus P'");
  const auto rows = static_cast<std::size_t>(in.integer(dims[1], 0, kMaxSide));
  const auto cols = static_cast<std::size_t>(in.integer(dims[3], 0, kMaxSide));
  const auto modulus = static_cast<Residue>(in.integer(dims[5], 2, kIntMax));
  std::vector<Residue> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto words = in.next("a grid row");
    if (words.size() != cols)
      in.fail("row has " + std::to_string(words.size()) + " entries, expected " + std::to_string(cols));
    for (const auto& w : words)
      entries.push_back(static_cast<Residue>(in.integer(w, 0, modulus - 1)));
  }
  in.expect_end();
  try {
    return ResidueMatrix(rows, cols, modulus, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw FormatError(0, e.what());
  }
}

void write_tileset(std::ostream& os, const TileSystem& system)
{
  os << "fractile-tileset v1\n";
  os << "temperature " << system.temperature() << "\n";
  os << "seed " << system.seed() << "\n";
  os << "tiles " << system.size() << "\n";
  for (const TileType& t : system.tiles()) {
    os << "tile " << t.id << " label " << t.label;
    for (Direction d : kDirections)
      os << " " << direction_name(d) << " " << color_token(t.color(d)) << " " << t.strength(d);
    os << "\n";
  }
}

TileSystem read_tileset(std::istream& is)
{
  LineReader in(is);
  in.header("fractile-tileset");
  const auto temperature = static_cast<int>(in.keyed("temperature", 1, 1000));
  const auto seed = static_cast<TileId>(in.keyed("seed", 0, kIntMax));
  const auto count = static_cast<std::size_t>(in.keyed("tiles", 0, 1 << 24));
  if (count != 0 && seed >= count)
    in.fail("seed id " + std::to_string(seed) + " not below tile count " + std::to_string(count));

  std::vector<TileType> tiles;
  tiles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto w = in.next("a tile record");
    if (w.size() != 4 + 3 * kDirections.size() || w[0] != "tile" || w[2] != "label")
      in.fail("expected 'tile <id> label <l> N <c> <s> E <c> <s> S <c> <s> W <c> <s>'");
    TileType t;
    t.id = static_cast<TileId>(in.integer(w[1], 0, kIntMax));
    if (t.id != i)
      in.fail("tile id " + w[1] + " out of sequence, expected " + std::to_string(i));
    t.label = static_cast<Symbol>(in.integer(w[3], 0, kIntMax));
    for (std::size_t k = 0; k < kDirections.size(); ++k) {
      const Direction d = kDirections[k];
      const std::size_t at = 4 + 3 * k;
      if (w[at] != std::string(1, direction_name(d)))
        in.fail(std::string("expected direction ") + direction_name(d) + ", got '" + w[at] + "'");
      t.glue(d).color = w[at + 1] == "-" ? std::string() : w[at + 1];
      t.glue(d).strength = static_cast<int>(in.integer(w[at + 2], 0, 2));
    }
    tiles.push_back(std::move(t));
  }
  in.expect_end();
  return TileSystem(std::move(tiles), seed, temperature);
}

void write_assembly(std::ostream& os, const Assembly& assembly, const TileSystem& system, Bound bound)
{
  const auto placed = sorted_placements(assembly);
  os << "fractile-assembly v1\n";
  os << "bound " << bound.rows << " " << bound.cols << "\n";
  os << "placements " << placed.size() << "\n";
  for (const auto& [pos, id] : placed)
    os << pos.x << " " << pos.y << " " << id << " " << system.tile(id).label << "\n";
}

LabelMatrix read_assembly_labels(std::istream& is)
{
  LineReader in(is);
  in.header("fractile-assembly");
  const auto b = in.next("bound");
  if (b.size() != 3 || b[0] != "bound")
    in.fail("expected 'bound R C'");
  const auto rows = static_cast<std::size_t>(in.integer(b[1], 1, kMaxSide));
  const auto cols = static_cast<std::size_t>(in.integer(b[2], 1, kMaxSide));
  const auto count = static_cast<std::size_t>(in.keyed("placements", 0, static_cast<std::int64_t>(rows * cols)));
  std::vector<Symbol> entries(rows * cols, kBottom);
  for (std::size_t k = 0; k < count; ++k) {
    const auto w = in.next("a placement");
    if (w.size() != 4)
      in.fail("expected '<x> <y> <tile id> <label>'");
    const auto x = static_cast<std::size_t>(in.integer(w[0], 0, static_cast<std::int64_t>(rows) - 1));
    const auto y = static_cast<std::size_t>(in.integer(w[1], 0, static_cast<std::int64_t>(cols) - 1));
    in.integer(w[2], 0, kIntMax);
    Symbol& cell = entries[x * cols + y];
    if (!is_bottom(cell))
      in.fail("position " + w[0] + " " + w[1] + " listed twice");
    cell = static_cast<Symbol>(in.integer(w[3], 0, kIntMax));
  }
  in.expect_end();
  return LabelMatrix(rows, cols, std::move(entries));
}

LabelMatrix assembly_labels(const Assembly& assembly, const TileSystem& system, Bound bound)
{
  const auto rows = static_cast<std::size_t>(bound.rows);
  const auto cols = static_cast<std::size_t>(bound.cols);
  std::vector<Symbol> entries(rows * cols, kBottom);
  for (const auto& [pos, id] : assembly.placements())
    if (bound.contains(pos))
      entries[static_cast<std::size_t>(pos.x) * cols + static_cast<std::size_t>(pos.y)] = system.tile(id).label;
  return LabelMatrix(rows, cols, std::move(entries));
}

LabelMatrix to_labels(const ResidueMatrix& m)
{
  std::vector<Symbol> entries(m.entries().begin(), m.entries().end());
  return LabelMatrix(m.rows(), m.cols(), std::move(entries));
}

void validate_render_spec(const RenderSpec& spec, int modulus)
{
  if (spec.cell_size < 1)
    throw std::invalid_argument("cell size must be at least 1");
  for (Symbol r = spec.zero_as_background ? 1 : 0; r < modulus; ++r)
    if (spec.palette.count(r) == 0)
      throw std::invalid_argument("palette has no colour for residue " + std::to_string(r));
}

void write_ppm(std::ostream& os, const LabelMatrix& labels, const RenderSpec& spec)
{
  if (spec.cell_size < 1)
    throw std::invalid_argument("cell size must be at least 1");
  const auto cell = static_cast<std::size_t>(spec.cell_size);
  const std::size_t width = labels.cols() * cell;
  const std::size_t height = labels.rows() * cell;

  const auto colour = [&](Symbol s) -> Rgb {
    if (is_bottom(s) || (s == 0 && spec.zero_as_background))
      return spec.background;
    auto it = spec.palette.find(s);
    if (it == spec.palette.end())
      throw std::invalid_argument("palette has no colour for residue " + std::to_string(s));
    return it->second;
  };

  std::string pixels;
  pixels.reserve(width * height * 3);
  std::string scanline;
  for (std::size_t r = labels.rows(); r-- > 0;) {
    scanline.clear();
    for (std::size_t c = 0; c < labels.cols(); ++c) {
      const Rgb rgb = colour(labels(r, c));
      for (std::size_t k = 0; k < cell; ++k)
        scanline.append(reinterpret_cast<const char*>(rgb.data()), 3);
    }
    for (std::size_t k = 0; k < cell; ++k)
      pixels += scanline;
  }
  os << "P6\n" << width << " " << height << "\n255\n";
  os.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
}

namespace {

Rgb hue(double h)
{
  // Full saturation and value.
  const double x = 1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0);
  double r = 0, g = 0, b = 0;
  if (h < 60) r = 1, g = x;
  else if (h < 120) r = x, g = 1;
  else if (h < 180) g = 1, b = x;
  else if (h < 240) g = x, b = 1;
  else if (h < 300) r = x, b = 1;
  else r = 1, b = x;
  const auto byte = [](double v) { return static_cast<std::uint8_t>(std::lround(v * 255.0)); };
  return {byte(r), byte(g), byte(b)};
}

} // namespace

std::map<Symbol, Rgb> parse_palette(const std::string& text, int modulus)
{
  std::map<Symbol, Rgb> palette;
  if (text == "mono") {
    palette[0] = {255, 255, 255};
    for (Symbol r = 1; r < modulus; ++r)
      palette[r] = {0, 0, 0};
    return palette;
  }
  if (text == "spectrum") {
    palette[0] = {255, 255, 255};
    for (Symbol r = 1; r < modulus; ++r)
      palette[r] = hue(360.0 * (r - 1) / std::max(1, modulus - 1));
    return palette;
  }

  std::istringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    const std::string hex = eq == std::string::npos ? "" : item.substr(eq + 1);
    if (eq == std::string::npos || key.empty() || key.size() > 9 || hex.size() != 6 ||
        !std::all_of(key.begin(), key.end(), [](unsigned char ch) { return std::isdigit(ch); }) ||
        !std::all_of(hex.begin(), hex.end(), [](unsigned char ch) { return std::isxdigit(ch); }))
      throw std::invalid_argument("bad palette entry '" + item + "', expected <residue>=<rrggbb>");
    const auto value = std::stoul(hex, nullptr, 16);
    palette[static_cast<Symbol>(std::stoi(key))] = {static_cast<std::uint8_t>(value >> 16),
                                                    static_cast<std::uint8_t>(value >> 8),
                                                    static_cast<std::uint8_t>(value)};
  }
  return palette;
}

} // namespace fractile
