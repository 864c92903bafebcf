#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "fractile/matrix.hpp"
#include "fractile/tam.hpp"
#include "fractile/tilegen.hpp"

namespace fractile {

/// Malformed input file; `line` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
public:
  FormatError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Residue grid:
//   fractile-grid v1
//   rows R cols C modulus P
//   R lines of C space-separated residues, row 0 first
void write_grid(std::ostream& os, const ResidueMatrix& m);
ResidueMatrix read_grid(std::istream& is);

// Tileset:
//   fractile-tileset v1
//   temperature T
//   seed S
//   tiles K
//   tile <id> label <l> N <color> <str> E <color> <str> S <color> <str> W <color> <str>
// Ids run 0..K-1 in order. An empty color is written as '-'.
void write_tileset(std::ostream& os, const TileSystem& system);
TileSystem read_tileset(std::istream& is);

// Assembly dump:
//   fractile-assembly v1
//   bound R C
//   placements K
//   <x> <y> <tile id> <label>     sorted by (x, y)
// Nothing about the attachment order or the seed is written, so two runs
// that produce the same placement map produce the same bytes.
void write_assembly(std::ostream& os, const Assembly& assembly, const TileSystem& system, Bound bound);

/// Labels of a dumped assembly over its bound; unfilled cells hold kBottom.
LabelMatrix read_assembly_labels(std::istream& is);

/// Labels of the assembly over the bound; unfilled cells hold kBottom.
LabelMatrix assembly_labels(const Assembly& assembly, const TileSystem& system, Bound bound);
LabelMatrix to_labels(const ResidueMatrix& m);

using Rgb = std::array<std::uint8_t, 3>;

struct RenderSpec {
  std::map<Symbol, Rgb> palette;
  int cell_size = 1;
  /// Paint residue 0 with `background` whatever the palette says.
  bool zero_as_background = false;
  /// Colour of residue 0 under zero_as_background and of unfilled cells.
  Rgb background = {255, 255, 255};
};

/// Throws std::invalid_argument unless every residue in [0, modulus) has a
/// colour (0 is exempt under zero_as_background) and cell_size >= 1.
void validate_render_spec(const RenderSpec& spec, int modulus);

/// Binary P6 pixmap of (rows * cell_size) x (cols * cell_size) pixels; row 0
/// of the matrix is the bottom image row. Throws std::invalid_argument on a
/// symbol missing from the palette.
void write_ppm(std::ostream& os, const LabelMatrix& labels, const RenderSpec& spec);

/// "0=ffffff,1=000000,..." or a preset:
///   mono     0 white, everything else black
///   spectrum 0 white, nonzero residues spread over the hue circle
std::map<Symbol, Rgb> parse_palette(const std::string& text, int modulus);

} // namespace fractile
