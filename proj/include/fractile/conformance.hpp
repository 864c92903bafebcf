#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractile/tam.hpp"
#include "fractile/tilegen.hpp"

namespace fractile {

struct LabelMismatch {
  Position pos;
  Symbol expected = 0;
  std::optional<Symbol> observed; ///< empty when the cell was never filled
  std::uint64_t seed = 0;
};

struct ConformanceReport {
  std::string system_id;
  Bound bound;
  std::size_t tile_count = 0;
  std::size_t trials = 0;
  bool matches = true;
  std::optional<LabelMismatch> mismatch;
  bool directed = true;
  std::optional<DirectednessWitness> divergence;

  bool ok() const { return matches && directed; }
};

struct VerifyOptions {
  std::size_t trials = 1;
  std::uint64_t first_seed = 0;
  MismatchMode mode = MismatchMode::strict;
  bool prune = true;
  /// Side of the pruning horizon; 0 selects max(243, bound).
  std::size_t prune_horizon = 0;
  std::uint64_t tile_budget = kDefaultTileBudget;
};

/// Runs `trials` seeded assemblies of `system` over the bound and checks
/// every cell's label against rule_matrix, then compares the trials'
/// placement maps with each other. Failures are reported, not thrown.
ConformanceReport verify_system(const TileSystem& system, const LocalRule& rule, Bound bound,
                                const VerifyOptions& options, std::string system_id);

/// Builds the (pruned) system for `rule` and calls verify_system.
ConformanceReport verify_self_assembly(const LocalRule& rule, Bound bound, const VerifyOptions& options = {});

struct ClauseViolation {
  char clause = 'a';
  std::size_t step = 0;
  Position pos;
  std::string detail;
};

struct ClauseReport {
  std::size_t steps = 0;
  std::vector<ClauseViolation> violations;

  bool holds() const { return violations.empty(); }
  bool holds(char clause) const;
};

/// Replays the attachment order of an assembly grown from a constructed
/// system and checks after every step:
///   (a) the filled region is closed downward and leftward
///   (b) nothing sits at a negative coordinate
///   (c) a tile with a strength-2 east edge sits in row 0
///   (d) a tile with a strength-2 north edge sits in column 0
///   (e) the tile equals build_tile of the rule's window at its position
ClauseReport check_induction_clauses(const Assembly& assembly, const TileSystem& system, const LocalRule& rule);

std::string render_text(const ConformanceReport& report);
std::string render_text(const ClauseReport& report);
/// Machine-readable form; schema in docs/formats.md.
std::string render_json(const ConformanceReport& report);

} // namespace fractile
