#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fractile/matrix.hpp"

namespace fractile {

/// A u x u view into a ResidueMatrix with lower-left corner (x, y):
/// view(i, j) == matrix(x + i, y + j). Must not outlive the matrix.
class Block {
public:
  Block(const ResidueMatrix& matrix, std::size_t x, std::size_t y, std::size_t size);

  std::size_t origin_x() const { return x_; }
  std::size_t origin_y() const { return y_; }
  std::size_t size() const { return size_; }
  Residue operator()(std::size_t i, std::size_t j) const { return (*matrix_)(x_ + i, y_ + j); }

private:
  const ResidueMatrix* matrix_;
  std::size_t x_, y_, size_;
};

/// Throws std::out_of_range unless the block fits inside the window.
Block block(const ResidueMatrix& matrix, std::size_t x, std::size_t y, std::size_t u);

/// candidate == n * reference_unit (mod p), entry by entry. The reference
/// must be anchored at the origin and have the candidate's size
/// (std::invalid_argument otherwise).
bool is_n_block(const Block& candidate, const Block& reference_unit, Residue n, Residue p);

/// Indices of one instance of M[s p^k + i, t p^k + j] == M[s,t] M[i,j].
struct SelfSimWitness {
  unsigned k = 0;
  std::size_t s = 0, t = 0, i = 0, j = 0;

  /// Coordinates of the left-hand cell for base p.
  std::size_t row(std::size_t p) const;
  std::size_t col(std::size_t p) const;

  friend bool operator==(const SelfSimWitness&, const SelfSimWitness&) = default;
};

struct SelfSimReport {
  Residue p = 0;
  /// Largest exponent examined; -1 when the window is smaller than p.
  int max_k = -1;
  bool holds = true;
  std::size_t checked = 0;
  /// Lexicographically least (k, s, t, i, j) violation.
  std::optional<SelfSimWitness> first_violation;
};

/// Exhaustive check of numerical p-self-similarity modulo p on a square
/// window. Every k with p^k < side is examined; instances whose left-hand
/// cell falls outside the window are skipped, so every cell of the window
/// is covered.
SelfSimReport check_self_similarity(const ResidueMatrix& matrix, Residue p);

/// Re-evaluates a witness against the matrix: true iff the congruence fails.
bool witness_violates(const ResidueMatrix& matrix, const SelfSimWitness& w);

enum class LemmaStatus { pass, fail, not_applicable };

struct LemmaResult {
  std::string name;
  LemmaStatus status = LemmaStatus::pass;
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::optional<std::string> counterexample;
};

struct LemmaReport {
  Coefficients coeffs;
  unsigned k_max = 0;
  std::size_t side = 0;
  std::vector<LemmaResult> lemmas;

  bool all_hold() const;
  const LemmaResult* find(const std::string& name) const;
};

inline constexpr std::size_t kDefaultLemmaCellBudget = std::size_t{1} << 24;

/// Brute-force evaluation of the supporting lemmas of the self-similarity
/// theorem on one materialised matrix of side p^(k_max+1):
///
///  corner              M[0, p^k - 1] == M[p^k - 1, 0] == 1 (needs a, c != 0
///                      for k >= 1; those instances are skipped otherwise)
///  row_repeat          M[0, t p^k + j] == a^t a^j
///  column_repeat       M[s p^k + i, 0] == c^s c^i
///  edge_sum_row        a M[i, p-1] + b M[i-1, p-1] == 0, 0 < i < p
///  edge_sum_column     b M[p-1, j-1] + c M[p-1, j] == 0, 0 < j < p
///  run_row             if b M[i-1, x+j-1] + c M[i-1, x+j] == 0 along a run,
///                      then M[i, x+j] == M[i, x] a^j along it
///  run_column          the transposed statement with a and c exchanged
///  alternating_column  a = b = c = 1 only: M[i, p-1] is 1 for even i and
///                      p-1 for odd i
///
/// Throws std::invalid_argument for k_max == 0 and std::length_error when
/// side^2 exceeds `cell_budget`.
LemmaReport check_lemmas(const Coefficients& coeffs, unsigned k_max,
                         std::size_t cell_budget = kDefaultLemmaCellBudget);

struct Point {
  std::size_t x = 0, y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Cells whose residue lies in `keep`, in row-major order.
/// Throws std::invalid_argument if `keep` names a value >= modulus.
std::vector<Point> fractal_set(const ResidueMatrix& matrix, const std::set<Residue>& keep);

/// {1, ..., modulus - 1}
std::set<Residue> nonzero_residues(Residue modulus);

} // namespace fractile
