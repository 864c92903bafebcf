#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fractile/symbol.hpp"

namespace fractile {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

/// base^exp mod m, with 0^0 = 1.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// binomial(n, k) mod p for prime p, via the base-p digit product (Lucas).
std::uint64_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p);

/// Coefficients of the three-term recursion
///   M[i,j] = a M[i,j-1] + b M[i-1,j-1] + c M[i-1,j]  (mod p).
/// The modulus must be prime; a, b, c are stored reduced.
class Coefficients {
public:
  /// Throws std::invalid_argument if p is not prime.
  Coefficients(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t p);

  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }
  std::uint64_t c() const { return c_; }
  std::uint64_t p() const { return p_; }

  /// (c, b, a): the coefficients of the transposed matrix.
  Coefficients transposed() const { return Coefficients(c_, b_, a_, p_); }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

private:
  std::uint64_t a_, b_, c_, p_;
};

/// Dense row-major window [0, rows) x [0, cols) of an infinite matrix of
/// residues. Immutable once built.
class ResidueMatrix {
public:
  ResidueMatrix(std::size_t rows, std::size_t cols, Residue modulus, std::vector<Residue> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue modulus() const { return modulus_; }

  Residue operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Logical accessor over Z^2: kBottom when x < 0 or y < 0, the residue
  /// inside the window, std::out_of_range past the window.
  Symbol at(std::int64_t x, std::int64_t y) const;

  const std::vector<Residue>& entries() const { return entries_; }

  /// Copy with one entry replaced (used for negative controls).
  ResidueMatrix with_entry(std::size_t i, std::size_t j, Residue value) const;

  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  Residue modulus_;
  std::vector<Residue> entries_;
};

/// Side of the square neighbourhood a local rule reads. Must be >= 2.
class WindowSpec {
public:
  explicit WindowSpec(int n);
  int n() const { return n_; }

private:
  int n_;
};

ResidueMatrix delannoy_matrix(const Coefficients& coeffs, std::size_t rows, std::size_t cols);

/// binomial(i+j, j) mod p, built as the a=1, b=0, c=1 instance.
ResidueMatrix pascal_matrix(std::uint64_t p, std::size_t rows, std::size_t cols);

/// Closed form for entry [i,j]:
///   sum_k C(j,k) C(j+i-k, i-k) a^(j-k) b^k c^(i-k)   for i <= j,
/// and the same with (i, a) and (j, c) exchanged otherwise.
Residue closed_form(const Coefficients& coeffs, std::uint64_t i, std::uint64_t j);

inline constexpr std::uint64_t kPathOracleLimit = 22;

/// Sum over all monotone lattice paths (0,0) -> (i,j) with horizontal,
/// vertical and diagonal steps of a^h b^d c^v, by explicit enumeration.
/// Throws std::length_error when i + j > kPathOracleLimit.
Residue path_cost_oracle(const Coefficients& coeffs, std::uint64_t i, std::uint64_t j);

} // namespace fractile
