#include "fractile/matrix.hpp"

#include <stdexcept>
#include <string>

namespace fractile {

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

__extension__ typedef unsigned __int128 Wide;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1)
      result = static_cast<std::uint64_t>((static_cast<Wide>(result) * base) % m);
    base = static_cast<std::uint64_t>((static_cast<Wide>(base) * base) % m);
    exp >>= 1;
  }
  return result;
}

namespace {

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m)
{
  return static_cast<std::uint64_t>((static_cast<Wide>(x) * y) % m);
}

// C(n, k) mod p for n < p: no factor of p appears, so the denominator
// is invertible.
std::uint64_t small_binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p)
{
  if (k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t t = 0; t < k; ++t) {
    num = mul_mod(num, n - t, p);
    den = mul_mod(den, t + 1, p);
  }
  return mul_mod(num, pow_mod(den, p - 2, p), p);
}

} // namespace

std::uint64_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p)
{
  if (k > n)
    return 0;
  std::uint64_t result = 1 % p;
  while (n > 0 || k > 0) {
    const std::uint64_t nd = n % p, kd = k % p;
    if (kd > nd)
      return 0;
    result = mul_mod(result, small_binomial_mod(nd, kd, p), p);
    n /= p;
    k /= p;
  }
  return result;
}

Coefficients::Coefficients(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t p)
{
  if (p > 0x7FFFFFFFull)
    throw std::invalid_argument("modulus " + std::to_string(p) + " exceeds 2^31");
  if (!is_prime(p))
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  a_ = a % p;
  b_ = b % p;
  c_ = c % p;
  p_ = p;
}

WindowSpec::WindowSpec(int n) : n_(n)
{
  if (n < 2)
    throw std::invalid_argument("window size must be at least 2, got " + std::to_string(n));
}

ResidueMatrix::ResidueMatrix(std::size_t rows, std::size_t cols, Residue modulus, std::vector<Residue> entries)
  : rows_(rows), cols_(cols), modulus_(modulus), entries_(std::move(entries))
{
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("matrix window must be non-empty");
  if (modulus < 2)
    throw std::invalid_argument("modulus must be at least 2");
  if (entries_.size() != rows * cols)
    throw std::invalid_argument("entry count does not match window shape");
  for (Residue e : entries_)
    if (e >= modulus)
      throw std::invalid_argument("entry out of residue range");
}

Symbol ResidueMatrix::at(std::int64_t x, std::int64_t y) const
{
  if (x < 0 || y < 0)
    return kBottom;
  if (static_cast<std::uint64_t>(x) >= rows_ || static_cast<std::uint64_t>(y) >= cols_)
    throw std::out_of_range("position (" + std::to_string(x) + "," + std::to_string(y) + ") outside window");
  return static_cast<Symbol>((*this)(static_cast<std::size_t>(x), static_cast<std::size_t>(y)));
}

ResidueMatrix ResidueMatrix::with_entry(std::size_t i, std::size_t j, Residue value) const
{
  if (i >= rows_ || j >= cols_)
    throw std::out_of_range("with_entry outside window");
  auto copy = entries_;
  copy[i * cols_ + j] = value;
  return ResidueMatrix(rows_, cols_, modulus_, std::move(copy));
}

ResidueMatrix delannoy_matrix(const Coefficients& k, std::size_t rows, std::size_t cols)
{
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("matrix window must be non-empty");
  const std::uint64_t p = k.p();
  std::vector<Residue> m(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::uint64_t v;
      if (i == 0 && j == 0)
        v = 1 % p;
      else if (i == 0)
        v = k.a() * m[j - 1] % p;
      else if (j == 0)
        v = k.c() * m[(i - 1) * cols] % p;
      else
        v = (k.a() * m[i * cols + j - 1] + k.b() * m[(i - 1) * cols + j - 1] + k.c() * m[(i - 1) * cols + j]) % p;
      m[i * cols + j] = static_cast<Residue>(v);
    }
  }
  return ResidueMatrix(rows, cols, static_cast<Residue>(p), std::move(m));
}

ResidueMatrix pascal_matrix(std::uint64_t p, std::size_t rows, std::size_t cols)
{
  return delannoy_matrix(Coefficients(1, 0, 1, p), rows, cols);
}

Residue closed_form(const Coefficients& coeffs, std::uint64_t i, std::uint64_t j)
{
  // The recursion is symmetric under (i, j, a, c) -> (j, i, c, a).
  if (i > j)
    return closed_form(coeffs.transposed(), j, i);
  const std::uint64_t p = coeffs.p();
  std::uint64_t sum = 0;
  for (std::uint64_t k = 0; k <= i; ++k) {
    std::uint64_t term = binomial_mod(j, k, p);
    term = mul_mod(term, binomial_mod(j + i - k, i - k, p), p);
    term = mul_mod(term, pow_mod(coeffs.a(), j - k, p), p);
    term = mul_mod(term, pow_mod(coeffs.b(), k, p), p);
    term = mul_mod(term, pow_mod(coeffs.c(), i - k, p), p);
    sum = (sum + term) % p;
  }
  return static_cast<Residue>(sum);
}

namespace {

struct PathWalker {
  const Coefficients& coeffs;
  std::uint64_t target_i, target_j;
  std::uint64_t total = 0;

  // (x, y) is the current lattice point; h, d, v count moves so far.
  void walk(std::uint64_t x, std::uint64_t y, std::uint64_t h, std::uint64_t d, std::uint64_t v)
  {
    if (x == target_i && y == target_j) {
      const std::uint64_t p = coeffs.p();
      std::uint64_t cost = pow_mod(coeffs.a(), h, p);
      cost = mul_mod(cost, pow_mod(coeffs.b(), d, p), p);
      cost = mul_mod(cost, pow_mod(coeffs.c(), v, p), p);
      total = (total + cost) % p;
      return;
    }
    if (y < target_j)
      walk(x, y + 1, h + 1, d, v);
    if (x < target_i && y < target_j)
      walk(x + 1, y + 1, h, d + 1, v);
    if (x < target_i)
      walk(x + 1, y, h, d, v + 1);
  }
};

} // namespace

Residue path_cost_oracle(const Coefficients& coeffs, std::uint64_t i, std::uint64_t j)
{
  if (i + j > kPathOracleLimit)
    throw std::length_error("path enumeration limited to i + j <= " + std::to_string(kPathOracleLimit));
  PathWalker walker{coeffs, i, j};
  walker.walk(0, 0, 0, 0, 0);
  return static_cast<Residue>(walker.total);
}

} // namespace fractile
