#include "fractile/selfsim.hpp"

#include <sstream>
#include <stdexcept>

namespace fractile {

Block::Block(const ResidueMatrix& matrix, std::size_t x, std::size_t y, std::size_t size)
  : matrix_(&matrix), x_(x), y_(y), size_(size)
{
}

Block block(const ResidueMatrix& matrix, std::size_t x, std::size_t y, std::size_t u)
{
  if (u == 0 || x + u > matrix.rows() || y + u > matrix.cols()) {
    std::ostringstream msg;
    msg << "block (" << x << "," << y << ") of size " << u << " exceeds " << matrix.rows() << "x"
        << matrix.cols() << " window";
    throw std::out_of_range(msg.str());
  }
  return Block(matrix, x, y, u);
}

bool is_n_block(const Block& candidate, const Block& reference_unit, Residue n, Residue p)
{
  if (candidate.size() != reference_unit.size())
    throw std::invalid_argument("is_n_block: size mismatch");
  if (reference_unit.origin_x() != 0 || reference_unit.origin_y() != 0)
    throw std::invalid_argument("is_n_block: reference unit must be anchored at the origin");
  const std::uint64_t scale = n % p;
  for (std::size_t i = 0; i < candidate.size(); ++i)
    for (std::size_t j = 0; j < candidate.size(); ++j)
      if (candidate(i, j) % p != scale * reference_unit(i, j) % p)
        return false;
  return true;
}

namespace {

std::size_t ipow(std::size_t base, unsigned exp)
{
  std::size_t r = 1;
  while (exp-- > 0)
    r *= base;
  return r;
}

} // namespace

std::size_t SelfSimWitness::row(std::size_t p) const
{
  return s * ipow(p, k) + i;
}

std::size_t SelfSimWitness::col(std::size_t p) const
{
  return t * ipow(p, k) + j;
}

bool witness_violates(const ResidueMatrix& m, const SelfSimWitness& w)
{
  const std::size_t x = w.row(m.modulus()), y = w.col(m.modulus());
  const std::uint64_t rhs = static_cast<std::uint64_t>(m(w.s, w.t)) * m(w.i, w.j) % m.modulus();
  return m(x, y) != rhs;
}

SelfSimReport check_self_similarity(const ResidueMatrix& m, Residue p)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("check_self_similarity needs a square window");
  if (m.modulus() != p)
    throw std::invalid_argument("check_self_similarity: matrix modulus differs from p");

  SelfSimReport report;
  report.p = p;
  const std::size_t side = m.rows();
  unsigned k = 0;
  for (std::size_t q = 1; q < side; q *= p, ++k) {
    report.max_k = static_cast<int>(k);
    for (std::size_t s = 0; s < p && s * q < side; ++s) {
      for (std::size_t t = 0; t < p && t * q < side; ++t) {
        const std::uint64_t scale = m(s, t);
        for (std::size_t i = 0; i < q && s * q + i < side; ++i) {
          for (std::size_t j = 0; j < q && t * q + j < side; ++j) {
            ++report.checked;
            if (m(s * q + i, t * q + j) != scale * m(i, j) % p) {
              report.holds = false;
              report.first_violation = SelfSimWitness{k, s, t, i, j};
              return report;
            }
          }
        }
      }
    }
  }
  return report;
}

bool LemmaReport::all_hold() const
{
  for (const auto& l : lemmas)
    if (l.status == LemmaStatus::fail)
      return false;
  return true;
}

const LemmaResult* LemmaReport::find(const std::string& name) const
{
  for (const auto& l : lemmas)
    if (l.name == name)
      return &l;
  return nullptr;
}

namespace {

class LemmaRecorder {
public:
  explicit LemmaRecorder(std::string name) { result_.name = std::move(name); }

  template <typename Where>
  void check(bool ok, Where&& where)
  {
    ++result_.instances;
    if (!ok && result_.status != LemmaStatus::fail) {
      result_.status = LemmaStatus::fail;
      result_.counterexample = where();
    }
  }

  void skip() { ++result_.skipped; }

  LemmaResult finish()
  {
    if (result_.instances == 0 && result_.status != LemmaStatus::fail)
      result_.status = LemmaStatus::not_applicable;
    return result_;
  }

private:
  LemmaResult result_;
};

std::string at_text(const char* what, std::size_t x, std::size_t y)
{
  std::ostringstream os;
  os << what << " at (" << x << "," << y << ")";
  return os.str();
}

} // namespace

LemmaReport check_lemmas(const Coefficients& coeffs, unsigned k_max, std::size_t cell_budget)
{
  if (k_max == 0)
    throw std::invalid_argument("check_lemmas needs k_max >= 1");
  const std::size_t p = coeffs.p();
  std::size_t side = 1;
  for (unsigned e = 0; e <= k_max; ++e) {
    if (side > cell_budget / p)
      throw std::length_error("check_lemmas: window exceeds cell budget");
    side *= p;
  }
  if (side > cell_budget / side)
    throw std::length_error("check_lemmas: window exceeds cell budget");

  const ResidueMatrix m = delannoy_matrix(coeffs, side, side);
  const std::uint64_t a = coeffs.a(), b = coeffs.b(), c = coeffs.c();
  LemmaReport report{coeffs, k_max, side, {}};

  {
    LemmaRecorder rec("corner");
    for (unsigned k = 0; k <= k_max + 1; ++k) {
      const std::size_t e = ipow(p, k) - 1;
      if (k == 0 || a != 0)
        rec.check(m(0, e) == 1, [&] { return at_text("M[0,p^k-1] != 1", 0, e); });
      else
        rec.skip();
      if (k == 0 || c != 0)
        rec.check(m(e, 0) == 1, [&] { return at_text("M[p^k-1,0] != 1", e, 0); });
      else
        rec.skip();
    }
    report.lemmas.push_back(rec.finish());
  }

  {
    LemmaRecorder row("row_repeat"), col("column_repeat");
    for (unsigned k = 1; k <= k_max; ++k) {
      const std::size_t q = ipow(p, k);
      for (std::size_t t = 0; t < p; ++t) {
        const std::uint64_t na = pow_mod(a, t, p), nc = pow_mod(c, t, p);
        for (std::size_t j = 0; j < q; ++j) {
          row.check(m(0, t * q + j) == na * pow_mod(a, j, p) % p, [&] { return at_text("row 0 repeat", 0, t * q + j); });
          col.check(m(t * q + j, 0) == nc * pow_mod(c, j, p) % p, [&] { return at_text("column 0 repeat", t * q + j, 0); });
        }
      }
    }
    report.lemmas.push_back(row.finish());
    report.lemmas.push_back(col.finish());
  }

  {
    LemmaRecorder row("edge_sum_row"), col("edge_sum_column");
    for (std::size_t i = 1; i < p; ++i) {
      row.check((a * m(i, p - 1) + b * m(i - 1, p - 1)) % p == 0, [&] { return at_text("a M[i,p-1] + b M[i-1,p-1]", i, p - 1); });
      col.check((b * m(p - 1, i - 1) + c * m(p - 1, i)) % p == 0, [&] { return at_text("b M[p-1,j-1] + c M[p-1,j]", p - 1, i); });
    }
    report.lemmas.push_back(row.finish());
    report.lemmas.push_back(col.finish());
  }

  {
    LemmaRecorder rec("run_row");
    for (std::size_t i = 1; i < side; ++i) {
      for (std::size_t x = 0; x < side; ++x) {
        std::uint64_t expected = m(i, x);
        for (std::size_t j = 1; x + j < side; ++j) {
          if ((b * m(i - 1, x + j - 1) + c * m(i - 1, x + j)) % p != 0)
            break;
          expected = expected * a % p;
          rec.check(m(i, x + j) == expected, [&] { return at_text("run from column x", i, x + j); });
        }
      }
    }
    report.lemmas.push_back(rec.finish());
  }

  {
    LemmaRecorder rec("run_column");
    for (std::size_t j = 1; j < side; ++j) {
      for (std::size_t u = 0; u < side; ++u) {
        std::uint64_t expected = m(u, j);
        for (std::size_t i = 1; u + i < side; ++i) {
          if ((a * m(u + i, j - 1) + b * m(u + i - 1, j - 1)) % p != 0)
            break;
          expected = expected * c % p;
          rec.check(m(u + i, j) == expected, [&] { return at_text("run from row u", u + i, j); });
        }
      }
    }
    report.lemmas.push_back(rec.finish());
  }

  {
    LemmaRecorder rec("alternating_column");
    if (a == 1 && b == 1 && c == 1) {
      for (std::size_t i = 0; i < p; ++i)
        rec.check(m(i, p - 1) == (i % 2 == 0 ? 1 : p - 1), [&] { return at_text("M[i,p-1] alternation", i, p - 1); });
    } else {
      rec.skip();
    }
    report.lemmas.push_back(rec.finish());
  }

  return report;
}

std::vector<Point> fractal_set(const ResidueMatrix& m, const std::set<Residue>& keep)
{
  for (Residue r : keep)
    if (r >= m.modulus())
      throw std::invalid_argument("fractal_set: residue " + std::to_string(r) + " outside [0, modulus)");
  std::vector<Point> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (keep.count(m(i, j)) != 0)
        out.push_back({i, j});
  return out;
}

std::set<Residue> nonzero_residues(Residue modulus)
{
  std::set<Residue> out;
  for (Residue r = 1; r < modulus; ++r)
    out.insert(r);
  return out;
}

} // namespace fractile
