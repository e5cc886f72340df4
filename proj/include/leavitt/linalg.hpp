#pragma once

// Dense linear algebra over an exact Field.

#include <optional>
#include <string>
#include <vector>

#include "leavitt/errors.hpp"
#include "leavitt/field.hpp"

namespace leavitt {

using Vec = std::vector<Scalar>;
/// Row-major; every row has the same length.
using Mat = std::vector<Vec>;

/// Some x with A x = b, or nullopt if inconsistent. A is m x n, b has m rows.
inline std::optional<Vec> solve(const FieldPtr& k, Mat a, Vec b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw PreconditionError("solve: dimension mismatch");
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a[p][col].is_zero()) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    const Scalar inv = a[row][col].inverse();
    for (auto& c : a[row]) c *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      const Scalar f = a[r][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  Vec x(n, Scalar::zero(k));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
  return x;
}

inline Vec mat_vec(const FieldPtr& k, const Mat& a, const Vec& v) {
  Vec out(a.size(), Scalar::zero(k));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

/// Monic annihilating polynomial of v under a (coefficients low to high):
/// the least-degree relation among v, av, a^2 v, ...
inline Vec krylov_annihilator(const FieldPtr& k, const Mat& a, const Vec& v) {
  std::vector<Vec> powers{v};
  while (true) {
    const Vec& last = powers.back();
    // Columns are the earlier Krylov vectors.
    Mat m(v.size(), Vec(powers.size() - 1, Scalar::zero(k)));
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j + 1 < powers.size(); ++j) m[i][j] = powers[j][i];
    if (powers.size() == 1) {
      bool zero = true;
      for (const auto& c : last) zero = zero && c.is_zero();
      if (zero) return {Scalar::one(k)};
    } else if (auto x = solve(k, m, last)) {
      Vec poly;
      for (const auto& c : *x) poly.push_back(-c);
      poly.push_back(Scalar::one(k));
      return poly;
    }
    if (powers.size() > v.size() + 1) throw PreconditionError("krylov: no relation found");
    powers.push_back(mat_vec(k, a, last));
  }
}

/// "t^2+t+1"-style text for a polynomial given by Scalar coefficients.
inline std::string format_coeffs(const Vec& c) {
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    std::string coef = c[i].to_string();
    const bool quotient = c[i].field()->is_quotient();
    bool neg = !quotient && !coef.empty() && coef[0] == '-';
    if (neg) coef = coef.substr(1);
    if (quotient && coef.find_first_of("+-") != std::string::npos) coef = "(" + coef + ")";
    std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    std::string term = mono.empty() ? coef : (coef == "1" ? mono : coef + "*" + mono);
    if (s.empty()) s = neg ? "-" + term : term;
    else s += (neg ? "-" : "+") + term;
  }
  return s.empty() ? "0" : s;
}

}  // namespace leavitt
