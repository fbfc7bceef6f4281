#include "mordell/linalg.hpp"

#include <algorithm>
#include <utility>

#include "mordell/error.hpp"

namespace mordell {

Real determinant(RealMatrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("determinant of a non-square matrix");
  Real det(1L);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    if (a[pivot][col].is_zero()) return Real(0L);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

std::vector<Real> symmetric_eigenvalues(RealMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  Real scale(0L);
  for (const auto& row : a)
    for (const auto& v : row) scale = max(scale, abs(v));
  const Real tol = scale * pow10(-static_cast<long>(working_digits()));
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    Real off(0L);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = max(off, abs(a[p][q]));
    if (off <= tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (abs(a[p][q]) <= tol) continue;
        const Real theta = (a[q][q] - a[p][p]) / (Real(2L) * a[p][q]);
        Real t = Real(1L) / (abs(theta) + sqrt(theta * theta + Real(1L)));
        if (theta.sign() < 0) t = -t;
        const Real c = Real(1L) / sqrt(t * t + Real(1L));
        const Real s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Real akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Real apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<Real> eig;
  eig.reserve(n);
  for (std::size_t i = 0; i < n; ++i) eig.push_back(a[i][i]);
  std::sort(eig.begin(), eig.end(), [](const Real& x, const Real& y) { return x < y; });
  return eig;
}

}  // namespace mordell
