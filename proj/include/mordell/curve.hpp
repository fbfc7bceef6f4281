#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mordell/arith.hpp"

namespace mordell {

/// y^2 = x^3 + d over Q, d != 0.
class MordellCurve {
 public:
  /// Throws DomainError for d = 0 (singular cubic).
  explicit MordellCurve(Rational d);
  const Rational& d() const { return d_; }
  friend bool operator==(const MordellCurve&, const MordellCurve&) = default;
  std::string to_string() const;

 private:
  Rational d_;
};

/// Rational point: the point at infinity or an affine pair. Affine points
/// can only be built through `affine`, which checks the curve equation.
class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(); }
  /// Throws DomainError when (x, y) is not on E.
  static CurvePoint affine(const MordellCurve& E, Rational x, Rational y);

  bool is_infinity() const { return !xy_.has_value(); }
  /// Coordinates; throw DomainError on the point at infinity.
  const Rational& x() const;
  const Rational& y() const;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
  std::string to_string() const;

 private:
  struct Coords {
    Rational x, y;
    friend bool operator==(const Coords&, const Coords&) = default;
  };
  CurvePoint() = default;
  CurvePoint(Rational x, Rational y) : xy_(Coords{std::move(x), std::move(y)}) {}
  std::optional<Coords> xy_;

  friend CurvePoint add(const MordellCurve&, const CurvePoint&, const CurvePoint&);
  friend CurvePoint negate(const MordellCurve&, const CurvePoint&);
};

bool on_curve(const MordellCurve& E, const Rational& x, const Rational& y);

CurvePoint add(const MordellCurve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint negate(const MordellCurve& E, const CurvePoint& P);
inline CurvePoint subtract(const MordellCurve& E, const CurvePoint& P, const CurvePoint& Q) {
  return add(E, P, negate(E, Q));
}
/// k-fold sum by double-and-add; negative k multiplies the negation.
CurvePoint scalar_mul(const MordellCurve& E, std::int64_t k, const CurvePoint& P);

/// Value of the m-th division polynomial psi_m at an affine point
/// (psi_2 = 2y, psi_3 = 3x^4 + 12 d x, ...). Zero exactly when mP = O.
Rational division_value(const MordellCurve& E, const CurvePoint& P, unsigned m);

/// True when P has finite order (on a Mordell curve the order divides 6).
bool is_torsion(const MordellCurve& E, const CurvePoint& P);

}  // namespace mordell
