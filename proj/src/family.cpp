#include "mordell/family.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mordell/error.hpp"

namespace mordell::family {
namespace {

Poly poly_of(const std::vector<long>& c) {
  std::vector<Rational> q;
  q.reserve(c.size());
  for (long v : c) q.emplace_back(v);
  return Poly(std::move(q));
}

// Shorthands for the literal tables below.
Factor f(std::vector<long> c, int e = 1) { return Factor{std::move(c), e}; }

// Linear factors of the stage-N denominators: (4+n), (n-2), (n+1).
std::vector<Factor> n_den(int e) { return {f({4, 1}, e), f({-2, 1}, e), f({1, 1}, e)}; }
// Stage-K denominator: (k-1)(k+1).
std::vector<Factor> k_den(int e) { return {f({-1, 1}, e), f({1, 1}, e)}; }

Transcription make_printed_transcription() {
  Transcription t;
  // y^2 = x^3 + (-5+4k)^2 (2k^2-4k+3)^2 / ((k-1)^4 (k+1)^4)
  t.k_d = {1, 1, {f({-5, 4}, 2), f({3, -4, 2}, 2)}, k_den(4)};
  // P2 = ( -(-5+4k)/((k-1)(k+1)), (-5+4k)(k-2)(2k-1)/((k-1)^2(k+1)^2) )
  t.k_p2x = {-1, 1, {f({-5, 4})}, k_den(1)};
  t.k_p2y = {1, 1, {f({-5, 4}), f({-2, 1}), f({-1, 2})}, k_den(2)};
  t.k_m = {1, 1, {f({-2, 1}, 2)}, k_den(1)};

  const Factor q1 = f({6, 4, 1});     // n^2 + 4n + 6
  const Factor q2 = f({34, 8, 1});    // n^2 + 8n + 34
  const Factor q3 = f({2, 0, 1});     // n^2 + 2
  const Factor q4 = f({22, -4, 1});   // n^2 - 4n + 22
  const Factor q5 = f({10, 2, 1});    // n^2 + 2n + 10
  const Factor q6 = f({-14, -4, 1});  // n^2 - 4n - 14
  const Factor q7 = f({-2, 8, 1});    // n^2 + 8n - 2
  auto sq = [](Factor g) {
    g.exponent = 2;
    return g;
  };

  t.n_d = {1, 256, {sq(q1), sq(q2), sq(q3), sq(q4)}, n_den(4)};
  t.n_px[0] = {1, 16, {q1, q2, q3, q4}, n_den(2)};
  t.n_py[0] = {1, 64, {sq(q5), q2, q4, q3, q1}, n_den(3)};
  t.n_px[1] = {-1, 4, {q2, q3}, n_den(1)};
  t.n_py[1] = {1, 16, {q2, q6, q3, q5}, n_den(2)};
  t.n_px[2] = {1, 4, {q4, q1}, n_den(1)};
  t.n_py[2] = {1, 16, {q1, q7, q4, q5}, n_den(2)};
  return t;
}

bool same(const RatFunc& a, const RatFunc& b) { return a == b; }

// a - b as a printable residual.
std::string residual(const RatFunc& a, const RatFunc& b, char var) { return (a - b).to_string(var); }

RatFunc curve_residual(const RatFunc& x, const RatFunc& y, const RatFunc& d) {
  return y * y - x * x * x - d;
}

const FamilyStage& cached_stage_n() {
  static const FamilyStage s = stage_n(Transcription::printed());
  return s;
}

}  // namespace

RatFunc FactoredExpr::evaluate() const {
  if (den_scale == 0) throw DomainError("zero denominator scale in transcribed formula");
  Poly num_poly = Poly::constant(Rational(num_scale));
  for (const auto& g : num) {
    if (g.exponent < 0) throw DomainError("negative exponent in transcribed formula");
    num_poly *= poly_of(g.coeffs).pow(static_cast<unsigned>(g.exponent));
  }
  Poly den_poly = Poly::constant(Rational(den_scale));
  for (const auto& g : den) {
    if (g.exponent < 0) throw DomainError("negative exponent in transcribed formula");
    den_poly *= poly_of(g.coeffs).pow(static_cast<unsigned>(g.exponent));
  }
  return RatFunc(std::move(num_poly), std::move(den_poly));
}

std::size_t FactoredExpr::slot_count() const {
  std::size_t n = 2;
  for (const auto& g : num) n += g.coeffs.size() + 1;
  for (const auto& g : den) n += g.coeffs.size() + 1;
  return n;
}

void FactoredExpr::perturb(std::size_t slot, long delta) {
  if (slot == 0) {
    num_scale += delta;
    return;
  }
  if (slot == 1) {
    den_scale += delta;
    return;
  }
  slot -= 2;
  for (auto* list : {&num, &den}) {
    for (auto& g : *list) {
      if (slot < g.coeffs.size()) {
        g.coeffs[slot] += delta;
        return;
      }
      slot -= g.coeffs.size();
      if (slot == 0) {
        g.exponent += static_cast<int>(delta);
        return;
      }
      slot -= 1;
    }
  }
  throw std::out_of_range("FactoredExpr::perturb: slot out of range");
}

const Transcription& Transcription::printed() {
  static const Transcription t = make_printed_transcription();
  return t;
}

FactoredExpr* Transcription::find(const std::string& name) {
  if (name == "d") return &n_d;
  if (name == "K.d") return &k_d;
  if (name == "K.P2.x") return &k_p2x;
  if (name == "K.P2.y") return &k_p2y;
  if (name == "K.m") return &k_m;
  for (int i = 0; i < 3; ++i) {
    const std::string p = "P" + std::to_string(i + 1);
    if (name == p + ".x") return &n_px[static_cast<std::size_t>(i)];
    if (name == p + ".y") return &n_py[static_cast<std::size_t>(i)];
  }
  return nullptr;
}

std::vector<std::string> Transcription::names() const {
  return {"d", "P1.x", "P1.y", "P2.x", "P2.y", "P3.x", "P3.y", "K.d", "K.P2.x", "K.P2.y", "K.m"};
}

FamilyStage stage_m() {
  const RatFunc m = RatFunc::identity();
  const RatFunc a = m * m - RatFunc(1);
  return FamilyStage{StageId::M, 'm', a * a, {StagePoint{a, m * a}}};
}

FamilyStage stage_k(const Transcription& t) {
  const RatFunc m_of_k = t.k_m.evaluate();
  const FamilyStage sm = stage_m();
  StagePoint p1{sm.points[0].x.compose(m_of_k), sm.points[0].y.compose(m_of_k)};
  StagePoint p2{t.k_p2x.evaluate(), t.k_p2y.evaluate()};
  return FamilyStage{StageId::K, 'k', t.k_d.evaluate(), {std::move(p1), std::move(p2)}};
}

FamilyStage stage_n(const Transcription& t) {
  FamilyStage s{StageId::N, 'n', t.n_d.evaluate(), {}};
  for (std::size_t i = 0; i < 3; ++i) s.points.push_back({t.n_px[i].evaluate(), t.n_py[i].evaluate()});
  return s;
}

RatFunc recover_k_of_n(const Transcription& t) {
  // Conic u^2 = c2 k^2 + c1 k + c0 with the rational point (k0, u0). The line
  // u = u0 + s (k - k0) meets it again at k - k0 = (2 c2 k0 + c1 - 2 u0 s)/(s^2 - c2).
  const Rational c2 = -2, c1 = -4, k0 = 1;
  const RatFunc n = RatFunc::identity();
  const RatFunc d_n = t.n_d.evaluate();
  const RatFunc p2x_n = t.n_px[1].evaluate();
  const RatFunc d_k = t.k_d.evaluate();
  const RatFunc p2x_k = t.k_p2x.evaluate();
  for (const Rational& u0 : {Rational(1), Rational(-1)}) {
    const RatFunc s = n;
    const RatFunc shift = (RatFunc(2 * c2 * k0 + c1) - RatFunc(2 * u0) * s) / (s * s - RatFunc(c2));
    const RatFunc k_of_n = RatFunc(k0) + shift;
    try {
      if (same(d_k.compose(k_of_n), d_n) && same(p2x_k.compose(k_of_n), p2x_n)) return k_of_n;
    } catch (const DomainError&) {
      // substitution hit a zero denominator: not this branch
    }
  }
  throw DomainError("no branch of the conic parametrization reproduces the stage-N formulas");
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

VerificationReport verify_all_identities(const Transcription& t) {
  VerificationReport report;
  // Each check runs in isolation: a mutated transcription may make a
  // formula unevaluable, which is a failure of that check only.
  auto run = [&report](std::string name, std::string anchor, auto&& body) {
    IdentityCheck c{std::move(name), std::move(anchor), false, {}};
    try {
      std::string r = body();
      c.passed = r.empty();
      c.residual = std::move(r);
    } catch (const std::exception& e) {
      c.residual = std::string("error: ") + e.what();
    }
    report.checks.push_back(std::move(c));
  };
  auto zero_or = [](const RatFunc& r, char var) { return r.is_zero() ? std::string{} : r.to_string(var); };
  auto equal_or = [](const RatFunc& a, const RatFunc& b, char var) {
    return same(a, b) ? std::string{} : residual(a, b, var);
  };

  // Stage M
  const FamilyStage sm = stage_m();
  const RatFunc m = RatFunc::identity();
  const RatFunc a_m = m * m - RatFunc(1);
  run("M.P1.on_curve", "first point (m^2-1, m(m^2-1)) on y^2 = x^3 + (m^2-1)^2",
      [&] { return zero_or(curve_residual(sm.points[0].x, sm.points[0].y, sm.curve_d), 'm'); });
  run("M.x_is_a", "x(P1) = a, i.e. x(P1)^2 = d",
      [&] { return equal_or(sm.points[0].x * sm.points[0].x, sm.curve_d, 'm'); });
  run("M.a_plus_1_square", "a + 1 is a square when a = m^2 - 1", [&]() -> std::string {
    const auto r = (a_m + RatFunc(1)).sqrt();
    if (!r) return "a + 1 = " + (a_m + RatFunc(1)).to_string('m') + " is not a square";
    return equal_or(*r, m, 'm');
  });

  // Stage K
  const RatFunc k = RatFunc::identity();
  std::optional<FamilyStage> sk;
  RatFunc m_of_k;
  run("K.m_minus_1_is_x_P2", "m(k) - 1 = x(P2) = -(-5+4k)/((k-1)(k+1))", [&] {
    m_of_k = t.k_m.evaluate();
    return equal_or(m_of_k - RatFunc(1), t.k_p2x.evaluate(), 'k');
  });
  run("K.d_coherent", "d(k) = (m^2-1)^2 at m = m(k)", [&] {
    sk = stage_k(t);
    return equal_or(sm.curve_d.compose(t.k_m.evaluate()), t.k_d.evaluate(), 'k');
  });
  run("K.P1.on_curve", "P1(m(k)) on the k-curve", [&]() -> std::string {
    if (!sk) sk = stage_k(t);
    return zero_or(curve_residual(sk->points[0].x, sk->points[0].y, sk->curve_d), 'k');
  });
  run("K.P2.on_curve", "P2(k) on the k-curve", [&]() -> std::string {
    if (!sk) sk = stage_k(t);
    return zero_or(curve_residual(sk->points[1].x, sk->points[1].y, sk->curve_d), 'k');
  });
  run("K.m_m_plus_3_square", "m(m+3) = u^2 is a square at m = m(k)", [&]() -> std::string {
    const RatFunc mk = t.k_m.evaluate();
    const RatFunc w = mk * (mk + RatFunc(3));
    return w.sqrt() ? std::string{} : "m(m+3) = " + w.to_string('k') + " is not a square";
  });

  // Stage N
  std::optional<FamilyStage> sn;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string p = "P" + std::to_string(i + 1);
    run("N." + p + ".on_curve", p + "(n) on y^2 = x^3 + d(n)", [&, i]() -> std::string {
      if (!sn) sn = stage_n(t);
      return zero_or(curve_residual(sn->points[i].x, sn->points[i].y, sn->curve_d), 'n');
    });
  }
  run("N.x_P1_is_a", "x(P1(n))^2 = d(n): P1's x-coordinate is a(n)", [&]() -> std::string {
    const RatFunc x1 = t.n_px[0].evaluate();
    return equal_or(x1 * x1, t.n_d.evaluate(), 'n');
  });
  std::optional<RatFunc> k_of_n;
  run("N.k_of_n", "k(n) from the conic u^2 = -(2k^2+4k-7) through (1, 1)", [&]() -> std::string {
    k_of_n = recover_k_of_n(t);
    return {};
  });
  auto need_k = [&]() -> const RatFunc& {
    if (!k_of_n) throw DomainError("k(n) unavailable");
    return *k_of_n;
  };
  run("N.d_coherent", "d(n) = d(k) at k = k(n)",
      [&] { return equal_or(t.k_d.evaluate().compose(need_k()), t.n_d.evaluate(), 'n'); });
  run("N.P2_coherent", "P2(n) = P2(k) at k = k(n)", [&]() -> std::string {
    const RatFunc kn = need_k();
    std::string r = equal_or(t.k_p2x.evaluate().compose(kn), t.n_px[1].evaluate(), 'n');
    if (!r.empty()) return "x: " + r;
    r = equal_or(t.k_p2y.evaluate().compose(kn), t.n_py[1].evaluate(), 'n');
    return r.empty() ? r : "y: " + r;
  });
  run("N.P1_coherent", "P1(n) = -P1(m) at m = m(k(n))", [&]() -> std::string {
    const RatFunc mn = t.k_m.evaluate().compose(need_k());
    std::string r = equal_or(sm.points[0].x.compose(mn), t.n_px[0].evaluate(), 'n');
    if (!r.empty()) return "x: " + r;
    r = equal_or(-sm.points[0].y.compose(mn), t.n_py[0].evaluate(), 'n');
    return r.empty() ? r : "y: " + r;
  });
  run("N.x_P3_forced", "x(P3(n)) = -(2k^2-4k+3)/((k-1)(k+1)) at k = k(n)", [&] {
    const RatFunc forced = -RatFunc(Poly::from_ints({3, -4, 2})) / RatFunc(Poly::from_ints({-1, 0, 1}));
    return equal_or(forced.compose(need_k()), t.n_px[2].evaluate(), 'n');
  });
  run("N.conic_square", "-(2k^2+4k-7) is a square at k = k(n)", [&]() -> std::string {
    const RatFunc w = -RatFunc(Poly::from_ints({-7, 4, 2})).compose(need_k());
    return w.sqrt() ? std::string{} : "-(2k^2+4k-7) = " + w.to_string('n') + " is not a square";
  });
  (void)k;
  return report;
}

std::vector<Rational> degenerate_parameters(const Transcription& t) {
  std::set<Rational> all;
  const FamilyStage s = stage_n(t);
  auto collect = [&all](const RatFunc& g) {
    for (const auto& r : g.den().rational_roots()) all.insert(r);
  };
  collect(s.curve_d);
  for (const auto& p : s.points) {
    collect(p.x);
    collect(p.y);
  }
  for (const auto& r : s.curve_d.num().rational_roots()) all.insert(r);  // d(n0) = 0
  return {all.begin(), all.end()};
}

Specialization specialize(const Rational& n0, const Transcription& t) {
  const bool printed = &t == &Transcription::printed();
  std::optional<FamilyStage> local;
  if (!printed) local = stage_n(t);
  const FamilyStage& s = printed ? cached_stage_n() : *local;

  Specialization out;
  out.n0 = n0;
  Rational d;
  std::vector<std::pair<Rational, Rational>> coords;
  try {
    d = s.curve_d.eval(n0);
    for (const auto& p : s.points) coords.emplace_back(p.x.eval(n0), p.y.eval(n0));
  } catch (const PoleError& e) {
    out.flags.degenerate = true;
    out.reason = std::string("denominator vanishes at n = ") + to_string(n0);
    return out;
  }
  if (d == 0) {
    out.flags.degenerate = true;
    out.reason = "d(n) = 0 at n = " + to_string(n0);
    return out;
  }
  out.curve.emplace(d);
  for (auto& [x, y] : coords) out.points.push_back(CurvePoint::affine(*out.curve, x, y));
  for (int i = 0; i < 3; ++i) {
    if (coords[static_cast<std::size_t>(i)].first == 0) out.flags.torsion_hits.push_back(i);
    for (int j = i + 1; j < 3; ++j)
      if (coords[static_cast<std::size_t>(i)].first == coords[static_cast<std::size_t>(j)].first)
        out.flags.coincident_points.emplace_back(i, j);
  }
  return out;
}

}  // namespace mordell::family
