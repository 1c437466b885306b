#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmarc/arcs.hpp"
#include "kmarc/curve.hpp"
#include "kmarc/poly.hpp"

namespace kmarc {

enum class FamilyKind { hyperelliptic, hyperelliptic_twist, artin_schreier };

struct ChecklistItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Hypothesis checklist for one of the worked families. An inadmissible spec
// still yields a curve; downstream runs flag it as unsupported rather than
// refusing.
struct FamilySpec {
  FamilyKind kind = FamilyKind::hyperelliptic;
  UniPoly f;
  std::optional<felt> xi;
  std::uint32_t m = 0;
  std::optional<std::uint32_t> genus;
  std::vector<ChecklistItem> checklist;

  bool admissible() const {
    for (auto& item : checklist)
      if (!item.pass) return false;
    return true;
  }
};

struct FamilyResult {
  PlaneCurve curve;
  FamilySpec spec;
};

inline std::uint32_t genus_hyperelliptic(std::uint32_t m) {
  if (m < 3) throw std::invalid_argument("hyperelliptic genus formula needs m >= 3");
  return m % 2 == 1 ? (m - 1) / 2 : (m - 2) / 2;
}

namespace detail {

inline BivarPoly hyperelliptic_equation(const Field& F, const UniPoly& f, felt scale) {
  BivarPoly g(F);
  g.t.push_back({0, 2, 1});  // y^2
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    felt c = F.mul(scale, f.c[i]);
    if (c) g.t.push_back({static_cast<std::uint32_t>(i), 0, F.neg(c)});
  }
  g.normalize();
  return g;
}

inline void push_check(std::vector<ChecklistItem>& list, std::string name, bool pass,
                       std::string detail) {
  list.push_back({std::move(name), pass, std::move(detail)});
}

}  // namespace detail

// closure of y^2 = f(x); hypotheses: odd characteristic, 3 <= m < p, f with
// m distinct roots (squarefree)
inline FamilyResult hyperelliptic(FieldPtr field, const UniPoly& f, std::optional<felt> xi = {}) {
  const Field& F = *field;
  if (f.degree() < 1) throw std::invalid_argument("hyperelliptic family needs nonconstant f");
  FamilySpec spec;
  spec.kind = xi ? FamilyKind::hyperelliptic_twist : FamilyKind::hyperelliptic;
  spec.f = f;
  spec.xi = xi;
  spec.m = f.degree();
  if (spec.m >= 3) spec.genus = genus_hyperelliptic(spec.m);

  detail::push_check(spec.checklist, "odd characteristic", F.p() % 2 == 1,
                     "p = " + std::to_string(F.p()));
  detail::push_check(spec.checklist, "3 <= m < p", spec.m >= 3 && spec.m < F.p(),
                     "m = " + std::to_string(spec.m) + ", p = " + std::to_string(F.p()));
  detail::push_check(spec.checklist, "f squarefree", is_squarefree(f), "");
  if (xi)
    detail::push_check(spec.checklist, "twist scalar is a non-square", !F.is_square(*xi), "");

  felt scale = xi ? *xi : 1;
  BivarPoly g = detail::hyperelliptic_equation(F, f, scale);
  PlaneCurve curve = PlaneCurve::create(field, homogenize(g, std::max(2, f.degree())), true);
  return {std::move(curve), std::move(spec)};
}

// 1 place over x = infinity for odd degree; for even degree, 2 when the
// leading coefficient is a square and 1 otherwise
inline int p_infinity_count_hyperelliptic(const UniPoly& f) {
  if (!is_squarefree(f)) throw std::invalid_argument("place count expects squarefree f");
  if (f.degree() % 2 == 1) return 1;
  return f.F->is_square(f.leading()) ? 2 : 1;
}

struct MaximalExample {
  FieldPtr field;  // F_{q^2}
  PlaneCurve curve;
  FamilySpec spec;
  std::uint32_t base_q = 0;
  std::uint32_t genus = 0;
  std::uint64_t expected_degree1 = 0;  // q^2 + 1 + 2 g q
  std::uint32_t expected_y0_points = 0;
  int p_infinity = 0;
};

namespace detail {

inline std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t a = 0, n = q;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    if (n != 1) throw std::invalid_argument("q must be a prime power");
    return {p, a};
  }
  throw std::invalid_argument("q must be a prime power");
}

}  // namespace detail

// y^2 = x^m + 1 over F_{q^2} with m | q+1 attains the Hasse-Weil bound; the
// m-th roots of -1 give exactly m points with y = 0
inline MaximalExample maximal_example(std::uint32_t q, std::uint32_t m) {
  auto [p, a] = detail::factor_prime_power(q);
  if (p == 2) throw std::invalid_argument("maximal family needs odd q");
  if (m < 3 || (q + 1) % m != 0) throw std::invalid_argument("m must divide q + 1");
  FieldPtr ext = Field::make(p, 2 * a);
  UniPoly f(*ext);
  f.c.assign(m + 1, 0);
  f.c[0] = 1;
  f.c[m] = 1;
  auto fam = hyperelliptic(ext, f);
  MaximalExample out{ext,
                     std::move(fam.curve),
                     std::move(fam.spec),
                     q,
                     genus_hyperelliptic(m),
                     0,
                     m,
                     p_infinity_count_hyperelliptic(f)};
  out.expected_degree1 =
      static_cast<std::uint64_t>(q) * q + 1 + 2ull * out.genus * q;
  return out;
}

struct TwistedExample {
  FieldPtr field;
  PlaneCurve curve;
  FamilySpec spec;
  felt xi = 0;
  std::uint32_t base_q = 0;
  std::uint32_t genus = 0;
  int p_infinity = 0;                  // places at infinity of the untwisted curve
  std::uint64_t predicted_affine = 0;  // q^2 - (1 + 2 g q - #P_inf)
  std::uint32_t expected_y0_points = 0;
};

// y^2 = xi (x^m + 1) for a non-square xi covers the values the maximal curve
// misses: the points with y != 0 sit over the x with x^m + 1 a non-square,
// which gives q^2 - (1 + 2gq - #P_inf) affine points in total.
inline TwistedExample twisted_example(std::uint32_t q, std::uint32_t m,
                                      std::optional<felt> xi_opt = {}) {
  auto [p, a] = detail::factor_prime_power(q);
  if (p == 2) throw std::invalid_argument("maximal family needs odd q");
  if (m < 3 || (q + 1) % m != 0) throw std::invalid_argument("m must divide q + 1");
  FieldPtr ext = Field::make(p, 2 * a);
  felt xi = 0;
  if (xi_opt) {
    xi = *xi_opt;
    if (ext->is_square(xi)) throw std::invalid_argument("twist scalar must be a non-square");
  } else {
    for (felt c = 1; c < ext->q(); ++c)
      if (!ext->is_square(c)) {
        xi = c;
        break;
      }
  }
  UniPoly f(*ext);
  f.c.assign(m + 1, 0);
  f.c[0] = 1;
  f.c[m] = 1;
  auto fam = hyperelliptic(ext, f, xi);
  TwistedExample out{ext,
                     std::move(fam.curve),
                     std::move(fam.spec),
                     xi,
                     q,
                     genus_hyperelliptic(m),
                     p_infinity_count_hyperelliptic(f),
                     0,
                     m};
  std::uint64_t q2 = static_cast<std::uint64_t>(q) * q;
  out.predicted_affine = q2 - (1 + 2ull * out.genus * q - out.p_infinity);
  return out;
}

// closure of y^p - y = f(x); hypotheses: odd characteristic, m > p, f
// squarefree, f' outside F_q[x^p], f not of the form z^p - z
inline FamilyResult artin_schreier(FieldPtr field, const UniPoly& f) {
  const Field& F = *field;
  if (f.is_zero()) throw std::invalid_argument("Artin-Schreier family needs nonzero f");
  FamilySpec spec;
  spec.kind = FamilyKind::artin_schreier;
  spec.f = f;
  spec.m = f.degree() > 0 ? f.degree() : 0;

  UniPoly fp = derivative(f);
  detail::push_check(spec.checklist, "odd characteristic", F.p() % 2 == 1,
                     "p = " + std::to_string(F.p()));
  detail::push_check(spec.checklist, "m > p", spec.m > F.p(),
                     "m = " + std::to_string(spec.m) + ", p = " + std::to_string(F.p()));
  detail::push_check(spec.checklist, "f squarefree", f.degree() >= 1 && is_squarefree(f), "");
  detail::push_check(spec.checklist, "f' not in F_q[x^p]", !in_pth_powers(fp), "");
  detail::push_check(spec.checklist, "f not of the form z^p - z", !is_artin_schreier_degenerate(f),
                     "");

  BivarPoly g(F);
  g.t.push_back({0, F.p(), 1});
  g.t.push_back({0, 1, F.neg(1)});
  for (std::size_t i = 0; i < f.c.size(); ++i)
    if (f.c[i]) g.t.push_back({static_cast<std::uint32_t>(i), 0, F.neg(f.c[i])});
  g.normalize();
  std::uint32_t deg = std::max(F.p(), std::max(spec.m, 3u));
  PlaneCurve curve = PlaneCurve::create(field, homogenize(g, deg), true);
  return {std::move(curve), std::move(spec)};
}

struct InflectionAbscissae {
  std::vector<felt> roots;     // rational roots of f'', ascending
  std::uint64_t tangent_bound = 0;  // (m - 2) p
};

// affine inflection points of an admissible Artin-Schreier curve lie over
// the zeros of f''
inline InflectionAbscissae as_inflection_x(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::artin_schreier || !spec.admissible())
    throw std::invalid_argument("inflection abscissae need an admissible Artin-Schreier spec");
  const Field& F = *spec.f.F;
  UniPoly fpp = derivative(derivative(spec.f));
  if (fpp.is_zero()) throw std::logic_error("admissible spec with vanishing f''");
  InflectionAbscissae out;
  for (auto& [r, mult] : root_multiplicities(fpp).roots) out.roots.push_back(r);
  out.tangent_bound = static_cast<std::uint64_t>(spec.m - 2) * F.p();
  return out;
}

}  // namespace kmarc
