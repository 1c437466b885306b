#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "kmarc/gf.hpp"

namespace kmarc {

// ---------------------------------------------------------------------------
// Univariate polynomials, dense coefficients. Degree -1 encodes the zero
// polynomial.
// ---------------------------------------------------------------------------

struct UniPoly {
  const Field* F = nullptr;
  std::vector<felt> c;  // c[i] = coefficient of x^i, no trailing zeros

  UniPoly() = default;
  explicit UniPoly(const Field& f) : F(&f) {}
  UniPoly(const Field& f, std::vector<felt> coeffs) : F(&f), c(std::move(coeffs)) { trim(); }

  static UniPoly zero(const Field& f) { return UniPoly(f); }
  static UniPoly constant(const Field& f, felt a) {
    UniPoly r(f);
    if (a) r.c = {a};
    return r;
  }
  static UniPoly monomial(const Field& f, felt a, std::uint32_t e) {
    UniPoly r(f);
    if (a) {
      r.c.assign(e + 1, 0);
      r.c[e] = a;
    }
    return r;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  felt leading() const {
    if (c.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
    return c.back();
  }
  felt coeff(std::uint32_t i) const { return i < c.size() ? c[i] : 0; }

  felt eval(felt x) const {
    felt v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = F->add(F->mul(v, x), *it);
    return v;
  }
};

inline bool operator==(const UniPoly& a, const UniPoly& b) {
  return a.c == b.c && (a.c.empty() || a.F->same(*b.F));
}

inline UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  UniPoly r(*a.F);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F->add(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

inline UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  UniPoly r(*a.F);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F->sub(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

inline UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly::zero(*a.F);
  UniPoly r(*a.F);
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = a.F->add(r.c[i + j], a.F->mul(a.c[i], b.c[j]));
  }
  return r;
}

inline UniPoly operator*(const UniPoly& a, felt s) {
  UniPoly r(*a.F);
  if (!s) return r;
  r.c = a.c;
  for (auto& x : r.c) x = a.F->mul(x, s);
  return r;
}

inline UniPoly monic(const UniPoly& a) {
  if (a.is_zero()) return a;
  return a * a.F->inv(a.leading());
}

// quotient/remainder by a nonzero divisor
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  const Field& F = *a.F;
  UniPoly q(F), r = a;
  if (r.degree() < b.degree()) return {q, r};
  q.c.assign(r.degree() - b.degree() + 1, 0);
  felt lead_inv = F.inv(b.leading());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::uint32_t shift = r.degree() - b.degree();
    felt s = F.mul(r.leading(), lead_inv);
    q.c[shift] = s;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      r.c[shift + i] = F.sub(r.c[shift + i], F.mul(s, b.c[i]));
    r.trim();
  }
  q.trim();
  return {q, r};
}

inline UniPoly gcd_univar(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline UniPoly derivative(const UniPoly& f) {
  UniPoly r(*f.F);
  if (f.c.size() <= 1) return r;
  r.c.assign(f.c.size() - 1, 0);
  for (std::size_t i = 1; i < f.c.size(); ++i)
    r.c[i - 1] = f.F->mul(f.c[i], f.F->from_int(i % f.F->p()));
  r.trim();
  return r;
}

// true iff every monomial exponent is divisible by p, i.e. f lies in F_q[x^p]
inline bool in_pth_powers(const UniPoly& f) {
  for (std::size_t i = 0; i < f.c.size(); ++i)
    if (f.c[i] && i % f.F->p() != 0) return false;
  return true;
}

// gcd(f, f') = 1 with f' != 0; a vanishing derivative means f is a p-th power
// (or a constant), reported as not squarefree per contract.
inline bool is_squarefree(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree test on the zero polynomial");
  UniPoly d = derivative(f);
  if (d.is_zero()) return false;
  return gcd_univar(f, d).degree() == 0;
}

struct RootCensus {
  std::vector<std::pair<felt, int>> roots;  // (root, multiplicity), ascending by root
  int residual = 0;                         // degree mass of roots outside F_q

  int multiplicity_of(felt a) const {
    for (auto& [r, m] : roots)
      if (r == a) return m;
    return 0;
  }
};

// Exhaustive root scan over F_q with exact multiplicities by repeated
// division. Intended for desk-scale fields.
inline RootCensus root_multiplicities(const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("root census of the zero polynomial");
  const Field& F = *f.F;
  RootCensus out;
  int total = 0;
  UniPoly divisor(F, {0, 1});
  for (felt a = 0; a < F.q(); ++a) {
    if (f.eval(a) != 0) continue;
    UniPoly g = f;
    divisor.c[0] = F.neg(a);  // x - a
    int m = 0;
    while (true) {
      auto [q, r] = divmod(g, divisor);
      if (!r.is_zero()) break;
      ++m;
      g = std::move(q);
      if (g.is_zero()) break;
    }
    out.roots.emplace_back(a, m);
    total += m;
  }
  out.residual = f.degree() - total;
  return out;
}

// Decides whether f = z^p - z for some z in F_q[x], by stripping the forced
// leading term of z and recursing; the constant base case scans F_q.
inline bool is_artin_schreier_degenerate(UniPoly f) {
  const Field& F = *f.F;
  const std::uint32_t p = F.p();
  while (true) {
    if (f.degree() <= 0) {
      felt a = f.is_zero() ? 0 : f.c[0];
      for (felt b = 0; b < F.q(); ++b)
        if (F.sub(F.pow(b, p), b) == a) return true;
      return false;
    }
    std::uint32_t d = f.degree();
    if (d % p != 0) return false;
    std::uint32_t e = d / p;
    felt zl = F.pth_root(f.leading());
    // f -= (zl x^e)^p - zl x^e
    UniPoly strip = UniPoly::monomial(F, F.pow(zl, p), d) - UniPoly::monomial(F, zl, e);
    f = f - strip;
  }
}

// ---------------------------------------------------------------------------
// Bivariate polynomials, sparse monomials in graded order.
// ---------------------------------------------------------------------------

struct Mono2 {
  std::uint32_t ex = 0, ey = 0;
  felt c = 0;
};

inline bool mono2_before(const Mono2& a, const Mono2& b) {
  return std::tuple(a.ex + a.ey, a.ex, a.ey) < std::tuple(b.ex + b.ey, b.ex, b.ey);
}

struct BivarPoly {
  const Field* F = nullptr;
  std::vector<Mono2> t;  // distinct monomials, nonzero coefficients, sorted

  BivarPoly() = default;
  explicit BivarPoly(const Field& f) : F(&f) {}
  BivarPoly(const Field& f, std::vector<Mono2> terms) : F(&f), t(std::move(terms)) { normalize(); }

  void normalize() {
    std::sort(t.begin(), t.end(), mono2_before);
    std::vector<Mono2> out;
    for (auto& m : t) {
      if (!out.empty() && out.back().ex == m.ex && out.back().ey == m.ey)
        out.back().c = F->add(out.back().c, m.c);
      else
        out.push_back(m);
    }
    t.clear();
    for (auto& m : out)
      if (m.c) t.push_back(m);
  }

  bool is_zero() const { return t.empty(); }
  int total_degree() const {
    int d = -1;
    for (auto& m : t) d = std::max(d, static_cast<int>(m.ex + m.ey));
    return d;
  }

  felt eval(felt x, felt y) const {
    felt v = 0;
    for (auto& m : t)
      v = F->add(v, F->mul(m.c, F->mul(F->pow(x, m.ex), F->pow(y, m.ey))));
    return v;
  }

  // formal partial derivative; var 0 = x, 1 = y
  BivarPoly derivative(int var) const {
    BivarPoly r(*F);
    for (auto& m : t) {
      std::uint32_t e = var == 0 ? m.ex : m.ey;
      if (e == 0) continue;
      felt s = F->mul(m.c, F->from_int(e % F->p()));
      if (!s) continue;
      Mono2 n = m;
      n.c = s;
      if (var == 0)
        --n.ex;
      else
        --n.ey;
      r.t.push_back(n);
    }
    r.normalize();
    return r;
  }

  // coefficients of y^j as polynomials in x, for scanline evaluation
  std::vector<UniPoly> columns() const {
    std::uint32_t dy = 0;
    for (auto& m : t) dy = std::max(dy, m.ey);
    std::vector<UniPoly> cols(t.empty() ? 0 : dy + 1, UniPoly(*F));
    for (auto& m : t) {
      auto& col = cols[m.ey];
      if (col.c.size() <= m.ex) col.c.resize(m.ex + 1, 0);
      col.c[m.ex] = F->add(col.c[m.ex], m.c);
    }
    for (auto& col : cols) col.trim();
    return cols;
  }
};

inline bool operator==(const BivarPoly& a, const BivarPoly& b) {
  if (a.t.size() != b.t.size()) return false;
  for (std::size_t i = 0; i < a.t.size(); ++i)
    if (a.t[i].ex != b.t[i].ex || a.t[i].ey != b.t[i].ey || a.t[i].c != b.t[i].c) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Homogeneous trivariate polynomials of fixed total degree.
// ---------------------------------------------------------------------------

struct Mono3 {
  std::uint32_t e0 = 0, e1 = 0, e2 = 0;
  felt c = 0;
};

inline bool mono3_before(const Mono3& a, const Mono3& b) {
  return std::tuple(a.e0, a.e1, a.e2) < std::tuple(b.e0, b.e1, b.e2);
}

struct HomogPoly {
  const Field* F = nullptr;
  std::uint32_t deg = 0;
  std::vector<Mono3> t;

  HomogPoly() = default;
  HomogPoly(const Field& f, std::uint32_t m) : F(&f), deg(m) {}
  HomogPoly(const Field& f, std::uint32_t m, std::vector<Mono3> terms)
      : F(&f), deg(m), t(std::move(terms)) {
    for (auto& mono : t)
      if (mono.e0 + mono.e1 + mono.e2 != m)
        throw std::invalid_argument("monomial degree does not match the declared degree");
    normalize();
  }

  void normalize() {
    std::sort(t.begin(), t.end(), mono3_before);
    std::vector<Mono3> out;
    for (auto& m : t) {
      if (!out.empty() && out.back().e0 == m.e0 && out.back().e1 == m.e1 && out.back().e2 == m.e2)
        out.back().c = F->add(out.back().c, m.c);
      else
        out.push_back(m);
    }
    t.clear();
    for (auto& m : out)
      if (m.c) t.push_back(m);
  }

  bool is_zero() const { return t.empty(); }

  felt eval(felt x0, felt x1, felt x2) const {
    felt v = 0;
    for (auto& m : t) {
      felt w = F->mul(m.c, F->pow(x0, m.e0));
      w = F->mul(w, F->pow(x1, m.e1));
      w = F->mul(w, F->pow(x2, m.e2));
      v = F->add(v, w);
    }
    return v;
  }

  // formal partial derivative: degree drops by one
  HomogPoly derivative(int var) const {
    HomogPoly r(*F, deg == 0 ? 0 : deg - 1);
    for (auto& m : t) {
      std::uint32_t e = var == 0 ? m.e0 : var == 1 ? m.e1 : m.e2;
      if (e == 0) continue;
      felt s = F->mul(m.c, F->from_int(e % F->p()));
      if (!s) continue;
      Mono3 n = m;
      n.c = s;
      if (var == 0)
        --n.e0;
      else if (var == 1)
        --n.e1;
      else
        --n.e2;
      r.t.push_back(n);
    }
    r.normalize();
    return r;
  }

  BivarPoly dehomogenize(int chart) const {
    BivarPoly g(*F);
    for (auto& m : t) {
      Mono2 n;
      if (chart == 0) {
        n.ex = m.e1;
        n.ey = m.e2;
      } else if (chart == 1) {
        n.ex = m.e0;
        n.ey = m.e2;
      } else {
        n.ex = m.e0;
        n.ey = m.e1;
      }
      n.c = m.c;
      g.t.push_back(n);
    }
    g.normalize();
    return g;
  }
};

inline bool operator==(const HomogPoly& a, const HomogPoly& b) {
  if (a.t.size() != b.t.size()) return false;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    auto &x = a.t[i], &y = b.t[i];
    if (x.e0 != y.e0 || x.e1 != y.e1 || x.e2 != y.e2 || x.c != y.c) return false;
  }
  return true;
}

inline HomogPoly operator+(const HomogPoly& a, const HomogPoly& b) {
  if (a.deg != b.deg && !a.is_zero() && !b.is_zero())
    throw std::invalid_argument("adding homogeneous polynomials of different degrees");
  HomogPoly r(*a.F, a.is_zero() ? b.deg : a.deg);
  r.t = a.t;
  r.t.insert(r.t.end(), b.t.begin(), b.t.end());
  r.normalize();
  return r;
}

inline HomogPoly operator-(const HomogPoly& a, const HomogPoly& b) {
  HomogPoly nb = b;
  for (auto& m : nb.t) m.c = b.F->neg(m.c);
  return a + nb;
}

inline HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
  HomogPoly r(*a.F, a.deg + b.deg);
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, felt> acc;
  for (auto& x : a.t)
    for (auto& y : b.t) {
      auto key = std::tuple(x.e0 + y.e0, x.e1 + y.e1, x.e2 + y.e2);
      auto [it, fresh] = acc.emplace(key, 0);
      it->second = a.F->add(it->second, a.F->mul(x.c, y.c));
    }
  for (auto& [key, c] : acc)
    if (c) r.t.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  r.normalize();
  return r;
}

inline HomogPoly operator*(const HomogPoly& a, felt s) {
  HomogPoly r = a;
  if (!s) {
    r.t.clear();
    return r;
  }
  for (auto& m : r.t) m.c = a.F->mul(m.c, s);
  return r;
}

// x^i y^j -> X0^i X1^j X2^(m-i-j)
inline HomogPoly homogenize(const BivarPoly& g, std::uint32_t m) {
  if (static_cast<int>(m) < g.total_degree())
    throw std::invalid_argument("homogenization degree below the total degree");
  HomogPoly r(*g.F, m);
  for (auto& mono : g.t) r.t.push_back({mono.ex, mono.ey, m - mono.ex - mono.ey, mono.c});
  r.normalize();
  return r;
}

// coefficient maps under a field embedding
inline UniPoly lift(const UniPoly& f, const FieldHom& h) {
  UniPoly r(h.dst());
  r.c.resize(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) r.c[i] = h.map(f.c[i]);
  r.trim();
  return r;
}

inline HomogPoly lift(const HomogPoly& f, const FieldHom& h) {
  HomogPoly r(h.dst(), f.deg);
  for (auto& m : f.t) r.t.push_back({m.e0, m.e1, m.e2, h.map(m.c)});
  r.normalize();
  return r;
}

}  // namespace kmarc
