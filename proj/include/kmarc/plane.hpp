#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kmarc/gf.hpp"

namespace kmarc {

// Canonical homogeneous triples: scaled so the last nonzero coordinate is 1.
// Enumeration order is the affine chart (x, y, 1) in element order, then the
// slope chart (x, 1, 0), then (1, 0, 0); lines mirror it by duality, so the
// line at infinity (0, 0, 1) is the very first line.

struct ProjPoint {
  const Field* F = nullptr;
  felt x0 = 0, x1 = 0, x2 = 0;
};

struct ProjLine {
  const Field* F = nullptr;
  felt a0 = 0, a1 = 0, a2 = 0;
};

namespace detail {
inline std::array<felt, 3> canon_triple(const Field& F, felt v0, felt v1, felt v2) {
  felt last = v2 ? v2 : v1 ? v1 : v0;
  if (!last) throw std::invalid_argument("projective triple must be nonzero");
  if (last != 1) {
    felt s = F.inv(last);
    v0 = F.mul(v0, s);
    v1 = F.mul(v1, s);
    v2 = F.mul(v2, s);
  }
  return {v0, v1, v2};
}
}  // namespace detail

inline ProjPoint make_point(const Field& F, felt x0, felt x1, felt x2) {
  auto t = detail::canon_triple(F, x0, x1, x2);
  return {&F, t[0], t[1], t[2]};
}

inline ProjLine make_line(const Field& F, felt a0, felt a1, felt a2) {
  auto t = detail::canon_triple(F, a0, a1, a2);
  return {&F, t[0], t[1], t[2]};
}

inline bool operator==(const ProjPoint& a, const ProjPoint& b) {
  return a.x0 == b.x0 && a.x1 == b.x1 && a.x2 == b.x2;
}
inline bool operator==(const ProjLine& a, const ProjLine& b) {
  return a.a0 == b.a0 && a.a1 == b.a1 && a.a2 == b.a2;
}

inline std::uint64_t plane_size(const Field& F) {
  std::uint64_t q = F.q();
  return q * q + q + 1;
}

// flat index in enumeration order; the census table is keyed by these
inline std::uint64_t point_index(const ProjPoint& P) {
  const std::uint64_t q = P.F->q();
  if (P.x2 == 1) return static_cast<std::uint64_t>(P.x0) * q + P.x1;
  if (P.x1 == 1) return q * q + P.x0;
  return q * q + q;
}

inline std::uint64_t line_index(const ProjLine& L) {
  const std::uint64_t q = L.F->q();
  if (L.a2 == 1) return static_cast<std::uint64_t>(L.a0) * q + L.a1;
  if (L.a1 == 1) return q * q + L.a0;
  return q * q + q;
}

inline ProjPoint point_from_index(const Field& F, std::uint64_t idx) {
  const std::uint64_t q = F.q();
  if (idx < q * q) return {&F, static_cast<felt>(idx / q), static_cast<felt>(idx % q), 1};
  if (idx < q * q + q) return {&F, static_cast<felt>(idx - q * q), 1, 0};
  return {&F, 1, 0, 0};
}

inline ProjLine line_from_index(const Field& F, std::uint64_t idx) {
  const std::uint64_t q = F.q();
  if (idx < q * q) return {&F, static_cast<felt>(idx / q), static_cast<felt>(idx % q), 1};
  if (idx < q * q + q) return {&F, static_cast<felt>(idx - q * q), 1, 0};
  return {&F, 1, 0, 0};
}

inline std::vector<ProjPoint> enumerate_points(const Field& F) {
  std::vector<ProjPoint> out;
  out.reserve(plane_size(F));
  for (std::uint64_t i = 0; i < plane_size(F); ++i) out.push_back(point_from_index(F, i));
  return out;
}

inline std::vector<ProjLine> enumerate_lines(const Field& F) {
  std::vector<ProjLine> out;
  out.reserve(plane_size(F));
  for (std::uint64_t i = 0; i < plane_size(F); ++i) out.push_back(line_from_index(F, i));
  return out;
}

inline ProjLine line_at_infinity(const Field& F) { return {&F, 0, 0, 1}; }

inline bool incidence(const ProjPoint& P, const ProjLine& L) {
  if (!P.F->same(*L.F)) throw std::invalid_argument("point and line from different fields");
  const Field& F = *P.F;
  felt s = F.mul(L.a0, P.x0);
  s = F.add(s, F.mul(L.a1, P.x1));
  s = F.add(s, F.mul(L.a2, P.x2));
  return s == 0;
}

inline ProjLine line_through(const ProjPoint& P, const ProjPoint& Q) {
  if (P == Q) throw std::invalid_argument("two distinct points are needed to span a line");
  const Field& F = *P.F;
  felt a0 = F.sub(F.mul(P.x1, Q.x2), F.mul(P.x2, Q.x1));
  felt a1 = F.sub(F.mul(P.x2, Q.x0), F.mul(P.x0, Q.x2));
  felt a2 = F.sub(F.mul(P.x0, Q.x1), F.mul(P.x1, Q.x0));
  return make_line(F, a0, a1, a2);
}

inline ProjPoint meet(const ProjLine& L, const ProjLine& M) {
  if (L == M) throw std::invalid_argument("two distinct lines are needed to meet");
  const Field& F = *L.F;
  felt x0 = F.sub(F.mul(L.a1, M.a2), F.mul(L.a2, M.a1));
  felt x1 = F.sub(F.mul(L.a2, M.a0), F.mul(L.a0, M.a2));
  felt x2 = F.sub(F.mul(L.a0, M.a1), F.mul(L.a1, M.a0));
  return make_point(F, x0, x1, x2);
}

// The pencil of the q+1 lines through P, in a deterministic order: with j the
// last nonzero coordinate of P and i1 < i2 the other two indices, the lines
// are u + t v for t in element order followed by v, where u = e_{i1} - P_{i1}
// e_j and v = e_{i2} - P_{i2} e_j.
inline std::vector<ProjLine> lines_through(const ProjPoint& P) {
  const Field& F = *P.F;
  const felt coords[3] = {P.x0, P.x1, P.x2};
  int j = coords[2] ? 2 : coords[1] ? 1 : 0;
  int i1 = j == 0 ? 1 : 0;
  int i2 = j == 2 ? 1 : 2;
  felt u[3] = {0, 0, 0}, v[3] = {0, 0, 0};
  u[i1] = 1;
  u[j] = F.neg(coords[i1]);
  v[i2] = 1;
  v[j] = F.neg(coords[i2]);
  std::vector<ProjLine> out;
  out.reserve(F.q() + 1);
  for (felt t = 0; t < F.q(); ++t)
    out.push_back(make_line(F, F.add(u[0], F.mul(t, v[0])), F.add(u[1], F.mul(t, v[1])),
                            F.add(u[2], F.mul(t, v[2]))));
  out.push_back(make_line(F, v[0], v[1], v[2]));
  return out;
}

// the q+1 points of L, sorted by point index
inline std::vector<ProjPoint> points_on_line(const ProjLine& L) {
  const Field& F = *L.F;
  const felt coords[3] = {L.a0, L.a1, L.a2};
  int j = coords[2] ? 2 : coords[1] ? 1 : 0;
  int i1 = j == 0 ? 1 : 0;
  int i2 = j == 2 ? 1 : 2;
  felt u[3] = {0, 0, 0}, v[3] = {0, 0, 0};
  u[i1] = 1;
  u[j] = F.neg(coords[i1]);
  v[i2] = 1;
  v[j] = F.neg(coords[i2]);
  std::vector<ProjPoint> out;
  out.reserve(F.q() + 1);
  for (felt t = 0; t < F.q(); ++t)
    out.push_back(make_point(F, F.add(u[0], F.mul(t, v[0])), F.add(u[1], F.mul(t, v[1])),
                             F.add(u[2], F.mul(t, v[2]))));
  out.push_back(make_point(F, v[0], v[1], v[2]));
  std::sort(out.begin(), out.end(),
            [](const ProjPoint& a, const ProjPoint& b) { return point_index(a) < point_index(b); });
  return out;
}

}  // namespace kmarc
