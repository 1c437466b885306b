#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kmarc/arcs.hpp"
#include "kmarc/plane.hpp"

namespace kmarc {

// [k, 3]_q code spanned by the canonical representatives of an arc's points,
// one point per column.
struct LinearCode {
  FieldPtr field;
  std::vector<std::array<felt, 3>> columns;  // length = k, canonical triples

  std::size_t length() const { return columns.size(); }
};

inline LinearCode code_from_arc(const Arc& A) {
  if (A.size() == 0) throw std::invalid_argument("code construction needs a nonempty arc");
  LinearCode code;
  code.field = A.field_ptr();
  for (auto& P : A.sorted_points()) code.columns.push_back({P.x0, P.x1, P.x2});
  return code;
}

inline std::uint32_t generator_rank(const LinearCode& code) {
  const Field& F = *code.field;
  // eliminate on the 3 x k matrix column by column; rank over the rows
  std::vector<std::vector<felt>> M(3, std::vector<felt>(code.length(), 0));
  for (std::size_t j = 0; j < code.length(); ++j) {
    M[0][j] = code.columns[j][0];
    M[1][j] = code.columns[j][1];
    M[2][j] = code.columns[j][2];
  }
  std::uint32_t rank = 0;
  std::size_t col = 0;
  for (std::uint32_t row = 0; row < 3 && col < code.length(); ++col) {
    std::uint32_t pivot = row;
    while (pivot < 3 && M[pivot][col] == 0) ++pivot;
    if (pivot == 3) continue;
    std::swap(M[row], M[pivot]);
    felt inv = F.inv(M[row][col]);
    for (std::size_t j = col; j < code.length(); ++j) M[row][j] = F.mul(M[row][j], inv);
    for (std::uint32_t r = 0; r < 3; ++r) {
      if (r == row || M[r][col] == 0) continue;
      felt s = M[r][col];
      for (std::size_t j = col; j < code.length(); ++j)
        M[r][j] = F.sub(M[r][j], F.mul(s, M[row][j]));
    }
    ++row;
    rank = row;
  }
  return rank;
}

struct DistanceReport {
  std::uint32_t d = 0;
  std::uint32_t d_brute = 0;      // minimum weight over projective messages
  std::uint32_t d_geometric = 0;  // k minus the largest line count
  ProjLine max_line;              // a line attaining the maximum count
};

// Minimum distance computed two independent ways and cross-checked: by
// weighing xG over one message per scalar class, and as k minus the largest
// per-line point count. Weights are scalar-invariant, so projective message
// enumeration loses nothing.
inline DistanceReport min_distance(const LinearCode& code) {
  if (generator_rank(code) < 3)
    throw std::invalid_argument("minimum distance needs a rank-3 generator");
  const Field& F = *code.field;
  DistanceReport out;

  std::uint32_t best = static_cast<std::uint32_t>(code.length());
  for (std::uint64_t i = 0; i < plane_size(F); ++i) {
    ProjPoint msg = point_from_index(F, i);
    std::uint32_t weight = 0;
    for (auto& col : code.columns) {
      felt s = F.mul(msg.x0, col[0]);
      s = F.add(s, F.mul(msg.x1, col[1]));
      s = F.add(s, F.mul(msg.x2, col[2]));
      if (s != 0) ++weight;
    }
    best = std::min(best, weight);
  }
  out.d_brute = best;

  std::vector<ProjPoint> pts;
  pts.reserve(code.length());
  for (auto& col : code.columns) pts.push_back(make_point(F, col[0], col[1], col[2]));
  auto counts = census_counts(F, pts);
  std::uint32_t max_count = 0;
  std::uint64_t max_idx = 0;
  for (std::uint64_t i = 0; i < counts.size(); ++i)
    if (counts[i] > max_count) {
      max_count = counts[i];
      max_idx = i;
    }
  out.d_geometric = static_cast<std::uint32_t>(code.length()) - max_count;
  out.max_line = line_from_index(F, max_idx);

  if (out.d_brute != out.d_geometric)
    throw std::logic_error("distance routes disagree: weights vs line counts");
  out.d = out.d_brute;
  return out;
}

// Completeness of the arc read in coding terms: an added column would keep
// dimension 3 and raise the distance exactly when its point extends the arc.
struct ExtendabilityReport {
  bool nonextendable = false;
  std::vector<ProjPoint> extending_points;  // uncovered points = usable columns
};

inline ExtendabilityReport is_nonextendable(const Arc& A) {
  auto comp = is_complete(A);
  return {comp.complete, comp.uncovered};
}

}  // namespace kmarc
