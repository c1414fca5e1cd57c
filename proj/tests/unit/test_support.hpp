#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "gmtlab/errors.hpp"
#include "gmtlab/geometry.hpp"

namespace gmt::test {

inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no gmt::Error thrown";
  return ErrorKind::InvariantViolation;
}

// Integer points scaled back by `den`; every coordinate is exact in double.
inline std::vector<Point> scaled(const std::vector<std::pair<std::int64_t, std::int64_t>>& ij,
                                 double den) {
  std::vector<Point> out;
  for (auto [i, j] : ij) out.push_back({static_cast<double>(i) / den, static_cast<double>(j) / den});
  return out;
}

// Brute-force line count over integer points: each pair (i, j) on a k-point line contributes
// 1 / C(k, 2), so a line is counted once.
inline std::uint64_t brute_line_count(const std::vector<std::pair<std::int64_t, std::int64_t>>& p) {
  const std::size_t n = p.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint64_t k = 0;
      for (std::size_t q = 0; q < n; ++q) {
        const auto cr = (p[j].first - p[i].first) * (p[q].second - p[i].second) -
                        (p[j].second - p[i].second) * (p[q].first - p[i].first);
        k += cr == 0;
      }
      total += 2.0 / static_cast<double>(k * (k - 1));
    }
  return static_cast<std::uint64_t>(std::llround(total));
}

// Largest number of points on one line, brute force.
inline std::uint64_t brute_max_collinear(const std::vector<std::pair<std::int64_t, std::int64_t>>& p) {
  std::uint64_t best = std::min<std::uint64_t>(p.size(), 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      std::uint64_t k = 0;
      for (const auto& q : p)
        k += (p[j].first - p[i].first) * (q.second - p[i].second) ==
             (p[j].second - p[i].second) * (q.first - p[i].first);
      best = std::max(best, k);
    }
  return best;
}

// Distinct lines through point `i`: distinct reduced directions to the others.
inline std::uint64_t brute_lines_through(const std::vector<std::pair<std::int64_t, std::int64_t>>& p,
                                         std::size_t i) {
  std::vector<std::pair<std::int64_t, std::int64_t>> dirs;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == i) continue;
    std::int64_t dx = p[j].first - p[i].first, dy = p[j].second - p[i].second;
    const std::int64_t g = std::gcd(dx, dy);
    dx /= g;
    dy /= g;
    if (dx < 0 || (dx == 0 && dy < 0)) dx = -dx, dy = -dy;
    dirs.push_back({dx, dy});
  }
  std::sort(dirs.begin(), dirs.end());
  return static_cast<std::uint64_t>(std::unique(dirs.begin(), dirs.end()) - dirs.begin());
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> grid_ij(std::int64_t m) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < m; ++j) out.push_back({i, j});
  return out;
}

}  // namespace gmt::test
