#include "mdg/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "mdg/error.hpp"

namespace mdg {
namespace {

double sq(const Point2& a, const Point2& b) {
  const double dt = a.t - b.t;
  const double df = a.f - b.f;
  return dt * dt + df * df;
}

std::vector<Point2> seed_plus_plus(std::span<const Point2> pts, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = pts.size();
  std::vector<Point2> centers;
  std::vector<bool> used(n, false);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::size_t idx = first(rng);
  centers.push_back(pts[idx]);
  used[idx] = true;

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq(pts[i], centers.back());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (centers.size() < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    if (total > 0.0) {
      const double r = unit(rng) * total;
      double acc = 0.0;
      idx = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        idx = i;
        if (acc > r) break;
      }
    } else {
      // Every point coincides with a centre already; take the next unused one.
      idx = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
    }
    centers.push_back(pts[idx]);
    used[idx] = true;
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq(pts[i], centers.back()));
  }
  return centers;
}

}  // namespace

KMeansResult kmeans(std::span<const Point2> points, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
  if (k == 0 || points.size() < k) {
    throw Error(ErrorCode::kTooFewPoints, "k-means needs at least K points");
  }
  std::mt19937_64 rng(seed);
  KMeansResult r;
  r.centroids = seed_plus_plus(points, k, rng);
  const std::size_t n = points.size();
  r.assignment.assign(n, std::numeric_limits<std::size_t>::max());

  std::vector<std::size_t> next(n);
  std::vector<double> cost(n);
  for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iter, 1); ++iter) {
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double bd = sq(points[i], r.centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = sq(points[i], r.centroids[c]);
        if (d < bd) {
          bd = d;
          best = c;
        }
      }
      next[i] = best;
      cost[i] = bd;
      objective += bd;
    }
    r.objective.push_back(objective);
    r.iterations = iter + 1;
    const bool stable = next == r.assignment;
    r.assignment = next;
    if (stable) break;

    std::vector<Point2> sum(k);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[next[i]].t += points[i].t;
      sum[next[i]].f += points[i].f;
      ++count[next[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0) {
        r.centroids[c] = {sum[c].t / static_cast<double>(count[c]), sum[c].f / static_cast<double>(count[c])};
      } else {
        // Re-seed at the point currently paying the most.
        const auto far = static_cast<std::size_t>(std::max_element(cost.begin(), cost.end()) - cost.begin());
        r.centroids[c] = points[far];
        cost[far] = 0.0;
      }
    }
  }
  return r;
}

}  // namespace mdg
