#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdg/distance.hpp"

namespace mdg {

struct KMeansResult {
  std::vector<Point2> centroids;
  std::vector<std::size_t> assignment;
  // Sum of squared distances after each assignment step.
  std::vector<double> objective;
  std::size_t iterations = 0;
};

/// k-means++ seeding then Lloyd iterations until the assignment stops
/// changing or max_iter is reached. An emptied cluster is moved to the point
/// farthest from its centroid. Throws TooFewPoints when |points| < K.
KMeansResult kmeans(std::span<const Point2> points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter = 100);

}  // namespace mdg
