#pragma once

// Largest canonical correlations between the 15 measured gestures (a..o),
// transcribed from the published similarity table. Upper triangle, row-major.

#include <Eigen/Dense>
#include <array>

namespace mdg::fixture {

inline constexpr int kGestures = 15;

// Row r lists sim(r, c) for c = r + 1 .. 14.
inline constexpr std::array<double, 105> kUpper{
    // a: b..o
    0.79, 0.83, 0.91, 0.70, 0.75, 0.79, 0.84, 0.69, 0.66, 0.78, 0.77, 0.76, 0.77, 0.81,
    // b: c..o
    0.92, 0.80, 0.70, 0.68, 0.82, 0.82, 0.65, 0.61, 0.78, 0.82, 0.83, 0.73, 0.60,
    // c: d..o
    0.76, 0.64, 0.59, 0.85, 0.88, 0.72, 0.65, 0.80, 0.80, 0.82, 0.76, 0.69,
    // d: e..o
    0.61, 0.68, 0.81, 0.75, 0.57, 0.55, 0.78, 0.67, 0.60, 0.63, 0.64,
    // e: f..o
    0.86, 0.70, 0.75, 0.59, 0.66, 0.56, 0.72, 0.66, 0.72, 0.71,
    // f: g..o
    0.78, 0.83, 0.70, 0.70, 0.67, 0.73, 0.70, 0.78, 0.79,
    // g: h..o
    0.85, 0.67, 0.67, 0.78, 0.66, 0.71, 0.74, 0.73,
    // h: i..o
    0.55, 0.60, 0.72, 0.67, 0.61, 0.71, 0.71,
    // i: j..o
    0.87, 0.75, 0.61, 0.67, 0.76, 0.74,
    // j: k..o
    0.68, 0.61, 0.68, 0.83, 0.73,
    // k: l..o
    0.94, 0.94, 0.83, 0.76,
    // l: m..o
    0.93, 0.73, 0.66,
    // m: n..o
    0.77, 0.63,
    // n: o
    0.82,
};

inline Eigen::MatrixXd canonical_table() {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(kGestures, kGestures);
  std::size_t i = 0;
  for (int r = 0; r < kGestures; ++r) {
    for (int c = r + 1; c < kGestures; ++c) s(r, c) = s(c, r) = kUpper[i++];
  }
  return s;
}

}  // namespace mdg::fixture
