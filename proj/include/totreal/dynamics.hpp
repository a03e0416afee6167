#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "totreal/fp.hpp"

namespace totreal {

// The rational map H(x) = x - 1/x.  Its Julia set is contained in the real
// line, and backward orbits of a preperiodic rational seed sample the
// canonical measure of H.
inline long double smyth_map(long double x) { return x - 1.0L / x; }

struct Rational {
  long long num = 1;
  long long den = 1;

  long double value() const { return static_cast<long double>(num) / den; }
};

inline constexpr int kDefaultDepthCap = 16;

// The 2^depth real solutions of H^(depth)(x) = seed, in tree order: node k
// of a level expands to children 2k (minus branch) and 2k+1 (plus branch).
struct PreimageTree {
  int depth = 0;
  long double seed = 1;
  std::vector<long double> points;
};

/// Backward iteration: each preimage level solves x^2 - y x - 1 = 0, whose
/// discriminant y^2 + 4 is positive, so the tree stays real.
inline PreimageTree preimage_tree(int depth, Rational seed = {1, 1},
                                  int depth_cap = kDefaultDepthCap) {
  if (seed.den == 0) throw std::invalid_argument("preimage_tree: zero denominator");
  if (depth < 0) throw std::invalid_argument("preimage_tree: depth must be nonnegative");
  if (depth > depth_cap) throw std::invalid_argument("preimage_tree: depth cap exceeded");
  PreimageTree tree;
  tree.depth = depth;
  tree.seed = seed.value();
  tree.points = {tree.seed};
  for (int level = 0; level < depth; ++level) {
    std::vector<long double> next;
    next.reserve(tree.points.size() * 2);
    for (const long double y : tree.points) {
      const long double root = std::sqrt(y * y + 4.0L);
      next.push_back((y - root) / 2);
      next.push_back((y + root) / 2);
    }
    tree.points = std::move(next);
  }
  return tree;
}

/// Equal-mass averages of log+|x| over the preimage trees of seed 1, one
/// entry per depth from 0 to max_depth.  The depth-k entry is the Weil
/// height of the degree-2^k preimage polynomial (which is monic), and the
/// sequence converges to the pairing value of H against the squaring map.
inline std::vector<std::pair<int, long double>> smyth_height_sequence(
    int max_depth, Rational seed = {1, 1}, int depth_cap = kDefaultDepthCap) {
  if (seed.den == 0) throw std::invalid_argument("smyth_height_sequence: zero denominator");
  if (max_depth < 0) throw std::invalid_argument("smyth_height_sequence: depth must be nonnegative");
  if (max_depth > depth_cap)
    throw std::invalid_argument("smyth_height_sequence: depth cap exceeded");
  std::vector<std::pair<int, long double>> out;
  std::vector<long double> level = {seed.value()};
  for (int d = 0;; ++d) {
    long double sum = 0;
    for (const long double x : level) sum += std::log(std::max(1.0L, std::fabs(x)));
    out.emplace_back(d, sum / level.size());
    if (d == max_depth) break;
    std::vector<long double> next;
    next.reserve(level.size() * 2);
    for (const long double y : level) {
      const long double root = std::sqrt(y * y + 4.0L);
      next.push_back((y - root) / 2);
      next.push_back((y + root) / 2);
    }
    level = std::move(next);
  }
  return out;
}

/// Average of log+|x| over the depth-fold preimages of 1; identical to the
/// matching smyth_height_sequence entry.
inline long double az_pairing_estimate(int depth, int depth_cap = kDefaultDepthCap) {
  return smyth_height_sequence(depth, {1, 1}, depth_cap).back().second;
}

}  // namespace totreal
