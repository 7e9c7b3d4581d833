#ifndef TRICOUL_KINEMATICS_HPP
#define TRICOUL_KINEMATICS_HPP

#include <array>
#include <utility>

#include "tricoul/vec3.hpp"

namespace tricoul::kinematics {

// Pair label, 1-based as in the three-body channel convention.
struct PairIndex {
  int j = 1;
  explicit PairIndex(int j_);
};

// Configuration point in the pair-1 Jacobi frame.
struct JacobiConfig {
  Vec3 x;  // pair relative coordinate
  Vec3 y;  // complementary coordinate
};

// Momentum point dual to JacobiConfig, pair-1 frame.
struct JacobiMomentum {
  Vec3 k;
  Vec3 p;
};

// (x_j, y_j): the configuration expressed in the frame of pair j.
// Frames 2 and 3 are the +-120 degree rotations of the (x, y) 2-block:
//   x2 = -x/2 - (sqrt3/2) y,   y2 =  (sqrt3/2) x - y/2
//   x3 = -x/2 + (sqrt3/2) y,   y3 = -(sqrt3/2) x - y/2
std::pair<Vec3, Vec3> pair_frame(const JacobiConfig& z, PairIndex j);

// Same rotation applied to the dual variables.
std::pair<Vec3, Vec3> momentum_frame(const JacobiMomentum& q, PairIndex j);

// Cyclic successor pair: next_pair(1) = 2, next_pair(3) = 1.
PairIndex next_pair(PairIndex j);

inline double energy(const JacobiMomentum& q) {
  return dot(q.k, q.k) + dot(q.p, q.p);
}

inline double pairing(const JacobiConfig& z, const JacobiMomentum& q) {
  return dot(z.x, q.k) + dot(z.y, q.p);
}

enum class RegionLabel { inner, overlap, outer };

// Per-channel classification against the screen-neighbourhood exponents:
// inner when x_j < y_j^mu, outer when x_j > y_j^nu, overlap between.
// Requires y_j > 1 for every channel and 1/2 < mu < nu < 1.
std::array<RegionLabel, 3> region_classify(const JacobiConfig& z, double mu,
                                           double nu);

struct RegionWeights {
  double zeta0 = 0.0;
  std::array<double, 3> zeta0j{};
  double mu = 0.0;
  double nu = 0.0;
};

// C^2 quintic cutoff in s = (rho - mu)/(nu - mu): 1 for s <= 0, 0 for
// s >= 1, symmetric about s = 1/2.
double cutoff(double s);

// Partition of unity subordinated to the screen covering. Each zeta0j is
// the cutoff evaluated at rho_j = ln x_j / ln y_j; zeta0 takes the
// remainder. When several channel weights overlap (small z, outside the
// asymptotic regime) the channel weights are renormalized to sum to 1.
RegionWeights partition_weights(const JacobiConfig& z, double mu, double nu);

}  // namespace tricoul::kinematics

#endif
