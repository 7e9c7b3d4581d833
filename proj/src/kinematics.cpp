#include "tricoul/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace tricoul::kinematics {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676372317075293618;

// 2-block rotation coefficients (c, s): frame j maps
//   x_j = c*x + s*y,  y_j = -s*x + c*y.
void frame_coeffs(int j, double& c, double& s) {
  switch (j) {
    case 1: c = 1.0; s = 0.0; break;
    case 2: c = -0.5; s = -kHalfSqrt3; break;
    case 3: c = -0.5; s = kHalfSqrt3; break;
  }
}

}  // namespace

PairIndex::PairIndex(int j_) : j(j_) {
  if (j_ < 1 || j_ > 3)
    throw std::invalid_argument("PairIndex: j must be in {1,2,3}");
}

PairIndex next_pair(PairIndex j) { return PairIndex(j.j % 3 + 1); }

std::pair<Vec3, Vec3> pair_frame(const JacobiConfig& z, PairIndex j) {
  double c, s;
  frame_coeffs(j.j, c, s);
  return {c * z.x + s * z.y, -s * z.x + c * z.y};
}

std::pair<Vec3, Vec3> momentum_frame(const JacobiMomentum& q, PairIndex j) {
  double c, s;
  frame_coeffs(j.j, c, s);
  return {c * q.k + s * q.p, -s * q.k + c * q.p};
}

std::array<RegionLabel, 3> region_classify(const JacobiConfig& z, double mu,
                                           double nu) {
  if (!(0.5 < mu && mu < nu && nu < 1.0))
    throw std::invalid_argument("region_classify: need 1/2 < mu < nu < 1");
  std::array<RegionLabel, 3> out{};
  for (int j = 1; j <= 3; ++j) {
    const auto [xj, yj] = pair_frame(z, PairIndex(j));
    const double xm = norm(xj), ym = norm(yj);
    if (ym <= 1.0)
      throw std::domain_error("region_classify: y_j <= 1, exponents undefined");
    if (xm < std::pow(ym, mu))
      out[j - 1] = RegionLabel::inner;
    else if (xm > std::pow(ym, nu))
      out[j - 1] = RegionLabel::outer;
    else
      out[j - 1] = RegionLabel::overlap;
  }
  return out;
}

double cutoff(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

RegionWeights partition_weights(const JacobiConfig& z, double mu, double nu) {
  if (!(0.5 < mu && mu < nu && nu < 1.0))
    throw std::invalid_argument("partition_weights: need 1/2 < mu < nu < 1");
  RegionWeights w;
  w.mu = mu;
  w.nu = nu;
  for (int j = 1; j <= 3; ++j) {
    const auto [xj, yj] = pair_frame(z, PairIndex(j));
    const double xm = norm(xj), ym = norm(yj);
    if (ym <= 1.0)
      throw std::domain_error("partition_weights: y_j <= 1 for channel");
    double rho;
    if (xm == 0.0)
      rho = -1.0;  // on the screen: deep inner
    else
      rho = std::log(xm) / std::log(ym);
    w.zeta0j[j - 1] = cutoff((rho - mu) / (nu - mu));
  }
  double sum = w.zeta0j[0] + w.zeta0j[1] + w.zeta0j[2];
  if (sum > 1.0) {
    // Outside the asymptotic regime; renormalize the channel weights.
    for (double& v : w.zeta0j) v /= sum;
    w.zeta0 = 0.0;
  } else {
    w.zeta0 = 1.0 - w.zeta0j[0] - w.zeta0j[1] - w.zeta0j[2];
  }
  return w;
}

}  // namespace tricoul::kinematics
