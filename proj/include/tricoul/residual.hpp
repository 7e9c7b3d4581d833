#ifndef TRICOUL_RESIDUAL_HPP
#define TRICOUL_RESIDUAL_HPP

#include <functional>
#include <utility>
#include <vector>

#include "tricoul/kinematics.hpp"
#include "tricoul/vec3.hpp"

namespace tricoul::residual {

using kinematics::JacobiConfig;
using kinematics::JacobiMomentum;
using kinematics::PairIndex;

// Any complex field on the configuration space.
using Field = std::function<Complex(const JacobiConfig&)>;

// Sum of the pair Coulomb terms alpha/|x_j|. Throws std::domain_error
// when any |x_j| < 1e-12 (on-screen singularity).
double potential(const JacobiConfig& z, double alpha);

// Schrodinger residual Q = -Lap field + V field - lambda field with
// lambda = |q|^2, via the 13-point second-order central-difference
// Laplacian over the six coordinates. Preconditions: 0 < h <= 0.05 (2pi/|q|)
// and every |x_j| >= 10 h (stencil stays off-screen).
Complex numeric_residual(const Field& field, const JacobiConfig& z,
                         const JacobiMomentum& q, double alpha, double h);

// Same residual computed on the phase-reduced field g = field e^{-i<z,q>}
// (Q = e^{i<z,q>} [-Lap g - 2i<q, grad g> + V g]), which removes the fast
// plane-wave oscillation from the stencil; with richardson, the h and h/2
// evaluations are extrapolated to fourth order. Used where the plain
// stencil floor would mask a small residual.
Complex numeric_residual_reduced(const Field& field, const JacobiConfig& z,
                                 const JacobiMomentum& q, double alpha,
                                 double h, bool richardson = true);

// Closed-form discrepancy of the product approximation:
//   c_Q N0 e^{i<z,q>} sum over pairs of
//     -k_a k_b <khat_a - xhat_a, khat_b - xhat_b> Phi_c Phi'_a Phi'_b
// with Phi_j the Kummer distortion factor of channel j and ' = d/d zeta.
Complex analytic_q_bbk(const JacobiConfig& z, const JacobiMomentum& q,
                       double alpha, Complex c_q = Complex(1.0));

struct Calibration {
  Complex c_q;          // mean numeric/analytic ratio
  double max_spread;    // largest |ratio - c_q| / |c_q| over the sample
  int points;
};

// Fixes the single calibration constant of analytic_q_bbk against the
// numeric residual at `points` quasi-random far outer-region points.
// Throws std::runtime_error when the per-point ratios disagree beyond
// `spread_tol`.
Calibration calibrate_cq(const JacobiMomentum& q, double alpha,
                         int points = 20, unsigned seed = 1,
                         double spread_tol = 1e-3);

struct RaySpec {
  Vec3 dir_x;                   // x-part of the unit direction in Gamma
  Vec3 dir_y;                   // y-part; |dir_x|^2 + |dir_y|^2 = 1
  JacobiConfig offset;
  std::vector<double> t_values; // strictly increasing, >= 10

  JacobiConfig at(double t) const {
    return {offset.x + t * dir_x, offset.y + t * dir_y};
  }
};

// Geometric progression helper for t_values.
std::vector<double> geometric_ts(double t_min, double t_max, int count);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> samples;  // (t, |residual|)
  bool floor_limited = false;
  bool fit_ok = false;
};

// Least-squares slope of log|residual| against log t along the ray. The
// residual at each sample uses the phase-reduced Richardson stencil with
// h = min(0.02 (2pi/|q|), 0.01 min_j x_j). Samples at the discretization
// floor are flagged; the fit is marked not-ok when r^2 < 0.9 or when the
// floor dominates.
DecayFit decay_fit(const Field& field, const RaySpec& ray,
                   const JacobiMomentum& q, double alpha);

}  // namespace tricoul::residual

#endif
