#ifndef TRICOUL_WAVEFN_HPP
#define TRICOUL_WAVEFN_HPP

#include <complex>

#include "tricoul/kinematics.hpp"
#include "tricoul/vec3.hpp"

namespace tricoul::wavefn {

using kinematics::JacobiConfig;
using kinematics::JacobiMomentum;
using kinematics::PairIndex;

// Test hook for the selftest fault-injection harness: multiplies N_c.
inline double nc_fault_factor = 1.0;

// Two-body normalization constant N_c = (2pi)^{-3/2} e^{-pi eta/2} Gamma(1+i eta).
Complex norm_const(double eta);

struct PairWave {
  Complex value;
  CVec3 loggrad_k;  // grad_k psi_c / psi_c, filled on request
  double eta = 0.0;
  Complex norm_const;
};

// Coulomb distortion factor D(x,k) = Phi(-i eta, 1, i(k|x| - <x,k>)).
// Accepts complex x; |x| is the principal square root of <x,x> without
// conjugation.
Complex coulomb_D(const CVec3& x, const Vec3& k, double alpha);

// Two-body scattering state psi_c = N_c e^{i<x,k>} D(x,k).
PairWave psi_c(const Vec3& x, const Vec3& k, double alpha,
               bool with_loggrad = false);

enum class GradMethod { analytic, numeric };

// grad_k psi_c(x,k) / psi_c(x,k), differentiating through the Sommerfeld
// parameter and the normalization constant.
CVec3 psi_c_loggrad_k(const Vec3& x, const Vec3& k, double alpha,
                      GradMethod method = GradMethod::analytic);

// Product ansatz N0 e^{i<z,q>} D(x1,k1) D(x2,k2) D(x3,k3).
Complex bbk(const JacobiConfig& z, const JacobiMomentum& q, double alpha);

struct ScreenFactor {
  Complex pair_factor;  // psi_c(x_j, k_j)
  Complex psi1;         // the complementary product
};

// Factorization of the product ansatz near screen j:
// bbk = pair_factor * psi1.
ScreenFactor bbk_screen_factor(const JacobiConfig& z, const JacobiMomentum& q,
                               PairIndex j, double alpha);

// The formula as written shares one logarithmic k-gradient between both
// shifted coordinates; the per-channel variant is kept behind a switch.
enum class ShiftConvention { common_gradient, per_channel_gradient };

struct ShiftedCoords {
  CVec3 x_tilde_2;   // shift of the first spectator pair coordinate
  CVec3 x_tilde_3;   // shift of the second
  Complex x_mag_2;   // principal sqrt(<x~,x~>)
  Complex x_mag_3;
};

ShiftedCoords x_tilde(const JacobiConfig& z, const JacobiMomentum& q,
                      PairIndex j, double alpha,
                      ShiftConvention conv = ShiftConvention::common_gradient);

// Screen-modified approximation: the product ansatz with the two spectator
// distortion factors taken at the shifted complex coordinates.
Complex chi(const JacobiConfig& z, const JacobiMomentum& q, PairIndex j,
            double alpha,
            ShiftConvention conv = ShiftConvention::common_gradient);

// Global assembly: sum of the screen-modified pieces weighted by the
// partition of unity plus the plain product ansatz on the outer region.
Complex psi_as(const JacobiConfig& z, const JacobiMomentum& q, double alpha,
               double mu, double nu);

}  // namespace tricoul::wavefn

#endif
