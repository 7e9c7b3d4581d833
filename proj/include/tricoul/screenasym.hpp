#ifndef TRICOUL_SCREENASYM_HPP
#define TRICOUL_SCREENASYM_HPP

#include <functional>
#include <utility>
#include <vector>

#include "tricoul/kinematics.hpp"
#include "tricoul/vec3.hpp"

namespace tricoul::screenasym {

using kinematics::JacobiConfig;
using kinematics::JacobiMomentum;
using kinematics::PairIndex;

// Weak-asymptotics notation near screen j: the +/- coefficient pairs, the
// combined Sommerfeld exponent omega and the unimodular prefactor B0.
struct ScreenAsymCoeffs {
  double Z2p = 0.0, Z2m = 0.0, Z3p = 0.0, Z3m = 0.0;
  double V2p = 0.0, V2m = 0.0, V3p = 0.0, V3m = 0.0;
  double omega = 0.0;
  double eta2 = 0.0, eta3 = 0.0;
  Complex B0;
};

// Coefficients entering the R-kernel: exponents a, b, the in/out amplitude
// pairs and the angular-shift vectors.
struct RKernelCoeffs {
  double a = 0.0, b = 0.0;
  Complex A_in, A_out;
  Vec3 B_in, B_out;
  Vec3 Omega_in, Omega_out;
  Complex B0_in, B0_out;
  double omega = 0.0, eta2 = 0.0, eta3 = 0.0;
};

// Z/V/omega/B0 coefficient set for screen j, evaluated at the given unit
// directions of the pair coordinate (xhat) and of the spectator momentum
// (phat). The spectator pair momenta k_2, k_3 come from the j-frame
// relabeling of q.
ScreenAsymCoeffs screen_coeffs(const JacobiMomentum& q, const Vec3& xhat,
                               const Vec3& phat, PairIndex j, double alpha);

// Coefficients of the incoming and outgoing delta terms in the weak
// y_j -> infinity asymptotics of the complementary product Psi_1:
//   amp_in  =  B0 (2pi/(i y p)) e^{-iyp + i omega ln y} prod e^{i eta ln[Z^- + (x/2y) V^-]}
//   amp_out = -B0 (2pi/(i y p)) e^{+iyp + i omega ln y} prod e^{i eta ln[Z^+ + (x/2y) V^+]}
// Intended for y_j >> 1 (not enforced). Throws std::domain_error when a
// bracket Z + (x/2y)V is nonpositive (outside asymptotic validity).
std::pair<Complex, Complex> psi1_weak_amplitudes(const JacobiConfig& z,
                                                 const JacobiMomentum& q,
                                                 PairIndex j, double alpha);

// R-kernel coefficient set in the j-frame of q. Throws std::domain_error
// when k_j or p_j vanishes, when a or b is zero (resonant coupling), or on
// an exact Omega denominator singularity.
RKernelCoeffs rkernel_coeffs(const JacobiMomentum& q, PairIndex j,
                             double alpha);

// Same, with the spectator direction overridden; used to assert the
// phat -> -phat exchange symmetry without rebuilding q.
RKernelCoeffs rkernel_coeffs_dir(const JacobiMomentum& q, PairIndex j,
                                 double alpha, const Vec3& phat);

// The orthogonality-consistent reading of the B vectors: component
// transverse to khat.
Vec3 project_off_k(const Vec3& b, const Vec3& khat);

// Axisymmetric smooth test function on the unit sphere, parametrized by
// c = <xhat, khat>.
using SphereTestFn = std::function<Complex(double)>;

struct WeakCheckRow {
  double radius = 0.0;
  Complex integral;            // sphere quadrature of psi_c * testfn
  Complex incoming_extracted;  // e^{-ikX} component, two-radius separation
  Complex incoming_predicted;  // weak-formula incoming-delta coefficient
  Complex prediction;          // full weak-form model of the integral
  double rel_mismatch = 0.0;   // incoming extracted vs predicted
  bool quadrature_converged = false;
};

struct WeakCheckRecord {
  std::vector<WeakCheckRow> rows;
  bool quadrature_ok = false;
};

// Checks the weak asymptotics of the two-body scattering wave: integrates
// psi_c(X xhat, k) testfn(<xhat,khat>) over the sphere at each radius and
// compares against the delta-extraction prediction (incoming and forward
// delta terms plus the Coulomb scattered wave). The test function must
// vanish at c = +1 when alpha != 0, since the forward delta and the
// scattered-wave forward singularity merge there.
WeakCheckRecord twobody_weak_check(const Vec3& k, double alpha,
                                   const std::vector<double>& radii,
                                   const SphereTestFn& testfn);

}  // namespace tricoul::screenasym

#endif
