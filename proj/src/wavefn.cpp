#include "tricoul/wavefn.hpp"

#include <cmath>
#include <stdexcept>

#include "tricoul/specfun.hpp"

namespace tricoul::wavefn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHalfSqrt3 = 0.86602540378443864676372317075293618;
const Complex kI(0.0, 1.0);

using kinematics::momentum_frame;
using kinematics::next_pair;
using kinematics::pair_frame;
using kinematics::partition_weights;

double eta_of(double alpha, double k) { return alpha / (2.0 * k); }

void require_momentum(double kmag, double alpha) {
  if (alpha != 0.0 && kmag < 1e-12)
    throw std::domain_error("pair momentum vanishes (momentum-space screen)");
}

// Principal square root of the bilinear magnitude; throws on the branch cut.
Complex principal_mag(const CVec3& x) {
  const Complex s = cdot(x, x);
  if (s.real() < 0.0 && std::abs(s.imag()) < 1e-300)
    throw std::domain_error("complex coordinate magnitude on the branch cut");
  return std::sqrt(s);
}

}  // namespace

Complex norm_const(double eta) {
  const Complex g = specfun::gamma_complex(Complex(1.0, eta));
  return nc_fault_factor * std::pow(2.0 * kPi, -1.5) *
         std::exp(-kPi * eta / 2.0) * g;
}

Complex coulomb_D(const CVec3& x, const Vec3& k, double alpha) {
  if (alpha == 0.0) return Complex(1.0);
  const double kmag = norm(k);
  require_momentum(kmag, alpha);
  const double eta = eta_of(alpha, kmag);
  const Complex xmag = principal_mag(x);
  const Complex zeta = kI * (kmag * xmag - cdot(x, k));
  return specfun::kummer_phi(Complex(0.0, -eta), 1.0, zeta).value;
}

PairWave psi_c(const Vec3& x, const Vec3& k, double alpha, bool with_loggrad) {
  const double kmag = norm(k);
  require_momentum(kmag, alpha);
  PairWave w;
  w.eta = (alpha == 0.0) ? 0.0 : eta_of(alpha, kmag);
  w.norm_const = norm_const(w.eta);
  w.value = w.norm_const * std::exp(kI * dot(x, k)) * coulomb_D(CVec3(x), k, alpha);
  if (with_loggrad) w.loggrad_k = psi_c_loggrad_k(x, k, alpha);
  return w;
}

CVec3 psi_c_loggrad_k(const Vec3& x, const Vec3& k, double alpha,
                      GradMethod method) {
  const double kmag = norm(k);
  require_momentum(kmag, alpha);
  if (alpha == 0.0) return kI * CVec3(x);  // plane-wave case, exact

  if (method == GradMethod::numeric) {
    const PairWave base = psi_c(x, k, alpha);
    if (std::abs(base.value) < 1e-12 * std::abs(base.norm_const))
      throw std::domain_error("psi_c_loggrad_k: psi_c too close to zero");
    const double h = 1e-3;
    CVec3 g;
    Complex* comp[3] = {&g.x, &g.y, &g.z};
    for (int c = 0; c < 3; ++c) {
      auto shift = [&](double d) {
        Vec3 kk = k;
        (c == 0 ? kk.x : c == 1 ? kk.y : kk.z) += d;
        return psi_c(x, kk, alpha).value;
      };
      // 5-point central difference.
      const Complex d = (-shift(2 * h) + 8.0 * shift(h) - 8.0 * shift(-h) +
                         shift(-2 * h)) /
                        (12.0 * h);
      *comp[c] = d / base.value;
    }
    return g;
  }

  const double eta = eta_of(alpha, kmag);
  const Complex a(0.0, -eta);
  const double xmag = norm(x);
  const Vec3 khat = hat(k);
  const Complex zeta = kI * (kmag * xmag - dot(x, k));

  const Complex phi = specfun::kummer_phi(a, 1.0, zeta).value;
  if (std::abs(phi) < 1e-12)
    throw std::domain_error("psi_c_loggrad_k: distortion factor near zero");
  const Complex phi_z = specfun::kummer_phi_dz(a, 1.0, zeta);
  const Complex phi_a = specfun::kummer_phi_da(a, 1.0, zeta);

  const double deta_dk = -alpha / (2.0 * kmag * kmag);
  // d ln N_c / dk = (-pi/2 + i psi(1+i eta)) deta/dk along khat.
  const Complex dlognc =
      (Complex(-kPi / 2.0, 0.0) +
       kI * specfun::digamma_complex(Complex(1.0, eta))) *
      deta_dk;
  const Complex da_dk = -kI * deta_dk;          // a = -i eta
  const CVec3 dzeta_dk = kI * (CVec3(xmag * khat) - CVec3(x));

  CVec3 g = kI * CVec3(x);
  g = g + dlognc * CVec3(khat);
  g = g + (phi_a * da_dk / phi) * CVec3(khat);
  g = g + (phi_z / phi) * dzeta_dk;
  return g;
}

Complex bbk(const JacobiConfig& z, const JacobiMomentum& q, double alpha) {
  Complex n0(1.0), dprod(1.0);
  for (int j = 1; j <= 3; ++j) {
    const auto [xj, yj] = pair_frame(z, PairIndex(j));
    const auto [kj, pj] = momentum_frame(q, PairIndex(j));
    const double kmag = norm(kj);
    require_momentum(kmag, alpha);
    n0 *= norm_const(alpha == 0.0 ? 0.0 : eta_of(alpha, kmag));
    dprod *= coulomb_D(CVec3(xj), kj, alpha);
  }
  return n0 * std::exp(kI * kinematics::pairing(z, q)) * dprod;
}

ScreenFactor bbk_screen_factor(const JacobiConfig& z, const JacobiMomentum& q,
                               PairIndex j, double alpha) {
  const PairIndex j2 = next_pair(j), j3 = next_pair(j2);
  const auto [xj, yj] = pair_frame(z, j);
  const auto [kj, pj] = momentum_frame(q, j);

  ScreenFactor out;
  out.pair_factor = psi_c(xj, kj, alpha).value;

  Complex n23(1.0), dprod(1.0);
  for (PairIndex jc : {j2, j3}) {
    const auto [xc, yc] = pair_frame(z, jc);
    const auto [kc, pc] = momentum_frame(q, jc);
    const double kmag = norm(kc);
    require_momentum(kmag, alpha);
    n23 *= norm_const(alpha == 0.0 ? 0.0 : eta_of(alpha, kmag));
    dprod *= coulomb_D(CVec3(xc), kc, alpha);
  }
  out.psi1 = n23 * std::exp(kI * dot(yj, pj)) * dprod;
  return out;
}

ShiftedCoords x_tilde(const JacobiConfig& z, const JacobiMomentum& q,
                      PairIndex j, double alpha, ShiftConvention conv) {
  const PairIndex j2 = next_pair(j), j3 = next_pair(j2);
  const auto [xj, yj] = pair_frame(z, j);
  const auto [kj, pj] = momentum_frame(q, j);

  CVec3 grad2, grad3;
  if (conv == ShiftConvention::common_gradient) {
    grad2 = grad3 = psi_c_loggrad_k(xj, kj, alpha);
  } else {
    const auto [k2, p2] = momentum_frame(q, j2);
    const auto [k3, p3] = momentum_frame(q, j3);
    grad2 = psi_c_loggrad_k(xj, k2, alpha);
    grad3 = psi_c_loggrad_k(xj, k3, alpha);
  }

  ShiftedCoords out;
  out.x_tilde_2 = CVec3(-kHalfSqrt3 * yj) + (kI * 0.5) * grad2;
  out.x_tilde_3 = CVec3(kHalfSqrt3 * yj) + (kI * 0.5) * grad3;
  out.x_mag_2 = principal_mag(out.x_tilde_2);
  out.x_mag_3 = principal_mag(out.x_tilde_3);
  return out;
}

Complex chi(const JacobiConfig& z, const JacobiMomentum& q, PairIndex j,
            double alpha, ShiftConvention conv) {
  const PairIndex j2 = next_pair(j), j3 = next_pair(j2);
  const auto [xj, yj] = pair_frame(z, j);
  const auto [kj, pj] = momentum_frame(q, j);
  const auto [k2, p2] = momentum_frame(q, j2);
  const auto [k3, p3] = momentum_frame(q, j3);

  Complex n0(1.0);
  for (const Vec3& kv : {kj, k2, k3}) {
    const double kmag = norm(kv);
    require_momentum(kmag, alpha);
    n0 *= norm_const(alpha == 0.0 ? 0.0 : eta_of(alpha, kmag));
  }

  const ShiftedCoords sc = x_tilde(z, q, j, alpha, conv);
  const Complex d1 = coulomb_D(CVec3(xj), kj, alpha);
  const Complex d2 = coulomb_D(sc.x_tilde_2, k2, alpha);
  const Complex d3 = coulomb_D(sc.x_tilde_3, k3, alpha);
  return n0 * std::exp(kI * kinematics::pairing(z, q)) * d1 * d2 * d3;
}

Complex psi_as(const JacobiConfig& z, const JacobiMomentum& q, double alpha,
               double mu, double nu) {
  const auto w = partition_weights(z, mu, nu);
  Complex acc(0.0);
  for (int j = 1; j <= 3; ++j)
    if (w.zeta0j[j - 1] != 0.0)
      acc += w.zeta0j[j - 1] * chi(z, q, PairIndex(j), alpha);
  if (w.zeta0 != 0.0) acc += w.zeta0 * bbk(z, q, alpha);
  return acc;
}

}  // namespace tricoul::wavefn
