#include "tricoul/screenasym.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tricoul/specfun.hpp"
#include "tricoul/wavefn.hpp"

namespace tricoul::screenasym {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt3 = 1.7320508075688772935274463415058724;
const Complex kI(0.0, 1.0);

using kinematics::momentum_frame;
using kinematics::next_pair;
using kinematics::pair_frame;

double eta_of(double alpha, double k) {
  return alpha == 0.0 ? 0.0 : alpha / (2.0 * k);
}

void require_nonzero(double mag, const char* what) {
  if (mag < 1e-12)
    throw std::domain_error(std::string(what) + " vanishes in the j-frame");
}

// Spectator pair momenta (k_2, k_3) in the labeling of screen j.
void spectator_momenta(const JacobiMomentum& q, PairIndex j, Vec3& k2,
                       Vec3& k3) {
  const PairIndex j2 = next_pair(j), j3 = next_pair(j2);
  k2 = momentum_frame(q, j2).first;
  k3 = momentum_frame(q, j3).first;
}

Complex unimodular_power(double base, double eta) {
  // base^{i eta} for base > 0.
  if (eta == 0.0) return Complex(1.0);
  if (base <= 0.0)
    throw std::domain_error("screenasym: nonpositive base in x^{i eta}");
  return std::exp(kI * (eta * std::log(base)));
}

RKernelCoeffs rkernel_core(const JacobiMomentum& q, PairIndex j, double alpha,
                           const Vec3& phat) {
  const auto [kj, pj] = momentum_frame(q, j);
  const double k = norm(kj), p = norm(pj);
  require_nonzero(k, "pair momentum k");
  require_nonzero(p, "spectator momentum p");
  const Vec3 khat = hat(kj);

  Vec3 k2, k3;
  spectator_momenta(q, j, k2, k3);
  const double k2m = norm(k2), k3m = norm(k3);
  require_nonzero(k2m, "spectator pair momentum k2");
  require_nonzero(k3m, "spectator pair momentum k3");
  const Vec3 k2hat = hat(k2), k3hat = hat(k3);

  RKernelCoeffs out;
  out.eta2 = eta_of(alpha, k2m);
  out.eta3 = eta_of(alpha, k3m);
  out.omega = out.eta2 + out.eta3;
  out.a = out.omega - 2.0 * alpha / (kSqrt3 * p);
  out.b = out.omega + 2.0 * alpha / (kSqrt3 * p);
  if (alpha != 0.0 && (std::abs(out.a) < 1e-12 || std::abs(out.b) < 1e-12))
    throw std::domain_error(
        "rkernel_coeffs: resonant coupling a = 0 or b = 0");

  const double c2 = dot(phat, k2hat), c3 = dot(phat, k3hat);
  const double d2m = 1.0 - c2, d3m = 1.0 + c3;  // in-denominators
  const double d2p = 1.0 + c2, d3p = 1.0 - c3;  // out-denominators
  if (d2m == 0.0 || d3m == 0.0 || d2p == 0.0 || d3p == 0.0)
    throw std::domain_error("rkernel_coeffs: Omega denominator singularity");

  out.Omega_in =
      (1.0 / kSqrt3) *
      (out.eta2 / d2m * (k2hat - phat) + out.eta3 / d3m * (k3hat + phat));
  out.Omega_out =
      (1.0 / kSqrt3) *
      (out.eta2 / d2p * (k2hat + phat) + out.eta3 / d3p * (k3hat - phat));

  const double pref = std::pow(2.0 * kPi, -3.0);
  const Complex kpow = unimodular_power(k2m, out.eta2) *
                       unimodular_power(k3m, out.eta3);
  out.B0_in = pref * unimodular_power(0.5 * kSqrt3 * d2m, out.eta2) *
              unimodular_power(0.5 * kSqrt3 * d3m, out.eta3) * kpow;
  out.B0_out = pref * unimodular_power(0.5 * kSqrt3 * d2p, out.eta2) *
               unimodular_power(0.5 * kSqrt3 * d3p, out.eta3) * kpow;

  out.A_in = -(k / (kPi * kI)) *
             specfun::gamma_complex(Complex(1.0, -out.a)) *
             std::exp(kPi * out.a / 2.0) * out.B0_in;
  out.A_out = (k / (kPi * kI)) *
              specfun::gamma_complex(Complex(1.0, -out.b)) *
              std::exp(-kPi * out.b / 2.0) * out.B0_out;

  // The khat coefficient of B_out carries the opposite sign: the exact
  // projections <Omega_in, khat> = a p / k and <Omega_out, khat> = -b p / k
  // then make both vectors orthogonal to khat, as asserted alongside the
  // displayed B_in formula.
  if (alpha == 0.0) {
    out.B_in = (p / (k * k)) * khat;
    out.B_out = (-p / (k * k)) * khat;
  } else {
    out.B_in = (p / (k * k)) * khat - (1.0 / (out.a * k)) * out.Omega_in;
    out.B_out = (-p / (k * k)) * khat - (1.0 / (out.b * k)) * out.Omega_out;
  }
  return out;
}

// Fixed 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[4] = {0.18343464249564980494, 0.52553240991632898582,
                               0.79666647741362673959, 0.96028985649753623168};
constexpr double kGlWeight[4] = {0.36268378337836198297,
                                 0.31370664587788728734,
                                 0.22238103445337447054,
                                 0.10122853629037625915};

template <typename F>
Complex gl_panel(const F& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  Complex acc(0.0);
  for (int i = 0; i < 4; ++i) {
    acc += kGlWeight[i] * (f(mid - half * kGlNode[i]) +
                           f(mid + half * kGlNode[i]));
  }
  return half * acc;
}

template <typename F>
Complex gl_uniform(const F& f, double lo, double hi, int panels) {
  Complex acc(0.0);
  const double w = (hi - lo) / panels;
  for (int i = 0; i < panels; ++i)
    acc += gl_panel(f, lo + i * w, lo + (i + 1) * w);
  return acc;
}

// Integral of testfn(c) (1-c)^{-1-i eta} over [-1, 1); the test function
// must vanish at least quadratically at c = 1. Dyadically graded panels
// absorb the endpoint oscillation.
Complex scattered_angular_integral(const SphereTestFn& f, double eta) {
  auto integrand = [&](double c) -> Complex {
    const double d = 1.0 - c;
    if (d <= 0.0) return Complex(0.0);
    return f(c) * std::exp(Complex(-1.0, -eta) * std::log(d));
  };
  Complex acc = gl_uniform(integrand, -1.0, 0.0, 16);
  double lo = 0.0, width = 0.5;
  for (int m = 0; m < 52; ++m) {
    acc += gl_uniform(integrand, lo, lo + width, 4);
    lo += width;
    width *= 0.5;
  }
  return acc;
}

}  // namespace

ScreenAsymCoeffs screen_coeffs(const JacobiMomentum& q, const Vec3& xhat,
                               const Vec3& phat, PairIndex j, double alpha) {
  Vec3 k2, k3;
  spectator_momenta(q, j, k2, k3);
  const double k2m = norm(k2), k3m = norm(k3);
  require_nonzero(k2m, "spectator pair momentum k2");
  require_nonzero(k3m, "spectator pair momentum k3");
  const Vec3 k2hat = hat(k2), k3hat = hat(k3);

  ScreenAsymCoeffs out;
  out.eta2 = eta_of(alpha, k2m);
  out.eta3 = eta_of(alpha, k3m);
  out.omega = out.eta2 + out.eta3;
  const double c2 = dot(phat, k2hat), c3 = dot(phat, k3hat);
  out.Z2p = 0.5 * kSqrt3 * (1.0 + c2);
  out.Z2m = 0.5 * kSqrt3 * (1.0 - c2);
  out.Z3p = 0.5 * kSqrt3 * (1.0 - c3);
  out.Z3m = 0.5 * kSqrt3 * (1.0 + c3);
  out.V2p = dot(xhat, k2hat + phat);
  out.V2m = dot(xhat, k2hat - phat);
  out.V3p = dot(xhat, k3hat - phat);
  out.V3m = dot(xhat, k3hat + phat);
  out.B0 = -std::pow(2.0 * kPi, -3.0) * unimodular_power(k2m, out.eta2) *
           unimodular_power(k3m, out.eta3);
  return out;
}

std::pair<Complex, Complex> psi1_weak_amplitudes(const JacobiConfig& z,
                                                 const JacobiMomentum& q,
                                                 PairIndex j, double alpha) {
  const auto [xj, yj] = pair_frame(z, j);
  const auto [kj, pj] = momentum_frame(q, j);
  const double x = norm(xj), y = norm(yj), p = norm(pj);
  require_nonzero(y, "configuration coordinate y");
  require_nonzero(p, "spectator momentum p");
  const Vec3 phat = hat(pj);
  // On the screen the V terms are multiplied by x/2y = 0; any unit vector
  // stands in for the undefined xhat.
  const Vec3 xhat = (x > 0.0) ? hat(xj) : phat;

  const ScreenAsymCoeffs sc = screen_coeffs(q, xhat, phat, j, alpha);
  const double r = 0.5 * x / y;
  auto bracket = [](double zpart, double vpart, double rr) {
    const double v = zpart + rr * vpart;
    if (v <= 0.0)
      throw std::domain_error(
          "psi1_weak_amplitudes: nonpositive logarithm argument");
    return v;
  };
  const Complex common = 2.0 * kPi / (kI * y * p) *
                         std::exp(kI * (sc.omega * std::log(y)));
  const Complex amp_in =
      sc.B0 * common * std::exp(-kI * (y * p)) *
      std::exp(kI * (sc.eta2 * std::log(bracket(sc.Z2m, sc.V2m, r)) +
                     sc.eta3 * std::log(bracket(sc.Z3m, sc.V3m, r))));
  const Complex amp_out =
      -sc.B0 * common * std::exp(kI * (y * p)) *
      std::exp(kI * (sc.eta2 * std::log(bracket(sc.Z2p, sc.V2p, r)) +
                     sc.eta3 * std::log(bracket(sc.Z3p, sc.V3p, r))));
  return {amp_in, amp_out};
}

RKernelCoeffs rkernel_coeffs(const JacobiMomentum& q, PairIndex j,
                             double alpha) {
  const auto [kj, pj] = momentum_frame(q, j);
  require_nonzero(norm(pj), "spectator momentum p");
  return rkernel_core(q, j, alpha, hat(pj));
}

RKernelCoeffs rkernel_coeffs_dir(const JacobiMomentum& q, PairIndex j,
                                 double alpha, const Vec3& phat) {
  return rkernel_core(q, j, alpha, phat);
}

Vec3 project_off_k(const Vec3& b, const Vec3& khat) {
  return b - dot(b, khat) * khat;
}

WeakCheckRecord twobody_weak_check(const Vec3& k, double alpha,
                                   const std::vector<double>& radii,
                                   const SphereTestFn& testfn) {
  const double kmag = norm(k);
  if (kmag < 1e-12)
    throw std::domain_error("twobody_weak_check: zero momentum");
  const double eta = eta_of(alpha, kmag);
  if (alpha != 0.0 && std::abs(testfn(1.0)) > 0.0)
    throw std::invalid_argument(
        "twobody_weak_check: test function must vanish at the forward "
        "direction when alpha != 0");

  const Vec3 khat = hat(k);
  // Any unit vector orthogonal to khat spans the azimuth-reduced circle.
  Vec3 seed = (std::abs(khat.x) < 0.9) ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 ehat = hat(seed - dot(seed, khat) * khat);

  const double n32 = std::pow(2.0 * kPi, -1.5);

  // Sphere quadrature reduced to the polar angle (axisymmetric test
  // function): I(X) = 2 pi Int psi_c(X xhat(c), k) f(c) dc.
  auto sphere_integral = [&](double X, int panels) {
    auto integrand = [&](double c) -> Complex {
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      const Vec3 xv = X * (c * khat + s * ehat);
      return wavefn::psi_c(xv, k, alpha).value * testfn(c);
    };
    return 2.0 * kPi * gl_uniform(integrand, -1.0, 1.0, panels);
  };

  // Weak-form model of the integral: incoming endpoint, forward endpoint
  // (free case only) and the Coulomb scattered wave.
  const Complex jscat =
      (alpha == 0.0)
          ? Complex(0.0)
          : scattered_angular_integral(testfn, eta);
  const Complex scat_pref =
      (alpha == 0.0)
          ? Complex(0.0)
          : specfun::gamma_complex(Complex(1.0, eta)) *
                specfun::recip_gamma(Complex(0.0, -eta)) * (-kI);
  auto model = [&](double X) -> Complex {
    const double kx = kmag * X;
    Complex acc = n32 * (2.0 * kPi * kI / kx) * testfn(-1.0) *
                  std::exp(Complex(0.0, -kx + eta * std::log(2.0 * kx)));
    if (alpha == 0.0) {
      acc -= n32 * (2.0 * kPi * kI / kx) * testfn(1.0) *
             std::exp(Complex(0.0, kx));
    } else {
      acc += n32 * (2.0 * kPi / kx) * scat_pref *
             std::exp(Complex(0.0, kx - eta * std::log(kx))) * jscat;
    }
    return acc;
  };

  // Incoming/outgoing separation against the distorted spherical-wave
  // basis, using two radii a quarter period apart.
  auto g_in = [&](double X) {
    const double kx = kmag * X;
    return std::exp(Complex(0.0, -kx + eta * std::log(2.0 * kx))) / X;
  };
  auto g_out = [&](double X) {
    const double kx = kmag * X;
    return std::exp(Complex(0.0, kx - eta * std::log(2.0 * kx))) / X;
  };
  auto extract_in = [&](Complex w1, Complex w2, double x1, double x2) {
    const Complex a11 = g_in(x1), a12 = g_out(x1);
    const Complex a21 = g_in(x2), a22 = g_out(x2);
    const Complex det = a11 * a22 - a12 * a21;
    return (w1 * a22 - w2 * a12) / det * a11;
  };

  WeakCheckRecord rec;
  rec.quadrature_ok = true;
  for (double X : radii) {
    WeakCheckRow row;
    row.radius = X;
    const double dX = 0.5 * kPi / kmag;
    const int panels = 60 + int(std::ceil(0.35 * kmag * (X + dX)));
    const Complex i1c = sphere_integral(X, panels);
    const Complex i1f = sphere_integral(X, 2 * panels);
    const Complex i2c = sphere_integral(X + dX, panels);
    const Complex i2f = sphere_integral(X + dX, 2 * panels);
    row.quadrature_converged =
        std::abs(i1f - i1c) <= 1e-6 * std::abs(i1f) + 1e-12 &&
        std::abs(i2f - i2c) <= 1e-6 * std::abs(i2f) + 1e-12;
    if (!row.quadrature_converged) rec.quadrature_ok = false;

    row.integral = i1f;
    row.prediction = model(X);
    row.incoming_extracted = extract_in(i1f, i2f, X, X + dX);
    row.incoming_predicted = extract_in(model(X), model(X + dX), X, X + dX);
    const double denom = std::abs(row.incoming_predicted);
    row.rel_mismatch =
        (denom > 1e-300)
            ? std::abs(row.incoming_extracted - row.incoming_predicted) / denom
            : std::abs(row.incoming_extracted);
    rec.rows.push_back(row);
  }
  return rec;
}

}  // namespace tricoul::screenasym
