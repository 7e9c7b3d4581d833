#include "tricoul/residual.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "tricoul/specfun.hpp"
#include "tricoul/wavefn.hpp"

namespace tricoul::residual {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const Complex kI(0.0, 1.0);

using kinematics::energy;
using kinematics::momentum_frame;
using kinematics::pair_frame;
using kinematics::pairing;

double min_pair_distance(const JacobiConfig& z) {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 3; ++j)
    m = std::min(m, norm(pair_frame(z, PairIndex(j)).first));
  return m;
}

void check_stencil(const JacobiConfig& z, const JacobiMomentum& q, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("residual: step must be > 0");
  const double qmag = std::sqrt(energy(q));
  if (qmag > 0.0 && h > 0.05 * (2.0 * kPi / qmag))
    throw std::invalid_argument(
        "residual: step too large for the oscillation scale");
  if (min_pair_distance(z) < 10.0 * h)
    throw std::domain_error("residual: stencil too close to a screen");
}

JacobiConfig shifted(const JacobiConfig& z, int axis, double d) {
  JacobiConfig s = z;
  double* comp[6] = {&s.x.x, &s.x.y, &s.x.z, &s.y.x, &s.y.y, &s.y.z};
  *comp[axis] += d;
  return s;
}

double q_component(const JacobiMomentum& q, int axis) {
  const double comp[6] = {q.k.x, q.k.y, q.k.z, q.p.x, q.p.y, q.p.z};
  return comp[axis];
}

Complex reduced_once(const Field& field, const JacobiConfig& z,
                     const JacobiMomentum& q, double alpha, double h) {
  const Complex phase = std::exp(kI * pairing(z, q));
  auto g = [&](const JacobiConfig& zz) {
    return field(zz) * std::exp(-kI * pairing(zz, q));
  };
  const Complex g0 = g(z);
  Complex lap(0.0), conv(0.0);
  for (int axis = 0; axis < 6; ++axis) {
    const Complex gp = g(shifted(z, axis, h));
    const Complex gm = g(shifted(z, axis, -h));
    lap += (gp - 2.0 * g0 + gm) / (h * h);
    conv += q_component(q, axis) * (gp - gm) / (2.0 * h);
  }
  return phase * (-lap - 2.0 * kI * conv + potential(z, alpha) * g0);
}

}  // namespace

double potential(const JacobiConfig& z, double alpha) {
  double v = 0.0;
  for (int j = 1; j <= 3; ++j) {
    const double xm = norm(pair_frame(z, PairIndex(j)).first);
    if (xm < 1e-12)
      throw std::domain_error("potential: configuration on screen " +
                              std::to_string(j));
    v += alpha / xm;
  }
  return v;
}

Complex numeric_residual(const Field& field, const JacobiConfig& z,
                         const JacobiMomentum& q, double alpha, double h) {
  check_stencil(z, q, h);
  const Complex f0 = field(z);
  Complex lap(0.0);
  for (int axis = 0; axis < 6; ++axis) {
    lap += (field(shifted(z, axis, h)) - 2.0 * f0 +
            field(shifted(z, axis, -h))) /
           (h * h);
  }
  const double lambda = energy(q);
  return -lap + (potential(z, alpha) - lambda) * f0;
}

Complex numeric_residual_reduced(const Field& field, const JacobiConfig& z,
                                 const JacobiMomentum& q, double alpha,
                                 double h, bool richardson) {
  check_stencil(z, q, h);
  const Complex qh = reduced_once(field, z, q, alpha, h);
  if (!richardson) return qh;
  const Complex qh2 = reduced_once(field, z, q, alpha, 0.5 * h);
  return (4.0 * qh2 - qh) / 3.0;
}

Complex analytic_q_bbk(const JacobiConfig& z, const JacobiMomentum& q,
                       double alpha, Complex c_q) {
  Complex n0(1.0);
  Complex phi[3], dphi[3];
  double kmag[3];
  Vec3 khat[3], xhat[3];
  for (int j = 0; j < 3; ++j) {
    const auto [xj, yj] = pair_frame(z, PairIndex(j + 1));
    const auto [kj, pj] = momentum_frame(q, PairIndex(j + 1));
    const double xm = norm(xj);
    kmag[j] = norm(kj);
    if (xm < 1e-12)
      throw std::domain_error("analytic_q_bbk: configuration on a screen");
    if (alpha != 0.0 && kmag[j] < 1e-12)
      throw std::domain_error("analytic_q_bbk: pair momentum vanishes");
    khat[j] = kmag[j] > 0.0 ? hat(kj) : Vec3{1, 0, 0};
    xhat[j] = hat(xj);
    const double eta = alpha == 0.0 ? 0.0 : alpha / (2.0 * kmag[j]);
    n0 *= wavefn::norm_const(eta);
    const Complex a(0.0, -eta);
    const Complex zeta = kI * (kmag[j] * xm - dot(xj, kj));
    phi[j] = specfun::kummer_phi(a, 1.0, zeta).value;
    dphi[j] = specfun::kummer_phi_dz(a, 1.0, zeta);
  }
  Complex sum(0.0);
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    sum += -kmag[a] * kmag[b] *
           dot(khat[a] - xhat[a], khat[b] - xhat[b]) * phi[c] * dphi[a] *
           dphi[b];
  }
  return c_q * n0 * std::exp(kI * pairing(z, q)) * sum;
}

Calibration calibrate_cq(const JacobiMomentum& q, double alpha, int points,
                         unsigned seed, double spread_tol) {
  std::mt19937_64 rng(seed);
  // The window balances h^4 truncation against the 1/h^2 roundoff floor of
  // the stencil: nearer points carry a larger discrepancy relative to both.
  std::uniform_real_distribution<double> u(-1.0, 1.0), lt(std::log(100.0),
                                                          std::log(1000.0));
  const double qmag = std::sqrt(energy(q));
  auto bbk_field = [&](const JacobiConfig& z) {
    return wavefn::bbk(z, q, alpha);
  };

  std::vector<Complex> ratios;
  while (int(ratios.size()) < points) {
    Vec3 dx{u(rng), u(rng), u(rng)}, dy{u(rng), u(rng), u(rng)};
    const double n = std::sqrt(dot(dx, dx) + dot(dy, dy));
    if (n < 0.3) continue;
    dx = dx / n;
    dy = dy / n;
    const double t = std::exp(lt(rng));
    const JacobiConfig z{t * dx, t * dy};
    if (min_pair_distance(z) < 0.15 * t) continue;  // stay off the screens
    const double h =
        std::min(0.0067 * (2.0 * kPi / qmag), 0.01 * min_pair_distance(z));
    const Complex num = numeric_residual_reduced(bbk_field, z, q, alpha, h);
    const Complex ana = analytic_q_bbk(z, q, alpha);
    if (std::abs(ana) < 1e-300) continue;
    ratios.push_back(num / ana);
  }
  Complex mean(0.0);
  for (const Complex& r : ratios) mean += r;
  mean /= double(ratios.size());
  double spread = 0.0;
  for (const Complex& r : ratios)
    spread = std::max(spread, std::abs(r - mean) / std::abs(mean));
  if (spread > spread_tol)
    throw std::runtime_error(
        "calibrate_cq: calibration constant inconsistent across points");
  return {mean, spread, points};
}

std::vector<double> geometric_ts(double t_min, double t_max, int count) {
  std::vector<double> ts;
  if (count < 2 || !(t_min > 0.0) || !(t_max > t_min))
    throw std::invalid_argument("geometric_ts: bad progression parameters");
  const double r = std::pow(t_max / t_min, 1.0 / (count - 1));
  double t = t_min;
  for (int i = 0; i < count; ++i, t *= r) ts.push_back(t);
  return ts;
}

DecayFit decay_fit(const Field& field, const RaySpec& ray,
                   const JacobiMomentum& q, double alpha) {
  const double dirnorm =
      std::sqrt(dot(ray.dir_x, ray.dir_x) + dot(ray.dir_y, ray.dir_y));
  if (std::abs(dirnorm - 1.0) > 1e-10)
    throw std::invalid_argument("decay_fit: ray direction must be unit");
  for (size_t i = 0; i < ray.t_values.size(); ++i) {
    if (ray.t_values[i] < 10.0 ||
        (i > 0 && ray.t_values[i] <= ray.t_values[i - 1]))
      throw std::invalid_argument(
          "decay_fit: t_values must be increasing and >= 10");
  }

  const double qmag = std::sqrt(energy(q));
  DecayFit fit;
  int floor_hits = 0;
  for (double t : ray.t_values) {
    const JacobiConfig z = ray.at(t);
    const double h =
        std::min(0.02 * (2.0 * kPi / qmag), 0.01 * min_pair_distance(z));
    const Complex qv = numeric_residual_reduced(field, z, q, alpha, h);
    const double mag = std::abs(qv);
    // Roundoff floor of the Richardson second-difference stencil.
    const double floor_est = 3e-14 * std::abs(field(z)) / (h * h);
    if (mag <= floor_est) ++floor_hits;
    fit.samples.emplace_back(t, mag);
  }

  const int n = int(fit.samples.size());
  fit.floor_limited = floor_hits * 3 >= n;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int m = 0;
  for (const auto& [t, mag] : fit.samples) {
    if (mag <= 0.0) continue;
    const double lx = std::log(t), ly = std::log(mag);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
    ++m;
  }
  if (m >= 2) {
    const double det = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    const double ss_tot = syy - sy * sy / m;
    const double ss_res =
        ss_tot - fit.slope * fit.slope * (sxx - sx * sx / m);
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 0.0;
  }
  fit.fit_ok = m >= 8 && fit.r_squared >= 0.9 && !fit.floor_limited;
  return fit;
}

}  // namespace tricoul::residual
