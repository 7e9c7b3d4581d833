#include "tricoul/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tricoul::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients (g = 607/128), accurate to ~15 significant digits
// over the half-plane Re w >= 1/2.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

bool is_nonpositive_integer(Complex w) {
  return w.imag() == 0.0 && w.real() <= 0.0 &&
         w.real() == std::round(w.real());
}

Complex lanczos_gamma(Complex w) {
  // Valid for Re w >= 1/2.
  const Complex z = w - 1.0;
  Complex acc = kLanczosC[0];
  for (int k = 1; k < 15; ++k) acc += kLanczosC[k] / (z + double(k));
  const Complex t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

using CLD = std::complex<long double>;

CLD to_ld(Complex z) { return CLD(z.real(), z.imag()); }
Complex to_d(CLD z) {
  return Complex(double(z.real()), double(z.imag()));
}

// Maclaurin series in extended precision; the imaginary-parameter series
// cancels heavily, so keep the base radius small and continue by Taylor
// steps beyond it.
constexpr double kMaclaurinRadius = 12.0;

// Cancellation in the Maclaurin series peaks near e^{2 sqrt(|a| r)}; keep
// |a| r small enough that long double retains ~13 digits, and reach larger
// |zeta| by Taylor continuation instead.
long double maclaurin_start_radius(CLD a) {
  const long double am = std::max(std::abs(a), 1.0L);
  return std::min((long double)kMaclaurinRadius, 49.0L / am);
}

CLD maclaurin_ld(CLD a, CLD b, CLD z) {
  CLD term(1.0L), sum(1.0L);
  for (int n = 0; n < 400; ++n) {
    term *= (a + CLD(n)) * z / ((b + CLD(n)) * CLD(n + 1));
    sum += term;
    if (std::abs(term) < 1e-24L * (std::abs(sum) + 1e-30L) && n > 4) break;
  }
  return sum;
}

struct ValueAndDeriv {
  CLD f, df;
};

CLD phi_deriv_ld(CLD a, CLD b, CLD z) {
  return a / b * maclaurin_ld(a + CLD(1.0L), b + CLD(1.0L), z);
}

KummerEval eval_series_route(Complex a, Complex b, Complex zeta) {
  KummerEval out;
  out.a = a;
  out.b = b;
  out.zeta = zeta;
  out.method = KummerMethod::series;

  const CLD al = to_ld(a), bl = to_ld(b), zl = to_ld(zeta);
  const long double r = std::abs(zl);
  const long double r0 = maclaurin_start_radius(al);
  if (r <= r0) {
    out.value = to_d(maclaurin_ld(al, bl, zl));
    return out;
  }
  // Taylor continuation along the ray from the safe Maclaurin radius outward.
  CLD z0 = zl * (CLD(r0) / CLD(r));
  ValueAndDeriv fd{maclaurin_ld(al, bl, z0), phi_deriv_ld(al, bl, z0)};
  while (true) {
    CLD rem = zl - z0;
    const long double rem_abs = std::abs(rem);
    if (rem_abs == 0.0L) break;
    const long double max_step =
        std::min(0.35L * std::abs(z0), (long double)10.0L);
    CLD u = rem;
    if (rem_abs > max_step) u = rem * CLD(max_step / rem_abs);
    // Local Taylor expansion about z0, carrying value and derivative.
    CLD c0 = fd.f, c1 = fd.df;
    CLD s = c0, ds = c1;
    CLD upow(1.0L);
    CLD cn = c0, cn1 = c1;
    for (int n = 0;; ++n) {
      const CLD cn2 = ((CLD(n) + al) * cn -
                       CLD(n + 1) * (CLD(n) + bl - z0) * cn1) /
                      (z0 * CLD(n + 2) * CLD(n + 1));
      upow *= u;
      s += cn1 * upow;                 // + c_{n+1} u^{n+1}
      ds += CLD(n + 2) * cn2 * upow;   // + (n+2) c_{n+2} u^{n+1}
      if (std::abs(cn1 * upow) < 1e-24L * (std::abs(s) + 1e-300L) && n > 8)
        break;
      if (n >= 200) break;
      cn = cn1;
      cn1 = cn2;
    }
    z0 += u;
    fd = {s, ds};
  }
  out.value = to_d(fd.f);
  return out;
}

KummerEval eval_asymptotic(Complex a, Complex b, Complex zeta) {
  KummerEval out;
  out.a = a;
  out.b = b;
  out.zeta = zeta;
  out.method = KummerMethod::asymptotic;

  const Complex logz = std::log(zeta);
  const double sigma = (zeta.imag() >= 0.0) ? 1.0 : -1.0;
  const Complex i(0.0, 1.0);

  // Branch ~ zeta^{-a}.
  Complex s1(1.0), t1(1.0);
  double min1 = 1.0;
  for (int s = 0; s < 200; ++s) {
    t1 *= (a + double(s)) * (a - b + 1.0 + double(s)) /
          ((double(s) + 1.0) * (-zeta));
    const double at = std::abs(t1);
    if (at > min1 * 2.0 && s > 2) break;  // divergent tail reached
    s1 += t1;
    min1 = std::min(min1, at);
    if (at < 1e-17 * (std::abs(s1) + 1.0)) break;
  }
  // Branch ~ e^zeta zeta^{a-b}.
  Complex s2(1.0), t2(1.0);
  double min2 = 1.0;
  for (int s = 0; s < 200; ++s) {
    t2 *= (b - a + double(s)) * (1.0 - a + double(s)) /
          ((double(s) + 1.0) * zeta);
    const double at = std::abs(t2);
    if (at > min2 * 2.0 && s > 2) break;
    s2 += t2;
    min2 = std::min(min2, at);
    if (at < 1e-17 * (std::abs(s2) + 1.0)) break;
  }
  if (min1 > 1e-9 * (std::abs(s1) + 1.0) ||
      min2 > 1e-9 * (std::abs(s2) + 1.0))
    out.accuracy_warning = true;

  const Complex gb = gamma_complex(b);
  const Complex pref1 =
      gb * recip_gamma(b - a) * std::exp(sigma * i * kPi * a - a * logz);
  const Complex exponent2 = zeta + (a - b) * logz;
  Complex pref2(0.0);
  if (exponent2.real() > 700.0) {
    out.accuracy_warning = true;
    pref2 = Complex(std::numeric_limits<double>::infinity(), 0.0);
  } else {
    pref2 = gb * recip_gamma(a) * std::exp(exponent2);
  }
  out.value = pref1 * s1 + pref2 * s2;
  return out;
}

void validate_kummer_params(Complex a, Complex b) {
  if (std::abs(a.imag()) > 50.0)
    throw std::domain_error("kummer_phi: |Im a| > 50 outside validated region");
  if (is_nonpositive_integer(b))
    throw std::domain_error("kummer_phi: b is a nonpositive integer");
}

}  // namespace

Complex gamma_complex(Complex w) {
  if (is_nonpositive_integer(w))
    throw std::domain_error("gamma_complex: pole at nonpositive integer");
  if (w.real() < 0.5) {
    // Reflection Gamma(w) Gamma(1-w) = pi / sin(pi w).
    return kPi / (std::sin(kPi * w) * lanczos_gamma(1.0 - w));
  }
  return lanczos_gamma(w);
}

Complex recip_gamma(Complex w) {
  if (is_nonpositive_integer(w)) return Complex(0.0);
  if (w.real() < 0.5)
    return lanczos_gamma(1.0 - w) * std::sin(kPi * w) / kPi;
  return 1.0 / lanczos_gamma(w);
}

Complex digamma_complex(Complex w) {
  if (is_nonpositive_integer(w))
    throw std::domain_error("digamma_complex: pole at nonpositive integer");
  if (w.real() < 0.5) {
    // psi(w) = psi(1-w) - pi cot(pi w)
    return digamma_complex(1.0 - w) -
           kPi * std::cos(kPi * w) / std::sin(kPi * w);
  }
  Complex shift(0.0);
  while (w.real() < 12.0) {
    shift -= 1.0 / w;
    w += 1.0;
  }
  const Complex w2 = 1.0 / (w * w);
  // Asymptotic series with Bernoulli coefficients B_2n / (2n).
  Complex series = -1.0 / 12.0 +
                   w2 * (1.0 / 120.0 +
                         w2 * (-1.0 / 252.0 +
                               w2 * (1.0 / 240.0 +
                                     w2 * (-1.0 / 132.0 +
                                           w2 * (691.0 / 32760.0 +
                                                 w2 * (-1.0 / 12.0))))));
  return shift + std::log(w) - 0.5 / w + w2 * series;
}

double kummer_switch_radius(Complex a) {
  const double am = std::abs(a);
  return std::max(30.0, 4.0 * am * am);
}

KummerEval kummer_phi(Complex a, Complex b, Complex zeta) {
  validate_kummer_params(a, b);
  if (a == Complex(0.0) || zeta == Complex(0.0)) {
    KummerEval out;
    out.a = a;
    out.b = b;
    out.zeta = zeta;
    out.value = 1.0;
    out.method = KummerMethod::series;
    return out;
  }
  if (std::abs(zeta) <= kummer_switch_radius(a))
    return eval_series_route(a, b, zeta);
  return eval_asymptotic(a, b, zeta);
}

KummerEval kummer_phi_forced(Complex a, Complex b, Complex zeta,
                             KummerMethod method) {
  validate_kummer_params(a, b);
  if (a == Complex(0.0) || zeta == Complex(0.0)) {
    KummerEval out;
    out.a = a;
    out.b = b;
    out.zeta = zeta;
    out.value = 1.0;
    out.method = method;
    return out;
  }
  return method == KummerMethod::series ? eval_series_route(a, b, zeta)
                                        : eval_asymptotic(a, b, zeta);
}

Complex kummer_phi_dz(Complex a, Complex b, Complex zeta) {
  if (a == Complex(0.0)) return Complex(0.0);
  return a / b * kummer_phi(a + 1.0, b + 1.0, zeta).value;
}

Complex kummer_phi_da(Complex a, Complex b, Complex zeta) {
  validate_kummer_params(a, b);
  if (zeta == Complex(0.0)) return Complex(0.0);
  if (std::abs(zeta) <= kMaclaurinRadius) {
    // Differentiated Maclaurin series: carry (t_n, dt_n/da) together.
    const CLD al = to_ld(a), bl = to_ld(b), zl = to_ld(zeta);
    CLD t(1.0L), dt(0.0L), sum(0.0L);
    for (int n = 0; n < 400; ++n) {
      const CLD denom = (bl + CLD(n)) * CLD(n + 1);
      dt = dt * (al + CLD(n)) * zl / denom + t * zl / denom;
      t *= (al + CLD(n)) * zl / denom;
      sum += dt;
      if (std::abs(dt) < 1e-24L * (std::abs(sum) + 1.0L) &&
          std::abs(t) < 1e-24L * (std::abs(sum) + 1.0L) && n > 6)
        break;
    }
    return to_d(sum);
  }
  const double h = 1e-4;
  const Complex fp = kummer_phi(a + h, b, zeta).value;
  const Complex fm = kummer_phi(a - h, b, zeta).value;
  return (fp - fm) / (2.0 * h);
}

}  // namespace tricoul::specfun
