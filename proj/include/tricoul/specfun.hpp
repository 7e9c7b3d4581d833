#ifndef TRICOUL_SPECFUN_HPP
#define TRICOUL_SPECFUN_HPP

#include <complex>

namespace tricoul::specfun {

using Complex = std::complex<double>;

// Gamma function for complex argument, Lanczos approximation with
// reflection for Re w < 1/2. Throws std::domain_error at the poles.
Complex gamma_complex(Complex w);

// 1/Gamma(w); returns 0 at the poles instead of throwing.
Complex recip_gamma(Complex w);

// Digamma for complex argument: reflection + recurrence + asymptotic series.
Complex digamma_complex(Complex w);

enum class KummerMethod { series, asymptotic };

struct KummerEval {
  Complex a, b, zeta;
  Complex value;
  KummerMethod method = KummerMethod::series;
  // Set when the asymptotic tail could not be pushed below the target
  // tolerance (smallest term too large), or on overflow of the e^zeta branch.
  bool accuracy_warning = false;
};

// Radius at which evaluation switches from the series route (Maclaurin plus
// Taylor continuation along the ray) to the large-|zeta| expansion.
double kummer_switch_radius(Complex a);

// Kummer confluent hypergeometric Phi(a; b; zeta). Validated for
// |Im a| <= 50 and zeta near the imaginary axis; b must stay away from
// nonpositive integers.
KummerEval kummer_phi(Complex a, Complex b, Complex zeta);

// Same, with the evaluation route forced (used by the overlap consistency
// checks).
KummerEval kummer_phi_forced(Complex a, Complex b, Complex zeta,
                             KummerMethod method);

// dPhi/dzeta = (a/b) Phi(a+1, b+1, zeta).
Complex kummer_phi_dz(Complex a, Complex b, Complex zeta);

// dPhi/da: term-by-term differentiated series inside the switch radius,
// complex central differences (step 1e-4) outside.
Complex kummer_phi_da(Complex a, Complex b, Complex zeta);

}  // namespace tricoul::specfun

#endif
