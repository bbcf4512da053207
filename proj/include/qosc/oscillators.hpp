#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qosc/qcore.hpp"

namespace qosc {

// Energy as a function of the action variable, H(J), with an optional
// analytic derivative; dh == nullptr selects a central difference with
// step 1e-6 * max(1, J).
struct HamiltonianProfile {
  std::function<double(double)> h;
  std::function<double(double)> dh;
  std::string name;
  std::map<std::string, double> params;
};

// alpha = i sqrt(J) e^(-i theta); the action is |value|^2.
struct ComplexAmplitude {
  complex value{0.0, 0.0};
  double action() const { return std::norm(value); }
};

struct SpectrumTable {
  std::vector<double> levels;  // E_n at index n, contiguous from 0
  std::string model;
  std::map<std::string, double> params;
};

struct CoherentState {
  complex beta{0.0, 0.0};
  std::vector<complex> coeffs;
  int n_max = 0;
};

// Frequency of the profile at action J: analytic derivative when present,
// otherwise the documented central difference.
double profile_omega(const HamiltonianProfile& profile, double J);

// Levels E_n = (h(n) + h(n+1))/2 for n = 0..n_max.
SpectrumTable f_spectrum(const HamiltonianProfile& profile, int n_max);

// Oscillator with energy sinh(lambda J)/sinh(lambda): levels computed both as
// (h(n)+h(n+1))/2 and as sinh((n+1/2)lambda)/(2 sinh(lambda/2)); the two
// routes must agree to 1e-12 relative or an Error is raised.
SpectrumTable sym_q_spectrum(double lambda, int n_max);

// omega0 / sqrt(1 + 2 omega0 J/(m c^2)).
double semi_relativistic_frequency(double J, double m, double c,
                                   double omega0);

// Named profiles.
HamiltonianProfile linear_profile(double omega0);
HamiltonianProfile sym_q_profile(double lambda);
HamiltonianProfile semi_relativistic_profile(double m, double c,
                                             double omega0);

// Spectrum of the square-root dispersion profile. The default combines
// h(n) and h(n+1) with a plus sign, consistent with f_spectrum; the
// difference variant (h(n+1) - h(n))/2 is kept for comparison only.
SpectrumTable semi_relativistic_spectrum(int n_max, double m, double c,
                                         double omega0,
                                         bool difference_variant = false);

// alpha_f = sqrt(H(J)/J) alpha; J = 0 returns 0 when H(0) = 0.
ComplexAmplitude f_transform(ComplexAmplitude alpha,
                             const HamiltonianProfile& profile);

// Exact solution alpha(t) = alpha0 exp(-i omega(J0) t); J0 = |alpha0|^2
// is conserved, so the frequency is evaluated once.
ComplexAmplitude evolve_classical(ComplexAmplitude alpha0,
                                  const HamiltonianProfile& profile, double t);

// E_n = (hbar_omega/2) F_(n+2), exact integers scaled at the end.
SpectrumTable golden_spectrum(int n_max, double hbar_omega);

// Coefficients c_n = beta^n / sqrt(F_n!) * c0 with c0 = fib_exp(|beta|^2)^(-1/2);
// requires the tail bound |beta|^(2(n_max+1))/F_(n_max+1)! < ctl.tol.
CoherentState golden_coherent(complex beta, int n_max,
                              const SeriesControl& ctl = {});

// Overlap fib_exp(conj(a) b)/sqrt(fib_exp(|a|^2) fib_exp(|b|^2)).
complex golden_overlap(complex a, complex b, const SeriesControl& ctl = {});

// F_(n+1)/F_(n+2) from exact integers; tends to 1/phi.
double golden_ratio_limit(int n);

}  // namespace qosc
