#include "qosc/oscillators.hpp"

#include <cmath>

namespace qosc {

namespace {

double eval_h(const HamiltonianProfile& profile, double J) {
  const double v = profile.h(J);
  if (!std::isfinite(v))
    throw DomainError("HamiltonianProfile: h not finite at J = " +
                      std::to_string(J));
  return v;
}

}  // namespace

double profile_omega(const HamiltonianProfile& profile, double J) {
  if (profile.dh) return profile.dh(J);
  const double step = 1e-6 * std::max(1.0, std::abs(J));
  return (eval_h(profile, J + step) - eval_h(profile, J - step)) /
         (2.0 * step);
}

SpectrumTable f_spectrum(const HamiltonianProfile& profile, int n_max) {
  if (n_max < 0) throw DomainError("f_spectrum: n_max must be nonnegative");
  SpectrumTable table;
  table.model = profile.name;
  table.params = profile.params;
  table.levels.reserve(n_max + 1);
  double prev = eval_h(profile, 0.0);
  for (int n = 0; n <= n_max; ++n) {
    const double next = eval_h(profile, n + 1.0);
    table.levels.push_back(0.5 * (prev + next));
    prev = next;
  }
  return table;
}

SpectrumTable sym_q_spectrum(double lambda, int n_max) {
  if (lambda < 0.0) throw DomainError("sym_q_spectrum: lambda must be >= 0");
  SpectrumTable table = f_spectrum(sym_q_profile(lambda), n_max);
  table.model = "sym_q";
  for (int n = 0; n <= n_max; ++n) {
    const double closed =
        lambda == 0.0
            ? n + 0.5
            : 0.5 * std::sinh((n + 0.5) * lambda) / std::sinh(0.5 * lambda);
    if (std::abs(table.levels[n] - closed) > 1e-12 * std::abs(closed))
      throw Error("sym_q_spectrum: half-sum and closed form disagree");
    table.levels[n] = closed;
  }
  return table;
}

double semi_relativistic_frequency(double J, double m, double c,
                                   double omega0) {
  if (J < 0.0)
    throw DomainError("semi_relativistic_frequency: J must be >= 0");
  if (!(m > 0.0 && c > 0.0 && omega0 > 0.0))
    throw DomainError("semi_relativistic_frequency: m, c, omega0 must be > 0");
  return omega0 / std::sqrt(1.0 + 2.0 * omega0 * J / (m * c * c));
}

HamiltonianProfile linear_profile(double omega0) {
  HamiltonianProfile p;
  p.h = [omega0](double J) { return omega0 * J; };
  p.dh = [omega0](double) { return omega0; };
  p.name = "linear";
  p.params = {{"omega0", omega0}};
  return p;
}

HamiltonianProfile sym_q_profile(double lambda) {
  HamiltonianProfile p;
  if (lambda == 0.0) {
    p.h = [](double J) { return J; };
    p.dh = [](double) { return 1.0; };
  } else {
    const double s = std::sinh(lambda);
    p.h = [lambda, s](double J) { return std::sinh(lambda * J) / s; };
    p.dh = [lambda, s](double J) {
      return lambda / s * std::cosh(lambda * J);
    };
  }
  p.name = "sym_q";
  p.params = {{"lambda", lambda}};
  return p;
}

HamiltonianProfile semi_relativistic_profile(double m, double c,
                                             double omega0) {
  if (!(m > 0.0 && c > 0.0 && omega0 > 0.0))
    throw DomainError("semi_relativistic_profile: m, c, omega0 must be > 0");
  HamiltonianProfile p;
  const double mc2 = m * c * c;
  p.h = [mc2, omega0](double J) {
    if (J < -0.5 * mc2 / omega0)
      throw DomainError("semi_relativistic_profile: J below branch point");
    return mc2 * std::sqrt(1.0 + 2.0 * omega0 * J / mc2);
  };
  p.dh = [mc2, omega0](double J) {
    return omega0 / std::sqrt(1.0 + 2.0 * omega0 * J / mc2);
  };
  p.name = "semirel";
  p.params = {{"m", m}, {"c", c}, {"omega0", omega0}};
  return p;
}

SpectrumTable semi_relativistic_spectrum(int n_max, double m, double c,
                                         double omega0,
                                         bool difference_variant) {
  const HamiltonianProfile p = semi_relativistic_profile(m, c, omega0);
  SpectrumTable table = f_spectrum(p, n_max);
  if (difference_variant) {
    for (int n = 0; n <= n_max; ++n)
      table.levels[n] = 0.5 * (p.h(n + 1.0) - p.h(n));
    table.params["difference_variant"] = 1.0;
  }
  return table;
}

ComplexAmplitude f_transform(ComplexAmplitude alpha,
                             const HamiltonianProfile& profile) {
  const double J = alpha.action();
  if (J == 0.0) {
    if (std::abs(eval_h(profile, 0.0)) > 1e-300)
      throw DomainError("f_transform: H(J)/J diverges at J = 0");
    return ComplexAmplitude{complex(0.0, 0.0)};
  }
  const double ratio = eval_h(profile, J) / J;
  if (ratio < 0.0)
    throw DomainError("f_transform: H(J)/J < 0 has no real square root");
  return ComplexAmplitude{std::sqrt(ratio) * alpha.value};
}

ComplexAmplitude evolve_classical(ComplexAmplitude alpha0,
                                  const HamiltonianProfile& profile,
                                  double t) {
  const double omega = profile_omega(profile, alpha0.action());
  return ComplexAmplitude{alpha0.value *
                          std::exp(complex(0.0, -omega * t))};
}

SpectrumTable golden_spectrum(int n_max, double hbar_omega) {
  if (n_max < 0)
    throw DomainError("golden_spectrum: n_max must be nonnegative");
  SpectrumTable table;
  table.model = "golden";
  table.params = {{"hbar_omega", hbar_omega}};
  table.levels.reserve(n_max + 1);
  bigint fa = 1, fb = 1;  // F(n+1), F(n+2) starting at n = 0
  for (int n = 0; n <= n_max; ++n) {
    table.levels.push_back(0.5 * hbar_omega * fb.convert_to<double>());
    const bigint f = fa + fb;
    fa = fb;
    fb = f;
  }
  return table;
}

CoherentState golden_coherent(complex beta, int n_max,
                              const SeriesControl& ctl) {
  validate(ctl);
  if (n_max < 0)
    throw DomainError("golden_coherent: n_max must be nonnegative");
  const double b2 = std::norm(beta);
  // Tail bound in logs: 2(n_max+1) ln|beta| - ln F_(n_max+1)! < ln tol.
  if (b2 > 0.0) {
    double log_ff = 0.0;
    double fa = 1.0, fb = 1.0;
    for (int k = 1; k <= n_max + 1; ++k) {
      log_ff += std::log(fa);
      const double f = fa + fb;
      fa = fb;
      fb = f;
    }
    if ((n_max + 1) * std::log(b2) - log_ff >= std::log(ctl.tol))
      throw NoConvergence("golden_coherent: truncation tail above tolerance");
  }
  CoherentState state;
  state.beta = beta;
  state.n_max = n_max;
  state.coeffs.resize(n_max + 1);
  const double c0 = 1.0 / std::sqrt(fib_exp(b2, ctl).real());
  complex c = c0;
  double fa = 1.0, fb = 1.0;  // F(n+1), F(n+2)
  for (int n = 0; n <= n_max; ++n) {
    state.coeffs[n] = c;
    c *= beta / std::sqrt(fa);
    const double f = fa + fb;
    fa = fb;
    fb = f;
  }
  return state;
}

complex golden_overlap(complex a, complex b, const SeriesControl& ctl) {
  return fib_exp(std::conj(a) * b, ctl) /
         std::sqrt(fib_exp(std::norm(a), ctl).real() *
                   fib_exp(std::norm(b), ctl).real());
}

double golden_ratio_limit(int n) {
  if (n < 1) throw DomainError("golden_ratio_limit: n must be >= 1");
  return fibonacci(n + 1).convert_to<double>() /
         fibonacci(n + 2).convert_to<double>();
}

}  // namespace qosc
