#include "qosc/flows.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "qosc/errors.hpp"

namespace qosc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_finite(complex w, const char* what) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw SingularityError(std::string(what) +
                           " evaluated to a non-finite value");
  }
}

void validate_spec(const AnnulusSpec& spec) {
  if (!(spec.r1 > 0.0) || !(spec.r2 > spec.r1)) {
    throw DomainError("annulus requires 0 < r1 < r2");
  }
  if (spec.M < 1) throw DomainError("annulus truncation M must be >= 1");
}

// Open action window of the annulus, shrunk by the wall margin.
void validate_action(double J, const AnnulusSpec& spec) {
  const double lo = spec.r1 * spec.r1 + spec.margin();
  const double hi = spec.r2 * spec.r2 - spec.margin();
  if (!(J > lo) || !(J < hi)) {
    throw DomainError("action outside the open annulus window");
  }
}

complex rotation(int k, int n) {
  const double t = 2.0 * kPi * double(k) / double(n);
  return {std::cos(t), std::sin(t)};
}

// Marginal image generation of a truncated sum, measured as the spread of
// its stream-function contribution over both boundary circles.
void attach_truncation_warning(ComplexPotential& F,
                               const std::function<complex(complex)>& last_gen,
                               const AnnulusSpec& spec, double warn_tol) {
  double spread = 0.0;
  for (double r : {spec.r1, spec.r2}) {
    double mn = 0.0, mx = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double t = 2.0 * kPi * (k + 0.31) / 32.0;
      const double im = std::imag(last_gen(r * complex{std::cos(t),
                                                       std::sin(t)}));
      if (k == 0) {
        mn = mx = im;
      } else {
        mn = std::min(mn, im);
        mx = std::max(mx, im);
      }
    }
    spread = std::max(spread, mx - mn);
  }
  if (spread > warn_tol) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "truncation M=%d leaves a boundary stream spread %.3e above "
                  "the requested %.3e; raise M",
                  spec.M, spread, warn_tol);
    F.warnings.emplace_back(buf);
  }
}

double stddev(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / double(v.size()));
}

}  // namespace

complex ComplexPotential::operator()(complex z) const {
  for (const complex& s : singularities) {
    if (std::abs(z - s) <= 1e-13 * (1.0 + std::abs(s))) {
      throw SingularityError("evaluation at an excluded point");
    }
  }
  const complex w = evaluator(z);
  check_finite(w, "potential");
  return w;
}

complex ComplexPotential::velocity(complex z) const {
  for (const complex& s : singularities) {
    if (std::abs(z - s) <= 1e-13 * (1.0 + std::abs(s))) {
      throw SingularityError("velocity at an excluded point");
    }
  }
  const complex w = derivative(z);
  check_finite(w, "velocity");
  return w;
}

ComplexPotential make_potential(std::function<complex(complex)> evaluator,
                                std::function<complex(complex)> derivative,
                                std::vector<complex> singularities) {
  if (!evaluator) throw DomainError("potential requires an evaluator");
  ComplexPotential F;
  F.evaluator = std::move(evaluator);
  if (derivative) {
    F.derivative = std::move(derivative);
  } else {
    // Richardson-extrapolated central difference; analytic F makes the
    // real-direction step sufficient.
    const auto eval = F.evaluator;
    F.derivative = [eval](complex z) {
      const double h = 1e-6 * std::max(1.0, std::abs(z));
      const auto diff = [&](double step) {
        return (eval(z + step) - eval(z - step)) / (2.0 * step);
      };
      return (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
    };
  }
  F.singularities = std::move(singularities);
  return F;
}

ComplexPotential base_vortex(complex z0, double Gamma) {
  const complex ik{0.0, Gamma / (2.0 * kPi)};
  return make_potential(
      [ik, z0](complex z) { return ik * std::log(z - z0); },
      [ik, z0](complex z) { return ik / (z - z0); }, {z0});
}

ComplexPotential base_uniform(double U) {
  return make_potential([U](complex z) { return U * z; },
                        [U](complex) { return complex{U, 0.0}; }, {});
}

ComplexPotential conjugate_flow(const ComplexPotential& f) {
  const auto eval = f.evaluator;
  const auto deriv = f.derivative;
  std::vector<complex> sing;
  sing.reserve(f.singularities.size());
  for (const complex& s : f.singularities) sing.push_back(std::conj(s));
  return make_potential(
      [eval](complex w) { return std::conj(eval(std::conj(w))); },
      [deriv](complex w) { return std::conj(deriv(std::conj(w))); },
      std::move(sing));
}

ComplexPotential one_circle(const ComplexPotential& f, double r) {
  if (!(r > 0.0)) throw DomainError("circle radius must be positive");
  const ComplexPotential fb = conjugate_flow(f);
  const double r2 = r * r;
  std::vector<complex> sing = f.singularities;
  for (const complex& s : fb.singularities) {
    if (std::abs(s) > 0.0) sing.push_back(r2 / s);
  }
  sing.emplace_back(0.0, 0.0);
  const auto fe = f.evaluator, fd = f.derivative;
  const auto be = fb.evaluator, bd = fb.derivative;
  return make_potential(
      [fe, be, r2](complex z) { return fe(z) + be(r2 / z); },
      [fd, bd, r2](complex z) {
        return fd(z) - bd(r2 / z) * r2 / (z * z);
      },
      std::move(sing));
}

ComplexPotential wedge(const ComplexPotential& f, int n) {
  if (n < 1) throw DomainError("wedge order must be a positive integer");
  const ComplexPotential fb = conjugate_flow(f);
  std::vector<complex> sing;
  for (int k = 0; k < n; ++k) {
    const complex w = rotation(k, n);
    for (const complex& s : f.singularities) sing.push_back(s / w);
    for (const complex& s : fb.singularities) sing.push_back(s / w);
  }
  const auto fe = f.evaluator, fd = f.derivative;
  const auto be = fb.evaluator, bd = fb.derivative;
  return make_potential(
      [fe, be, n](complex z) {
        complex acc{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
          const complex wz = rotation(k, n) * z;
          acc += fe(wz) + be(wz);
        }
        return acc;
      },
      [fd, bd, n](complex z) {
        complex acc{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
          const complex w = rotation(k, n);
          acc += w * (fd(w * z) + bd(w * z));
        }
        return acc;
      },
      std::move(sing));
}

ComplexPotential kummer_kaleidoscope(complex z0, double Gamma, int n) {
  if (n < 1) throw DomainError("kaleidoscope order must be >= 1");
  const double arg = std::arg(z0);
  if (!(arg > 0.0) || !(arg < kPi / double(n))) {
    throw DomainError("vortex must lie strictly inside the open sector");
  }
  const complex ik{0.0, Gamma / (2.0 * kPi)};
  const complex z0n = std::pow(z0, n);
  const complex c0n = std::pow(std::conj(z0), n);
  std::vector<complex> sing;
  for (int k = 0; k < n; ++k) {
    const complex w = rotation(k, n);
    sing.push_back(z0 * w);
    sing.push_back(std::conj(z0) * w);
  }
  return make_potential(
      [ik, z0n, c0n, n](complex z) {
        const complex zn = std::pow(z, n);
        return ik * std::log((zn - z0n) / (zn - c0n));
      },
      [ik, z0n, c0n, n](complex z) {
        const complex zn = std::pow(z, n);
        const complex zp = double(n) * std::pow(z, n - 1);
        return ik * (zp / (zn - z0n) - zp / (zn - c0n));
      },
      std::move(sing));
}

ComplexPotential circular_wedge(const ComplexPotential& f, int n, double r) {
  if (n < 1) throw DomainError("wedge order must be a positive integer");
  if (!(r > 0.0)) throw DomainError("circle radius must be positive");
  const ComplexPotential fb = conjugate_flow(f);
  const double r2 = r * r;
  std::vector<complex> sing;
  for (int k = 0; k < n; ++k) {
    const complex w = rotation(k, n);
    for (const complex& s : f.singularities) {
      sing.push_back(s / w);
      if (std::abs(s) > 0.0) sing.push_back(r2 / (w * s));
    }
    for (const complex& s : fb.singularities) {
      sing.push_back(s / w);
      if (std::abs(s) > 0.0) sing.push_back(r2 / (w * s));
    }
  }
  sing.emplace_back(0.0, 0.0);
  const auto fe = f.evaluator, fd = f.derivative;
  const auto be = fb.evaluator, bd = fb.derivative;
  return make_potential(
      [fe, be, n, r2](complex z) {
        complex acc{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
          const complex wz = rotation(k, n) * z;
          acc += fe(wz) + be(wz) + be(r2 / wz) + fe(r2 / wz);
        }
        return acc;
      },
      [fd, bd, n, r2](complex z) {
        complex acc{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
          const complex w = rotation(k, n);
          const complex wz = w * z;
          const complex pull = -r2 / (w * z * z);  // d/dz of r2/(w z)
          acc += w * (fd(wz) + bd(wz)) + (bd(r2 / wz) + fd(r2 / wz)) * pull;
        }
        return acc;
      },
      std::move(sing));
}

ComplexPotential two_circle(const ComplexPotential& f, const AnnulusSpec& spec,
                            double warn_tol) {
  validate_spec(spec);
  const ComplexPotential fb = conjugate_flow(f);
  const double Q = spec.Q();
  const double r22 = spec.r2 * spec.r2;
  const int M = spec.M;
  std::vector<complex> sing;
  for (int m = -M; m <= M; ++m) {
    const double Qm = std::pow(Q, m);
    for (const complex& s : f.singularities) sing.push_back(s / Qm);
    for (const complex& s : fb.singularities) {
      if (std::abs(s) > 0.0) sing.push_back(Qm * r22 / s);
    }
  }
  sing.emplace_back(0.0, 0.0);
  const auto fe = f.evaluator, fd = f.derivative;
  const auto be = fb.evaluator, bd = fb.derivative;
  ComplexPotential F = make_potential(
      [fe, be, Q, r22, M](complex z) {
        complex acc{0.0, 0.0};
        for (int m = -M; m <= M; ++m) {
          const double Qm = std::pow(Q, m);
          acc += fe(Qm * z) + be(Qm * r22 / z);
        }
        return acc;
      },
      [fd, bd, Q, r22, M](complex z) {
        complex acc{0.0, 0.0};
        for (int m = -M; m <= M; ++m) {
          const double Qm = std::pow(Q, m);
          acc += Qm * fd(Qm * z) - bd(Qm * r22 / z) * Qm * r22 / (z * z);
        }
        return acc;
      },
      std::move(sing));
  attach_truncation_warning(
      F,
      [fe, be, Q, r22, M](complex z) {
        const double Qp = std::pow(Q, M), Qn = std::pow(Q, -M);
        return fe(Qp * z) + fe(Qn * z) + be(Qp * r22 / z) + be(Qn * r22 / z);
      },
      spec, warn_tol);
  return F;
}

ComplexPotential double_circular_wedge(const ComplexPotential& f, int n,
                                       const AnnulusSpec& spec,
                                       double warn_tol) {
  if (n < 1) throw DomainError("wedge order must be a positive integer");
  validate_spec(spec);
  const ComplexPotential fb = conjugate_flow(f);
  const double Q = spec.Q();
  const double r22 = spec.r2 * spec.r2;
  const int M = spec.M;
  std::vector<complex> sing;
  for (int m = -M; m <= M; ++m) {
    const double Qm = std::pow(Q, m);
    for (int k = 0; k < n; ++k) {
      const complex a = Qm * rotation(k, n);
      for (const complex& s : f.singularities) {
        sing.push_back(s / a);
        if (std::abs(s) > 0.0) sing.push_back(a * r22 / s);
      }
      for (const complex& s : fb.singularities) {
        sing.push_back(s / a);
        if (std::abs(s) > 0.0) sing.push_back(a * r22 / s);
      }
    }
  }
  sing.emplace_back(0.0, 0.0);
  const auto fe = f.evaluator, fd = f.derivative;
  const auto be = fb.evaluator, bd = fb.derivative;
  const auto generation = [fe, be, n, Q, r22](complex z, int m) {
    const double Qm = std::pow(Q, m);
    complex acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const complex a = Qm * rotation(k, n);
      acc += fe(a * z) + be(a * z) + be(a * r22 / z) + fe(a * r22 / z);
    }
    return acc;
  };
  ComplexPotential F = make_potential(
      [generation, M](complex z) {
        complex acc{0.0, 0.0};
        for (int m = -M; m <= M; ++m) acc += generation(z, m);
        return acc;
      },
      [fd, bd, n, Q, r22, M](complex z) {
        complex acc{0.0, 0.0};
        for (int m = -M; m <= M; ++m) {
          const double Qm = std::pow(Q, m);
          for (int k = 0; k < n; ++k) {
            const complex a = Qm * rotation(k, n);
            const complex pull = -a * r22 / (z * z);
            acc += a * (fd(a * z) + bd(a * z)) +
                   (bd(a * r22 / z) + fd(a * r22 / z)) * pull;
          }
        }
        return acc;
      },
      std::move(sing));
  attach_truncation_warning(
      F, [generation, M](complex z) { return generation(z, M) + generation(z, -M); },
      spec, warn_tol);
  return F;
}

ComplexPotential annulus_vortex_potential(complex z0, double Gamma,
                                          const AnnulusSpec& spec) {
  validate_spec(spec);
  const double rho = std::abs(z0);
  if (!(rho > spec.r1) || !(rho < spec.r2)) {
    throw DomainError("vortex must sit strictly inside the annulus");
  }
  const complex ik{0.0, Gamma / (2.0 * kPi)};
  const double Q = spec.Q();
  const double r22 = spec.r2 * spec.r2;
  const complex c0 = std::conj(z0);
  const int M = spec.M;
  std::vector<complex> sing;
  for (int m = -M; m <= M; ++m) {
    const double Qm = std::pow(Q, m);
    sing.push_back(z0 * Qm);
    sing.push_back((r22 / z0) * Qm);
    sing.push_back(c0 * Qm);
    sing.push_back((r22 / c0) * Qm);
  }
  return make_potential(
      [ik, z0, c0, Q, r22, M](complex z) {
        complex acc{0.0, 0.0};
        for (int m = -M; m <= M; ++m) {
          const double Qm = std::pow(Q, m);
          // Per-generation four-factor ratio: the only grouping whose log
          // tends to 0 on both ends of the image cascade.
          const complex num = (z - z0 * Qm) * (z - (r22 / z0) * Qm);
          const complex den = (z - c0 * Qm) * (z - (r22 / c0) * Qm);
          acc += std::log(num / den);
        }
        return ik * acc;
      },
      [ik, z0, c0, Q, r22, M](complex z) {
        complex acc{0.0, 0.0};
        for (int m = -M; m <= M; ++m) {
          const double Qm = std::pow(Q, m);
          acc += 1.0 / (z - z0 * Qm) + 1.0 / (z - (r22 / z0) * Qm) -
                 1.0 / (z - c0 * Qm) - 1.0 / (z - (r22 / c0) * Qm);
        }
        return ik * acc;
      },
      std::move(sing));
}

complex annulus_image_velocity(complex z, complex z0, double Gamma,
                               const AnnulusSpec& spec, bool drop_self) {
  validate_spec(spec);
  const complex ik{0.0, Gamma / (2.0 * kPi)};
  const double Q = spec.Q();
  const complex neg0 = (spec.r1 * spec.r1) / std::conj(z0);
  complex acc{0.0, 0.0};
  for (int m = -spec.M; m <= spec.M; ++m) {
    const double Qm = std::pow(Q, m);
    if (!(drop_self && m == 0)) acc += 1.0 / (z - z0 * Qm);
    // The opposite-sign ladder is shifted one generation toward the inner
    // wall so every truncation carries zero net circulation around it; the
    // large-M limit then reproduces the closed-form rotation frequency.
    if (m != -spec.M) acc -= 1.0 / (z - neg0 * Qm);
  }
  const complex v = ik * acc;
  check_finite(v, "image-sum velocity");
  return v;
}

double annulus_omega(double J, double Gamma, const AnnulusSpec& spec,
                     const SeriesControl& ctl) {
  validate_spec(spec);
  validate_action(J, spec);
  const double q = spec.Q();
  const double r12 = spec.r1 * spec.r1;
  const double r22 = spec.r2 * spec.r2;
  const double bracket = std::real(q_log1m(J / r12, q, ctl)) -
                         std::real(q_log1m(r22 / J, q, ctl));
  return Gamma / (2.0 * kPi * (q - 1.0) * J) * bracket;
}

double annulus_hamiltonian(double J, double Gamma, const AnnulusSpec& spec,
                           const SeriesControl& ctl) {
  validate_spec(spec);
  validate_action(J, spec);
  const double q = spec.Q();
  const double r12 = spec.r1 * spec.r1;
  const double r22 = spec.r2 * spec.r2;
  const complex e1 = q_exp(J / ((1.0 - q) * r12), q, ctl);
  const complex e2 = q_exp(r22 / ((1.0 - q) * J), q, ctl);
  if (std::abs(e1) < 1e-12 || std::abs(e2) < 1e-12) {
    throw SingularH("q-exponential factor vanishes at this action");
  }
  return Gamma * Gamma / (4.0 * kPi) * std::log(std::abs(e1 * e2));
}

HamiltonianProfile annulus_profile(double Gamma, const AnnulusSpec& spec,
                                   const SeriesControl& ctl) {
  validate_spec(spec);
  HamiltonianProfile p;
  p.h = [Gamma, spec, ctl](double J) {
    return annulus_hamiltonian(J, Gamma, spec, ctl);
  };
  // dH/dJ = (Gamma/2) omega(J): the bracket normalization {theta, J} =
  // 2/Gamma puts the circulation into the frequency map.
  p.dh = [Gamma, spec, ctl](double J) {
    return 0.5 * Gamma * annulus_omega(J, Gamma, spec, ctl);
  };
  p.name = "annulus_vortex";
  p.params = {{"r1", spec.r1},
              {"r2", spec.r2},
              {"M", double(spec.M)},
              {"Gamma", Gamma}};
  return p;
}

std::vector<TrajectoryPoint> vortex_simulate(const VortexState& state,
                                             const AnnulusSpec& spec,
                                             double dt, int steps,
                                             const SeriesControl& ctl) {
  validate_spec(spec);
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (steps < 1) throw DomainError("step count must be >= 1");
  const double J0 = std::norm(state.z0);
  const double w0 = annulus_omega(J0, state.Gamma, spec, ctl);
  if (!(dt * std::abs(w0) < 0.1)) {
    throw DomainError("dt*|omega| must stay below 0.1 for stable stepping");
  }
  const auto rhs = [&](complex z) {
    const double w = annulus_omega(std::norm(z), state.Gamma, spec, ctl);
    return complex{0.0, -1.0} * w * z;
  };
  std::vector<TrajectoryPoint> out;
  out.reserve(size_t(steps) + 1);
  complex z = state.z0;
  const auto record = [&](double t) {
    const double J = std::norm(z);
    out.push_back({t, z, J, annulus_hamiltonian(J, state.Gamma, spec, ctl)});
  };
  record(0.0);
  for (int s = 1; s <= steps; ++s) {
    const complex k1 = rhs(z);
    const complex k2 = rhs(z + 0.5 * dt * k1);
    const complex k3 = rhs(z + 0.5 * dt * k2);
    const complex k4 = rhs(z + dt * k3);
    z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    record(dt * double(s));  // omega's window guard rejects wall escapes
  }
  return out;
}

complex annulus_f_transform(complex z0, double Gamma, const AnnulusSpec& spec,
                            const SeriesControl& ctl) {
  const double J = std::norm(z0);
  const double H = annulus_hamiltonian(J, Gamma, spec, ctl);
  if (H < 0.0) {
    throw NegativeH("energy is negative at this action; no real amplitude");
  }
  return std::sqrt(H / J) * z0;
}

namespace {

SpectrumTable action_spectrum(const char* model, int n_min, int n_max,
                              double Gamma, const AnnulusSpec& spec,
                              double action_scale, const SeriesControl& ctl,
                              const std::function<double(double)>& level) {
  if (n_max < n_min) throw DomainError("empty level range");
  if (!(action_scale > 0.0)) throw DomainError("action scale must be positive");
  SpectrumTable table;
  table.model = model;
  table.params = {{"r1", spec.r1},          {"r2", spec.r2},
                  {"M", double(spec.M)},    {"Gamma", Gamma},
                  {"n_min", double(n_min)}, {"n_max", double(n_max)},
                  {"action_scale", action_scale}};
  table.levels.reserve(size_t(n_max - n_min) + 1);
  for (int n = n_min; n <= n_max; ++n) table.levels.push_back(level(double(n)));
  (void)ctl;
  return table;
}

}  // namespace

SpectrumTable annulus_bohr_sommerfeld(int n_min, int n_max, double Gamma,
                                      const AnnulusSpec& spec,
                                      double action_scale,
                                      const SeriesControl& ctl) {
  validate_spec(spec);
  return action_spectrum(
      "annulus_bohr_sommerfeld", n_min, n_max, Gamma, spec, action_scale, ctl,
      [&](double n) {
        return annulus_hamiltonian(action_scale * (n + 0.5), Gamma, spec, ctl);
      });
}

SpectrumTable annulus_f_spectrum(int n_min, int n_max, double Gamma,
                                 const AnnulusSpec& spec, double action_scale,
                                 const SeriesControl& ctl) {
  validate_spec(spec);
  return action_spectrum(
      "annulus_f_oscillator", n_min, n_max, Gamma, spec, action_scale, ctl,
      [&](double n) {
        const double a = annulus_hamiltonian(action_scale * n, Gamma, spec, ctl);
        const double b =
            annulus_hamiltonian(action_scale * (n + 1.0), Gamma, spec, ctl);
        return 0.5 * (a + b);
      });
}

AnnulusSpec make_annulus(double r1, double r2, int M) {
  AnnulusSpec spec;
  spec.r1 = r1;
  spec.r2 = r2;
  spec.M = M;
  validate_spec(spec);
  return spec;
}

double circle_imf_stddev(const ComplexPotential& F, double r, int samples,
                         complex center) {
  if (!(r > 0.0) || samples < 2) throw DomainError("bad circle sampling");
  std::vector<double> im;
  im.reserve(size_t(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * kPi * double(k) / double(samples);
    im.push_back(std::imag(F(center + r * complex{std::cos(t), std::sin(t)})));
  }
  return stddev(im);
}

double ray_imf_stddev(const ComplexPotential& F, double angle, double rmin,
                      double rmax, int samples) {
  if (!(rmin > 0.0) || !(rmax > rmin) || samples < 2) {
    throw DomainError("bad ray sampling");
  }
  const complex dir{std::cos(angle), std::sin(angle)};
  const double ratio = rmax / rmin;
  std::vector<double> im;
  im.reserve(size_t(samples));
  for (int k = 0; k < samples; ++k) {
    const double r = rmin * std::pow(ratio, double(k) / double(samples - 1));
    im.push_back(std::imag(F(r * dir)));
  }
  return stddev(im);
}

std::string field_csv(const ComplexPotential& F,
                      const std::vector<complex>& points) {
  std::string out = "re_z,im_z,re_F,im_F,re_V,im_V\n";
  char buf[256];
  for (const complex& z : points) {
    const complex f = F(z);
    const complex v = F.velocity(z);
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", z.real(), z.imag(),
                  f.real(), f.imag(), v.real(), v.imag());
    out += buf;
  }
  return out;
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory) {
  std::string out = "t,re_z,im_z,J,H\n";
  char buf[256];
  for (const TrajectoryPoint& p : trajectory) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.t,
                  p.z.real(), p.z.imag(), p.J, p.H);
    out += buf;
  }
  return out;
}

}  // namespace qosc
