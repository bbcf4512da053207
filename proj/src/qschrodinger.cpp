#include "qosc/qschrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qosc/errors.hpp"

namespace qosc {

namespace {

constexpr double kDropTol = 0.0;  // keep everything but exact zeros

void check_params(double hbar, double m) {
  if (!(hbar > 0.0) || !(m > 0.0)) {
    throw DomainError("hbar and m must be positive");
  }
}

void check(const DispersionOperator& disp) {
  check_params(disp.hbar, disp.m);
  if (!std::isfinite(disp.lambda)) {
    throw DomainError("lambda must be finite");
  }
}

BivarPolynomial zero_like(const BivarPolynomial& p) {
  BivarPolynomial r;
  r.hbar = p.hbar;
  r.m = p.m;
  r.lambda = p.lambda;
  return r;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

complex BivarPolynomial::coeff(int i, int j) const {
  auto it = coeffs.find({i, j});
  return it == coeffs.end() ? complex(0.0) : it->second;
}

void BivarPolynomial::add(int i, int j, complex v) {
  if (i < 0 || j < 0) throw DomainError("negative degree");
  auto it = coeffs.find({i, j});
  if (it == coeffs.end()) {
    if (v != complex(0.0)) coeffs.emplace(std::make_pair(i, j), v);
    return;
  }
  it->second += v;
  if (std::abs(it->second) <= kDropTol) coeffs.erase(it);
}

int BivarPolynomial::x_degree() const {
  int d = 0;
  for (const auto& [ij, c] : coeffs) {
    if (c != complex(0.0)) d = std::max(d, ij.first);
  }
  return d;
}

complex BivarPolynomial::evaluate(complex x, complex t) const {
  complex sum = 0.0;
  for (const auto& [ij, c] : coeffs) {
    sum += c * std::pow(x, ij.first) * std::pow(t, ij.second);
  }
  return sum;
}

std::vector<complex> BivarPolynomial::x_coefficients(double t) const {
  std::vector<complex> out(static_cast<size_t>(x_degree()) + 1, complex(0.0));
  for (const auto& [ij, c] : coeffs) {
    out[static_cast<size_t>(ij.first)] +=
        c * std::pow(complex(t), ij.second);
  }
  return out;
}

BivarPolynomial operator+(const BivarPolynomial& a, const BivarPolynomial& b) {
  BivarPolynomial r = a;
  for (const auto& [ij, c] : b.coeffs) r.add(ij.first, ij.second, c);
  return r;
}

BivarPolynomial operator-(const BivarPolynomial& a, const BivarPolynomial& b) {
  BivarPolynomial r = a;
  for (const auto& [ij, c] : b.coeffs) r.add(ij.first, ij.second, -c);
  return r;
}

BivarPolynomial operator*(complex s, const BivarPolynomial& p) {
  BivarPolynomial r = zero_like(p);
  if (s == complex(0.0)) return r;
  for (const auto& [ij, c] : p.coeffs) r.add(ij.first, ij.second, s * c);
  return r;
}

double max_coeff(const BivarPolynomial& p) {
  double m = 0.0;
  for (const auto& [ij, c] : p.coeffs) m = std::max(m, std::abs(c));
  return m;
}

double max_coeff_diff(const BivarPolynomial& a, const BivarPolynomial& b) {
  return max_coeff(a - b);
}

BivarPolynomial dx(const BivarPolynomial& p) {
  BivarPolynomial r = zero_like(p);
  for (const auto& [ij, c] : p.coeffs) {
    if (ij.first >= 1) r.add(ij.first - 1, ij.second, c * double(ij.first));
  }
  return r;
}

BivarPolynomial dx2(const BivarPolynomial& p) {
  BivarPolynomial r = zero_like(p);
  for (const auto& [ij, c] : p.coeffs) {
    if (ij.first >= 2) {
      r.add(ij.first - 2, ij.second,
            c * double(ij.first) * double(ij.first - 1));
    }
  }
  return r;
}

BivarPolynomial dt(const BivarPolynomial& p) {
  BivarPolynomial r = zero_like(p);
  for (const auto& [ij, c] : p.coeffs) {
    if (ij.second >= 1) r.add(ij.first, ij.second - 1, c * double(ij.second));
  }
  return r;
}

BivarPolynomial mul_x(const BivarPolynomial& p) {
  BivarPolynomial r = zero_like(p);
  for (const auto& [ij, c] : p.coeffs) r.add(ij.first + 1, ij.second, c);
  return r;
}

BivarPolynomial mul_t(const BivarPolynomial& p) {
  BivarPolynomial r = zero_like(p);
  for (const auto& [ij, c] : p.coeffs) r.add(ij.first, ij.second + 1, c);
  return r;
}

BivarPolynomial monomial_x(int n, double hbar, double m, double lambda) {
  if (n < 0) throw DomainError("monomial degree must be nonnegative");
  check_params(hbar, m);
  BivarPolynomial p;
  p.hbar = hbar;
  p.m = m;
  p.lambda = lambda;
  p.add(n, 0, 1.0);
  return p;
}

D2Series dispersion_series(const DispersionOperator& disp) {
  check(disp);
  const double lambda = disp.lambda;
  const double a = lambda * disp.hbar * disp.hbar / (2.0 * disp.m);
  const double classical = -disp.hbar * disp.hbar / (2.0 * disp.m);
  if (lambda == 0.0) {
    return [classical](int k) -> complex {
      return k == 1 ? complex(classical) : complex(0.0);
    };
  }
  const double inv_sinh = 1.0 / std::sinh(lambda);
  return [a, inv_sinh](int k) -> complex {
    if (k % 2 == 0) return 0.0;
    return inv_sinh * std::pow(-a, k) / factorial(k);
  };
}

D2Series cosh_half_series(const DispersionOperator& disp) {
  check(disp);
  const double a = disp.lambda * disp.hbar * disp.hbar / (2.0 * disp.m);
  return [a](int k) -> complex {
    if (k % 2 != 0) return 0.0;
    if (k == 0) return 1.0;
    return std::pow(a, k) / factorial(k);
  };
}

BivarPolynomial apply_d2_series(const D2Series& g, const BivarPolynomial& p) {
  BivarPolynomial result = zero_like(p);
  BivarPolynomial cur = p;  // (d^2/dx^2)^k p
  const int kmax = p.x_degree() / 2;
  for (int k = 0; k <= kmax; ++k) {
    const complex gk = g(k);
    if (gk != complex(0.0)) result = result + gk * cur;
    cur = dx2(cur);
    if (cur.coeffs.empty()) break;
  }
  return result;
}

BivarPolynomial hamiltonian_apply(const DispersionOperator& disp,
                                  const BivarPolynomial& p) {
  return apply_d2_series(dispersion_series(disp), p);
}

BivarPolynomial qkf_polynomial(int n, const DispersionOperator& disp) {
  check(disp);
  if (n < 0) throw DomainError("polynomial index must be nonnegative");
  BivarPolynomial result;
  result.hbar = disp.hbar;
  result.m = disp.m;
  result.lambda = disp.lambda;
  BivarPolynomial cur = monomial_x(n, disp.hbar, disp.m, disp.lambda);
  complex fac = 1.0;  // (-i/hbar)^j / j!
  for (int j = 0;; ++j) {
    for (const auto& [ij, c] : cur.coeffs) {
      result.add(ij.first, ij.second + j, fac * c);
    }
    cur = hamiltonian_apply(disp, cur);
    if (cur.coeffs.empty()) break;
    fac *= complex(0.0, -1.0) / disp.hbar / double(j + 1);
  }
  return result;
}

BivarPolynomial boost_apply(const BivarPolynomial& p,
                            const DispersionOperator& disp) {
  check(disp);
  const double ratio =
      disp.lambda == 0.0 ? 1.0 : disp.lambda / std::sinh(disp.lambda);
  const complex scale = complex(0.0, 1.0) * disp.hbar / disp.m * ratio;
  const BivarPolynomial drift =
      scale * mul_t(apply_d2_series(cosh_half_series(disp), dx(p)));
  return mul_x(p) + drift;
}

BivarPolynomial schrodinger_residual(const BivarPolynomial& p,
                                     const DispersionOperator& disp) {
  return complex(0.0, 1.0) * disp.hbar * dt(p) - hamiltonian_apply(disp, p);
}

double SymmetryReport::overall() const {
  return std::max({max_p0_p1, max_p1_k, max_p0_k});
}

namespace {

// The commutator pipeline cancels coefficients that grow like 10! * a^k, so
// it runs in extended precision; everything else in this module stays in
// double, where magnitudes remain modest.
using lcomplex = std::complex<long double>;
using LPoly = std::map<std::pair<int, int>, lcomplex>;

LPoly widen(const BivarPolynomial& p) {
  LPoly out;
  for (const auto& [ij, c] : p.coeffs) out[ij] = lcomplex(c.real(), c.imag());
  return out;
}

LPoly lmap(const LPoly& p,
           const std::function<void(int, int, lcomplex, LPoly&)>& f) {
  LPoly out;
  for (const auto& [ij, c] : p) f(ij.first, ij.second, c, out);
  return out;
}

LPoly ldx(const LPoly& p) {
  return lmap(p, [](int i, int j, lcomplex c, LPoly& out) {
    if (i >= 1) out[{i - 1, j}] += c * (long double)(i);
  });
}

LPoly ldx2(const LPoly& p) {
  return lmap(p, [](int i, int j, lcomplex c, LPoly& out) {
    if (i >= 2) out[{i - 2, j}] += c * (long double)(i) * (long double)(i - 1);
  });
}

LPoly ldt(const LPoly& p) {
  return lmap(p, [](int i, int j, lcomplex c, LPoly& out) {
    if (j >= 1) out[{i, j - 1}] += c * (long double)(j);
  });
}

LPoly lscale(lcomplex s, const LPoly& p) {
  return lmap(p, [s](int i, int j, lcomplex c, LPoly& out) {
    out[{i, j}] += s * c;
  });
}

LPoly ladd(const LPoly& a, const LPoly& b) {
  LPoly out = a;
  for (const auto& [ij, c] : b) out[ij] += c;
  return out;
}

LPoly lsub(const LPoly& a, const LPoly& b) {
  LPoly out = a;
  for (const auto& [ij, c] : b) out[ij] -= c;
  return out;
}

int lx_degree(const LPoly& p) {
  int d = 0;
  for (const auto& [ij, c] : p) {
    if (c != lcomplex(0.0L)) d = std::max(d, ij.first);
  }
  return d;
}

LPoly lcosh_apply(long double a, const LPoly& p) {
  LPoly result;
  LPoly cur = p;
  long double coef = 1.0L;  // a^k / k! for even k
  const int kmax = lx_degree(p) / 2;
  for (int k = 0; k <= kmax; ++k) {
    if (k % 2 == 0) result = ladd(result, lscale(coef, cur));
    cur = ldx2(cur);
    coef *= a / (long double)(k + 1);
    if (cur.empty()) break;
  }
  return result;
}

double lmax_coeff(const LPoly& p) {
  long double m = 0.0L;
  for (const auto& [ij, c] : p) m = std::max(m, std::abs(c));
  return (double)(m);
}

}  // namespace

SymmetryReport symmetry_commutators(const DispersionOperator& disp,
                                    const std::vector<BivarPolynomial>& polys) {
  check(disp);
  const long double hbar = disp.hbar;
  const long double lambda = disp.lambda;
  const long double a = lambda * hbar * hbar / (2.0L * (long double)disp.m);
  const long double ratio =
      disp.lambda == 0.0 ? 1.0L : lambda / std::sinh(lambda);
  const lcomplex i_unit(0.0L, 1.0L);

  const auto p0 = [&](const LPoly& p) { return lscale(i_unit * hbar, ldt(p)); };
  const auto p1 = [&](const LPoly& p) {
    return lscale(-i_unit * hbar, ldx(p));
  };
  const auto k_op = [&](const LPoly& p) {
    const lcomplex drift = i_unit * hbar / (long double)disp.m * ratio;
    LPoly shifted = lmap(p, [](int i, int j, lcomplex c, LPoly& out) {
      out[{i + 1, j}] += c;
    });
    LPoly cosh_part = lmap(lcosh_apply(a, ldx(p)),
                           [](int i, int j, lcomplex c, LPoly& out) {
                             out[{i, j + 1}] += c;
                           });
    return ladd(shifted, lscale(drift, cosh_part));
  };
  // Expected [P0, K]: -(hbar^2 lambda/(m sinh lambda)) cosh(a D^2) D,
  // reducing to -(hbar^2/m) D at lambda = 0.
  const lcomplex kick = -hbar * hbar * ratio / (long double)disp.m;
  const auto p0k_expected = [&](const LPoly& p) {
    return lscale(kick, lcosh_apply(a, ldx(p)));
  };

  SymmetryReport report;
  for (const auto& poly : polys) {
    const LPoly p = widen(poly);
    const LPoly r1 = lsub(p0(p1(p)), p1(p0(p)));
    const LPoly r2 =
        ladd(lsub(p1(k_op(p)), k_op(p1(p))), lscale(i_unit * hbar, p));
    const LPoly r3 = lsub(lsub(p0(k_op(p)), k_op(p0(p))), p0k_expected(p));
    report.max_p0_p1 = std::max(report.max_p0_p1, lmax_coeff(r1));
    report.max_p1_k = std::max(report.max_p1_k, lmax_coeff(r2));
    report.max_p0_k = std::max(report.max_p0_k, lmax_coeff(r3));
  }
  return report;
}

namespace {

complex horner(const std::vector<complex>& coeffs, complex w) {
  complex v = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) v = v * w + coeffs[k];
  return v;
}

complex horner_derivative(const std::vector<complex>& coeffs, complex w) {
  complex v = 0.0;
  for (size_t k = coeffs.size(); k-- > 1;) v = v * w + double(k) * coeffs[k];
  return v;
}

}  // namespace

std::vector<complex> poly_roots(const std::vector<complex>& coeffs,
                                unsigned seed,
                                std::vector<bool>* converged) {
  if (coeffs.size() < 2) throw DomainError("need degree >= 1");
  const size_t deg = coeffs.size() - 1;
  const complex lead = coeffs[deg];
  if (std::abs(lead) == 0.0) throw DomainError("leading coefficient is zero");

  double ratio_max = 0.0;
  double coeff_scale = 0.0;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    coeff_scale = std::max(coeff_scale, std::abs(coeffs[k]));
    if (k < deg) ratio_max = std::max(ratio_max, std::abs(coeffs[k] / lead));
  }
  const double radius = 1.0 + ratio_max;

  // Deterministic jitter keeps the start away from symmetric stalls.
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::vector<complex> w(deg);
  for (size_t k = 0; k < deg; ++k) {
    const double angle =
        2.0 * M_PI * double(k) / double(deg) + 0.4 + 1e-3 * jitter(rng);
    w[k] = radius * std::exp(complex(0.0, angle));
  }

  for (int iter = 0; iter < 600; ++iter) {
    double max_step = 0.0;
    for (size_t i = 0; i < deg; ++i) {
      complex denom = lead;
      for (size_t j = 0; j < deg; ++j) {
        if (j != i) denom *= (w[i] - w[j]);
      }
      if (std::abs(denom) == 0.0) continue;
      const complex step = horner(coeffs, w[i]) / denom;
      w[i] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(w[i])));
    }
    if (max_step < 1e-14) break;
  }

  // Newton polish; multiple roots keep shrinking because the step stays a
  // contraction toward the cluster center.
  for (size_t i = 0; i < deg; ++i) {
    for (int it = 0; it < 40; ++it) {
      const complex pv = horner(coeffs, w[i]);
      const complex dv = horner_derivative(coeffs, w[i]);
      if (std::abs(dv) == 0.0) break;
      const complex step = pv / dv;
      w[i] -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(w[i]))) break;
    }
  }

  std::sort(w.begin(), w.end(), [](complex a, complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  if (converged != nullptr) {
    converged->assign(deg, false);
    for (size_t i = 0; i < deg; ++i) {
      const double grow = std::pow(std::max(1.0, std::abs(w[i])), double(deg));
      (*converged)[i] =
          std::abs(horner(coeffs, w[i])) <= 1e-10 * coeff_scale * grow;
    }
  }
  return w;
}

std::vector<RootSet> zeros_over_time(int n, const DispersionOperator& disp,
                                     const std::vector<double>& times,
                                     unsigned seed) {
  if (n < 1) throw DomainError("need degree >= 1 for roots");
  const BivarPolynomial h = qkf_polynomial(n, disp);
  std::vector<RootSet> out;
  out.reserve(times.size());
  for (double t : times) {
    RootSet slice;
    slice.t = t;
    slice.roots = poly_roots(h.x_coefficients(t), seed, &slice.converged);
    out.push_back(std::move(slice));
  }
  return out;
}

namespace {

// Velocity-dependent transport factor of the deformed flow.
double transport_factor(const BurgersProfile& profile, double v) {
  if (profile.lambda == 0.0) return 1.0;
  const double l = profile.lambda;
  return l / std::sinh(l) * std::cosh(l * profile.m * v * v / 2.0);
}

void check(const BurgersProfile& profile) {
  if (!profile.f) throw DomainError("profile function is empty");
  if (!(profile.m > 0.0)) throw DomainError("m must be positive");
  if (!std::isfinite(profile.lambda)) throw DomainError("lambda not finite");
}

}  // namespace

BurgersSolution burgers_solve(const BurgersProfile& profile, double x,
                              double t) {
  check(profile);
  if (t == 0.0) return {profile.f(x), false};

  const auto residual = [&](double v) {
    return v - profile.f(x - v * t * transport_factor(profile, v));
  };

  // The solution value is in the range of f, so bracket by sampling f over
  // the reachable foot-point window.
  double fmin = profile.f(x), fmax = fmin;
  {
    constexpr int probe = 512;
    double reach = 1.0;
    for (int pass = 0; pass < 3; ++pass) {
      const double bound = std::max(std::abs(fmin), std::abs(fmax));
      reach = std::max(
          reach, std::abs(t) * bound *
                     transport_factor(profile, std::copysign(bound, 1.0)));
      for (int i = 0; i <= probe; ++i) {
        const double xi = x - reach + 2.0 * reach * double(i) / probe;
        const double fi = profile.f(xi);
        if (!std::isfinite(fi)) throw DomainError("profile not finite");
        fmin = std::min(fmin, fi);
        fmax = std::max(fmax, fi);
      }
    }
  }

  const double lo = fmin - 1.0;
  const double hi = fmax + 1.0;
  constexpr int cells = 512;
  std::vector<std::pair<double, double>> brackets;
  double prev_v = lo;
  double prev_g = residual(lo);
  for (int i = 1; i <= cells; ++i) {
    const double v = lo + (hi - lo) * double(i) / cells;
    const double g = residual(v);
    if ((prev_g <= 0.0 && g >= 0.0) || (prev_g >= 0.0 && g <= 0.0)) {
      brackets.emplace_back(prev_v, v);
    }
    prev_v = v;
    prev_g = g;
  }
  if (brackets.empty()) throw NoRoot("no characteristic root in bracket");

  std::vector<double> roots;
  for (auto [a, b] : brackets) {
    double ga = residual(a), gb = residual(b);
    double v = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
      const double g = residual(v);
      if (g == 0.0) break;
      if ((ga <= 0.0) == (g <= 0.0)) {
        a = v;
        ga = g;
      } else {
        b = v;
        gb = g;
      }
      const double h = 1e-7 * (1.0 + std::abs(v));
      const double slope = (residual(v + h) - residual(v - h)) / (2.0 * h);
      double next = slope != 0.0 ? v - g / slope : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::abs(next - v) < 1e-14 * (1.0 + std::abs(v))) {
        v = next;
        break;
      }
      v = next;
    }
    (void)gb;
    roots.push_back(v);
  }

  // Merge near-identical roots from adjacent cells.
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique_roots;
  for (double r : roots) {
    if (unique_roots.empty() ||
        std::abs(r - unique_roots.back()) > 1e-8 * (1.0 + std::abs(r))) {
      unique_roots.push_back(r);
    }
  }

  const double reference = profile.f(x);
  double best = unique_roots.front();
  for (double r : unique_roots) {
    if (std::abs(r - reference) < std::abs(best - reference)) best = r;
  }
  return {best, unique_roots.size() > 1};
}

double shock_time(const BurgersProfile& profile, double x_min, double x_max,
                  int resolution, double t_max) {
  check(profile);
  if (!(x_max > x_min)) throw DomainError("need x_max > x_min");
  if (resolution < 2) throw DomainError("need at least two samples");
  if (!(t_max > 0.0)) throw DomainError("need t_max > 0");

  std::vector<double> x0(resolution), speed(resolution);
  for (int i = 0; i < resolution; ++i) {
    x0[i] = x_min + (x_max - x_min) * double(i) / (resolution - 1);
    const double v = profile.f(x0[i]);
    if (!std::isfinite(v)) throw DomainError("profile not finite");
    speed[i] = v * transport_factor(profile, v);
  }

  // The map x0 + t * speed(x0) is monotone iff every adjacent difference is
  // positive; each difference is linear in t, so monotonicity flips once.
  const auto monotone = [&](double t) {
    for (int i = 0; i + 1 < resolution; ++i) {
      if (x0[i + 1] - x0[i] + t * (speed[i + 1] - speed[i]) <= 0.0) {
        return false;
      }
    }
    return true;
  };

  if (monotone(t_max)) throw NoShock("map stays injective up to t_max");
  double lo = 0.0, hi = t_max;
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * t_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    (monotone(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qosc
