#pragma once

#include <complex>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qosc/qcore.hpp"

namespace qosc {

// Complex-coefficient polynomial in (x, t). Exactness of the operator
// algebra comes from nilpotency of d^2/dx^2 on finite degree, not from
// symbolic manipulation; (hbar, m, lambda) are plain numbers.
struct BivarPolynomial {
  std::map<std::pair<int, int>, complex> coeffs;  // (x-degree, t-degree)
  double hbar = 1.0;
  double m = 1.0;
  double lambda = 0.0;

  complex coeff(int i, int j) const;
  void add(int i, int j, complex v);
  int x_degree() const;
  complex evaluate(complex x, complex t) const;
  // Coefficients of the x-polynomial at fixed t, index = x-degree.
  std::vector<complex> x_coefficients(double t) const;
};

BivarPolynomial operator+(const BivarPolynomial& a, const BivarPolynomial& b);
BivarPolynomial operator-(const BivarPolynomial& a, const BivarPolynomial& b);
BivarPolynomial operator*(complex s, const BivarPolynomial& p);

// Largest coefficient magnitude; zero polynomial gives 0.
double max_coeff(const BivarPolynomial& p);
double max_coeff_diff(const BivarPolynomial& a, const BivarPolynomial& b);

BivarPolynomial dx(const BivarPolynomial& p);
BivarPolynomial dx2(const BivarPolynomial& p);
BivarPolynomial dt(const BivarPolynomial& p);
BivarPolynomial mul_x(const BivarPolynomial& p);
BivarPolynomial mul_t(const BivarPolynomial& p);

// x^n with the given parameters attached.
BivarPolynomial monomial_x(int n, double hbar, double m, double lambda);

// sinh-in-D^2 dispersion sinh(-(lambda hbar^2/2m) d^2/dx^2)/sinh(lambda);
// the lambda = 0 branch is the exact -(hbar^2/2m) d^2/dx^2.
struct DispersionOperator {
  double lambda = 0.0;
  double hbar = 1.0;
  double m = 1.0;
};

// Coefficient generator for an even power series in d^2/dx^2: g(k) is the
// coefficient of (d^2/dx^2)^k.
using D2Series = std::function<complex(int)>;

// Coefficients of the dispersion operator above.
D2Series dispersion_series(const DispersionOperator& disp);

// Coefficients of cosh((lambda hbar^2/2m) d^2/dx^2).
D2Series cosh_half_series(const DispersionOperator& disp);

// Applies sum_k g(k) (d^2/dx^2)^k; exact because the series truncates at
// half the x-degree.
BivarPolynomial apply_d2_series(const D2Series& g, const BivarPolynomial& p);

// The dispersion operator applied to p.
BivarPolynomial hamiltonian_apply(const DispersionOperator& disp,
                                  const BivarPolynomial& p);

// exp(-(i t/hbar) H0) x^n, expanded exactly; value at t = 0 is x^n.
BivarPolynomial qkf_polynomial(int n, const DispersionOperator& disp);

// K p with K = x + (i hbar t/m)(lambda/sinh lambda)
//                 cosh((lambda hbar^2/2m) d^2/dx^2) d/dx.
BivarPolynomial boost_apply(const BivarPolynomial& p,
                            const DispersionOperator& disp);

// i hbar dp/dt - H0 p; the zero polynomial iff p solves the evolution
// equation of this dispersion.
BivarPolynomial schrodinger_residual(const BivarPolynomial& p,
                                     const DispersionOperator& disp);

// Residuals of the symmetry algebra acting on test polynomials, with
// P0 = i hbar d/dt, P1 = -i hbar d/dx, K the boost:
//   [P0, P1] = 0,
//   [P1, K] = -i hbar,
//   [P0, K] = -(hbar^2 lambda/(m sinh lambda)) cosh((lambda hbar^2/2m) D^2) D.
struct SymmetryReport {
  double max_p0_p1 = 0.0;
  double max_p1_k = 0.0;
  double max_p0_k = 0.0;
  double overall() const;
};

SymmetryReport symmetry_commutators(const DispersionOperator& disp,
                                    const std::vector<BivarPolynomial>& polys);

// Simultaneous-iteration root finder with deterministic seeding and Newton
// polishing; converged[i] marks residual below 1e-10 * coefficient scale.
std::vector<complex> poly_roots(const std::vector<complex>& coeffs,
                                unsigned seed,
                                std::vector<bool>* converged = nullptr);

struct RootSet {
  double t = 0.0;
  std::vector<complex> roots;
  std::vector<bool> converged;
};

// Roots of the degree-n polynomial solution at each requested time.
std::vector<RootSet> zeros_over_time(int n, const DispersionOperator& disp,
                                     const std::vector<double>& times,
                                     unsigned seed = 12345);

// Initial velocity profile f and deformation of the hydrodynamic flow
// V_t + (lambda/sinh lambda) V cosh(lambda m V^2/2) V_x = 0.
struct BurgersProfile {
  std::function<double(double)> f;
  double lambda = 0.0;
  double m = 1.0;
};

struct BurgersSolution {
  double v = 0.0;
  bool multiple_roots = false;  // set once characteristics cross
};

// Solves V = f(x - V t (lambda/sinh lambda) cosh(lambda m V^2/2)) by a
// 512-cell scan over [min f - 1, max f + 1] plus safeguarded Newton;
// returns the root closest to f(x) and flags multiplicity.
BurgersSolution burgers_solve(const BurgersProfile& profile, double x,
                              double t);

// Smallest t at which the sampled characteristic map
// x0 + t f(x0)(lambda/sinh lambda) cosh(lambda m f(x0)^2/2) loses
// injectivity on [x_min, x_max], by bisection; NoShock if the map stays
// monotone up to t_max.
double shock_time(const BurgersProfile& profile, double x_min, double x_max,
                  int resolution, double t_max = 100.0);

}  // namespace qosc
