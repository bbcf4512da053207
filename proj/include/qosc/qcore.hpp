#pragma once

#include <complex>
#include <functional>

#include <boost/multiprecision/cpp_int.hpp>

#include "qosc/errors.hpp"

namespace qosc {

using complex = std::complex<double>;
using bigint = boost::multiprecision::cpp_int;

// Truncation policy for the infinite series in this module: stop at the first
// index where |term| < tol AND the following term is smaller (guards a
// non-monotone onset); exceeding max_terms raises NoConvergence.
struct SeriesControl {
  double tol = 1e-14;
  int max_terms = 512;
};

// Throws DomainError unless tol > 0 and max_terms >= 1.
void validate(const SeriesControl& ctl);

// Defaults above, with max_terms overridden by the QOSC_MAX_TERMS environment
// variable when it is set to a positive integer.
SeriesControl series_control_from_env();

enum class QKind { real_q, root_of_unity };

// Deformation parameter: either a real q = exp(lambda), or a primitive
// root of unity q = exp(i*pi/n) used by sector geometry.
struct QParameter {
  double lambda = 0.0;
  complex q{1.0, 0.0};
  QKind kind = QKind::real_q;
  int root_order = 0;  // n when kind == root_of_unity

  static QParameter from_lambda(double lambda);
  static QParameter primitive_root(int n);
};

// Geometric q-integer [n] = 1 + q + ... + q^(n-1) = (q^n - 1)/(q - 1).
// Exact degenerate branch: returns n when q == 1.
double q_number(int n, double q);

// Symmetric q-integer sinh(lambda*n)/sinh(lambda); returns n when lambda == 0.
double sym_q_number(int n, double lambda);

// Products [1][2]...[n]; empty product = 1.
double q_factorial(int n, double q);
double sym_q_factorial(int n, double lambda);

// Entire q-exponential sum z^n/[n]! for q > 1.
complex q_exp(complex z, double q, const SeriesControl& ctl = {});

// q-logarithm of (1 - x): -sum x^n/[n], valid for |x| < q, q > 1.
complex q_log1m(complex x, double q, const SeriesControl& ctl = {});

// q-harmonic series sum 1/[n]; converges for q > 1.
double q_harmonic(double q, const SeriesControl& ctl = {});

// Finite-difference dilation derivative (f(q z) - f(z))/((q - 1) z).
complex q_derivative(const std::function<complex(complex)>& f, complex z,
                     complex q);

// Exact Fibonacci number by integer fast doubling.
bigint fibonacci(long long n);

// Floating-point closed form (phi^n - (-1/phi)^n)/sqrt(5); cross-check only.
double binet_float(int n);

// Exact product F_1 F_2 ... F_n; empty product = 1.
bigint fib_factorial(int n);

// Entire series sum z^n / F_n!.
complex fib_exp(complex z, const SeriesControl& ctl = {});

// Two-point derivative (f(phi z) - f(-z/phi))/((phi + 1/phi) z) with
// phi the golden ratio; maps z^n to F_n z^(n-1).
complex golden_derivative(const std::function<complex(complex)>& f, complex z);

inline constexpr double golden_phi = 1.6180339887498948482;

}  // namespace qosc
