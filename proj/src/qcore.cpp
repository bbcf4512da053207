#include "qosc/qcore.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace qosc {

void validate(const SeriesControl& ctl) {
  if (!(ctl.tol > 0.0)) throw DomainError("SeriesControl: tol must be > 0");
  if (ctl.max_terms < 1)
    throw DomainError("SeriesControl: max_terms must be >= 1");
}

SeriesControl series_control_from_env() {
  SeriesControl ctl;
  if (const char* s = std::getenv("QOSC_MAX_TERMS")) {
    const long v = std::strtol(s, nullptr, 10);
    if (v >= 1) ctl.max_terms = static_cast<int>(v);
  }
  return ctl;
}

QParameter QParameter::from_lambda(double lambda) {
  QParameter p;
  p.lambda = lambda;
  p.q = std::exp(lambda);
  p.kind = QKind::real_q;
  return p;
}

QParameter QParameter::primitive_root(int n) {
  if (n < 1) throw DomainError("QParameter: root order must be positive");
  QParameter p;
  p.lambda = 0.0;
  p.q = std::polar(1.0, M_PI / n);
  p.kind = QKind::root_of_unity;
  p.root_order = n;
  return p;
}

double q_number(int n, double q) {
  if (n < 0) throw DomainError("q_number: n must be nonnegative");
  if (!(q > 0.0)) throw DomainError("q_number: q must be positive");
  if (q == 1.0) return static_cast<double>(n);
  return (std::pow(q, n) - 1.0) / (q - 1.0);
}

double sym_q_number(int n, double lambda) {
  if (n < 0) throw DomainError("sym_q_number: n must be nonnegative");
  if (lambda == 0.0) return static_cast<double>(n);
  return std::sinh(lambda * n) / std::sinh(lambda);
}

double q_factorial(int n, double q) {
  if (n < 0) throw DomainError("q_factorial: n must be nonnegative");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= q_number(k, q);
  return prod;
}

double sym_q_factorial(int n, double lambda) {
  if (n < 0) throw DomainError("sym_q_factorial: n must be nonnegative");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= sym_q_number(k, lambda);
  return prod;
}

complex q_exp(complex z, double q, const SeriesControl& ctl) {
  validate(ctl);
  if (!(q > 1.0)) throw DomainError("q_exp: requires q > 1");
  complex sum = 0.0;
  complex term = 1.0;  // z^0/[0]!
  for (int n = 0; n <= ctl.max_terms; ++n) {
    sum += term;
    const complex next = term * z / q_number(n + 1, q);
    if (std::abs(term) < ctl.tol && std::abs(next) <= std::abs(term)) return sum;
    term = next;
  }
  throw NoConvergence("q_exp: max_terms reached before tolerance");
}

complex q_log1m(complex x, double q, const SeriesControl& ctl) {
  validate(ctl);
  if (!(q > 1.0)) throw DomainError("q_log1m: requires q > 1");
  if (!(std::abs(x) < q)) throw DomainError("q_log1m: requires |x| < q");
  complex sum = 0.0;
  complex term = x;      // x^n / [n], starting at n = 1
  double qmn = 1.0 / q;  // q^{-n}
  for (int n = 1; n <= ctl.max_terms; ++n) {
    sum += term;
    // [n]/[n+1] = (1 - q^{-n})/(q - q^{-n}) keeps the update finite even
    // when q^n itself would overflow (slow decay needs n in the thousands).
    const complex next = term * (x * (1.0 - qmn) / (q - qmn));
    if (std::abs(term) < ctl.tol && std::abs(next) <= std::abs(term))
      return -sum;
    term = next;
    qmn /= q;
  }
  throw NoConvergence("q_log1m: max_terms reached before tolerance");
}

double q_harmonic(double q, const SeriesControl& ctl) {
  validate(ctl);
  if (!(q > 1.0)) throw DomainError("q_harmonic: requires q > 1");
  double sum = 0.0;
  for (int n = 1; n <= ctl.max_terms; ++n) {
    const double term = 1.0 / q_number(n, q);
    sum += term;
    const double next = 1.0 / q_number(n + 1, q);
    if (term < ctl.tol && next < term) return sum;
    if (n == ctl.max_terms)
      throw NoConvergence("q_harmonic: max_terms reached before tolerance");
  }
  return sum;
}

complex q_derivative(const std::function<complex(complex)>& f, complex z,
                     complex q) {
  if (z == complex(0.0, 0.0))
    throw DomainError("q_derivative: undefined at z = 0");
  if (q == complex(1.0, 0.0))
    throw DomainError("q_derivative: undefined at q = 1");
  return (f(q * z) - f(z)) / ((q - 1.0) * z);
}

bigint fibonacci(long long n) {
  if (n < 0) throw DomainError("fibonacci: n must be nonnegative");
  if (n == 0) return 0;
  // Fast doubling: F(2k) = F(k)(2F(k+1) - F(k)), F(2k+1) = F(k)^2 + F(k+1)^2.
  bigint a = 0;  // F(k)
  bigint b = 1;  // F(k+1)
  int bits = 0;
  for (long long m = n; m > 0; m >>= 1) ++bits;
  for (int i = bits - 1; i >= 0; --i) {
    bigint c = a * (2 * b - a);
    bigint d = a * a + b * b;
    if ((n >> i) & 1) {
      a = d;
      b = c + d;
    } else {
      a = c;
      b = d;
    }
  }
  return a;
}

double binet_float(int n) {
  const double phi = golden_phi;
  const double psi = -1.0 / phi;
  return (std::pow(phi, n) - std::pow(psi, n)) / std::sqrt(5.0);
}

bigint fib_factorial(int n) {
  if (n < 0) throw DomainError("fib_factorial: n must be nonnegative");
  bigint prod = 1;
  bigint fa = 0, fb = 1;  // F(k), F(k+1)
  for (int k = 1; k <= n; ++k) {
    const bigint fk = fb;
    fb = fa + fb;
    fa = fk;
    prod *= fk;
  }
  return prod;
}

complex fib_exp(complex z, const SeriesControl& ctl) {
  validate(ctl);
  complex sum = 0.0;
  complex term = 1.0;  // z^0/F_0!
  double fa = 1.0, fb = 1.0;  // F(n+1), F(n+2) as doubles for the term ratio
  for (int n = 0; n <= ctl.max_terms; ++n) {
    sum += term;
    const complex next = term * z / fa;
    if (std::abs(term) < ctl.tol && std::abs(next) <= std::abs(term)) return sum;
    term = next;
    const double f = fb;
    fb = fa + fb;
    fa = f;
  }
  throw NoConvergence("fib_exp: max_terms reached before tolerance");
}

complex golden_derivative(const std::function<complex(complex)>& f,
                          complex z) {
  if (z == complex(0.0, 0.0))
    throw DomainError("golden_derivative: undefined at z = 0");
  const double phi = golden_phi;
  return (f(phi * z) - f(-z / phi)) / ((phi + 1.0 / phi) * z);
}

}  // namespace qosc
