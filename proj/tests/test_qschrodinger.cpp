#include "qosc/qschrodinger.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "doctest.h"
#include "qosc/errors.hpp"
#include "qosc/serialize.hpp"

namespace {

using qosc::BivarPolynomial;
using qosc::complex;
using qosc::DispersionOperator;

constexpr complex kI{0.0, 1.0};

BivarPolynomial from_terms(const DispersionOperator& disp,
                           const std::vector<std::tuple<int, int, complex>>& terms) {
  BivarPolynomial p;
  p.hbar = disp.hbar;
  p.m = disp.m;
  p.lambda = disp.lambda;
  for (const auto& [i, j, c] : terms) p.add(i, j, c);
  return p;
}

// Drift scale shared by every closed-form coefficient below.
double drift(const DispersionOperator& d) {
  return d.hbar / d.m * (d.lambda == 0.0 ? 1.0 : d.lambda / std::sinh(d.lambda));
}

// Heat-kernel style expansion exp((i t hbar/2m) d^2/dx^2) x^n, the exact
// classical (lambda = 0) evolution, built without the series machinery.
BivarPolynomial classical_evolution(int n, double hbar, double m) {
  BivarPolynomial p;
  p.hbar = hbar;
  p.m = m;
  p.lambda = 0.0;
  complex fac = 1.0;
  double falling = 1.0;  // n! / (n - 2k)!
  for (int k = 0; 2 * k <= n; ++k) {
    p.add(n - 2 * k, k, fac * falling);
    fac *= kI * hbar / (2.0 * m) / double(k + 1);
    falling *= double(n - 2 * k) * double(n - 2 * k - 1);
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic and calculus behave on small cases") {
  DispersionOperator d{0.5, 1.0, 1.0};
  BivarPolynomial p = from_terms(d, {{2, 0, 1.0}, {0, 1, complex(0.0, 3.0)}});

  CHECK(p.x_degree() == 2);
  CHECK(p.coeff(2, 0) == complex(1.0));
  CHECK(p.coeff(5, 5) == complex(0.0));
  CHECK(p.evaluate(2.0, 1.0) == complex(4.0, 3.0));

  const BivarPolynomial px = qosc::dx(p);
  CHECK(px.coeff(1, 0) == complex(2.0));
  CHECK(px.coeffs.size() == 1);

  const BivarPolynomial pt = qosc::dt(p);
  CHECK(pt.coeff(0, 0) == complex(0.0, 3.0));
  CHECK(pt.coeffs.size() == 1);

  const BivarPolynomial pxx = qosc::dx2(p);
  CHECK(pxx.coeff(0, 0) == complex(2.0));

  CHECK(qosc::mul_x(p).coeff(3, 0) == complex(1.0));
  CHECK(qosc::mul_t(p).coeff(0, 2) == complex(0.0, 3.0));
  CHECK(qosc::max_coeff(p - p) == 0.0);
  CHECK(qosc::max_coeff(complex(2.0) * p) == 6.0);

  const auto at_t = p.x_coefficients(2.0);
  REQUIRE(at_t.size() == 3);
  CHECK(at_t[0] == complex(0.0, 6.0));
  CHECK(at_t[2] == complex(1.0));

  CHECK_THROWS_AS(qosc::monomial_x(-1, 1.0, 1.0, 0.0), qosc::DomainError);
  CHECK_THROWS_AS(qosc::monomial_x(2, 0.0, 1.0, 0.0), qosc::DomainError);
}

TEST_CASE("dispersion series has odd powers only and exact classical branch") {
  DispersionOperator d{0.8, 1.3, 0.9};
  const auto g = qosc::dispersion_series(d);
  const double a = d.lambda * d.hbar * d.hbar / (2.0 * d.m);
  CHECK(g(0) == complex(0.0));
  CHECK(g(2) == complex(0.0));
  CHECK(g(1).real() == doctest::Approx(-a / std::sinh(d.lambda)).epsilon(1e-15));
  CHECK(g(3).real() ==
        doctest::Approx(-a * a * a / 6.0 / std::sinh(d.lambda)).epsilon(1e-15));

  DispersionOperator classical{0.0, 2.0, 0.5};
  const auto gc = qosc::dispersion_series(classical);
  CHECK(gc(1) == complex(-4.0));  // -hbar^2/2m = -4/1
  CHECK(gc(3) == complex(0.0));

  // cosh series: even powers of the same scale.
  const auto ch = qosc::cosh_half_series(d);
  CHECK(ch(0) == complex(1.0));
  CHECK(ch(1) == complex(0.0));
  CHECK(ch(2).real() == doctest::Approx(a * a / 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(qosc::dispersion_series({0.5, -1.0, 1.0}), qosc::DomainError);
}

TEST_CASE("apply_d2_series reproduces plain second derivatives") {
  DispersionOperator d{0.7, 1.0, 1.0};
  const BivarPolynomial x4 = qosc::monomial_x(4, d.hbar, d.m, d.lambda);

  const auto pick_first = [](int k) { return k == 1 ? complex(1.0) : complex(0.0); };
  const BivarPolynomial d2 = qosc::apply_d2_series(pick_first, x4);
  CHECK(d2.coeff(2, 0) == complex(12.0));
  CHECK(d2.coeffs.size() == 1);

  // On x^4 only the k = 1 term of the dispersion survives (k = 3 needs x^6).
  const BivarPolynomial h = qosc::hamiltonian_apply(d, x4);
  const double a = d.lambda * d.hbar * d.hbar / (2.0 * d.m);
  CHECK(h.coeff(2, 0).real() ==
        doctest::Approx(-12.0 * a / std::sinh(d.lambda)).epsilon(1e-15));
  CHECK(h.coeffs.size() == 1);

  // Constants are annihilated by every k >= 1 term.
  const BivarPolynomial c = qosc::monomial_x(0, d.hbar, d.m, d.lambda);
  CHECK(qosc::hamiltonian_apply(d, c).coeffs.empty());
}

TEST_CASE("evolved polynomials match the closed-form coefficient table") {
  for (const DispersionOperator d :
       {DispersionOperator{0.5, 1.0, 1.0}, DispersionOperator{1.0, 0.7, 1.3}}) {
    const double L = drift(d);
    const std::vector<BivarPolynomial> expected = {
        from_terms(d, {{0, 0, 1.0}}),
        from_terms(d, {{1, 0, 1.0}}),
        from_terms(d, {{2, 0, 1.0}, {0, 1, kI * L}}),
        from_terms(d, {{3, 0, 1.0}, {1, 1, 3.0 * kI * L}}),
        from_terms(d, {{4, 0, 1.0}, {2, 1, 6.0 * kI * L}, {0, 2, -3.0 * L * L}}),
        from_terms(d, {{5, 0, 1.0},
                       {3, 1, 10.0 * kI * L},
                       {1, 2, -15.0 * L * L}}),
    };
    for (size_t n = 0; n < expected.size(); ++n) {
      const BivarPolynomial h = qosc::qkf_polynomial(int(n), d);
      CHECK(qosc::max_coeff_diff(h, expected[n]) < 1e-12);
    }
  }
}

TEST_CASE("degree-six polynomial gains the dispersion correction term") {
  DispersionOperator d{0.9, 1.1, 0.8};
  const double L = drift(d);
  const double correction =
      L * d.lambda * d.lambda * std::pow(d.hbar, 4) / (d.m * d.m);
  const BivarPolynomial expected =
      from_terms(d, {{6, 0, 1.0},
                     {4, 1, 15.0 * kI * L},
                     {2, 2, -45.0 * L * L},
                     {0, 3, -15.0 * kI * L * L * L},
                     {0, 1, 15.0 * kI * correction}});
  const BivarPolynomial h6 = qosc::qkf_polynomial(6, d);
  CHECK(qosc::max_coeff_diff(h6, expected) < 1e-12);

  // The same coefficient from the operator route: the k = 3 series term hits
  // x^6 once, with weight (-i t/hbar) (1/sinh) (-a)^3/3! * 720.
  const double a = d.lambda * d.hbar * d.hbar / (2.0 * d.m);
  const complex via_series =
      -kI / d.hbar * (-(a * a * a) / 6.0 / std::sinh(d.lambda)) * 720.0;
  CHECK(std::abs(h6.coeff(0, 1) - via_series) < 1e-12 * std::abs(via_series));
}

TEST_CASE("every evolved polynomial solves its evolution equation exactly") {
  for (double lambda : {0.0, 0.3, 1.0}) {
    for (const auto& [hbar, m] :
         std::vector<std::pair<double, double>>{{1.0, 1.0}, {0.7, 1.3}}) {
      DispersionOperator d{lambda, hbar, m};
      for (int n = 0; n <= 8; ++n) {
        const BivarPolynomial h = qosc::qkf_polynomial(n, d);
        CHECK(qosc::max_coeff(qosc::schrodinger_residual(h, d)) < 1e-12);
        // Value at t = 0 is the bare monomial.
        BivarPolynomial t0 = h;
        for (auto it = t0.coeffs.begin(); it != t0.coeffs.end();) {
          it = it->first.second > 0 ? t0.coeffs.erase(it) : std::next(it);
        }
        CHECK(qosc::max_coeff_diff(
                  t0, qosc::monomial_x(n, hbar, m, lambda)) == 0.0);
      }
      // Static monomials are not solutions once the dispersion acts.
      const BivarPolynomial x2 = qosc::monomial_x(2, hbar, m, lambda);
      CHECK(qosc::max_coeff(qosc::schrodinger_residual(x2, d)) > 1e-3);
    }
  }
}

TEST_CASE("classical-limit polynomials match the heat-kernel expansion") {
  // Exact at lambda = 0, and approached quadratically as lambda -> 0.
  for (int n = 0; n <= 8; ++n) {
    const BivarPolynomial exact = classical_evolution(n, 0.7, 1.3);
    const BivarPolynomial at_zero =
        qosc::qkf_polynomial(n, DispersionOperator{0.0, 0.7, 1.3});
    CHECK(qosc::max_coeff_diff(at_zero, exact) < 1e-13);

    const BivarPolynomial near_zero =
        qosc::qkf_polynomial(n, DispersionOperator{1e-8, 0.7, 1.3});
    CHECK(qosc::max_coeff_diff(near_zero, exact) < 1e-6);
  }
}

TEST_CASE("boost operator ladders between consecutive solutions") {
  for (const DispersionOperator d :
       {DispersionOperator{0.0, 1.0, 1.0}, DispersionOperator{0.6, 0.9, 1.2}}) {
    for (int n = 0; n <= 7; ++n) {
      const BivarPolynomial hn = qosc::qkf_polynomial(n, d);
      const BivarPolynomial hn1 = qosc::qkf_polynomial(n + 1, d);
      CHECK(qosc::max_coeff_diff(qosc::boost_apply(hn, d), hn1) < 1e-12);
    }
  }

  // At lambda = 0 the boost is the Galilean x + (i hbar t/m) d/dx.
  DispersionOperator g{0.0, 2.0, 0.5};
  const BivarPolynomial p = from_terms(g, {{3, 0, 1.0}});
  const BivarPolynomial kp = qosc::boost_apply(p, g);
  CHECK(kp.coeff(4, 0) == complex(1.0));
  CHECK(kp.coeff(2, 1) == complex(0.0, 3.0 * g.hbar / g.m));
  CHECK(kp.coeffs.size() == 2);
}

TEST_CASE("symmetry commutators close on monomials") {
  for (const DispersionOperator d :
       {DispersionOperator{0.0, 1.0, 1.0}, DispersionOperator{0.6, 0.8, 1.1},
        DispersionOperator{1.2, 1.0, 0.7}}) {
    std::vector<BivarPolynomial> polys;
    for (int i = 0; i + 0 <= 10; ++i) {
      for (int j = 0; i + 2 * j <= 10; ++j) {
        polys.push_back(from_terms(d, {{i, j, 1.0}}));
      }
    }
    const qosc::SymmetryReport report = qosc::symmetry_commutators(d, polys);
    CHECK(report.max_p0_p1 < 1e-12);
    CHECK(report.max_p1_k < 1e-12);
    CHECK(report.max_p0_k < 1e-12);
    CHECK(report.overall() < 1e-12);
  }
}

TEST_CASE("root finder pins analytic roots and flags convergence") {
  // x^2 - 1.
  std::vector<bool> ok;
  auto roots = qosc::poly_roots({-1.0, 0.0, 1.0}, 7, &ok);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - complex(-1.0)) < 1e-12);
  CHECK(std::abs(roots[1] - complex(1.0)) < 1e-12);
  CHECK(ok == std::vector<bool>{true, true});

  // (x - 2i)(x + 1)(x - 3) expanded via elementary symmetric functions.
  const complex r1{0.0, 2.0}, r2{-1.0, 0.0}, r3{3.0, 0.0};
  const std::vector<complex> coeffs = {-r1 * r2 * r3,
                                       r1 * r2 + r1 * r3 + r2 * r3,
                                       -(r1 + r2 + r3), 1.0};
  roots = qosc::poly_roots(coeffs, 7, &ok);
  REQUIRE(roots.size() == 3);
  CHECK(std::abs(roots[0] - r2) < 1e-10);
  CHECK(std::abs(roots[1] - r1) < 1e-10);
  CHECK(std::abs(roots[2] - r3) < 1e-10);

  // Identical seeds give byte-identical roots; different seeds agree to
  // solver accuracy.
  const auto again = qosc::poly_roots(coeffs, 7, nullptr);
  CHECK(roots == again);

  CHECK_THROWS_AS(qosc::poly_roots({1.0}, 7, nullptr), qosc::DomainError);
  CHECK_THROWS_AS(qosc::poly_roots({1.0, 0.0}, 7, nullptr), qosc::DomainError);
}

TEST_CASE("zeros of evolved polynomials track the analytic motion") {
  DispersionOperator d{0.5, 1.0, 1.0};
  const double L = drift(d);

  // Degree 2: roots of x^2 + i L t are +/- sqrt(L t) e^{-i pi/4}.
  const auto slices = qosc::zeros_over_time(2, d, {0.0, 1.0, 2.5});
  REQUIRE(slices.size() == 3);

  CHECK(slices[0].t == 0.0);
  for (const complex r : slices[0].roots) CHECK(std::abs(r) < 1e-6);
  for (const bool c : slices[0].converged) CHECK(c);

  for (size_t s = 1; s < slices.size(); ++s) {
    const double t = slices[s].t;
    const complex plus = std::sqrt(L * t) * std::exp(complex(0.0, -M_PI / 4.0));
    REQUIRE(slices[s].roots.size() == 2);
    CHECK(std::abs(slices[s].roots[0] + plus) < 1e-10);
    CHECK(std::abs(slices[s].roots[1] - plus) < 1e-10);
  }

  // Higher degree: every reported root really annihilates the polynomial.
  const BivarPolynomial h5 = qosc::qkf_polynomial(5, d);
  for (const auto& slice : qosc::zeros_over_time(5, d, {0.7, 1.9})) {
    for (size_t i = 0; i < slice.roots.size(); ++i) {
      CHECK(slice.converged[i]);
      CHECK(std::abs(h5.evaluate(slice.roots[i], slice.t)) < 1e-8);
    }
  }

  CHECK_THROWS_AS(qosc::zeros_over_time(0, d, {1.0}), qosc::DomainError);
}

TEST_CASE("polynomial JSON round-trips with sorted terms") {
  DispersionOperator d{0.5, 1.0, 1.0};
  const BivarPolynomial h2 = qosc::qkf_polynomial(2, d);
  const nlohmann::json j = qosc::poly_to_json(h2);

  CHECK(j["params"]["hbar"] == 1.0);
  CHECK(j["params"]["lambda"] == 0.5);
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["i"] == 0);  // (0,1) sorts before (2,0)
  CHECK(j["terms"][0]["j"] == 1);
  CHECK(j["terms"][1]["i"] == 2);
  CHECK(j["terms"][1]["j"] == 0);

  const BivarPolynomial back = qosc::poly_from_json(j);
  CHECK(qosc::max_coeff_diff(back, h2) == 0.0);
  CHECK(back.lambda == h2.lambda);

  CHECK_THROWS_AS(qosc::poly_from_json(nlohmann::json::object()),
                  qosc::DomainError);
}

TEST_CASE("transport solver honors the implicit characteristic equation") {
  // t = 0 returns the profile value without solving anything.
  qosc::BurgersProfile tanh_prof{[](double x) { return -std::tanh(x); }, 0.0,
                                 1.0};
  CHECK(qosc::burgers_solve(tanh_prof, 0.3, 0.0).v == -std::tanh(0.3));

  // Constant profiles ride unchanged at any deformation.
  qosc::BurgersProfile const_prof{[](double) { return 2.0; }, 1.0, 1.0};
  const auto cs = qosc::burgers_solve(const_prof, 1.0, 3.0);
  CHECK(std::abs(cs.v - 2.0) < 1e-12);
  CHECK_FALSE(cs.multiple_roots);

  // Classical linear profile has the closed form (a x + b)/(1 + a t).
  qosc::BurgersProfile lin{[](double x) { return 0.5 * x + 0.2; }, 0.0, 1.0};
  const auto ls = qosc::burgers_solve(lin, 0.7, 1.5);
  CHECK(std::abs(ls.v - (0.5 * 0.7 + 0.2) / (1.0 + 0.5 * 1.5)) < 1e-10);
  CHECK_FALSE(ls.multiple_roots);

  // Deformed flow: the returned value satisfies the implicit equation.
  qosc::BurgersProfile deformed{[](double x) { return -std::tanh(x); }, 0.8,
                                1.2};
  const double t = 0.4, x = 0.25;
  const auto ds = qosc::burgers_solve(deformed, x, t);
  const double g = deformed.lambda / std::sinh(deformed.lambda) *
                   std::cosh(deformed.lambda * deformed.m * ds.v * ds.v / 2.0);
  CHECK(std::abs(ds.v - deformed.f(x - ds.v * t * g)) < 1e-10);
  CHECK_FALSE(ds.multiple_roots);

  // After characteristics cross, multiplicity is flagged and the branch
  // closest to the unshocked value is returned.
  const auto post = qosc::burgers_solve(tanh_prof, 0.0, 2.0);
  CHECK(post.multiple_roots);
  CHECK(std::abs(post.v) < 1e-9);  // tanh(2V) = V keeps the V = 0 branch
  const auto pre = qosc::burgers_solve(tanh_prof, 0.0, 0.5);
  CHECK_FALSE(pre.multiple_roots);

  CHECK_THROWS_AS(qosc::burgers_solve({nullptr, 0.0, 1.0}, 0.0, 1.0),
                  qosc::DomainError);
}

TEST_CASE("first characteristic crossing matches direct pair minimum") {
  // Classical steepest descent of -tanh has slope -1, so the map folds at 1.
  qosc::BurgersProfile classical{[](double x) { return -std::tanh(x); }, 0.0,
                                 1.0};
  const double t_star = qosc::shock_time(classical, -5.0, 5.0, 2001, 5.0);
  CHECK(std::abs(t_star - 1.0) < 0.01);

  // Deformed case: cross-check bisection against the explicit minimum of
  // dx / (speed_i - speed_{i+1}) over sampled pairs.
  qosc::BurgersProfile deformed{[](double x) { return -std::tanh(x); }, 0.7,
                                1.2};
  const int res = 1501;
  const double lo = -4.0, hi = 4.0;
  double direct = std::numeric_limits<double>::infinity();
  auto speed_at = [&](double x0) {
    const double v = deformed.f(x0);
    return v * deformed.lambda / std::sinh(deformed.lambda) *
           std::cosh(deformed.lambda * deformed.m * v * v / 2.0);
  };
  for (int i = 0; i + 1 < res; ++i) {
    const double xa = lo + (hi - lo) * i / (res - 1);
    const double xb = lo + (hi - lo) * (i + 1) / (res - 1);
    const double drop = speed_at(xa) - speed_at(xb);
    if (drop > 0.0) direct = std::min(direct, (xb - xa) / drop);
  }
  const double bisected = qosc::shock_time(deformed, lo, hi, res, 10.0);
  CHECK(std::abs(bisected - direct) < 1e-9 * direct);

  // Monotone or flat profiles never fold.
  qosc::BurgersProfile rising{[](double x) { return std::tanh(x); }, 0.0, 1.0};
  CHECK_THROWS_AS(qosc::shock_time(rising, -5.0, 5.0, 801, 20.0), qosc::NoShock);
  qosc::BurgersProfile flat{[](double) { return 0.7; }, 0.5, 1.0};
  CHECK_THROWS_AS(qosc::shock_time(flat, -5.0, 5.0, 801, 20.0), qosc::NoShock);

  CHECK_THROWS_AS(qosc::shock_time(classical, 5.0, -5.0, 801, 20.0),
                  qosc::DomainError);
  CHECK_THROWS_AS(qosc::shock_time(classical, -5.0, 5.0, 1, 20.0),
                  qosc::DomainError);
}
