#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qosc/oscillators.hpp"
#include "qosc/qcore.hpp"

namespace qosc {

// Complex potential F(z) of a planar ideal flow. Im F is the stream
// function; dF/dz is the complex velocity u - iv. Evaluation near a listed
// singular point throws SingularityError; warnings collect truncation
// diagnostics attached by image-sum constructions.
struct ComplexPotential {
  std::function<complex(complex)> evaluator;
  std::function<complex(complex)> derivative;
  std::vector<complex> singularities;
  std::vector<std::string> warnings;

  complex operator()(complex z) const;  // guarded evaluator
  complex velocity(complex z) const;    // guarded derivative (dF/dz)
};

// Wraps raw callables. A null derivative selects a Richardson-extrapolated
// central difference with step 1e-6 * max(1, |z|).
ComplexPotential make_potential(std::function<complex(complex)> evaluator,
                                std::function<complex(complex)> derivative,
                                std::vector<complex> singularities = {});

// Concentric annulus r1 < |z| < r2. Q is the squared radius ratio driving
// every image cascade; M image generations are kept on each side.
struct AnnulusSpec {
  double r1 = 1.0;
  double r2 = 2.0;
  int M = 16;

  double Q() const { return (r2 * r2) / (r1 * r1); }
  // Evaluations must stay this far from the wall actions r1^2 and r2^2.
  double margin() const { return 1e-3 * (r2 * r2 - r1 * r1); }
};

// Validates 0 < r1 < r2 and M >= 1.
AnnulusSpec make_annulus(double r1, double r2, int M = 16);

// Point vortex: position and circulation (kappa = Gamma/2pi).
struct VortexState {
  complex z0{0.0, 0.0};
  double Gamma = 0.0;
};

struct TrajectoryPoint {
  double t = 0.0;
  complex z{0.0, 0.0};
  double J = 0.0;  // |z|^2
  double H = 0.0;  // energy at J
};

// F(z) = (i Gamma / 2 pi) ln(z - z0); analytic derivative; singular at z0.
ComplexPotential base_vortex(complex z0, double Gamma);

// F(z) = U z (U real): uniform stream along the x axis.
ComplexPotential base_uniform(double U);

// Coefficient conjugate fbar(w) = conj(f(conj(w))); analytic wherever f is
// analytic at conj(w).
ComplexPotential conjugate_flow(const ComplexPotential& f);

// Circle theorem: F(z) = f(z) + fbar(r^2/z); Im F is constant on |z| = r
// when f has no singularity inside the circle.
ComplexPotential one_circle(const ComplexPotential& f, double r);

// Sector of opening pi/n bounded by the rays arg z = 0 and arg z = pi/n:
// F(z) = sum_{k<n} [f(w^k z) + fbar(w^k z)], w = exp(2 pi i / n).
// Im F vanishes on both rays; F is invariant under z -> w z.
ComplexPotential wedge(const ComplexPotential& f, int n);

// Closed form for a vortex at z0 inside the open sector:
// F = (i Gamma / 2 pi) ln((z^n - z0^n)/(z^n - conj(z0)^n)), carrying the
// 2n image vortices at the rotations of z0 and conj(z0).
ComplexPotential kummer_kaleidoscope(complex z0, double Gamma, int n);

// Sector of opening pi/n truncated by the circle |z| = r:
// wedge sum plus its reflection f(r^2/(w^k z)), fbar(r^2/(w^k z)).
// Im F vanishes on both rays and on the circle.
ComplexPotential circular_wedge(const ComplexPotential& f, int n, double r);

// Annulus image sum, truncated symmetrically at |m| <= M:
// F(z) = sum_m [f(Q^m z) + fbar(Q^m r2^2/z)].
// Boundary residuals decay geometrically in M; when the marginal generation
// still moves Im F by more than warn_tol a warning is attached.
ComplexPotential two_circle(const ComplexPotential& f, const AnnulusSpec& spec,
                            double warn_tol = 1e-6);

// Annular sector: the doubly-indexed sum over Q^m w^k images,
// F(z) = sum_m sum_k [f(a z) + fbar(a z) + fbar(a r2^2/z) + f(a r2^2/z)],
// a = Q^m w^k. Invariant under z -> w z exactly and z -> Q z up to the
// truncated tail.
ComplexPotential double_circular_wedge(const ComplexPotential& f, int n,
                                       const AnnulusSpec& spec,
                                       double warn_tol = 1e-6);

// Vortex at z0 in the half-annulus (annulus cut by the real axis), with the
// per-generation four-factor ratio that keeps the log series convergent:
// F(z) = (i Gamma/2 pi) sum_m ln[(z - z0 Q^m)(z - (r2^2/z0) Q^m)] /
//                               [(z - c0 Q^m)(z - (r2^2/c0) Q^m)], c0 = conj(z0).
ComplexPotential annulus_vortex_potential(complex z0, double Gamma,
                                          const AnnulusSpec& spec);

// Complex velocity dF/dz of the pure-annulus image system of a vortex at z0
// (positive images z0 Q^m, negative images (r1^2/conj(z0)) Q^m, |m| <= M).
// With drop_self the m = 0 vortex pole is omitted, which regularizes the
// evaluation at z = z0 and yields the vortex's own equation of motion.
complex annulus_image_velocity(complex z, complex z0, double Gamma,
                               const AnnulusSpec& spec, bool drop_self);

// Rotation frequency of a vortex ring orbit with action J = |z0|^2:
// omega(J) = Gamma/(2 pi (Q-1) J) [qlog(1 - J/r1^2) - qlog(1 - r2^2/J)]
// with base Q; qlog is the series -sum x^n/[n]. DomainError outside
// (r1^2 + margin, r2^2 - margin).
double annulus_omega(double J, double Gamma, const AnnulusSpec& spec,
                     const SeriesControl& ctl = {});

// Energy of the orbit with action J:
// H(J) = (Gamma^2/4 pi) ln|e_Q(J/((1-Q) r1^2)) e_Q(r2^2/((1-Q) J))|.
// The derivative identity (2/Gamma) dH/dJ = omega(J) holds exactly.
// SingularH if a q-exponential factor vanishes within tolerance.
double annulus_hamiltonian(double J, double Gamma, const AnnulusSpec& spec,
                           const SeriesControl& ctl = {});

// H(J) and its analytic derivative (Gamma/2) omega(J) bundled for the
// generic action-spectrum machinery.
HamiltonianProfile annulus_profile(double Gamma, const AnnulusSpec& spec,
                                   const SeriesControl& ctl = {});

// Fixed-step RK4 on zdot = -i omega(|z|^2) z from state.z0; returns steps+1
// sampled points including t = 0. Requires dt*|omega(J0)| < 0.1 and the
// orbit to stay inside the annulus margin.
std::vector<TrajectoryPoint> vortex_simulate(const VortexState& state,
                                             const AnnulusSpec& spec,
                                             double dt, int steps,
                                             const SeriesControl& ctl = {});

// Amplitude with the energy as its squared modulus:
// z_f = sqrt(H(|z0|^2)/|z0|^2) z0. Throws NegativeH when H < 0 (which the
// literal closed form yields throughout the physical window; see tests).
complex annulus_f_transform(complex z0, double Gamma, const AnnulusSpec& spec,
                            const SeriesControl& ctl = {});

// Semiclassical levels E_n = H(scale*(n + 1/2)) for n in [n_min, n_max].
// Every queried action must lie inside the annulus window (DomainError).
SpectrumTable annulus_bohr_sommerfeld(int n_min, int n_max, double Gamma,
                                      const AnnulusSpec& spec,
                                      double action_scale = 1.0,
                                      const SeriesControl& ctl = {});

// Ladder levels E_n = (H(scale*n) + H(scale*(n+1)))/2 for n in [n_min, n_max].
SpectrumTable annulus_f_spectrum(int n_min, int n_max, double Gamma,
                                 const AnnulusSpec& spec,
                                 double action_scale = 1.0,
                                 const SeriesControl& ctl = {});

// Standard deviation of Im F over `samples` points of |z - center| = r.
double circle_imf_stddev(const ComplexPotential& F, double r,
                         int samples = 256, complex center = {0.0, 0.0});

// Standard deviation of Im F over `samples` log-spaced radii in
// [rmin, rmax] along the ray arg z = angle.
double ray_imf_stddev(const ComplexPotential& F, double angle,
                      double rmin = 0.1, double rmax = 10.0,
                      int samples = 256);

// CSV: re_z,im_z,re_F,im_F,re_V,im_V per sampled point, 17 significant digits.
std::string field_csv(const ComplexPotential& F,
                      const std::vector<complex>& points);

// CSV: t,re_z,im_z,J,H per trajectory point, 17 significant digits.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory);

}  // namespace qosc
