// qosc: command-line surface over the oscillator/flow library. Every
// subcommand is deterministic for fixed flags and seed, supports
// --format json|csv and --output - (stdout), echoes its effective
// parameters into JSON reports, and maps errors to exit codes:
//   0 success, 2 usage, 3 domain, 4 convergence failure.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qosc/flows.hpp"
#include "qosc/nls.hpp"
#include "qosc/oscillators.hpp"
#include "qosc/qcore.hpp"
#include "qosc/qschrodinger.hpp"
#include "qosc/serialize.hpp"

namespace {

using json = nlohmann::ordered_json;
using qosc::complex;

constexpr double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qosc::DomainError("cannot open output file: " + path);
  out.write(text.data(), std::streamsize(text.size()));
}

json params_json(const std::map<std::string, double>& params) {
  json j = json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string model;
  int n_max = 0;
  int n_min = 0;
  double lambda = 0.0;
  double m = 1.0, c = 1.0, omega0 = 1.0;
  double hbar_omega = 1.0;
  double r1 = 1.0, r2 = 2.0, gamma = 1.0, action_scale = 1.0;
  int truncation = 16;
  std::string format = "json", output = "-";
};

int run_spectrum(const SpectrumArgs& a) {
  const qosc::SeriesControl ctl = qosc::series_control_from_env();
  qosc::SpectrumTable table;
  std::string formula;
  int n_start = 0;
  if (a.model == "sym_q") {
    table = qosc::sym_q_spectrum(a.lambda, a.n_max);
    formula = "E_n = sinh((n+1/2)*lambda)/(2*sinh(lambda/2))";
  } else if (a.model == "semirel") {
    table = qosc::semi_relativistic_spectrum(a.n_max, a.m, a.c, a.omega0);
    formula =
        "E_n = (h(n)+h(n+1))/2, h(J) = m*c^2*sqrt(1 + 2*omega0*J/(m*c^2))";
  } else if (a.model == "golden") {
    table = qosc::golden_spectrum(a.n_max, a.hbar_omega);
    formula = "E_n = (hbar_omega/2)*F_(n+2)";
  } else if (a.model == "annulus_bs" || a.model == "annulus_f") {
    const qosc::AnnulusSpec spec =
        qosc::make_annulus(a.r1, a.r2, a.truncation);
    n_start = a.n_min;
    if (a.model == "annulus_bs") {
      table = qosc::annulus_bohr_sommerfeld(a.n_min, a.n_max, a.gamma, spec,
                                            a.action_scale, ctl);
      formula = "E_n = H(scale*(n+1/2))";
    } else {
      table = qosc::annulus_f_spectrum(a.n_min, a.n_max, a.gamma, spec,
                                       a.action_scale, ctl);
      formula = "E_n = (H(scale*n)+H(scale*(n+1)))/2";
    }
  } else {
    throw qosc::DomainError("unknown spectrum model: " + a.model);
  }

  if (a.format == "csv") {
    std::string csv = "n,E\n";
    for (size_t k = 0; k < table.levels.size(); ++k) {
      csv += std::to_string(n_start + int(k)) + "," + fmt17(table.levels[k]) +
             "\n";
    }
    write_output(a.output, csv);
  } else {
    json j;
    j["subcommand"] = "spectrum";
    j["model"] = table.model;
    j["formula"] = formula;
    j["params"] = params_json(table.params);
    j["n_min"] = n_start;
    j["n_max"] = a.n_max;
    j["levels"] = table.levels;
    write_output(a.output, j.dump(2) + "\n");
  }
  return 0;
}

// ------------------------------------------------------------------ qpoly

struct QpolyArgs {
  int n = 2;
  double lambda = 0.0, hbar = 1.0, m = 1.0;
  std::vector<double> times;
  bool check_residual = false;
  unsigned seed = 12345;
  std::string format = "json", output = "-";
};

int run_qpoly(const QpolyArgs& a) {
  if (a.n < 0) throw qosc::DomainError("qpoly: --n must be >= 0");
  const qosc::DispersionOperator disp{a.lambda, a.hbar, a.m};
  const qosc::BivarPolynomial poly = qosc::qkf_polynomial(a.n, disp);

  std::vector<qosc::RootSet> roots;
  if (!a.times.empty())
    roots = qosc::zeros_over_time(a.n, disp, a.times, a.seed);
  for (auto& rs : roots) {  // deterministic output ordering
    std::vector<size_t> idx(rs.roots.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
      const complex& u = rs.roots[i];
      const complex& v = rs.roots[j];
      if (u.real() != v.real()) return u.real() < v.real();
      return u.imag() < v.imag();
    });
    std::vector<complex> r;
    std::vector<bool> c;
    for (size_t i : idx) {
      r.push_back(rs.roots[i]);
      c.push_back(rs.converged[i]);
    }
    rs.roots = std::move(r);
    rs.converged = std::move(c);
  }

  double max_residual = 0.0;
  if (a.check_residual) {
    max_residual = qosc::max_coeff(qosc::schrodinger_residual(poly, disp));
    std::fprintf(stderr, "max residual coefficient: %.17g\n", max_residual);
  }

  if (a.format == "csv") {
    if (a.times.empty())
      throw qosc::DomainError("qpoly: csv output requires --times");
    std::string csv = "t,re_root,im_root,converged\n";
    for (const auto& rs : roots) {
      for (size_t i = 0; i < rs.roots.size(); ++i) {
        csv += fmt17(rs.t) + "," + fmt17(rs.roots[i].real()) + "," +
               fmt17(rs.roots[i].imag()) + "," +
               (rs.converged[i] ? "1" : "0") + "\n";
      }
    }
    write_output(a.output, csv);
  } else {
    json j;
    j["subcommand"] = "qpoly";
    j["params"] = {{"n", a.n},       {"lambda", a.lambda}, {"hbar", a.hbar},
                   {"m", a.m},       {"seed", a.seed}};
    j["polynomial"] = qosc::poly_to_json(poly);
    if (a.check_residual) j["max_residual"] = max_residual;
    if (!roots.empty()) {
      json jr = json::array();
      for (const auto& rs : roots) {
        json e;
        e["t"] = rs.t;
        e["roots"] = json::array();
        for (size_t i = 0; i < rs.roots.size(); ++i) {
          e["roots"].push_back({{"re", rs.roots[i].real()},
                                {"im", rs.roots[i].imag()},
                                {"converged", bool(rs.converged[i])}});
        }
        jr.push_back(e);
      }
      j["roots"] = jr;
    }
    write_output(a.output, j.dump(2) + "\n");
  }
  return 0;
}

// ------------------------------------------------------------------- flow

struct FlowArgs {
  std::string domain;
  std::string flow = "vortex";
  double z0_re = 0.0, z0_im = 0.0, gamma = 1.0, strength = 1.0;
  int n = 2;
  double radius = 1.0, r1 = 1.0, r2 = 2.0;
  int truncation = 16;
  double re_min = -2.0, re_max = 2.0, im_min = -2.0, im_max = 2.0;
  int nx = 32, ny = 32;
  std::string format = "csv", output = "-", report = "-";
};

struct BoundaryResidual {
  std::string id;
  double stddev = 0.0;
  int samples = 256;
  int truncation_M = 0;
};

int run_flow(const FlowArgs& a) {
  const complex z0{a.z0_re, a.z0_im};
  const bool vortex = a.flow == "vortex";
  if (!vortex && a.flow != "uniform")
    throw qosc::DomainError("flow: --flow must be vortex or uniform");

  const auto require = [](bool ok, const char* msg) {
    if (!ok) throw qosc::DomainError(msg);
  };
  const auto in_sector = [&](int n) {
    const double arg = std::arg(z0);
    return arg > 0.0 && arg < kPi / n;
  };

  qosc::ComplexPotential base =
      vortex ? qosc::base_vortex(z0, a.gamma) : qosc::base_uniform(a.strength);
  qosc::ComplexPotential F;
  std::vector<BoundaryResidual> residuals;
  const int S = 256;

  if (a.domain == "circle") {
    if (vortex)
      require(std::abs(z0) > a.radius,
              "flow: vortex must lie outside the circle");
    F = qosc::one_circle(base, a.radius);
    residuals.push_back(
        {"circle_r", qosc::circle_imf_stddev(F, a.radius, S), S, 0});
  } else if (a.domain == "wedge") {
    if (vortex) require(in_sector(a.n), "flow: vortex must lie in the sector");
    F = qosc::wedge(base, a.n);
    residuals.push_back(
        {"ray_0", qosc::ray_imf_stddev(F, 0.0, 0.1, 10.0, S), S, 0});
    residuals.push_back(
        {"ray_pi_over_n", qosc::ray_imf_stddev(F, kPi / a.n, 0.1, 10.0, S), S,
         0});
  } else if (a.domain == "circular_wedge") {
    if (vortex)
      require(in_sector(a.n) && std::abs(z0) > a.radius,
              "flow: vortex must lie in the sector outside the circle");
    F = qosc::circular_wedge(base, a.n, a.radius);
    const double lo = 1.2 * a.radius, hi = 12.0 * a.radius;
    residuals.push_back(
        {"ray_0", qosc::ray_imf_stddev(F, 0.0, lo, hi, S), S, 0});
    residuals.push_back(
        {"ray_pi_over_n", qosc::ray_imf_stddev(F, kPi / a.n, lo, hi, S), S,
         0});
    residuals.push_back(
        {"circle_r", qosc::circle_imf_stddev(F, a.radius, S), S, 0});
  } else if (a.domain == "annulus" || a.domain == "double_wedge") {
    require(vortex, "flow: annulus domains require --flow vortex");
    const qosc::AnnulusSpec spec =
        qosc::make_annulus(a.r1, a.r2, a.truncation);
    require(std::abs(z0) > a.r1 && std::abs(z0) < a.r2,
            "flow: vortex must lie inside the annulus");
    if (a.domain == "annulus") {
      F = qosc::two_circle(base, spec);
    } else {
      require(in_sector(a.n), "flow: vortex must lie in the sector");
      F = qosc::double_circular_wedge(base, a.n, spec);
      const double lo = 1.02 * a.r1, hi = 0.98 * a.r2;
      residuals.push_back(
          {"ray_0", qosc::ray_imf_stddev(F, 0.0, lo, hi, S), S, spec.M});
      residuals.push_back(
          {"ray_pi_over_n", qosc::ray_imf_stddev(F, kPi / a.n, lo, hi, S), S,
           spec.M});
    }
    residuals.push_back(
        {"circle_r1", qosc::circle_imf_stddev(F, a.r1, S), S, spec.M});
    residuals.push_back(
        {"circle_r2", qosc::circle_imf_stddev(F, a.r2, S), S, spec.M});
  } else {
    throw qosc::DomainError("unknown flow domain: " + a.domain);
  }

  // Sample the rectangular grid; points within 1e-3 of an image are kept in
  // place but masked so row counts stay grid-shaped.
  if (a.nx < 1 || a.ny < 1) throw qosc::DomainError("flow: nx, ny must be >= 1");
  struct Row {
    complex z, Fz, Vz;
    bool masked;
  };
  std::vector<Row> rows;
  rows.reserve(size_t(a.nx) * size_t(a.ny));
  for (int iy = 0; iy < a.ny; ++iy) {
    const double y =
        a.ny == 1 ? a.im_min
                  : a.im_min + (a.im_max - a.im_min) * iy / double(a.ny - 1);
    for (int ix = 0; ix < a.nx; ++ix) {
      const double x =
          a.nx == 1 ? a.re_min
                    : a.re_min + (a.re_max - a.re_min) * ix / double(a.nx - 1);
      const complex z{x, y};
      bool masked = false;
      for (const complex& s : F.singularities)
        masked = masked || std::abs(z - s) < 1e-3;
      Row row{z, {0.0, 0.0}, {0.0, 0.0}, masked};
      if (!masked) {
        row.Fz = F(z);
        row.Vz = F.velocity(z);
      }
      rows.push_back(row);
    }
  }

  json report;
  report["subcommand"] = "flow";
  report["domain"] = a.domain;
  report["params"] = {{"flow", a.flow},
                      {"z0_re", a.z0_re},
                      {"z0_im", a.z0_im},
                      {"gamma", a.gamma},
                      {"strength", a.strength},
                      {"n", a.n},
                      {"radius", a.radius},
                      {"r1", a.r1},
                      {"r2", a.r2},
                      {"truncation", a.truncation},
                      {"re_min", a.re_min},
                      {"re_max", a.re_max},
                      {"im_min", a.im_min},
                      {"im_max", a.im_max},
                      {"nx", a.nx},
                      {"ny", a.ny}};
  report["residuals"] = json::array();
  for (const auto& r : residuals) {
    report["residuals"].push_back({{"boundary_id", r.id},
                                   {"stddev_imF", r.stddev},
                                   {"samples", r.samples},
                                   {"truncation_M", r.truncation_M}});
  }
  report["warnings"] = F.warnings;

  if (a.format == "csv") {
    std::string csv = "re_z,im_z,re_F,im_F,re_V,im_V,masked\n";
    for (const Row& r : rows) {
      csv += fmt17(r.z.real()) + "," + fmt17(r.z.imag()) + "," +
             fmt17(r.Fz.real()) + "," + fmt17(r.Fz.imag()) + "," +
             fmt17(r.Vz.real()) + "," + fmt17(r.Vz.imag()) + "," +
             (r.masked ? "1" : "0") + "\n";
    }
    write_output(a.output, csv);
    write_output(a.report, report.dump(2) + "\n");
  } else {
    json field = json::array();
    for (const Row& r : rows) {
      field.push_back({r.z.real(), r.z.imag(), r.Fz.real(), r.Fz.imag(),
                       r.Vz.real(), r.Vz.imag(), int(r.masked)});
    }
    report["field_columns"] = {"re_z", "im_z", "re_F",
                               "im_F", "re_V", "im_V", "masked"};
    report["field"] = field;
    write_output(a.output, report.dump(2) + "\n");
  }
  return 0;
}

// ------------------------------------------------------------- vortex-sim

struct VortexSimArgs {
  double z0_re = 0.0, z0_im = 0.0, gamma = 1.0;
  double r1 = 1.0, r2 = 2.0;
  int truncation = 16;
  double dt = 0.01;
  int steps = 2000;
  std::string format = "csv", output = "-", report = "-";
};

int run_vortex_sim(const VortexSimArgs& a) {
  const qosc::SeriesControl ctl = qosc::series_control_from_env();
  const qosc::AnnulusSpec spec = qosc::make_annulus(a.r1, a.r2, a.truncation);
  const qosc::VortexState state{{a.z0_re, a.z0_im}, a.gamma};
  const auto traj = qosc::vortex_simulate(state, spec, a.dt, a.steps, ctl);

  const double J0 = traj.front().J;
  const double H0 = traj.front().H;
  const double w0 = qosc::annulus_omega(J0, a.gamma, spec, ctl);
  const double period_closed = 2.0 * kPi / std::abs(w0);

  double z_drift = 0.0, h_drift = 0.0;
  const double mod0 = std::abs(traj.front().z);
  for (const auto& p : traj) {
    z_drift = std::max(z_drift, std::abs(std::abs(p.z) - mod0) / mod0);
    h_drift = std::max(h_drift, std::abs(p.H - H0) / (1.0 + std::abs(H0)));
  }

  // First full revolution by cumulative angle unwinding, linearly
  // interpolated inside the crossing step.
  double measured = 0.0;
  double cum = 0.0;
  for (size_t k = 1; k < traj.size(); ++k) {
    const double step = std::arg(traj[k].z / traj[k - 1].z);
    if (std::abs(cum + step) >= 2.0 * kPi) {
      const double need = 2.0 * kPi - std::abs(cum);
      measured = traj[k - 1].t + a.dt * need / std::abs(step);
      break;
    }
    cum += step;
  }

  json report;
  report["subcommand"] = "vortex-sim";
  report["params"] = {{"z0_re", a.z0_re}, {"z0_im", a.z0_im},
                      {"gamma", a.gamma}, {"r1", a.r1},
                      {"r2", a.r2},       {"truncation", a.truncation},
                      {"dt", a.dt},       {"steps", a.steps}};
  report["J0"] = J0;
  report["H0"] = H0;
  report["omega_J0"] = w0;
  report["period_closed_form"] = period_closed;
  if (measured > 0.0) {
    report["period_measured"] = measured;
    report["period_mismatch_rel"] =
        std::abs(measured - period_closed) / period_closed;
  } else {
    report["period_measured"] = nullptr;
    report["period_mismatch_rel"] = nullptr;
  }
  report["max_abs_z_drift_rel"] = z_drift;
  report["max_energy_drift_rel"] = h_drift;

  if (a.format == "csv") {
    write_output(a.output, qosc::trajectory_csv(traj));
    write_output(a.report, report.dump(2) + "\n");
  } else {
    json rows = json::array();
    for (const auto& p : traj)
      rows.push_back({p.t, p.z.real(), p.z.imag(), p.J, p.H});
    report["trajectory_columns"] = {"t", "re_z", "im_z", "J", "H"};
    report["trajectory"] = rows;
    write_output(a.output, report.dump(2) + "\n");
  }
  return 0;
}

// -------------------------------------------------------------- nls-check

struct NlsCheckArgs {
  std::string test;
  int points = 2048;
  double length = 40.0;
  int N = 3;
  double kappa = 1.0, lambda = 0.3, hbar = 1.0, m = 1.0;
  double a = 1.5, b = 0.0, x0 = 0.0, phase = 0.0, t = 0.0, p = 0.7;
  int flow_n = 2;
  std::string format = "json", output = "-";
};

double sup_abs(const std::vector<complex>& v) {
  double m = 0.0;
  for (const complex& c : v) m = std::max(m, std::abs(c));
  return m;
}

double sup_diff(const std::vector<complex>& u, const std::vector<complex>& v) {
  double m = 0.0;
  for (size_t k = 0; k < u.size(); ++k) m = std::max(m, std::abs(u[k] - v[k]));
  return m;
}

int run_nls_check(const NlsCheckArgs& a) {
  if (a.points < 16) throw qosc::DomainError("nls-check: --points too small");
  const std::vector<double> x =
      qosc::uniform_grid(-0.5 * a.length, a.length, size_t(a.points));
  const double dx = a.length / a.points;
  const qosc::GridField f =
      qosc::soliton(x, a.a, a.b, a.x0, a.phase, a.kappa, a.t);

  json j;
  j["subcommand"] = "nls-check";
  j["test"] = a.test;
  j["params"] = {{"points", a.points}, {"length", a.length},
                 {"N", a.N},           {"kappa", a.kappa},
                 {"lambda", a.lambda}, {"hbar", a.hbar},
                 {"m", a.m},           {"a", a.a},
                 {"b", a.b},           {"x0", a.x0},
                 {"phase", a.phase},   {"t", a.t},
                 {"p", a.p},           {"flow_n", a.flow_n}};
  bool pass = false;

  if (a.test == "soliton") {
    const auto psi_xx = qosc::derivative(qosc::derivative(f.psi, dx), dx);
    const auto psi_t =
        qosc::soliton_time_derivative(x, a.a, a.b, a.x0, a.phase, a.kappa, a.t);
    double residual = 0.0;
    for (size_t k = 0; k < f.size(); ++k) {
      const complex r = complex{0.0, 1.0} * psi_t[k] + psi_xx[k] +
                        2.0 * a.kappa * a.kappa * std::norm(f.psi[k]) *
                            f.psi[k];
      residual = std::max(residual, std::abs(r));
    }
    j["max_residual"] = residual;
    j["threshold"] = 1e-7;
    pass = residual < 1e-7;
  } else if (a.test == "flows") {
    const qosc::Doublet rhs = qosc::hierarchy_rhs(a.N, f, a.kappa);
    const auto& psi = f.psi;
    const auto& psibar = f.psibar;
    const auto d1 = qosc::derivative(psi, dx);
    const auto d2 = qosc::derivative(d1, dx);
    const auto d3 = qosc::derivative(d2, dx);
    const auto d4 = qosc::derivative(d3, dx);
    const auto b2 = qosc::derivative(qosc::derivative(psibar, dx), dx);
    const double k2 = a.kappa * a.kappa;
    std::vector<complex> display(f.size());
    const complex I{0.0, 1.0};
    for (size_t k = 0; k < f.size(); ++k) {
      const complex n2 = psibar[k] * psi[k];  // |psi|^2 for physical fields
      switch (a.N) {
        case 1:
          display[k] = d1[k];
          break;
        case 2:
          display[k] = I * (d2[k] + 2.0 * k2 * n2 * psi[k]);
          break;
        case 3:
          display[k] = -(d3[k] + 6.0 * k2 * n2 * d1[k]);
          break;
        case 4:
          display[k] =
              -I * (d4[k] +
                    2.0 * k2 *
                        (2.0 * std::norm(d1[k]) * psi[k] +
                         4.0 * n2 * d2[k] + b2[k] * psi[k] * psi[k] +
                         3.0 * psibar[k] * d1[k] * d1[k]) +
                    6.0 * k2 * k2 * n2 * n2 * psi[k]);
          break;
        default:
          throw qosc::DomainError("nls-check: --N must be 1..4");
      }
    }
    const double mismatch = sup_diff(rhs.top, display);
    j["max_mismatch"] = mismatch;
    j["rel_mismatch"] = mismatch / sup_abs(display);
    j["threshold"] = 1e-7;
    pass = mismatch < 1e-7;
  } else if (a.test == "zero_curvature") {
    const double residual =
        qosc::zero_curvature_residual(f, a.p, a.kappa, a.flow_n);
    j["max_residual"] = residual;
    j["threshold"] = 1e-6;
    pass = residual < 1e-6;
  } else if (a.test == "qnls") {
    const qosc::Doublet plus =
        qosc::qnls_rhs_order2(f, a.kappa, a.lambda, a.hbar, a.m);
    const qosc::Doublet minus =
        qosc::qnls_rhs_order2(f, a.kappa, -a.lambda, a.hbar, a.m);
    const double parity =
        std::max(sup_diff(plus.top, minus.top),
                 sup_diff(plus.bottom, minus.bottom));
    const qosc::Doublet at0 =
        qosc::qnls_rhs_order2(f, a.kappa, 0.0, a.hbar, a.m);
    const qosc::Doublet flow2 = qosc::hierarchy_rhs(2, f, a.kappa);
    const double scale = a.hbar * a.hbar / (2.0 * a.m);
    std::vector<complex> scaled(flow2.top.size());
    for (size_t k = 0; k < scaled.size(); ++k) scaled[k] = scale * flow2.top[k];
    const double reduction = sup_diff(at0.top, scaled);
    j["parity_mismatch"] = parity;
    j["lambda_zero_reduction_mismatch"] = reduction;
    j["threshold"] = 1e-10;
    pass = parity == 0.0 && reduction < 1e-10;
  } else {
    throw qosc::DomainError("unknown nls-check test: " + a.test);
  }
  j["pass"] = pass;

  if (a.format == "csv") {
    std::string csv = "metric,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_number())
        csv += it.key() + "," + fmt17(it.value().get<double>()) + "\n";
    }
    csv += std::string("pass,") + (pass ? "1" : "0") + "\n";
    write_output(a.output, csv);
  } else {
    write_output(a.output, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-oscillator, bounded-flow, and NLS hierarchy toolkit"};
  app.require_subcommand(1);

  SpectrumArgs sp;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Emit an energy-level table for a nonlinear oscillator");
  spectrum->add_option("--model", sp.model, "Spectrum model")
      ->required()
      ->check(CLI::IsMember(
          {"sym_q", "semirel", "golden", "annulus_bs", "annulus_f"}));
  spectrum->add_option("--n-max", sp.n_max, "Highest level index")->required();
  spectrum->add_option("--n-min", sp.n_min,
                       "Lowest level index (annulus models)");
  spectrum->add_option("--lambda", sp.lambda, "Deformation parameter (sym_q)");
  spectrum->add_option("--m", sp.m, "Mass (semirel)");
  spectrum->add_option("--c", sp.c, "Speed limit (semirel)");
  spectrum->add_option("--omega0", sp.omega0, "Base frequency (semirel)");
  spectrum->add_option("--hbar-omega", sp.hbar_omega,
                       "Energy quantum (golden)");
  spectrum->add_option("--r1", sp.r1, "Inner radius (annulus models)");
  spectrum->add_option("--r2", sp.r2, "Outer radius (annulus models)");
  spectrum->add_option("--gamma", sp.gamma, "Circulation (annulus models)");
  spectrum->add_option("--action-scale", sp.action_scale,
                       "Action unit multiplying the level ladder");
  spectrum->add_option("--truncation", sp.truncation,
                       "Image generations per side (annulus models)");
  spectrum->add_option("--format", sp.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  spectrum->add_option("--output", sp.output, "Output path or -");

  QpolyArgs qp;
  CLI::App* qpoly = app.add_subcommand(
      "qpoly", "Polynomial solution of the deformed evolution equation");
  qpoly->add_option("--n", qp.n, "Polynomial degree")->required();
  qpoly->add_option("--lambda", qp.lambda, "Deformation parameter");
  qpoly->add_option("--hbar", qp.hbar, "Planck constant");
  qpoly->add_option("--m", qp.m, "Mass");
  qpoly->add_option("--times", qp.times, "Times at which to locate zeros");
  qpoly->add_flag("--check-residual", qp.check_residual,
                  "Print the max evolution-equation residual coefficient");
  qpoly->add_option("--seed", qp.seed, "Root-finder perturbation seed");
  qpoly->add_option("--format", qp.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  qpoly->add_option("--output", qp.output, "Output path or -");

  FlowArgs fl;
  CLI::App* flow = app.add_subcommand(
      "flow", "Sample a bounded-domain potential flow and verify boundaries");
  flow->add_option("--domain", fl.domain, "Flow domain")
      ->required()
      ->check(CLI::IsMember(
          {"circle", "wedge", "circular_wedge", "annulus", "double_wedge"}));
  flow->add_option("--flow", fl.flow, "Seed flow: vortex or uniform")
      ->check(CLI::IsMember({"vortex", "uniform"}));
  flow->add_option("--z0-re", fl.z0_re, "Vortex position, real part");
  flow->add_option("--z0-im", fl.z0_im, "Vortex position, imaginary part");
  flow->add_option("--gamma", fl.gamma, "Vortex circulation");
  flow->add_option("--strength", fl.strength, "Uniform stream speed");
  flow->add_option("--n", fl.n, "Sector count (wedge domains)");
  flow->add_option("--radius", fl.radius, "Circle radius (circle domains)");
  flow->add_option("--r1", fl.r1, "Inner radius (annulus domains)");
  flow->add_option("--r2", fl.r2, "Outer radius (annulus domains)");
  flow->add_option("--truncation", fl.truncation,
                   "Image generations per side (annulus domains)");
  flow->add_option("--re-min", fl.re_min, "Grid bounds");
  flow->add_option("--re-max", fl.re_max, "Grid bounds");
  flow->add_option("--im-min", fl.im_min, "Grid bounds");
  flow->add_option("--im-max", fl.im_max, "Grid bounds");
  flow->add_option("--nx", fl.nx, "Grid columns");
  flow->add_option("--ny", fl.ny, "Grid rows");
  flow->add_option("--format", fl.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  flow->add_option("--output", fl.output, "Field output path or -");
  flow->add_option("--report", fl.report,
                   "Boundary-residual report path or - (csv format only)");

  VortexSimArgs vs;
  CLI::App* vsim = app.add_subcommand(
      "vortex-sim", "Integrate a point vortex orbit in the annulus");
  vsim->add_option("--z0-re", vs.z0_re, "Initial position, real part")
      ->required();
  vsim->add_option("--z0-im", vs.z0_im, "Initial position, imaginary part")
      ->required();
  vsim->add_option("--gamma", vs.gamma, "Circulation");
  vsim->add_option("--r1", vs.r1, "Inner radius");
  vsim->add_option("--r2", vs.r2, "Outer radius");
  vsim->add_option("--truncation", vs.truncation, "Image generations per side");
  vsim->add_option("--dt", vs.dt, "Integrator step");
  vsim->add_option("--steps", vs.steps, "Step count");
  vsim->add_option("--format", vs.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  vsim->add_option("--output", vs.output, "Trajectory output path or -");
  vsim->add_option("--report", vs.report,
                   "Conservation report path or - (csv format only)");

  NlsCheckArgs nc;
  CLI::App* nls = app.add_subcommand(
      "nls-check", "Verify hierarchy, soliton, and Lax-pair identities");
  nls->add_option("--test", nc.test, "Which identity to verify")
      ->required()
      ->check(
          CLI::IsMember({"flows", "soliton", "zero_curvature", "qnls"}));
  nls->add_option("--points", nc.points, "Grid points");
  nls->add_option("--length", nc.length, "Grid span (centred at 0)");
  nls->add_option("--N", nc.N, "Hierarchy flow index (flows test)");
  nls->add_option("--kappa", nc.kappa, "Coupling");
  nls->add_option("--lambda", nc.lambda, "Deformation parameter (qnls test)");
  nls->add_option("--hbar", nc.hbar, "Planck constant (qnls test)");
  nls->add_option("--m", nc.m, "Mass (qnls test)");
  nls->add_option("--a", nc.a, "Soliton amplitude");
  nls->add_option("--b", nc.b, "Soliton velocity parameter");
  nls->add_option("--x0", nc.x0, "Soliton centre");
  nls->add_option("--phase", nc.phase, "Soliton phase");
  nls->add_option("--t", nc.t, "Evaluation time");
  nls->add_option("--p", nc.p, "Spectral parameter (zero_curvature test)");
  nls->add_option("--flow-n", nc.flow_n,
                  "Time flow wired into the pair (zero_curvature test)");
  nls->add_option("--format", nc.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  nls->add_option("--output", nc.output, "Output path or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(sp);
    if (qpoly->parsed()) return run_qpoly(qp);
    if (flow->parsed()) return run_flow(fl);
    if (vsim->parsed()) return run_vortex_sim(vs);
    if (nls->parsed()) return run_nls_check(nc);
  } catch (const qosc::NoConvergence& e) {
    std::fprintf(stderr, "convergence failure: %s\n", e.what());
    return 4;
  } catch (const qosc::Error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 3;
  }
  return 2;
}
