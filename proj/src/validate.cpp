#include "qcal/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "qcal/caloric.hpp"
#include "qcal/discord.hpp"
#include "qcal/error.hpp"
#include "qcal/output.hpp"
#include "qcal/scenario.hpp"
#include "qcal/sweep.hpp"

namespace qcal {

namespace {

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

// Accumulates the worst violation seen by one check.
struct Tracker {
  double worst = 0.0;
  long failures = 0;
  long samples = 0;

  void record(double error, double tolerance) {
    ++samples;
    worst = std::max(worst, error);
    if (!(error <= tolerance)) ++failures;
  }
  CheckResult result(std::string name) const {
    return {std::move(name), failures == 0 && samples > 0,
            fmt("worst %.3e over %.0f samples", worst, static_cast<double>(samples)) +
                (failures ? fmt(", %.0f violations", static_cast<double>(failures)) : "")};
  }
};

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = u(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(u(rng), u(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// Characteristic polynomial coefficients by Faddeev-LeVerrier:
// det(x I - A) = x^n + c[1] x^{n-1} + ... + c[n].
std::vector<double> characteristic_polynomial(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  ComplexMatrix m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + ComplexMatrix::identity(n) * Complex(c[k - 1]);
    c[k] = -(a * m).trace().real() / static_cast<double>(k);
  }
  return c;
}

std::vector<double> real_roots(const std::vector<double>& c, double bound) {
  auto p = [&](double x) {
    double acc = 0.0;
    for (double ck : c) acc = acc * x + ck;
    return acc;
  };
  std::vector<double> roots;
  const int samples = 20000;
  double x0 = -bound, p0 = p(x0);
  for (int i = 1; i <= samples; ++i) {
    const double x1 = -bound + 2.0 * bound * i / samples, p1 = p(x1);
    if (p0 == 0.0) roots.push_back(x0);
    if (p0 * p1 < 0.0) {
      double lo = x0, hi = x1, plo = p0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi), pm = p(mid);
        if ((pm < 0.0) == (plo < 0.0)) {
          lo = mid;
          plo = pm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    p0 = p1;
  }
  return roots;
}

double entropy(const ParamHamiltonian& m, double lambda, double t) {
  return thermo_point(thermal_state(m, lambda, t)).entropy;
}

struct RandomCase {
  ParamHamiltonian model;
  double lambda_i, lambda_f, temperature;
};

RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int kind = static_cast<int>(u(rng) * 3.0);
  const double t = 0.3 + 3.7 * u(rng);
  if (kind == 0) {
    const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
    const double ji = sign * (0.2 + 1.8 * u(rng)), jf = sign * (0.2 + 1.8 * u(rng));
    return {build_dimer(ji, 0.3 * u(rng), "J"), ji, jf, t};
  }
  if (kind == 1) {
    // Redraw paths through the singlet / |up,up> crossing at b = 4J: an
    // isentrope with S < ln 2 cannot pass it.
    for (;;) {
      const double J = -1.0 + 2.0 * u(rng);
      const double bi = 0.1 + 2.9 * u(rng), bf = 0.1 + 2.9 * u(rng);
      if (J > 0.0 && 4.0 * J > std::min(bi, bf) - 0.05 && 4.0 * J < std::max(bi, bf) + 0.05) continue;
      return {build_dimer(J, 0.0, "b"), bi, bf, t};
    }
  }
  return {build_single_spin_zeeman(1.0), 0.1 + 2.9 * u(rng), 0.1 + 2.9 * u(rng), t};
}

void run_check(std::vector<CheckResult>& out, const std::string& name,
               const std::function<CheckResult()>& check) {
  try {
    out.push_back(check());
  } catch (const std::exception& e) {
    out.push_back({name, false, std::string("threw: ") + e.what()});
  }
}

}  // namespace

std::vector<CheckResult> run_validation(bool quick) {
  std::vector<CheckResult> out;
  const int n_random = quick ? 10 : 50;
  const int grid_n = quick ? 6 : 20;
  const int n_points = quick ? 25 : 100;

  // ---- linalg ---------------------------------------------------------------
  run_check(out, "linalg.trace_identities", [&] {
    std::mt19937_64 rng(11);
    Tracker t;
    std::vector<std::size_t> dims = {2, 3, 4, 8, 16};
    if (!quick) dims.push_back(64);
    for (std::size_t n : dims)
      for (int rep = 0; rep < (quick ? 3 : 10); ++rep) {
        const auto a = random_hermitian(n, rng);
        const auto e = hermitian_eigen(HermitianOperator(a));
        const double norm = a.frobenius_norm();
        double s1 = 0.0, s2 = 0.0;
        for (double v : e.values) {
          s1 += v;
          s2 += v * v;
        }
        t.record(std::abs(s1 - a.trace().real()) / norm, 1e-10);
        t.record(std::abs(s2 - (a * a).trace().real()) / (norm * norm), 1e-10);
      }
    return t.result("linalg.trace_identities");
  });

  run_check(out, "linalg.eigen_residual_orthonormality", [&] {
    std::mt19937_64 rng(12);
    Tracker t;
    for (std::size_t n : {2u, 4u, 8u, 16u, 32u})
      for (int rep = 0; rep < (quick ? 2 : 6); ++rep) {
        const auto a = random_hermitian(n, rng);
        const auto e = hermitian_eigen(HermitianOperator(a));
        const double norm = a.frobenius_norm();
        for (std::size_t m = 0; m < n; ++m) {
          std::vector<Complex> v(n);
          for (std::size_t i = 0; i < n; ++i) v[i] = e.vectors(i, m);
          const auto av = a.apply(v);
          double r = 0.0;
          for (std::size_t i = 0; i < n; ++i) r += std::norm(av[i] - e.values[m] * v[i]);
          t.record(std::sqrt(r) / norm, 1e-10);
        }
        const auto gram = e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(n);
        t.record(gram.max_abs(), 1e-10);
        for (std::size_t m = 1; m < n; ++m) t.record(e.values[m - 1] > e.values[m] ? 1.0 : 0.0, 0.0);
      }
    return t.result("linalg.eigen_residual_orthonormality");
  });

  run_check(out, "linalg.characteristic_polynomial_agreement", [&] {
    std::mt19937_64 rng(13);
    Tracker t;
    for (std::size_t n : {2u, 4u})
      for (int rep = 0; rep < (quick ? 10 : 40); ++rep) {
        const auto a = random_hermitian(n, rng);
        const auto e = hermitian_eigen(HermitianOperator(a));
        const auto roots = real_roots(characteristic_polynomial(a), a.frobenius_norm() + 1.0);
        if (roots.size() != n) continue;  // near-degenerate draw; sign scan cannot split it
        for (std::size_t m = 0; m < n; ++m) t.record(std::abs(roots[m] - e.values[m]), 1e-9);
      }
    return t.result("linalg.characteristic_polynomial_agreement");
  });

  run_check(out, "linalg.kron_associativity", [&] {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> u(-3, 3);
    auto random_int = [&](std::size_t n) {
      ComplexMatrix m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
      return m;
    };
    Tracker t;
    for (int rep = 0; rep < 10; ++rep) {
      const auto a = random_int(2), b = random_int(3), c = random_int(2);
      t.record(kron(kron(a, b), c) == kron(a, kron(b, c)) ? 0.0 : 1.0, 0.0);
    }
    return t.result("linalg.kron_associativity");
  });

  // ---- models ---------------------------------------------------------------
  run_check(out, "models.finite_difference_consistency", [&] {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SpectrumTable table;
    for (int k = 0; k < 6; ++k) {
      table.lambda_grid.push_back(k);
      table.energies.push_back({0.0, 0.3 * k * k, 2.0 - k, 1.0 + 0.5 * k});
    }
    struct Entry {
      ParamHamiltonian model;
      double lo, hi;
    };
    std::vector<Entry> models = {{build_dimer(1.0, 0.5, "J"), -2.0, 2.0},
                                 {build_dimer(0.7, 0.5, "b"), -3.0, 3.0},
                                 {build_single_spin_zeeman(1.0), -3.0, 3.0},
                                 {build_tabulated(table), 0.05, 4.95}};
    Tracker t;
    for (const auto& [model, lo, hi] : models)
      for (int k = 0; k < 10; ++k) {
        double lambda = lo + (hi - lo) * u(rng);
        if (model.parameter_name() == "tabulated") {
          // keep lambda +- h inside one grid interval
          const double frac = lambda - std::floor(lambda);
          if (frac < 1e-3 || frac > 1.0 - 1e-3) lambda += 0.01;
        }
        const double h = 1e-5;
        const auto fd = (model.evaluate(lambda + h).matrix() - model.evaluate(lambda - h).matrix()) *
                        Complex(1.0 / (2.0 * h));
        const ComplexMatrix d = model.derivative(lambda).matrix();
        t.record((fd - d).max_abs() / std::max(1.0, d.max_abs()), 1e-6);
      }
    return t.result("models.finite_difference_consistency");
  });

  run_check(out, "models.dimer_single_spin_equivalence", [&] {
    const auto dimer = build_dimer(0.0, 1.0, "b");
    const auto spin = build_single_spin_zeeman(1.0);
    Tracker t;
    for (int i = 0; i < grid_n; ++i)
      for (int j = 0; j < grid_n; ++j) {
        const double b = -3.0 + 6.0 * i / (grid_n - 1);
        const double temp = 0.2 + 4.8 * j / (grid_n - 1);
        t.record(std::abs(0.5 * entropy(dimer, b, temp) - entropy(spin, b, temp)), 1e-10);
      }
    return t.result("models.dimer_single_spin_equivalence");
  });

  // ---- thermal ---------------------------------------------------------------
  auto thermal_models = [] {
    return std::vector<ParamHamiltonian>{build_dimer(1.0, 0.4, "J"), build_dimer(-0.8, 0.6, "b"),
                                         build_single_spin_zeeman(1.0)};
  };

  run_check(out, "thermal.population_invariants", [&] {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tracker t;
    for (const auto& m : thermal_models())
      for (int k = 0; k < n_points / 4; ++k) {
        const double temp = std::pow(10.0, -3.0 + 6.0 * u(rng));
        const auto s = thermal_state(m, -2.0 + 4.0 * u(rng), temp);
        double sum = 0.0, violation = 0.0;
        for (std::size_t n = 0; n < s.populations.size(); ++n) {
          sum += s.populations[n];
          if (s.populations[n] < 0.0) violation = 1.0;
          if (n > 0 && s.populations[n] > s.populations[n - 1]) violation = 1.0;
        }
        t.record(std::abs(sum - 1.0), 1e-12);
        t.record(violation, 0.0);
      }
    return t.result("thermal.population_invariants");
  });

  run_check(out, "thermal.specific_heat_consistency", [&] {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tracker t;
    const auto models = thermal_models();
    for (int k = 0; k < n_points; ++k) {
      const auto& m = models[static_cast<std::size_t>(k) % models.size()];
      const double lambda = 0.2 + 1.8 * u(rng);
      const double temp = 0.5 + 4.5 * u(rng);
      const double h = 1e-4 * temp;
      const auto mid = thermo_point(thermal_state(m, lambda, temp));
      const auto up = thermo_point(thermal_state(m, lambda, temp + h));
      const auto dn = thermo_point(thermal_state(m, lambda, temp - h));
      const double c_s = temp * (up.entropy - dn.entropy) / (2.0 * h);
      const double c_u = (up.internal_energy - dn.internal_energy) / (2.0 * h);
      t.record(std::abs(c_s - mid.specific_heat) / mid.specific_heat, 1e-5);
      t.record(std::abs(c_u - mid.specific_heat) / mid.specific_heat, 1e-5);
    }
    return t.result("thermal.specific_heat_consistency");
  });

  run_check(out, "thermal.entropy_monotone_in_T", [&] {
    Tracker t;
    for (const auto& m : thermal_models())
      for (double lambda : {-1.5, 0.3, 2.0}) {
        double prev = -1.0;
        for (int k = 0; k < 60; ++k) {
          const double temp = 0.01 * std::pow(1.15, k);
          const double s = entropy(m, lambda, temp);
          t.record(std::max(0.0, prev - s), 1e-12);
          prev = s;
        }
      }
    return t.result("thermal.entropy_monotone_in_T");
  });

  run_check(out, "thermal.hellmann_feynman", [&] {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tracker t;
    const auto models = thermal_models();
    int accepted = 0;
    while (accepted < n_points) {
      const auto& m = models[static_cast<std::size_t>(accepted) % models.size()];
      const double lambda = -2.0 + 4.0 * u(rng);
      const double temp = 0.3 + 3.0 * u(rng);
      const double h = 1e-5;
      const auto e0 = hermitian_eigen(m.evaluate(lambda)).values;
      bool near_crossing = false;
      for (std::size_t n = 1; n < e0.size(); ++n) {
        const double gap = e0[n] - e0[n - 1];
        if (gap > 1e-12 && gap < 1e-3) near_crossing = true;
      }
      if (near_crossing) continue;
      const auto ep = hermitian_eigen(m.evaluate(lambda + h)).values;
      const auto em = hermitian_eigen(m.evaluate(lambda - h)).values;
      const auto s = thermal_state(m, lambda, temp);
      double fd = 0.0;
      for (std::size_t n = 0; n < e0.size(); ++n) fd += s.populations[n] * (ep[n] - em[n]) / (2.0 * h);
      const double op = thermal_average(s, m.derivative(lambda));
      t.record(std::abs(fd - op) / std::max(1.0, std::abs(op)), 1e-6);
      ++accepted;
    }
    return t.result("thermal.hellmann_feynman");
  });

  run_check(out, "thermal.free_energy_identity", [&] {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tracker t;
    for (const auto& m : thermal_models())
      for (int k = 0; k < n_points / 3; ++k) {
        const auto p = thermo_point(thermal_state(m, -2.0 + 4.0 * u(rng), std::pow(10.0, -2.0 + 4.0 * u(rng))));
        t.record(std::abs(p.free_energy - (p.internal_energy - p.temperature * p.entropy)) /
                     std::max(1.0, std::abs(p.internal_energy)),
                 1e-10);
        t.record(p.entropy < 0.0 || p.specific_heat < 0.0 || p.energy_variance < 0.0 ? 1.0 : 0.0, 0.0);
      }
    return t.result("thermal.free_energy_identity");
  });

  run_check(out, "thermal.first_law_closure", [&] {
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tracker t;
    for (const auto& m : thermal_models())
      for (int k = 0; k < (quick ? 2 : 5); ++k) {
        std::vector<PathPoint> path;
        for (int p = 0; p < 4; ++p) path.push_back({-1.0 + 2.5 * u(rng), 0.3 + 3.0 * u(rng)});
        const auto d = process_decompose(m, path);
        t.record(std::abs(d.energy_change - (d.work + d.heat)) / std::max(1.0, std::abs(d.energy_change)), 1e-8);
      }
    return t.result("thermal.first_law_closure");
  });

  // ---- caloric ---------------------------------------------------------------
  run_check(out, "caloric.entropy_oracle_equivalence", [&] {
    std::mt19937_64 rng(41);
    Tracker t;
    for (int k = 0; k < n_random; ++k) {
      const auto c = random_case(rng);
      const auto q = isothermal_entropy_change(c.model, c.lambda_i, c.lambda_f, c.temperature);
      const auto d = isothermal_entropy_change_direct(c.model, c.lambda_i, c.lambda_f, c.temperature);
      t.record(std::abs(q.value - d.value), 1e-6);
    }
    return t.result("caloric.entropy_oracle_equivalence");
  });

  run_check(out, "caloric.temperature_oracle_equivalence", [&] {
    std::mt19937_64 rng(42);
    Tracker t;
    for (int k = 0; k < n_random; ++k) {
      const auto c = random_case(rng);
      const auto ode = adiabatic_temperature_change(c.model, c.lambda_i, c.lambda_f, c.temperature);
      const auto match = adiabatic_temperature_change_matching(c.model, c.lambda_i, c.lambda_f, c.temperature);
      t.record(std::abs(ode.value - match.value), 1e-6);
    }
    return t.result("caloric.temperature_oracle_equivalence");
  });

  run_check(out, "caloric.adiabat_entropy_conservation", [&] {
    std::mt19937_64 rng(43);
    Tracker t;
    for (int k = 0; k < n_random; ++k) {
      const auto c = random_case(rng);
      const auto ode = adiabatic_temperature_change(c.model, c.lambda_i, c.lambda_f, c.temperature);
      const double s0 = entropy(c.model, c.lambda_i, c.temperature);
      const std::size_t stride = std::max<std::size_t>(1, ode.trajectory.size() / 64);
      for (std::size_t i = 0; i < ode.trajectory.size(); i += stride) {
        const auto& p = ode.trajectory[i];
        t.record(std::abs(entropy(c.model, p.lambda, p.temperature) - s0), 1e-7);
      }
    }
    return t.result("caloric.adiabat_entropy_conservation");
  });

  run_check(out, "caloric.zeeman_reversibility", [&] {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
    const auto spin = build_single_spin_zeeman(1.0);
    Tracker t;
    for (int k = 0; k < (quick ? 5 : 20); ++k) {
      const double bi = std::exp(u(rng)), bf = std::exp(u(rng));
      const auto r = adiabatic_temperature_change(spin, bi, bf, 1.0);
      t.record(std::abs((1.0 + r.value) / 1.0 - bf / bi) / (bf / bi), 1e-9);
    }
    return t.result("caloric.zeeman_reversibility");
  });

  run_check(out, "caloric.maxwell_grid", [&] {
    Tracker t;
    const std::vector<std::pair<ParamHamiltonian, std::pair<double, double>>> models = {
        {build_dimer(1.0, 0.0, "J"), {-2.0, 2.0}},
        {build_dimer(1.0, 0.0, "b"), {0.0, 4.0}},
        {build_single_spin_zeeman(1.0), {0.0, 4.0}}};
    for (const auto& [m, range] : models)
      for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
          const double lambda = range.first + (range.second - range.first) * i / (grid_n - 1);
          const double temp = 0.5 + 4.5 * j / (grid_n - 1);
          t.record(std::abs(maxwell_residual(m, lambda, temp)), 1e-6);
        }
    return t.result("caloric.maxwell_grid");
  });

  run_check(out, "caloric.sign_structure", [&] {
    Tracker t;
    const auto m = build_dimer(1.0, 0.0, "J");
    for (int j = 0; j < grid_n; ++j) {
      const double temp = 0.2 + 4.8 * j / (grid_n - 1);
      const auto standard = isothermal_entropy_change(m, 0.5, 1.5, temp);
      const auto inverse = isothermal_entropy_change(m, -1.5, -0.5, temp);
      t.record(standard.value < 0.0 ? 0.0 : 1.0, 0.0);
      t.record(inverse.value > 0.0 ? 0.0 : 1.0, 0.0);
    }
    return t.result("caloric.sign_structure");
  });

  // ---- discord ---------------------------------------------------------------
  run_check(out, "discord.monotone_in_T", [&] {
    Tracker t;
    for (double J : {-2.0, -0.5, 0.5, 1.0, 3.0}) {
      const double scale = std::abs(4.0 * J);
      double prev = 1.0;
      const int n = 80;
      for (int k = 0; k < n; ++k) {
        const double temp = 0.05 * scale * std::pow(1000.0, static_cast<double>(k) / (n - 1));
        const double d = discord_from_correlation(pair_correlation(J, temp));
        t.record(std::max(0.0, d - prev), 1e-12);
        prev = d;
      }
    }
    return t.result("discord.monotone_in_T");
  });

  run_check(out, "discord.route_equivalence", [&] {
    Tracker t;
    for (int i = 0; i < grid_n; ++i)
      for (int j = 0; j < grid_n; ++j) {
        const double J = -2.0 + 4.0 * i / (grid_n - 1);
        const double temp = 0.1 + 4.9 * j / (grid_n - 1);
        const double chi = zero_field_susceptibility(build_dimer(J, 0.0, "J"), temp);
        t.record(std::abs(discord_from_correlation(pair_correlation(J, temp)) -
                          discord_from_susceptibility(chi, temp)),
                 1e-10);
      }
    return t.result("discord.route_equivalence");
  });

  run_check(out, "discord.entropy_identity", [&] {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tracker t;
    const auto m = build_dimer(1.0, 0.0, "J");
    for (int k = 0; k < n_random; ++k) {
      const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
      const double ji = sign * (0.1 + 2.9 * u(rng)), jf = sign * (0.1 + 2.9 * u(rng));
      const double temp = 0.2 + 4.8 * u(rng);
      const double via_discord = entropy_change_from_discord(ji, jf, temp).value;
      const double via_force = std::abs(isothermal_entropy_change(m, ji, jf, temp).value);
      t.record(std::abs(via_discord - via_force), 1e-6);
    }
    return t.result("discord.entropy_identity");
  });

  run_check(out, "discord.range_constraints", [&] {
    Tracker t;
    for (int i = 0; i < grid_n; ++i)
      for (int j = 0; j < grid_n; ++j) {
        const double J = -2.0 + 4.0 * i / (grid_n - 1);
        const double temp = 0.05 + 5.0 * j / (grid_n - 1);
        const auto r = pair_correlation(J, temp);
        double bad = 0.0;
        const double spread = std::max(std::abs(r.c_x - r.c_y), std::abs(r.c_y - r.c_z));
        if (spread > 1e-10) bad = 1.0;
        if (J > 0.0 && (r.c_z < -1.0 - 1e-12 || r.c_z > 1e-12)) bad = 1.0;
        if (J < 0.0 && (r.c_z < -1e-12 || r.c_z > 1.0 / 3.0 + 1e-12)) bad = 1.0;
        if (r.discord < 0.0 || r.discord > 0.5 || std::abs(r.discord - 0.5 * std::abs(r.c_z)) > 1e-15) bad = 1.0;
        t.record(bad, 0.0);
      }
    return t.result("discord.range_constraints");
  });

  // ---- scenario-io -----------------------------------------------------------
  const char* kScenario = R"({
    "model": {"type": "dimer", "J": 1.0, "b": 0.0},
    "parameter": "J",
    "sweep": {"from": 0.5, "to": 1.5, "points": 3},
    "temperatures": {"from": 0.5, "to": 3.0, "points": 6},
    "computations": ["entropy", "adiabatic", "discord", "force", "decompose"],
    "lattice": {"a0": 0.0, "a1": 0.0, "a3": 0.0},
    "output": {"csv": "out.csv", "svg": "out.svg"}
  })";

  run_check(out, "scenario.round_trip", [&] {
    Tracker t;
    const Scenario s = parse_scenario(kScenario);
    t.record(parse_scenario(serialize_scenario(s)) == s ? 0.0 : 1.0, 0.0);
    const Scenario tesla = parse_scenario(R"({"model": {"type": "single_spin", "b": 1.5},
        "sweep": {"from": 0.5, "to": 2.0, "points": 2}, "temperatures": {"from": 1, "points": 1},
        "units": {"g": 2.1, "field_in_tesla": true}, "output": {"csv": "x.csv"}})");
    t.record(parse_scenario(serialize_scenario(tesla)) == tesla ? 0.0 : 1.0, 0.0);
    return t.result("scenario.round_trip");
  });

  run_check(out, "scenario.determinism", [&] {
    Tracker t;
    const Scenario s = parse_scenario(kScenario);
    auto render = [&](int threads) {
      std::string all;
      for (const auto& c : run_sweep(s, default_sweep_grid(s), threads).curves) all += format_csv(c);
      return all;
    };
    const std::string one = render(1);
    t.record(one == render(4) ? 0.0 : 1.0, 0.0);
    t.record(one == render(1) ? 0.0 : 1.0, 0.0);
    return t.result("scenario.determinism");
  });

  return out;
}

}  // namespace qcal
