#pragma once

// Closed-form reference values written without the library: explicit level
// lists, long-double Boltzmann sums, and a determinant-based root finder.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using real = long double;

struct Level {
  real energy;
  real weight = 1;  // extra observable carried with the level
};

// Dimer H = J s1.s2 (Pauli) - b (S1z + S2z): singlet -3J, triplet J - b m.
inline std::vector<real> dimer_levels(real J, real b) { return {-3 * J, J - b, J, J + b}; }
// <sigma1z sigma2z> per level, same order.
inline std::vector<real> dimer_czz() { return {-1, 1, -1, 1}; }
// total Sz per level, same order.
inline std::vector<real> dimer_mz() { return {0, 1, 0, -1}; }

inline std::vector<real> spin_levels(real b) { return {-b / 2, b / 2}; }

inline std::vector<real> boltzmann(const std::vector<real>& e, real T) {
  const real emin = *std::min_element(e.begin(), e.end());
  std::vector<real> p;
  real z = 0;
  for (real x : e) {
    p.push_back(std::exp(-(x - emin) / T));
    z += p.back();
  }
  for (real& x : p) x /= z;
  return p;
}

inline real average(const std::vector<real>& e, real T, const std::vector<real>& a) {
  const auto p = boltzmann(e, T);
  real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * a[i];
  return s;
}

inline real entropy(const std::vector<real>& e, real T) {
  real s = 0;
  for (real p : boltzmann(e, T))
    if (p > 0) s -= p * std::log(p);
  return s;
}

inline real energy(const std::vector<real>& e, real T) { return average(e, T, e); }

inline real specific_heat(const std::vector<real>& e, real T) {
  std::vector<real> e2;
  for (real x : e) e2.push_back(x * x);
  const real u = energy(e, T);
  return (average(e, T, e2) - u * u) / (T * T);
}

inline real dimer_entropy(real J, real b, real T) { return entropy(dimer_levels(J, b), T); }
inline real spin_entropy(real b, real T) { return entropy(spin_levels(b), T); }
inline real dimer_czz_average(real J, real T) { return average(dimer_levels(J, 0), T, dimer_czz()); }

// T_f with S(T_f) = target by bisection; S increasing in T.
inline real solve_entropy(const std::function<real(real)>& s_of_t, real target, real lo, real hi) {
  for (int it = 0; it < 300; ++it) {
    const real mid = (lo + hi) / 2;
    (s_of_t(mid) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

// det(A - x I) for a Hermitian matrix given row-major, by Gaussian elimination
// with partial pivoting. Real for Hermitian A.
inline real shifted_det(const std::vector<std::complex<real>>& a, std::size_t n, real x) {
  std::vector<std::complex<real>> m = a;
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= x;
  std::complex<real> det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (std::abs(m[piv * n + c]) == 0) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const auto f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det.real();
}

// Sorted real roots of det(A - x I) on [-bound, bound] found by sign scan and
// bisection. Degenerate (even-multiplicity) roots are missed; callers check the count.
inline std::vector<real> eigenvalues_by_determinant(const std::vector<std::complex<real>>& a, std::size_t n,
                                                    real bound, int samples = 4000) {
  std::vector<real> roots;
  real x0 = -bound, f0 = shifted_det(a, n, x0);
  for (int i = 1; i <= samples; ++i) {
    const real x1 = -bound + 2 * bound * i / samples, f1 = shifted_det(a, n, x1);
    if ((f0 < 0) != (f1 < 0)) {
      real lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200; ++it) {
        const real mid = (lo + hi) / 2, fm = shifted_det(a, n, mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back((lo + hi) / 2);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace oracle
