#pragma once

#include <doctest.h>

#include <cmath>
#include <random>
#include <string_view>

#include "qcal/error.hpp"
#include "qcal/linalg.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs(static_cast<double>(a) - static_cast<double>(b)) <= (tol))

// Runs `expr` and checks it throws qcal::Error with the given code.
#define CHECK_QCAL_ERROR(expr, expected_code)                       \
  do {                                                              \
    bool qcal_thrown_ = false;                                      \
    try {                                                           \
      (void)(expr);                                                 \
    } catch (const qcal::Error& qcal_e_) {                          \
      qcal_thrown_ = true;                                          \
      CHECK(qcal_e_.code() == (expected_code));                     \
    }                                                               \
    CHECK_MESSAGE(qcal_thrown_, "expected qcal::Error from " #expr); \
  } while (0)

inline qcal::ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  qcal::ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = u(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = {u(rng), u(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}
