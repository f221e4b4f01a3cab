#pragma once

// Dense complex linear algebra for small spin Hamiltonians (dimension <= 64).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcal {

using Complex = std::complex<double>;

/// Square, row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// Largest entry modulus.
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Commutator a*b - b*a.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise |A - A^dagger|.
double hermiticity_defect(const ComplexMatrix& a);

/// A matrix verified Hermitian on construction:
/// max|A - A^dagger| <= 1e-10 * max|A|. Throws Error(NonHermitian) otherwise.
class HermitianOperator {
 public:
  static constexpr double kTolerance = 1e-10;

  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  double hermiticity_defect() const noexcept { return defect_; }

 private:
  ComplexMatrix matrix_;
  double defect_ = 0.0;
};

/// Spectrum of a Hermitian operator. `values` ascending; column n of
/// `vectors` is the eigenvector for values[n].
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;

  std::size_t dim() const noexcept { return values.size(); }
  /// <n|A|n> for every eigenvector, real part.
  std::vector<double> diagonal_elements(const ComplexMatrix& a) const;
};

struct JacobiOptions {
  int max_sweeps = 100;
  double target_tolerance = 1e-13;  // off-diagonal Frobenius norm / ||A||
  double failure_tolerance = 1e-12;
};

/// Cyclic complex Jacobi. Ties in the eigenvalue ordering keep the original
/// diagonal index order. Throws Error(NoConvergence) if the off-diagonal norm
/// is still above failure_tolerance * ||A|| after max_sweeps.
EigenDecomposition hermitian_eigen(const HermitianOperator& a, const JacobiOptions& options = {});

struct SpinHalfOperators {
  ComplexMatrix sx, sy, sz;           // S = sigma / 2
  ComplexMatrix pauli_x, pauli_y, pauli_z;
};

SpinHalfOperators spin_half_operators();

}  // namespace qcal
