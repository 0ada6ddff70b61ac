#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pkme {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Tolerance conventions: 1e-12 for algebraic identities (double precision
// accumulated over at most 2^26 terms), 1e-10 of slack for unitarity and
// positive-semidefiniteness checks.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

// Dense amplitude vectors are capped at 2^26 entries (~1 GiB of doubles).
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 26;

// Eigenvalue probes use a Hermitian eigensolver only up to this dimension.
inline constexpr Eigen::Index kMaxEigCheckDim = 256;

namespace detail {

inline std::size_t checked_pow(int d, int n) {
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) {
    if (dim > kMaxAmplitudes / static_cast<std::size_t>(d)) {
      throw std::length_error("d^n = " + std::to_string(d) + "^" +
                              std::to_string(n) +
                              " exceeds the 2^26 amplitude capacity");
    }
    dim *= static_cast<std::size_t>(d);
  }
  return dim;
}

}  // namespace detail

/// Flat index of the basis ket with the given digits; particle 1 is the most
/// significant base-d digit (leftmost ket factor).
inline std::size_t basis_index(std::span<const int> digits, int d) {
  if (d < 2) throw std::invalid_argument("local dimension must be >= 2");
  if (digits.empty()) throw std::invalid_argument("digit list must be nonempty");
  detail::checked_pow(d, static_cast<int>(digits.size()));
  std::size_t index = 0;
  for (int digit : digits) {
    if (digit < 0 || digit >= d) {
      throw std::invalid_argument("digit " + std::to_string(digit) +
                                  " outside [0, " + std::to_string(d) + ")");
    }
    index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
  }
  return index;
}

inline std::size_t basis_index(std::initializer_list<int> digits, int d) {
  return basis_index(std::span<const int>(digits.begin(), digits.size()), d);
}

/// Inverse of basis_index: the n digits of a flat index.
inline std::vector<int> basis_digits(std::size_t index, int n, int d) {
  if (n < 1) throw std::invalid_argument("particle count must be >= 1");
  const std::size_t dim = detail::checked_pow(d, n);
  if (index >= dim) {
    throw std::invalid_argument("index " + std::to_string(index) +
                                " out of range for d^n = " + std::to_string(dim));
  }
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int p = n - 1; p >= 0; --p) {
    digits[static_cast<std::size_t>(p)] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return digits;
}

/// Deterministic random source. Identical seeds reproduce identical draw
/// sequences; the draw counter is exposed for diagnostics.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate (Box-Muller, second value cached).
  double gaussian() {
    if (spare_) {
      const double value = *spare_;
      spare_.reset();
      return value;
    }
    double u = uniform();
    while (u == 0.0) u = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

  /// Standard complex normal: unit total variance split over both parts.
  Complex gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) / std::numbers::sqrt2;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
  std::optional<double> spare_;
};

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries, double tol = kUnitaryTol)
      : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
      throw std::invalid_argument("unitary matrix must be square and nonempty");
    }
    const double defect =
        (entries_.adjoint() * entries_ - Matrix::Identity(dim(), dim())).norm();
    if (!(defect <= tol)) {
      throw std::invalid_argument("matrix is not unitary: ||U'U - I||_F = " +
                                  std::to_string(defect));
    }
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(entries_.adjoint()); }

  static UnitaryMatrix identity(Eigen::Index dim) {
    return UnitaryMatrix(Matrix::Identity(dim, dim));
  }

 private:
  Matrix entries_;
};

/// Normalized amplitude vector of an n-qudit register with local dimension d.
/// Immutable after construction; gate application produces new states.
class PureState {
 public:
  PureState(int n, int d, Vector amplitudes, double norm_tol = kAlgebraTol)
      : n_(n), d_(d), amps_(std::move(amplitudes)) {
    if (n_ < 1) throw std::invalid_argument("particle count must be >= 1");
    if (d_ < 2) throw std::invalid_argument("local dimension must be >= 2");
    const std::size_t dim = detail::checked_pow(d_, n_);
    if (static_cast<std::size_t>(amps_.size()) != dim) {
      throw std::invalid_argument(
          "amplitude vector has length " + std::to_string(amps_.size()) +
          ", expected d^n = " + std::to_string(dim));
    }
    const double norm = amps_.norm();
    if (!(std::abs(norm - 1.0) <= norm_tol)) {
      throw std::invalid_argument("state is not normalized: ||amplitudes||_2 = " +
                                  std::to_string(norm));
    }
  }

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }

  Complex amplitude(std::span<const int> digits) const {
    if (static_cast<int>(digits.size()) != n_) {
      throw std::invalid_argument("expected " + std::to_string(n_) + " digits");
    }
    return amps_(static_cast<Eigen::Index>(basis_index(digits, d_)));
  }

  Complex amplitude(std::initializer_list<int> digits) const {
    return amplitude(std::span<const int>(digits.begin(), digits.size()));
  }

  /// Stride of a 1-based particle position in the flat index: d^(n - p).
  std::size_t stride(int position) const {
    if (position < 1 || position > n_) {
      throw std::invalid_argument("position " + std::to_string(position) +
                                  " outside 1.." + std::to_string(n_));
    }
    std::size_t s = 1;
    for (int p = n_; p > position; --p) s *= static_cast<std::size_t>(d_);
    return s;
  }

 private:
  int n_;
  int d_;
  Vector amps_;
};

/// Hermitian, trace-one matrix of a k-particle subsystem.
class DensityMatrix {
 public:
  DensityMatrix(int k, int d, Matrix entries, double tol = kAlgebraTol)
      : k_(k), d_(d), entries_(std::move(entries)) {
    if (k_ < 1) throw std::invalid_argument("retained particle count must be >= 1");
    if (d_ < 2) throw std::invalid_argument("local dimension must be >= 2");
    const std::size_t dim = detail::checked_pow(d_, k_);
    if (static_cast<std::size_t>(entries_.rows()) != dim ||
        static_cast<std::size_t>(entries_.cols()) != dim) {
      throw std::invalid_argument("density matrix must be d^k x d^k");
    }
    const double hermiticity_defect =
        (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (!(hermiticity_defect <= tol)) {
      throw std::invalid_argument("density matrix is not Hermitian: max defect " +
                                  std::to_string(hermiticity_defect));
    }
    const double trace_defect = std::abs(entries_.trace() - Complex(1.0, 0.0));
    if (!(trace_defect <= tol)) {
      throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                  std::to_string(trace_defect));
    }
  }

  int k() const { return k_; }
  int d() const { return d_; }
  const Matrix& entries() const { return entries_; }

  /// Smallest eigenvalue, or nullopt when the matrix is larger than the
  /// eigensolver policy allows (dim > 256).
  std::optional<double> min_eigenvalue() const {
    if (entries_.rows() > kMaxEigCheckDim) return std::nullopt;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

 private:
  int k_;
  int d_;
  Matrix entries_;
};

/// Reduced density matrix of the kept particles, with rows and columns
/// indexed by the kept digits in the order given.
inline DensityMatrix partial_trace(const PureState& state, std::span<const int> keep) {
  const int n = state.n();
  const int d = state.d();
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  std::vector<char> kept(static_cast<std::size_t>(n) + 1, 0);
  for (int p : keep) {
    if (p < 1 || p > n) {
      throw std::invalid_argument("position " + std::to_string(p) +
                                  " outside 1.." + std::to_string(n));
    }
    if (kept[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("duplicate position " + std::to_string(p) +
                                  " in keep set");
    }
    kept[static_cast<std::size_t>(p)] = 1;
  }
  const int k = static_cast<int>(keep.size());
  const int nc = n - k;

  std::vector<std::size_t> stride(static_cast<std::size_t>(n) + 1);
  stride[static_cast<std::size_t>(n)] = 1;
  for (int p = n - 1; p >= 1; --p) {
    stride[static_cast<std::size_t>(p)] =
        stride[static_cast<std::size_t>(p) + 1] * static_cast<std::size_t>(d);
  }

  std::vector<int> comp;
  comp.reserve(static_cast<std::size_t>(nc));
  for (int p = 1; p <= n; ++p) {
    if (!kept[static_cast<std::size_t>(p)]) comp.push_back(p);
  }

  const std::size_t kept_dim = detail::checked_pow(d, k);
  const std::size_t comp_dim = detail::checked_pow(d, nc);

  // Offset tables: flat-index contribution of every digit combination of the
  // kept positions (in keep order) and of the traced-out positions.
  const auto offsets = [&](std::span<const int> positions, std::size_t count) {
    std::vector<std::size_t> table(count, 0);
    for (std::size_t value = 0; value < count; ++value) {
      std::size_t rest = value;
      std::size_t offset = 0;
      for (std::size_t j = positions.size(); j-- > 0;) {
        const std::size_t digit = rest % static_cast<std::size_t>(d);
        rest /= static_cast<std::size_t>(d);
        offset += digit * stride[static_cast<std::size_t>(positions[j])];
      }
      table[value] = offset;
    }
    return table;
  };
  const std::vector<std::size_t> keep_offset = offsets(keep, kept_dim);
  const std::vector<std::size_t> comp_offset =
      offsets(std::span<const int>(comp), comp_dim);

  const Vector& amps = state.amplitudes();
  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(kept_dim),
                            static_cast<Eigen::Index>(kept_dim));
  Vector column(static_cast<Eigen::Index>(kept_dim));
  for (std::size_t e = 0; e < comp_dim; ++e) {
    const std::size_t base = comp_offset[e];
    for (std::size_t r = 0; r < kept_dim; ++r) {
      column(static_cast<Eigen::Index>(r)) =
          amps(static_cast<Eigen::Index>(keep_offset[r] + base));
    }
    rho.noalias() += column * column.adjoint();
  }
  return DensityMatrix(k, d, std::move(rho));
}

inline DensityMatrix partial_trace(const PureState& state, std::initializer_list<int> keep) {
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

/// Frobenius distance to the completely mixed state I / d^k.
inline double deviation_from_maximally_mixed(const DensityMatrix& rho) {
  const Eigen::Index dim = rho.entries().rows();
  return (rho.entries() - Matrix::Identity(dim, dim) / static_cast<double>(dim)).norm();
}

/// Unitary drawn from the Haar measure: complex Ginibre matrix, QR
/// orthonormalization, phases fixed so the triangular factor has positive
/// real diagonal.
inline UnitaryMatrix haar_random_unitary(int dim, RngState& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  Matrix ginibre(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) ginibre(r, c) = rng.gaussian_complex();
  }
  const Eigen::HouseholderQR<Matrix> qr(ginibre);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    q.col(c) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
  }
  return UnitaryMatrix(std::move(q));
}

/// <a|b> with conjugation on a.
inline Complex inner_product(const PureState& a, const PureState& b) {
  if (a.n() != b.n() || a.d() != b.d()) {
    throw std::invalid_argument("inner product requires matching n and d");
  }
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace pkme
