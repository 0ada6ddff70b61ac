#pragma once

#include "pkme/tensor.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pkme {

namespace detail {

// Uniform superposition over all base-d tuples of `free` digits, with the
// position digits of each ket produced by `fill(tuple digits, position digits)`.
template <typename Fill>
PureState uniform_pattern_state(int n, int d, int free, Fill&& fill) {
  const std::size_t dim = checked_pow(d, n);
  const std::size_t tuples = checked_pow(d, free);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
  const double weight = 1.0 / std::sqrt(static_cast<double>(tuples));
  std::vector<int> digits(static_cast<std::size_t>(free));
  std::vector<int> positions(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < tuples; ++t) {
    std::size_t rest = t;
    for (int j = free - 1; j >= 0; --j) {
      digits[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    fill(std::span<const int>(digits), std::span<int>(positions));
    amps(static_cast<Eigen::Index>(basis_index(positions, d))) = weight;
  }
  return PureState(n, d, std::move(amps));
}

}  // namespace detail

/// |i1..ik, i1..ik, i(k+1)..i(2k), i(k+1)..i(2k)> summed uniformly over all
/// base-d digit tuples (digits run over 0..d-1), weight 1/d^k.
inline PureState pkme_4k(int k, int d) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  return detail::uniform_pattern_state(
      4 * k, d, 2 * k, [k](std::span<const int> digits, std::span<int> positions) {
        for (int j = 0; j < k; ++j) {
          positions[static_cast<std::size_t>(j)] = digits[static_cast<std::size_t>(j)];
          positions[static_cast<std::size_t>(k + j)] = digits[static_cast<std::size_t>(j)];
          positions[static_cast<std::size_t>(2 * k + j)] = digits[static_cast<std::size_t>(k + j)];
          positions[static_cast<std::size_t>(3 * k + j)] = digits[static_cast<std::size_t>(k + j)];
        }
      });
}

/// Six-qubit state |i, i^j, j, l, j^l, i^j^l> over all bits i, j, l.
inline PureState pkme_6qubit() {
  return detail::uniform_pattern_state(
      6, 2, 3, [](std::span<const int> digits, std::span<int> positions) {
        const int i = digits[0], j = digits[1], l = digits[2];
        positions[0] = i;
        positions[1] = i ^ j;
        positions[2] = j;
        positions[3] = l;
        positions[4] = j ^ l;
        positions[5] = i ^ j ^ l;
      });
}

/// Five-qudit state |i, i, j, j, i+j mod d> over all digit pairs.
inline PureState pkme_5(int d) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  return detail::uniform_pattern_state(
      5, d, 2, [d](std::span<const int> digits, std::span<int> positions) {
        const int i = digits[0], j = digits[1];
        positions[0] = i;
        positions[1] = i;
        positions[2] = j;
        positions[3] = j;
        positions[4] = (i + j) % d;
      });
}

/// (4k+1)-qubit state: the 4k-qubit duplicated-block pattern followed by the
/// parity of all 2k free bits.
inline PureState pkme_4k1(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return detail::uniform_pattern_state(
      4 * k + 1, 2, 2 * k, [k](std::span<const int> digits, std::span<int> positions) {
        int parity = 0;
        for (int j = 0; j < k; ++j) {
          positions[static_cast<std::size_t>(j)] = digits[static_cast<std::size_t>(j)];
          positions[static_cast<std::size_t>(k + j)] = digits[static_cast<std::size_t>(j)];
          positions[static_cast<std::size_t>(2 * k + j)] = digits[static_cast<std::size_t>(k + j)];
          positions[static_cast<std::size_t>(3 * k + j)] = digits[static_cast<std::size_t>(k + j)];
        }
        for (int j = 0; j < 2 * k; ++j) parity ^= digits[static_cast<std::size_t>(j)];
        positions[static_cast<std::size_t>(4 * k)] = parity;
      });
}

/// Seven-qubit state |i, j, l, j, l, i, i^j^l> over all bits i, j, l.
inline PureState pkme_7() {
  return detail::uniform_pattern_state(
      7, 2, 3, [](std::span<const int> digits, std::span<int> positions) {
        const int i = digits[0], j = digits[1], l = digits[2];
        positions[0] = i;
        positions[1] = j;
        positions[2] = l;
        positions[3] = j;
        positions[4] = l;
        positions[5] = i;
        positions[6] = i ^ j ^ l;
      });
}

/// 2mk-qubit state of m duplicated k-bit blocks: block b carries bits
/// i((b-1)k+1)..i(bk) at positions (2b-2)k+1..(2b-1)k and again at
/// (2b-1)k+1..2bk.
inline PureState general_2mk(int m, int k) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return detail::uniform_pattern_state(
      2 * m * k, 2, m * k, [m, k](std::span<const int> digits, std::span<int> positions) {
        for (int b = 0; b < m; ++b) {
          for (int j = 0; j < k; ++j) {
            const int bit = digits[static_cast<std::size_t>(b * k + j)];
            positions[static_cast<std::size_t>(2 * b * k + j)] = bit;
            positions[static_cast<std::size_t>((2 * b + 1) * k + j)] = bit;
          }
        }
      });
}

/// The 2mk-qubit duplicated-block pattern with an appended total-parity qubit.
inline PureState general_2mk1(int m, int k) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return detail::uniform_pattern_state(
      2 * m * k + 1, 2, m * k, [m, k](std::span<const int> digits, std::span<int> positions) {
        int parity = 0;
        for (int b = 0; b < m; ++b) {
          for (int j = 0; j < k; ++j) {
            const int bit = digits[static_cast<std::size_t>(b * k + j)];
            positions[static_cast<std::size_t>(2 * b * k + j)] = bit;
            positions[static_cast<std::size_t>((2 * b + 1) * k + j)] = bit;
          }
        }
        for (int j = 0; j < m * k; ++j) parity ^= digits[static_cast<std::size_t>(j)];
        positions[static_cast<std::size_t>(2 * m * k)] = parity;
      });
}

/// Parameters of the three four-qubit family cases. Each case embeds its
/// unitary blocks into a 4x4 unitary V acting between the (1,3) and (2,4)
/// particle pairings.
struct FamilyParams4Qubit {
  enum class Case { prime, double_prime, zero };

  Case tag;
  std::optional<UnitaryMatrix> block3;  // prime: full 3x3 block
  std::optional<UnitaryMatrix> inner;   // double_prime and zero: central 2x2 block
  std::optional<UnitaryMatrix> outer;   // double_prime: corner 2x2 block

  static FamilyParams4Qubit prime(UnitaryMatrix block3) {
    if (block3.dim() != 3) throw std::invalid_argument("prime case needs a 3x3 unitary");
    return {Case::prime, std::move(block3), std::nullopt, std::nullopt};
  }

  static FamilyParams4Qubit double_prime(UnitaryMatrix inner, UnitaryMatrix outer) {
    if (inner.dim() != 2 || outer.dim() != 2) {
      throw std::invalid_argument("double_prime case needs two 2x2 unitaries");
    }
    return {Case::double_prime, std::nullopt, std::move(inner), std::move(outer)};
  }

  static FamilyParams4Qubit zero(UnitaryMatrix inner) {
    if (inner.dim() != 2) throw std::invalid_argument("zero case needs a 2x2 unitary");
    return {Case::zero, std::nullopt, std::move(inner), std::nullopt};
  }
};

/// Four-qubit family state. The 4x4 matrix V holds the amplitudes in the
/// (1,3)|(2,4) grouped basis: column index is the digit pair of particles
/// (1,3), row index the pair of particles (2,4). Emitted amplitudes are in
/// position order, amplitude(x1,x2,x3,x4) = V(x2 x4, x1 x3) / 2.
inline PureState four_qubit_family(const FamilyParams4Qubit& params) {
  Matrix v = Matrix::Zero(4, 4);
  switch (params.tag) {
    case FamilyParams4Qubit::Case::prime:
      v(0, 0) = 1.0;
      v.block(1, 1, 3, 3) = params.block3->entries();
      break;
    case FamilyParams4Qubit::Case::double_prime: {
      const Matrix& outer = params.outer->entries();
      v(0, 0) = outer(0, 0);
      v(0, 3) = outer(0, 1);
      v(3, 0) = outer(1, 0);
      v(3, 3) = outer(1, 1);
      const Matrix& inner = params.inner->entries();
      v.block(1, 1, 2, 2) = inner;
      break;
    }
    case FamilyParams4Qubit::Case::zero: {
      v(0, 0) = 1.0;
      v(3, 3) = 1.0;
      const Matrix& inner = params.inner->entries();
      v.block(1, 1, 2, 2) = inner;
      break;
    }
  }
  Vector amps(16);
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      for (int x3 = 0; x3 < 2; ++x3) {
        for (int x4 = 0; x4 < 2; ++x4) {
          const std::size_t index = basis_index({x1, x2, x3, x4}, 2);
          amps(static_cast<Eigen::Index>(index)) = v(2 * x2 + x4, 2 * x1 + x3) / 2.0;
        }
      }
    }
  }
  return PureState(4, 2, std::move(amps));
}

/// (|0...0> + |1...1> + ... + |d-1...d-1>) / sqrt(d).
inline PureState ghz(int n, int d) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  const std::size_t dim = detail::checked_pow(d, n);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
  const double weight = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int i = 0; i < d; ++i) {
    std::fill(digits.begin(), digits.end(), i);
    amps(static_cast<Eigen::Index>(basis_index(digits, d))) = weight;
  }
  return PureState(n, d, std::move(amps));
}

/// Five-qubit ring cluster state: uniform +-1/sqrt(32) amplitudes with sign
/// (-1)^(sum of adjacent bit products around the cycle). Every two-qubit
/// marginal is I/4.
inline PureState ame5_fixture() {
  Vector amps(32);
  const double weight = 1.0 / std::sqrt(32.0);
  for (std::size_t x = 0; x < 32; ++x) {
    const std::vector<int> bits = basis_digits(x, 5, 2);
    int exponent = 0;
    for (int p = 0; p < 5; ++p) {
      exponent += bits[static_cast<std::size_t>(p)] * bits[static_cast<std::size_t>((p + 1) % 5)];
    }
    amps(static_cast<Eigen::Index>(x)) = (exponent % 2 == 0) ? weight : -weight;
  }
  return PureState(5, 2, std::move(amps));
}

}  // namespace pkme
