#pragma once

#include "pkme/tensor.hpp"

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

// Test-side oracles and generators, kept independent of the library's
// indexing and partial-trace code paths.
namespace testutil {

inline std::size_t flat_index(const std::vector<int>& digits, int d) {
  std::size_t index = 0;
  for (int digit : digits) {
    index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
  }
  return index;
}

inline std::vector<std::vector<int>> all_tuples(int length, int d) {
  std::vector<std::vector<int>> tuples;
  std::vector<int> current(static_cast<std::size_t>(length), 0);
  while (true) {
    tuples.push_back(current);
    int position = length - 1;
    while (position >= 0 && current[static_cast<std::size_t>(position)] == d - 1) {
      current[static_cast<std::size_t>(position)] = 0;
      --position;
    }
    if (position < 0) break;
    ++current[static_cast<std::size_t>(position)];
  }
  return tuples;
}

// Explicit double sum over the complement basis states:
// rho(r, c) = sum_e <r,e|psi> <c,e|psi>*.
inline pkme::Matrix oracle_reduced_density(const pkme::PureState& state,
                                           const std::vector<int>& keep) {
  const int n = state.n();
  const int d = state.d();
  std::vector<int> complement;
  for (int p = 1; p <= n; ++p) {
    bool is_kept = false;
    for (int q : keep) is_kept = is_kept || (q == p);
    if (!is_kept) complement.push_back(p);
  }
  const auto kept_tuples = all_tuples(static_cast<int>(keep.size()), d);
  const auto comp_tuples = all_tuples(static_cast<int>(complement.size()), d);

  const auto assemble = [&](const std::vector<int>& kept_digits,
                            const std::vector<int>& comp_digits) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t j = 0; j < keep.size(); ++j) {
      digits[static_cast<std::size_t>(keep[j] - 1)] = kept_digits[j];
    }
    for (std::size_t j = 0; j < complement.size(); ++j) {
      digits[static_cast<std::size_t>(complement[j] - 1)] = comp_digits[j];
    }
    return flat_index(digits, d);
  };

  const std::size_t dim = kept_tuples.size();
  pkme::Matrix rho = pkme::Matrix::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  const pkme::Vector& amps = state.amplitudes();
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      pkme::Complex sum = 0.0;
      for (const auto& e : comp_tuples) {
        const pkme::Complex left = amps(static_cast<Eigen::Index>(assemble(kept_tuples[r], e)));
        const pkme::Complex right = amps(static_cast<Eigen::Index>(assemble(kept_tuples[c], e)));
        sum += left * std::conj(right);
      }
      rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
    }
  }
  return rho;
}

// Partial trace of a k-particle density matrix down to the given 1-based
// positions within 1..k.
inline pkme::Matrix trace_down(const pkme::Matrix& rho, int k, int d,
                               const std::vector<int>& keep_within) {
  std::vector<int> dropped;
  for (int p = 1; p <= k; ++p) {
    bool is_kept = false;
    for (int q : keep_within) is_kept = is_kept || (q == p);
    if (!is_kept) dropped.push_back(p);
  }
  const auto kept_tuples = all_tuples(static_cast<int>(keep_within.size()), d);
  const auto drop_tuples = all_tuples(static_cast<int>(dropped.size()), d);
  const auto assemble = [&](const std::vector<int>& kept_digits,
                            const std::vector<int>& drop_digits) {
    std::vector<int> digits(static_cast<std::size_t>(k), 0);
    for (std::size_t j = 0; j < keep_within.size(); ++j) {
      digits[static_cast<std::size_t>(keep_within[j] - 1)] = kept_digits[j];
    }
    for (std::size_t j = 0; j < dropped.size(); ++j) {
      digits[static_cast<std::size_t>(dropped[j] - 1)] = drop_digits[j];
    }
    return flat_index(digits, d);
  };
  const std::size_t dim = kept_tuples.size();
  pkme::Matrix reduced = pkme::Matrix::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      pkme::Complex sum = 0.0;
      for (const auto& f : drop_tuples) {
        sum += rho(static_cast<Eigen::Index>(assemble(kept_tuples[r], f)),
                   static_cast<Eigen::Index>(assemble(kept_tuples[c], f)));
      }
      reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
    }
  }
  return reduced;
}

inline pkme::PureState random_state(int n, int d, pkme::RngState& rng) {
  const std::size_t dim = testutil::flat_index(std::vector<int>(static_cast<std::size_t>(n), d - 1), d) + 1;
  pkme::Vector amps(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    amps(static_cast<Eigen::Index>(i)) = rng.gaussian_complex();
  }
  amps /= amps.norm();
  return pkme::PureState(n, d, std::move(amps));
}

inline pkme::PureState state_from_kets(
    int n, int d,
    const std::vector<std::pair<std::vector<int>, pkme::Complex>>& terms) {
  const std::size_t dim = testutil::flat_index(std::vector<int>(static_cast<std::size_t>(n), d - 1), d) + 1;
  pkme::Vector amps = pkme::Vector::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& [digits, amplitude] : terms) {
    amps(static_cast<Eigen::Index>(flat_index(digits, d))) = amplitude;
  }
  return pkme::PureState(n, d, std::move(amps));
}

inline double max_abs_diff(const pkme::Matrix& a, const pkme::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double amplitude_distance(const pkme::PureState& a, const pkme::PureState& b) {
  return (a.amplitudes() - b.amplitudes()).norm();
}

}  // namespace testutil
