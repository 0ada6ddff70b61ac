#pragma once

#include "pkme/tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pkme {

/// Controlled operation on a site pair: branch unitary i acts on the target
/// factor of every amplitude whose control digit is i. One branch per control
/// digit value; each branch is d x d.
class ControlledOp {
 public:
  ControlledOp(int control, int target, std::vector<UnitaryMatrix> branches)
      : control_(control), target_(target), branches_(std::move(branches)) {
    if (control_ < 1 || target_ < 1) {
      throw std::invalid_argument("sites are 1-based positions");
    }
    if (control_ == target_) {
      throw std::invalid_argument("control and target sites must differ");
    }
    if (branches_.empty()) {
      throw std::invalid_argument("one branch unitary per control digit is required");
    }
    const Eigen::Index d = branches_.front().dim();
    if (static_cast<Eigen::Index>(branches_.size()) != d) {
      throw std::invalid_argument("got " + std::to_string(branches_.size()) +
                                  " branches for local dimension " + std::to_string(d));
    }
    for (const UnitaryMatrix& branch : branches_) {
      if (branch.dim() != d) {
        throw std::invalid_argument("branch unitaries must all have dimension d");
      }
    }
  }

  int control() const { return control_; }
  int target() const { return target_; }
  int d() const { return static_cast<int>(branches_.size()); }
  const std::vector<UnitaryMatrix>& branches() const { return branches_; }

  ControlledOp inverse() const {
    std::vector<UnitaryMatrix> inverted;
    inverted.reserve(branches_.size());
    for (const UnitaryMatrix& branch : branches_) inverted.push_back(branch.adjoint());
    return ControlledOp(control_, target_, std::move(inverted));
  }

 private:
  int control_;
  int target_;
  std::vector<UnitaryMatrix> branches_;
};

/// Ordered list of controlled ops, applied left to right.
using Pipeline = std::vector<ControlledOp>;

inline PureState apply_controlled(const PureState& state, const ControlledOp& op) {
  const int n = state.n();
  const int d = state.d();
  if (op.d() != d) {
    throw std::invalid_argument("op has " + std::to_string(op.d()) +
                                " branches but the state has local dimension " +
                                std::to_string(d));
  }
  if (op.control() > n || op.target() > n) {
    throw std::invalid_argument("op references a position beyond n = " + std::to_string(n));
  }
  const std::size_t control_stride = state.stride(op.control());
  const std::size_t target_stride = state.stride(op.target());
  Vector amps = state.amplitudes();

  // Walk all indices with target digit 0; each carries a d-element target
  // slice at stride target_stride. The control digit is constant on a slice.
  const std::size_t dim = state.dim();
  const std::size_t groups = dim / (target_stride * static_cast<std::size_t>(d));
  Vector slice(d), image(d);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t group_base = g * target_stride * static_cast<std::size_t>(d);
    for (std::size_t within = 0; within < target_stride; ++within) {
      const std::size_t base = group_base + within;
      const int control_digit =
          static_cast<int>((base / control_stride) % static_cast<std::size_t>(d));
      const Matrix& branch =
          op.branches()[static_cast<std::size_t>(control_digit)].entries();
      for (int j = 0; j < d; ++j) {
        slice(j) = amps(static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * target_stride));
      }
      image.noalias() = branch * slice;
      for (int j = 0; j < d; ++j) {
        amps(static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * target_stride)) = image(j);
      }
    }
  }
  return PureState(n, d, std::move(amps));
}

/// One-site unitary on the given position.
inline PureState apply_single(const PureState& state, int position, const UnitaryMatrix& u) {
  const int n = state.n();
  const int d = state.d();
  if (position < 1 || position > n) {
    throw std::invalid_argument("position " + std::to_string(position) + " outside 1.." +
                                std::to_string(n));
  }
  if (u.dim() != d) {
    throw std::invalid_argument("unitary dimension must equal the local dimension");
  }
  const std::size_t target_stride = state.stride(position);
  Vector amps = state.amplitudes();
  const std::size_t groups = state.dim() / (target_stride * static_cast<std::size_t>(d));
  Vector slice(d), image(d);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t group_base = g * target_stride * static_cast<std::size_t>(d);
    for (std::size_t within = 0; within < target_stride; ++within) {
      const std::size_t base = group_base + within;
      for (int j = 0; j < d; ++j) {
        slice(j) = amps(static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * target_stride));
      }
      image.noalias() = u.entries() * slice;
      for (int j = 0; j < d; ++j) {
        amps(static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * target_stride)) = image(j);
      }
    }
  }
  return PureState(n, d, std::move(amps));
}

/// Ops applied strictly in list order; an empty pipeline is the identity.
inline PureState apply_pipeline(const PureState& state, const Pipeline& pipeline) {
  PureState current = state;
  for (const ControlledOp& op : pipeline) current = apply_controlled(current, op);
  return current;
}

/// Exact inverse: reversed list with adjoint branches.
inline Pipeline inverse_pipeline(const Pipeline& pipeline) {
  Pipeline inverted;
  inverted.reserve(pipeline.size());
  for (auto it = pipeline.rbegin(); it != pipeline.rend(); ++it) {
    inverted.push_back(it->inverse());
  }
  return inverted;
}

/// Site patterns whose pipelines map the matching duplicated-block states to
/// new states of the same class. The even/odd chains are parameterized by k;
/// the eight-qudit and five-qudit patterns fix k (2 and 1) and the op order.
enum class PipelinePattern {
  even_4k,
  odd_4k1,
  eight_qudit_forward,
  eight_qudit_reversed,
  five_qudit_forward,
  five_qudit_reversed,
};

namespace detail {

// Consecutive (control, target) pairs along the chain of positions
// k+1..2k, 3k+1..4k, optionally closed by position 4k+1.
inline std::vector<std::pair<int, int>> chain_site_pairs(int k, bool append_last) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<int> chain;
  for (int p = k + 1; p <= 2 * k; ++p) chain.push_back(p);
  for (int p = 3 * k + 1; p <= 4 * k; ++p) chain.push_back(p);
  if (append_last) chain.push_back(4 * k + 1);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    pairs.emplace_back(chain[i], chain[i + 1]);
  }
  return pairs;
}

}  // namespace detail

/// (control, target) site pairs of a pattern. k is used by the even/odd
/// chains and ignored by the fixed patterns.
inline std::vector<std::pair<int, int>> pattern_sites(PipelinePattern pattern, int k = 1) {
  switch (pattern) {
    case PipelinePattern::even_4k:
      return detail::chain_site_pairs(k, false);
    case PipelinePattern::odd_4k1:
      return detail::chain_site_pairs(k, true);
    case PipelinePattern::eight_qudit_forward:
      return detail::chain_site_pairs(2, false);
    case PipelinePattern::eight_qudit_reversed: {
      auto sites = detail::chain_site_pairs(2, false);
      std::reverse(sites.begin(), sites.end());
      return sites;
    }
    case PipelinePattern::five_qudit_forward:
      return detail::chain_site_pairs(1, true);
    case PipelinePattern::five_qudit_reversed: {
      auto sites = detail::chain_site_pairs(1, true);
      std::reverse(sites.begin(), sites.end());
      return sites;
    }
  }
  throw std::invalid_argument("unknown pipeline pattern");
}

/// Pipeline with the pattern's site pairs, one branch family per op.
inline Pipeline pattern_pipeline(PipelinePattern pattern, int k,
                                 std::vector<std::vector<UnitaryMatrix>> branch_families) {
  const auto sites = pattern_sites(pattern, k);
  if (branch_families.size() != sites.size()) {
    throw std::invalid_argument("pattern needs " + std::to_string(sites.size()) +
                                " branch families, got " +
                                std::to_string(branch_families.size()));
  }
  Pipeline pipeline;
  pipeline.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    pipeline.emplace_back(sites[i].first, sites[i].second, std::move(branch_families[i]));
  }
  return pipeline;
}

/// Pattern pipeline with Haar-random branches, d per op.
inline Pipeline random_pattern_pipeline(PipelinePattern pattern, int k, int d, RngState& rng) {
  const auto sites = pattern_sites(pattern, k);
  std::vector<std::vector<UnitaryMatrix>> families;
  families.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    std::vector<UnitaryMatrix> branches;
    branches.reserve(static_cast<std::size_t>(d));
    for (int b = 0; b < d; ++b) branches.push_back(haar_random_unitary(d, rng));
    families.push_back(std::move(branches));
  }
  return pattern_pipeline(pattern, k, std::move(families));
}

}  // namespace pkme
