#pragma once

#include "pkme/structures.hpp"
#include "pkme/tensor.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkme {

inline constexpr double kDefaultVerifyTol = 1e-10;
inline constexpr std::size_t kDefaultSubsetBudget = 10000;

enum class VerifyMode { pkme, pme, ame };

inline std::string to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::pkme: return "pkme";
    case VerifyMode::pme: return "pme";
    case VerifyMode::ame: return "ame";
  }
  return "?";
}

struct SubsetCheck {
  std::string label;
  std::vector<int> positions;
  double deviation = 0.0;
  bool pass = false;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::pkme;
  std::string parameters;
  double tolerance = kDefaultVerifyTol;
  std::vector<SubsetCheck> checks;
  bool verdict = false;

  double max_deviation() const {
    double worst_value = 0.0;
    for (const SubsetCheck& check : checks) {
      if (check.deviation > worst_value) worst_value = check.deviation;
    }
    return worst_value;
  }

  /// Worst-offending check (first on ties), or nullptr when empty.
  const SubsetCheck* worst() const {
    const SubsetCheck* worst_check = nullptr;
    for (const SubsetCheck& check : checks) {
      if (worst_check == nullptr || check.deviation > worst_check->deviation) {
        worst_check = &check;
      }
    }
    return worst_check;
  }
};

namespace detail {

inline SubsetCheck run_check(const PureState& state, std::vector<int> positions,
                             std::string label, double tol) {
  SubsetCheck check;
  check.label = std::move(label);
  check.deviation =
      deviation_from_maximally_mixed(partial_trace(state, std::span<const int>(positions)));
  check.pass = check.deviation <= tol;
  check.positions = std::move(positions);
  return check;
}

inline std::string format_positions(const std::vector<int>& positions) {
  std::string text = "{";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0) text += ',';
    text += std::to_string(positions[i]);
  }
  text += '}';
  return text;
}

}  // namespace detail

/// Checks the full region A of every structure matching the spec against the
/// completely mixed state. Checking the full region suffices: a maximally
/// mixed region forces every subset of it to be maximally mixed as well.
inline VerificationReport verify_pkme(const PureState& state, const StructureSpec& spec,
                                      double tol = kDefaultVerifyTol) {
  if (state.n() != spec.n) {
    throw std::invalid_argument("state has n = " + std::to_string(state.n()) +
                                " but the spec expects n = " + std::to_string(spec.n));
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  VerificationReport report;
  report.mode = VerifyMode::pkme;
  report.tolerance = tol;
  report.parameters = "n=" + std::to_string(spec.n) +
                      " a_sizes=" + detail::format_positions(spec.a_sizes) +
                      " b_sizes=" + detail::format_positions(spec.b_sizes);
  const std::vector<PlanarStructure> structures = enumerate_structures(spec);
  report.checks.reserve(structures.size());
  for (const PlanarStructure& structure : structures) {
    report.checks.push_back(detail::run_check(
        state, structure.region_a(), "A: " + format_part_list(structure.a_parts), tol));
  }
  report.verdict = true;
  for (const SubsetCheck& check : report.checks) report.verdict = report.verdict && check.pass;
  return report;
}

/// Checks all n cyclic windows of floor(n/2) adjacent particles.
inline VerificationReport verify_pme(const PureState& state, double tol = kDefaultVerifyTol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const int n = state.n();
  if (n < 2) throw std::invalid_argument("windows need n >= 2");
  const int width = n / 2;

  VerificationReport report;
  report.mode = VerifyMode::pme;
  report.tolerance = tol;
  report.parameters = "n=" + std::to_string(n) + " window=" + std::to_string(width);
  report.checks.reserve(static_cast<std::size_t>(n));
  for (int start = 1; start <= n; ++start) {
    std::vector<int> window;
    window.reserve(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) window.push_back(1 + (start - 1 + i) % n);
    std::sort(window.begin(), window.end());
    report.checks.push_back(detail::run_check(
        state, window, "window " + detail::format_positions(window), tol));
  }
  report.verdict = true;
  for (const SubsetCheck& check : report.checks) report.verdict = report.verdict && check.pass;
  return report;
}

/// Checks all floor(n/2)-particle subsets, refusing outright when their count
/// exceeds the budget.
inline VerificationReport verify_ame(const PureState& state, double tol = kDefaultVerifyTol,
                                     std::size_t subset_budget = kDefaultSubsetBudget) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const int n = state.n();
  if (n < 2) throw std::invalid_argument("subset checks need n >= 2");
  const int width = n / 2;

  std::size_t subset_count = 1;
  for (int i = 0; i < width; ++i) {
    subset_count = subset_count * static_cast<std::size_t>(n - i) /
                   static_cast<std::size_t>(i + 1);
  }
  if (subset_count > subset_budget) {
    throw std::runtime_error(
        "refusing to check " + std::to_string(subset_count) +
        " subsets (budget " + std::to_string(subset_budget) +
        "); raise the budget for an exhaustive scan");
  }

  VerificationReport report;
  report.mode = VerifyMode::ame;
  report.tolerance = tol;
  report.parameters = "n=" + std::to_string(n) + " subset_size=" + std::to_string(width);
  report.checks.reserve(subset_count);

  // Lexicographic combinations of width positions out of 1..n.
  std::vector<int> subset(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) subset[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    report.checks.push_back(
        detail::run_check(state, subset, detail::format_positions(subset), tol));
    int i = width - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - (width - 1 - i)) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < width; ++j) {
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  report.verdict = true;
  for (const SubsetCheck& check : report.checks) report.verdict = report.verdict && check.pass;
  return report;
}

/// AME, PME, and per-k four-partite verdicts for one state, plus the verdict
/// of an optional caller-supplied spec.
struct Classification {
  bool ame = false;
  bool pme = false;
  std::map<int, bool> pkme_by_k;
  std::optional<bool> general;
};

/// Runs all three modes, with one four-partite check per valid k
/// (1 <= k <= floor(n/2) - 1) and optionally one more against a supplied
/// spec. An AME pass with any weaker check failing is an internal
/// inconsistency and throws.
inline Classification classify(const PureState& state,
                               const std::optional<StructureSpec>& general_spec,
                               double tol = kDefaultVerifyTol,
                               std::size_t subset_budget = kDefaultSubsetBudget) {
  Classification result;
  result.ame = verify_ame(state, tol, subset_budget).verdict;
  result.pme = verify_pme(state, tol).verdict;
  const int n = state.n();
  for (int k = 1; n >= 4 && k <= n / 2 - 1; ++k) {
    result.pkme_by_k[k] = verify_pkme(state, four_partite_spec(n, k), tol).verdict;
  }
  if (general_spec) {
    result.general = verify_pkme(state, *general_spec, tol).verdict;
  }
  if (result.ame) {
    bool weaker_all_pass = result.pme;
    for (const auto& [k, verdict] : result.pkme_by_k) weaker_all_pass = weaker_all_pass && verdict;
    if (result.general) weaker_all_pass = weaker_all_pass && *result.general;
    if (!weaker_all_pass) {
      throw std::logic_error("AME verdict passed while a weaker criterion failed");
    }
  }
  return result;
}

inline Classification classify(const PureState& state, double tol = kDefaultVerifyTol,
                               std::size_t subset_budget = kDefaultSubsetBudget) {
  return classify(state, std::nullopt, tol, subset_budget);
}

}  // namespace pkme
