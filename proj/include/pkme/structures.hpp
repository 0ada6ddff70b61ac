#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkme {

/// Shape of a two-region partition of n circle positions: m arc sizes per
/// region. Region A holds floor(n/2) positions, region B the rest. Sizes are
/// stored sorted; assignments of sizes to arc slots are enumerated internally.
struct StructureSpec {
  int n = 0;
  std::vector<int> a_sizes;
  std::vector<int> b_sizes;

  friend bool operator==(const StructureSpec&, const StructureSpec&) = default;
};

namespace detail {

inline void validate_spec(const StructureSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("structures need n >= 4");
  if (spec.a_sizes.size() != spec.b_sizes.size()) {
    throw std::invalid_argument("regions must have the same number of parts");
  }
  const int m = static_cast<int>(spec.a_sizes.size());
  if (m < 2) throw std::invalid_argument("each region needs at least two parts");
  if (2 * m > spec.n) {
    throw std::invalid_argument("2m parts do not fit on a circle of " +
                                std::to_string(spec.n) + " positions");
  }
  int a_total = 0;
  int b_total = 0;
  for (int size : spec.a_sizes) {
    if (size < 1) throw std::invalid_argument("region A contains an empty part");
    a_total += size;
  }
  for (int size : spec.b_sizes) {
    if (size < 1) throw std::invalid_argument("region B contains an empty part");
    b_total += size;
  }
  if (a_total != spec.n / 2) {
    throw std::invalid_argument("region A sizes sum to " + std::to_string(a_total) +
                                ", expected floor(n/2) = " + std::to_string(spec.n / 2));
  }
  if (b_total != spec.n - spec.n / 2) {
    throw std::invalid_argument("region B sizes sum to " + std::to_string(b_total) +
                                ", expected n - floor(n/2) = " +
                                std::to_string(spec.n - spec.n / 2));
  }
}

}  // namespace detail

inline StructureSpec make_structure_spec(int n, std::vector<int> a_sizes,
                                         std::vector<int> b_sizes) {
  StructureSpec spec{n, std::move(a_sizes), std::move(b_sizes)};
  detail::validate_spec(spec);
  std::sort(spec.a_sizes.begin(), spec.a_sizes.end());
  std::sort(spec.b_sizes.begin(), spec.b_sizes.end());
  return spec;
}

/// Four-part spec with region A split {k, floor(n/2)-k} and region B split
/// {k, n-floor(n/2)-k}.
inline StructureSpec four_partite_spec(int n, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const int half = n / 2;
  if (half - k < 1) {
    throw std::invalid_argument("part A2 would be empty: floor(n/2) - k = " +
                                std::to_string(half - k));
  }
  if (n - half - k < 1) {
    throw std::invalid_argument("part B2 would be empty: n - floor(n/2) - k = " +
                                std::to_string(n - half - k));
  }
  return make_structure_spec(n, {k, half - k}, {k, n - half - k});
}

/// One concrete placement: alternating contiguous cyclic arcs
/// A1, B1, ..., Am, Bm covering positions 1..n. Parts are sorted position
/// lists ordered by smallest member. Identity is the region-A position set.
struct PlanarStructure {
  int n = 0;
  std::vector<std::vector<int>> a_parts;
  std::vector<std::vector<int>> b_parts;

  std::vector<int> region_a() const {
    std::vector<int> all;
    for (const auto& part : a_parts) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    return all;
  }

  std::vector<int> region_b() const {
    std::vector<int> all;
    for (const auto& part : b_parts) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    return all;
  }
};

namespace detail {

// Maximal cyclic runs of the marked positions, each sorted, ordered by
// smallest member.
inline std::vector<std::vector<int>> cyclic_runs(int n, const std::vector<char>& member) {
  std::vector<std::vector<int>> runs;
  for (int p = 1; p <= n; ++p) {
    const int prev = (p == 1) ? n : p - 1;
    if (!member[static_cast<std::size_t>(p)] || member[static_cast<std::size_t>(prev)]) {
      continue;
    }
    std::vector<int> run;
    int q = p;
    while (member[static_cast<std::size_t>(q)] &&
           run.size() < static_cast<std::size_t>(n)) {
      run.push_back(q);
      q = (q == n) ? 1 : q + 1;
    }
    std::sort(run.begin(), run.end());
    runs.push_back(std::move(run));
  }
  std::sort(runs.begin(), runs.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return runs;
}

}  // namespace detail

/// Rebuild the full structure from a region-A position set: parts are the
/// maximal cyclic runs of the set and of its complement.
inline PlanarStructure structure_from_region_a(int n, const std::vector<int>& region_a) {
  if (n < 2) throw std::invalid_argument("need at least two positions");
  std::vector<char> in_a(static_cast<std::size_t>(n) + 1, 0);
  for (int p : region_a) {
    if (p < 1 || p > n) {
      throw std::invalid_argument("position " + std::to_string(p) + " outside 1.." +
                                  std::to_string(n));
    }
    if (in_a[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("duplicate position " + std::to_string(p));
    }
    in_a[static_cast<std::size_t>(p)] = 1;
  }
  if (region_a.empty() || region_a.size() >= static_cast<std::size_t>(n)) {
    throw std::invalid_argument("region A must be a proper nonempty subset");
  }
  std::vector<char> in_b(static_cast<std::size_t>(n) + 1, 0);
  for (int p = 1; p <= n; ++p) in_b[static_cast<std::size_t>(p)] = !in_a[static_cast<std::size_t>(p)];

  PlanarStructure structure;
  structure.n = n;
  structure.a_parts = detail::cyclic_runs(n, in_a);
  structure.b_parts = detail::cyclic_runs(n, in_b);
  return structure;
}

/// Type-invariant check used by tests: disjoint arcs covering 1..n whose A and
/// B parts alternate around the circle.
inline bool well_formed(const PlanarStructure& structure) {
  const int n = structure.n;
  if (n < 2) return false;
  if (structure.a_parts.size() != structure.b_parts.size()) return false;
  if (structure.a_parts.size() < 2) return false;
  std::vector<int> label(static_cast<std::size_t>(n) + 1, 0);
  std::size_t covered = 0;
  for (const auto& part : structure.a_parts) {
    if (part.empty()) return false;
    for (int p : part) {
      if (p < 1 || p > n || label[static_cast<std::size_t>(p)] != 0) return false;
      label[static_cast<std::size_t>(p)] = 1;
      ++covered;
    }
  }
  for (const auto& part : structure.b_parts) {
    if (part.empty()) return false;
    for (int p : part) {
      if (p < 1 || p > n || label[static_cast<std::size_t>(p)] != 0) return false;
      label[static_cast<std::size_t>(p)] = 2;
      ++covered;
    }
  }
  if (covered != static_cast<std::size_t>(n)) return false;
  // Each stored part must be a maximal cyclic run, which also forces the
  // alternation of A and B arcs.
  std::vector<char> in_a(static_cast<std::size_t>(n) + 1, 0);
  for (int p = 1; p <= n; ++p) in_a[static_cast<std::size_t>(p)] = label[static_cast<std::size_t>(p)] == 1;
  std::vector<char> in_b(static_cast<std::size_t>(n) + 1, 0);
  for (int p = 1; p <= n; ++p) in_b[static_cast<std::size_t>(p)] = label[static_cast<std::size_t>(p)] == 2;
  return structure.a_parts == detail::cyclic_runs(n, in_a) &&
         structure.b_parts == detail::cyclic_runs(n, in_b);
}

/// All planar structures matching the spec. Every assignment of the size
/// multisets to alternating arc slots is placed at every rotation; placements
/// sharing a region-A position set are emitted once. Output is sorted by the
/// region-A set (lexicographic, so smallest member first).
inline std::vector<PlanarStructure> enumerate_structures(const StructureSpec& spec) {
  detail::validate_spec(spec);
  const int n = spec.n;
  const int m = static_cast<int>(spec.a_sizes.size());

  std::set<std::vector<int>> region_a_sets;
  std::vector<int> a_order = spec.a_sizes;
  std::sort(a_order.begin(), a_order.end());
  do {
    std::vector<int> b_order = spec.b_sizes;
    std::sort(b_order.begin(), b_order.end());
    do {
      for (int rotation = 0; rotation < n; ++rotation) {
        std::vector<int> region;
        region.reserve(static_cast<std::size_t>(n / 2));
        int cursor = rotation;
        for (int part = 0; part < m; ++part) {
          for (int i = 0; i < a_order[static_cast<std::size_t>(part)]; ++i) {
            region.push_back(1 + cursor % n);
            ++cursor;
          }
          cursor += b_order[static_cast<std::size_t>(part)];
        }
        std::sort(region.begin(), region.end());
        region_a_sets.insert(std::move(region));
      }
    } while (std::next_permutation(b_order.begin(), b_order.end()));
  } while (std::next_permutation(a_order.begin(), a_order.end()));

  std::vector<PlanarStructure> structures;
  structures.reserve(region_a_sets.size());
  for (const auto& region : region_a_sets) {
    structures.push_back(structure_from_region_a(n, region));
  }
  return structures;
}

inline std::size_t structure_count(const StructureSpec& spec) {
  return enumerate_structures(spec).size();
}

inline std::string format_part_list(const std::vector<std::vector<int>>& parts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out << ',';
    out << '{';
    for (std::size_t j = 0; j < parts[i].size(); ++j) {
      if (j > 0) out << ',';
      out << parts[i][j];
    }
    out << '}';
  }
  return out.str();
}

/// "A: {1},{3} B: {2},{4}"
inline std::string format_structure(const PlanarStructure& structure) {
  return "A: " + format_part_list(structure.a_parts) +
         " B: " + format_part_list(structure.b_parts);
}

}  // namespace pkme
