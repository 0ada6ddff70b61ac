#pragma once

#include "pkme/constructors.hpp"
#include "pkme/gates.hpp"
#include "pkme/io.hpp"
#include "pkme/structures.hpp"
#include "pkme/tensor.hpp"
#include "pkme/verifier.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pkme::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerifyFail = 2;

namespace detail {

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "ghz",           "pkme4k",   "pkme5",
      "pkme6",         "pkme7",    "pkme4k1",
      "pkme2mk",       "pkme2mk1", "family4-prime",
      "family4-double-prime",      "family4-zero",
      "ame5"};
  return names;
}

inline PureState construct_family(const std::string& family, std::optional<int> n, int k,
                                  int d, int m, std::uint64_t seed) {
  if (family == "ghz") {
    if (!n) throw std::invalid_argument("family ghz needs --n");
    return ghz(*n, d);
  }
  if (family == "pkme4k") return pkme_4k(k, d);
  if (family == "pkme5") return pkme_5(d);
  if (family == "pkme6") return pkme_6qubit();
  if (family == "pkme7") return pkme_7();
  if (family == "pkme4k1") return pkme_4k1(k);
  if (family == "pkme2mk") return general_2mk(m, k);
  if (family == "pkme2mk1") return general_2mk1(m, k);
  if (family == "family4-prime") {
    RngState rng(seed);
    return four_qubit_family(FamilyParams4Qubit::prime(haar_random_unitary(3, rng)));
  }
  if (family == "family4-double-prime") {
    RngState rng(seed);
    UnitaryMatrix inner = haar_random_unitary(2, rng);
    UnitaryMatrix outer = haar_random_unitary(2, rng);
    return four_qubit_family(
        FamilyParams4Qubit::double_prime(std::move(inner), std::move(outer)));
  }
  if (family == "family4-zero") {
    RngState rng(seed);
    return four_qubit_family(FamilyParams4Qubit::zero(haar_random_unitary(2, rng)));
  }
  if (family == "ame5") return ame5_fixture();
  std::string known;
  for (const std::string& name : family_names()) known += " " + name;
  throw std::invalid_argument("unknown family '" + family + "'; known families:" + known);
}

inline void print_report_text(const VerificationReport& report, std::ostream& out) {
  out << "mode: " << to_string(report.mode) << "\n";
  out << "parameters: " << report.parameters << "\n";
  out << "tolerance: " << std::setprecision(17) << report.tolerance << "\n";
  out << "checks (" << report.checks.size() << "):\n";
  for (const SubsetCheck& check : report.checks) {
    out << "  " << check.label << "  deviation " << std::setprecision(17)
        << check.deviation << "  " << (check.pass ? "pass" : "FAIL") << "\n";
  }
  if (const SubsetCheck* worst = report.worst()) {
    out << "worst: " << worst->label << "  deviation " << std::setprecision(17)
        << worst->deviation << "\n";
  }
  out << "verdict: " << (report.verdict ? "PASS" : "FAIL") << "\n";
}

inline void print_report_json(const VerificationReport& report, std::ostream& out) {
  out << std::setprecision(17);
  out << "{\n";
  out << "  \"mode\": \"" << to_string(report.mode) << "\",\n";
  out << "  \"parameters\": \"" << report.parameters << "\",\n";
  out << "  \"tolerance\": " << report.tolerance << ",\n";
  out << "  \"verdict\": " << (report.verdict ? "true" : "false") << ",\n";
  out << "  \"checks\": [\n";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const SubsetCheck& check = report.checks[i];
    out << "    {\"subset\": \"" << check.label << "\", \"positions\": [";
    for (std::size_t j = 0; j < check.positions.size(); ++j) {
      if (j > 0) out << ", ";
      out << check.positions[j];
    }
    out << "], \"deviation\": " << check.deviation << ", \"pass\": "
        << (check.pass ? "true" : "false") << "}"
        << (i + 1 < report.checks.size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
}

inline void print_classification_text(const Classification& result, std::ostream& out) {
  out << "AME: " << (result.ame ? "PASS" : "FAIL") << "\n";
  out << "PME: " << (result.pme ? "PASS" : "FAIL") << "\n";
  for (const auto& [k, verdict] : result.pkme_by_k) {
    out << "PKME(k=" << k << "): " << (verdict ? "PASS" : "FAIL") << "\n";
  }
  if (result.general) {
    out << "PKME(sizes): " << (*result.general ? "PASS" : "FAIL") << "\n";
  }
}

inline void print_classification_json(const Classification& result, std::ostream& out) {
  out << "{\n";
  out << "  \"ame\": " << (result.ame ? "true" : "false") << ",\n";
  out << "  \"pme\": " << (result.pme ? "true" : "false") << ",\n";
  out << "  \"pkme\": {";
  bool first = true;
  for (const auto& [k, verdict] : result.pkme_by_k) {
    if (!first) out << ", ";
    first = false;
    out << "\"" << k << "\": " << (verdict ? "true" : "false");
  }
  out << "}";
  if (result.general) {
    out << ",\n  \"general\": " << (*result.general ? "true" : "false");
  }
  out << "\n}\n";
}

inline StructureSpec spec_from_options(int n, std::optional<int> k,
                                       const std::vector<int>& a_sizes,
                                       const std::vector<int>& b_sizes) {
  const bool has_sizes = !a_sizes.empty() || !b_sizes.empty();
  if (k && has_sizes) {
    throw std::invalid_argument("give either --k or --a-sizes/--b-sizes, not both");
  }
  if (k) return four_partite_spec(n, *k);
  if (a_sizes.empty() || b_sizes.empty()) {
    throw std::invalid_argument("need --k or both --a-sizes and --b-sizes");
  }
  return make_structure_spec(n, a_sizes, b_sizes);
}

}  // namespace detail

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name. Exit codes: 0 ok/pass, 2 verification fail, 1 any error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, transform, and verify two-region entangled qudit states", "pkme"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "Build a named state and write it");
  std::string family;
  std::optional<int> construct_n;
  int construct_k = 1, construct_d = 2, construct_m = 2;
  std::uint64_t construct_seed = 0;
  std::string construct_out;
  construct->add_option("--family", family, "Family name")->required();
  construct->add_option("--n", construct_n, "Particle count (ghz)");
  construct->add_option("--k", construct_k, "Block size parameter");
  construct->add_option("--d", construct_d, "Local dimension");
  construct->add_option("--m", construct_m, "Parts per region");
  construct->add_option("--seed", construct_seed, "Seed for families that draw unitaries");
  construct->add_option("-o,--output", construct_out, "Output state file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a state file");
  std::string verify_mode_name;
  std::optional<int> verify_k;
  std::vector<int> verify_a_sizes, verify_b_sizes;
  double verify_tol = kDefaultVerifyTol;
  std::size_t verify_budget = kDefaultSubsetBudget;
  std::string verify_format = "text";
  std::string verify_file;
  verify->add_option("--mode", verify_mode_name, "pkme, pme, or ame")->required();
  verify->add_option("--k", verify_k, "Four-partite k (pkme mode)");
  verify->add_option("--a-sizes", verify_a_sizes, "Region A part sizes (pkme mode)")
      ->delimiter(',');
  verify->add_option("--b-sizes", verify_b_sizes, "Region B part sizes (pkme mode)")
      ->delimiter(',');
  verify->add_option("--tol", verify_tol, "Deviation tolerance");
  verify->add_option("--budget", verify_budget, "Subset budget (ame mode)");
  verify->add_option("--format", verify_format, "text or json");
  verify->add_option("file", verify_file, "State file")->required();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Report AME/PME/PKME verdicts");
  double classify_tol = kDefaultVerifyTol;
  std::size_t classify_budget = kDefaultSubsetBudget;
  std::string classify_format = "text";
  std::string classify_file;
  std::vector<int> classify_a_sizes, classify_b_sizes;
  classify_cmd->add_option("--tol", classify_tol, "Deviation tolerance");
  classify_cmd->add_option("--budget", classify_budget, "Subset budget for the AME scan");
  classify_cmd->add_option("--format", classify_format, "text or json");
  classify_cmd->add_option("--a-sizes", classify_a_sizes, "Extra spec: region A part sizes")
      ->delimiter(',');
  classify_cmd->add_option("--b-sizes", classify_b_sizes, "Extra spec: region B part sizes")
      ->delimiter(',');
  classify_cmd->add_option("file", classify_file, "State file")->required();

  // structures
  auto* structures_cmd = app.add_subcommand("structures", "List planar structures");
  int structures_n = 0;
  std::optional<int> structures_k;
  std::vector<int> structures_a_sizes, structures_b_sizes;
  structures_cmd->add_option("--n", structures_n, "Particle count")->required();
  structures_cmd->add_option("--k", structures_k, "Four-partite k");
  structures_cmd->add_option("--a-sizes", structures_a_sizes, "Region A part sizes")
      ->delimiter(',');
  structures_cmd->add_option("--b-sizes", structures_b_sizes, "Region B part sizes")
      ->delimiter(',');

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "Apply a pipeline file to a state");
  std::string apply_pipeline_path, apply_in, apply_out;
  apply_cmd->add_option("--pipeline", apply_pipeline_path, "Pipeline file")->required();
  apply_cmd->add_option("-i,--input", apply_in, "Input state file")->required();
  apply_cmd->add_option("-o,--output", apply_out, "Output state file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (construct->parsed()) {
      const PureState state = detail::construct_family(family, construct_n, construct_k,
                                                       construct_d, construct_m,
                                                       construct_seed);
      write_state(state, construct_out);
      out << "wrote " << construct_out << " (n=" << state.n() << ", d=" << state.d()
          << ")\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      const PureState state = read_state(verify_file);
      VerificationReport report;
      if (verify_mode_name == "pkme") {
        report = verify_pkme(state,
                             detail::spec_from_options(state.n(), verify_k,
                                                       verify_a_sizes, verify_b_sizes),
                             verify_tol);
      } else if (verify_mode_name == "pme") {
        report = verify_pme(state, verify_tol);
      } else if (verify_mode_name == "ame") {
        report = verify_ame(state, verify_tol, verify_budget);
      } else {
        throw std::invalid_argument("unknown mode '" + verify_mode_name +
                                    "'; expected pkme, pme, or ame");
      }
      if (verify_format == "json") {
        detail::print_report_json(report, out);
      } else if (verify_format == "text") {
        detail::print_report_text(report, out);
      } else {
        throw std::invalid_argument("unknown format '" + verify_format + "'");
      }
      return report.verdict ? kExitOk : kExitVerifyFail;
    }

    if (classify_cmd->parsed()) {
      const PureState state = read_state(classify_file);
      std::optional<StructureSpec> general_spec;
      if (!classify_a_sizes.empty() || !classify_b_sizes.empty()) {
        general_spec = make_structure_spec(state.n(), classify_a_sizes, classify_b_sizes);
      }
      const Classification result =
          classify(state, general_spec, classify_tol, classify_budget);
      if (classify_format == "json") {
        detail::print_classification_json(result, out);
      } else if (classify_format == "text") {
        detail::print_classification_text(result, out);
      } else {
        throw std::invalid_argument("unknown format '" + classify_format + "'");
      }
      return kExitOk;
    }

    if (structures_cmd->parsed()) {
      const StructureSpec spec = detail::spec_from_options(
          structures_n, structures_k, structures_a_sizes, structures_b_sizes);
      for (const PlanarStructure& structure : enumerate_structures(spec)) {
        out << format_structure(structure) << "\n";
      }
      return kExitOk;
    }

    if (apply_cmd->parsed()) {
      const Pipeline pipeline = read_pipeline(apply_pipeline_path);
      const PureState input = read_state(apply_in);
      const PureState output = apply_pipeline(input, pipeline);
      write_state(output, apply_out);
      out << "wrote " << apply_out << " (n=" << output.n() << ", d=" << output.d()
          << ")\n";
      return kExitOk;
    }
  } catch (const std::exception& error) {
    err << "error: " << error.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace pkme::cli
