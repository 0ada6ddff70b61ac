#pragma once

#include "pkme/gates.hpp"
#include "pkme/tensor.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkme {

inline constexpr int kStateFileVersion = 1;
inline constexpr int kPipelineFileVersion = 1;
inline constexpr double kFileNormTol = 1e-9;
inline constexpr double kFileUnitaryTol = 1e-9;

namespace detail {

// Decimal with 17 significant digits round-trips a double exactly.
inline void write_number(std::ostream& out, double value) {
  out << std::setprecision(17) << value;
}

inline void write_complex_pair(std::ostream& out, const Complex& value) {
  out << '[';
  write_number(out, value.real());
  out << ", ";
  write_number(out, value.imag());
  out << ']';
}

inline nlohmann::json parse_document(std::istream& in, const std::string& origin) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& error) {
    throw std::runtime_error("parse error in " + origin + ": " + error.what());
  }
  return document;
}

inline void require_format(const nlohmann::json& document, const std::string& format,
                           int version, const std::string& origin) {
  if (!document.is_object() || document.value("format", "") != format) {
    throw std::runtime_error("parse error in " + origin + ": not a " + format +
                             " document");
  }
  if (!document.contains("version") || !document["version"].is_number_integer() ||
      document["version"].get<int>() != version) {
    throw std::runtime_error("parse error in " + origin + ": unsupported " + format +
                             " version (expected " + std::to_string(version) + ")");
  }
}

inline Complex read_complex_pair(const nlohmann::json& entry, const std::string& origin) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
      !entry[1].is_number()) {
    throw std::runtime_error("parse error in " + origin +
                             ": amplitude entries must be [real, imaginary] pairs");
  }
  return Complex(entry[0].get<double>(), entry[1].get<double>());
}

}  // namespace detail

inline void write_state(const PureState& state, std::ostream& out) {
  out << "{\n";
  out << "  \"format\": \"pkme-state\",\n";
  out << "  \"version\": " << kStateFileVersion << ",\n";
  out << "  \"n\": " << state.n() << ",\n";
  out << "  \"d\": " << state.d() << ",\n";
  out << "  \"amplitudes\": [\n";
  const Vector& amps = state.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    out << "    ";
    detail::write_complex_pair(out, amps(i));
    out << (i + 1 < amps.size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
}

inline void write_state(const PureState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_state(state, out);
  if (!out) throw std::runtime_error("failed while writing " + path);
}

inline PureState read_state(std::istream& in, const std::string& origin,
                            double norm_tol = kFileNormTol) {
  const nlohmann::json document = detail::parse_document(in, origin);
  detail::require_format(document, "pkme-state", kStateFileVersion, origin);
  if (!document.contains("n") || !document.contains("d") ||
      !document.contains("amplitudes") || !document["amplitudes"].is_array()) {
    throw std::runtime_error("parse error in " + origin +
                             ": missing n, d, or amplitudes");
  }
  const int n = document["n"].get<int>();
  const int d = document["d"].get<int>();
  if (n < 1 || d < 2) {
    throw std::runtime_error("parse error in " + origin + ": need n >= 1 and d >= 2");
  }
  const std::size_t dim = detail::checked_pow(d, n);
  const auto& entries = document["amplitudes"];
  if (entries.size() != dim) {
    throw std::runtime_error("shape mismatch in " + origin + ": expected " +
                             std::to_string(dim) + " amplitudes (n=" + std::to_string(n) +
                             ", d=" + std::to_string(d) + "), found " +
                             std::to_string(entries.size()));
  }
  Vector amps(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    amps(static_cast<Eigen::Index>(i)) = detail::read_complex_pair(entries[i], origin);
  }
  const double norm = amps.norm();
  if (!(std::abs(norm - 1.0) <= norm_tol)) {
    std::ostringstream message;
    message << "norm violation in " << origin << ": ||amplitudes||_2 = "
            << std::setprecision(17) << norm;
    throw std::runtime_error(message.str());
  }
  return PureState(n, d, std::move(amps), norm_tol);
}

inline PureState read_state(const std::string& path, double norm_tol = kFileNormTol) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_state(in, path, norm_tol);
}

inline void write_pipeline(const Pipeline& pipeline, std::ostream& out) {
  const int d = pipeline.empty() ? 2 : pipeline.front().d();
  out << "{\n";
  out << "  \"format\": \"pkme-pipeline\",\n";
  out << "  \"version\": " << kPipelineFileVersion << ",\n";
  out << "  \"d\": " << d << ",\n";
  out << "  \"ops\": [\n";
  for (std::size_t o = 0; o < pipeline.size(); ++o) {
    const ControlledOp& op = pipeline[o];
    out << "    {\"control\": " << op.control() << ", \"target\": " << op.target()
        << ", \"branches\": [\n";
    for (int b = 0; b < op.d(); ++b) {
      const Matrix& branch = op.branches()[static_cast<std::size_t>(b)].entries();
      out << "      [";
      for (Eigen::Index r = 0; r < branch.rows(); ++r) {
        out << (r == 0 ? "[" : "       [");
        for (Eigen::Index c = 0; c < branch.cols(); ++c) {
          detail::write_complex_pair(out, branch(r, c));
          if (c + 1 < branch.cols()) out << ", ";
        }
        out << (r + 1 < branch.rows() ? "],\n" : "]");
      }
      out << (b + 1 < op.d() ? "],\n" : "]\n");
    }
    out << (o + 1 < pipeline.size() ? "    ]},\n" : "    ]}\n");
  }
  out << "  ]\n}\n";
}

inline void write_pipeline(const Pipeline& pipeline, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_pipeline(pipeline, out);
  if (!out) throw std::runtime_error("failed while writing " + path);
}

inline Pipeline read_pipeline(std::istream& in, const std::string& origin,
                              double unitary_tol = kFileUnitaryTol) {
  const nlohmann::json document = detail::parse_document(in, origin);
  detail::require_format(document, "pkme-pipeline", kPipelineFileVersion, origin);
  if (!document.contains("d") || !document["d"].is_number_integer() ||
      !document.contains("ops") || !document["ops"].is_array()) {
    throw std::runtime_error("parse error in " + origin + ": missing d or ops");
  }
  const int d = document["d"].get<int>();
  if (d < 2) throw std::runtime_error("parse error in " + origin + ": need d >= 2");

  Pipeline pipeline;
  for (const auto& op_node : document["ops"]) {
    if (!op_node.is_object() || !op_node.contains("control") ||
        !op_node.contains("target") || !op_node.contains("branches") ||
        !op_node["branches"].is_array()) {
      throw std::runtime_error("parse error in " + origin +
                               ": each op needs control, target, branches");
    }
    const int control = op_node["control"].get<int>();
    const int target = op_node["target"].get<int>();
    if (control < 1 || target < 1) {
      throw std::runtime_error("parse error in " + origin + ": positions are 1-based");
    }
    const auto& branch_nodes = op_node["branches"];
    if (branch_nodes.size() != static_cast<std::size_t>(d)) {
      throw std::runtime_error("shape mismatch in " + origin + ": op needs " +
                               std::to_string(d) + " branch matrices, found " +
                               std::to_string(branch_nodes.size()));
    }
    std::vector<UnitaryMatrix> branches;
    branches.reserve(static_cast<std::size_t>(d));
    for (const auto& branch_node : branch_nodes) {
      if (!branch_node.is_array() || branch_node.size() != static_cast<std::size_t>(d)) {
        throw std::runtime_error("shape mismatch in " + origin +
                                 ": branch matrices must be d x d");
      }
      Matrix entries(d, d);
      for (int r = 0; r < d; ++r) {
        const auto& row = branch_node[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
          throw std::runtime_error("shape mismatch in " + origin +
                                   ": branch matrices must be d x d");
        }
        for (int c = 0; c < d; ++c) {
          entries(r, c) = detail::read_complex_pair(row[static_cast<std::size_t>(c)], origin);
        }
      }
      try {
        branches.emplace_back(std::move(entries), unitary_tol);
      } catch (const std::invalid_argument& error) {
        throw std::runtime_error("unitarity violation in " + origin + ": " + error.what());
      }
    }
    try {
      pipeline.emplace_back(control, target, std::move(branches));
    } catch (const std::invalid_argument& error) {
      throw std::runtime_error("invalid op in " + origin + ": " + error.what());
    }
  }
  return pipeline;
}

inline Pipeline read_pipeline(const std::string& path, double unitary_tol = kFileUnitaryTol) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_pipeline(in, path, unitary_tol);
}

}  // namespace pkme
