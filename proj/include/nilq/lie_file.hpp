#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilq/lie_algebra.hpp"

namespace nilq {

enum class ChartKind { Log, Product };

/// Coordinates on a slice s = span(labels): log charts use exp(sum y_i S_i),
/// product charts use exp(y_1 S_1) ... exp(y_k S_k).
struct ChartSpec {
  ChartKind kind = ChartKind::Log;
  std::vector<std::string> labels;
};

/// Parsed contents of a `.lie` file.
struct LieDocument {
  LieAlgebra algebra;
  std::vector<std::pair<std::string, Subspace>> subspaces;
  /// Basis label -> coordinate variable name.
  std::vector<std::pair<std::string, std::string>> variables;
  std::optional<ChartSpec> chart;

  bool has_subspace(const std::string& name) const;
  const Subspace& subspace(const std::string& name) const;
  /// Variable name for a basis label, defaulting to the lowercased label.
  std::string variable_for(const std::string& label) const;
};

/// Signed terms c*symbol of a linear combination such as "Y3 + 1/2*Z2 - E(1,2)".
std::vector<std::pair<Scalar, std::string>> parse_terms(const std::string& text);

Vector parse_combination(const LieAlgebra& a, const std::string& text);

/// Parses `.lie` text; errors are InputError with a "line N:" prefix.
LieDocument parse_lie(const std::string& text);

/// Canonical text; parse_lie(emit_lie(d)) emits identically.
std::string emit_lie(const LieDocument& doc);

std::string read_file(const std::string& path);

}  // namespace nilq
