#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "u2/resla.hpp"

namespace u2 {

/// Current value of the "format" key.
inline constexpr int kSpecFormatVersion = 1;

/// Parsed algebra spec file. Ordinary algebras carry a zero power map that is never consulted.
struct AlgebraSpec {
  bool restricted = true;
  RestrictedLieAlgebra algebra;
  const LieAlgebra& lie() const { return algebra; }
};

struct SpecOptions {
  /// Run the axiom checks and throw AxiomViolation on failure.
  bool check_axioms = true;
};

/// Throws SyntaxError ("line:col" for malformed JSON, a JSON pointer for schema errors),
/// IndexOutOfRange, or AxiomViolation carrying the report.
AlgebraSpec parse_spec(std::string_view text, const SpecOptions& opt = {});
AlgebraSpec parse_spec_file(const std::filesystem::path& path, const SpecOptions& opt = {});

/// Canonical serialization: sorted sparse entries, two-space indentation, trailing newline.
std::string serialize_spec(const RestrictedLieAlgebra& l);
std::string serialize_ordinary_spec(const LieAlgebra& l);
std::string serialize_spec(const AlgebraSpec& s);

}  // namespace u2
