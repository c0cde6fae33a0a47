#pragma once

#include <cstdint>
#include <string>

namespace relspec {

/// A dimension that may be infinite, or undetermined at a point where the
/// range fails to be closed.
struct Count {
  enum class Kind { finite, infinite, unknown };
  Kind kind = Kind::finite;
  std::int64_t value = 0;

  static Count of(std::int64_t n) { return {Kind::finite, n}; }
  static Count infinite() { return {Kind::infinite, 0}; }
  static Count unknown() { return {Kind::unknown, 0}; }
  bool finite() const { return kind == Kind::finite; }
  friend bool operator==(const Count&, const Count&) = default;
};

/// κ = α − β, with ±∞ when exactly one side is infinite.
struct IndexValue {
  enum class Kind { finite, plus_infinity, minus_infinity, undefined };
  Kind kind = Kind::finite;
  std::int64_t value = 0;

  static IndexValue of(std::int64_t k) { return {Kind::finite, k}; }
  static IndexValue from(const Count& alpha, const Count& beta);
  bool finite() const { return kind == Kind::finite; }
  friend bool operator==(const IndexValue&, const IndexValue&) = default;
};

enum class FredholmClass { phi, phi_plus_only, phi_minus_only, not_semi_fredholm };

struct FredholmData {
  Count alpha;
  Count beta;
  IndexValue kappa;
  bool closed_range = true;
  FredholmClass cls = FredholmClass::phi;
  /// α and β were inferred from the index alone (banded models with
  /// perturbations), not computed.
  bool generic = false;

  bool upper_semi_fredholm() const { return closed_range && alpha.finite(); }
  bool lower_semi_fredholm() const { return closed_range && beta.finite(); }
  bool in_resolvent() const {
    return closed_range && alpha == Count::of(0) && beta == Count::of(0);
  }
  friend bool operator==(const FredholmData&, const FredholmData&) = default;
};

/// Builds the record for a closed-range point from finite or infinite α, β,
/// deriving κ and the semi-Fredholm class.
FredholmData make_fredholm(Count alpha, Count beta, bool closed_range, bool generic = false);

std::string to_string(FredholmClass c);
std::string to_string(const Count& c);
std::string to_string(const IndexValue& k);

}  // namespace relspec
