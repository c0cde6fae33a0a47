#include "relspec/fredholm.hpp"

namespace relspec {

IndexValue IndexValue::from(const Count& alpha, const Count& beta) {
  if (alpha.finite() && beta.finite()) return of(alpha.value - beta.value);
  if (alpha.kind == Count::Kind::infinite && beta.finite()) return {Kind::plus_infinity, 0};
  if (beta.kind == Count::Kind::infinite && alpha.finite()) return {Kind::minus_infinity, 0};
  return {Kind::undefined, 0};
}

FredholmData make_fredholm(Count alpha, Count beta, bool closed_range, bool generic) {
  FredholmData d;
  d.alpha = alpha;
  d.beta = beta;
  d.kappa = IndexValue::from(alpha, beta);
  d.closed_range = closed_range;
  d.generic = generic;
  const bool plus = closed_range && alpha.finite();
  const bool minus = closed_range && beta.finite();
  if (plus && minus) {
    d.cls = FredholmClass::phi;
  } else if (plus) {
    d.cls = FredholmClass::phi_plus_only;
  } else if (minus) {
    d.cls = FredholmClass::phi_minus_only;
  } else {
    d.cls = FredholmClass::not_semi_fredholm;
  }
  return d;
}

std::string to_string(FredholmClass c) {
  switch (c) {
    case FredholmClass::phi: return "Phi";
    case FredholmClass::phi_plus_only: return "Phi_plus_only";
    case FredholmClass::phi_minus_only: return "Phi_minus_only";
    case FredholmClass::not_semi_fredholm: return "not_semi_fredholm";
  }
  return "?";
}

std::string to_string(const Count& c) {
  switch (c.kind) {
    case Count::Kind::finite: return std::to_string(c.value);
    case Count::Kind::infinite: return "inf";
    case Count::Kind::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(const IndexValue& k) {
  switch (k.kind) {
    case IndexValue::Kind::finite: return std::to_string(k.value);
    case IndexValue::Kind::plus_infinity: return "+inf";
    case IndexValue::Kind::minus_infinity: return "-inf";
    case IndexValue::Kind::undefined: return "undefined";
  }
  return "?";
}

}  // namespace relspec
