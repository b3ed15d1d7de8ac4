#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace horolab {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;
using RealVec = std::vector<double>;

/// Tri-state outcome for finite-horizon surrogates of limit statements.
/// `Inconclusive` is first-class: "not observed within the horizon" is
/// never folded into `Fail`.
enum class Outcome { Pass, Fail, Inconclusive };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Residual-aware set membership.
enum class Containment { In, Out, Margin };

inline const char* to_string(Containment c) {
  switch (c) {
    case Containment::In: return "in";
    case Containment::Out: return "out";
    case Containment::Margin: return "margin";
  }
  return "?";
}

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Point outside the open domain of its space, or invalid space parameters.
struct DomainError : Error { using Error::Error; };
/// Distance requested between vertices in different graph components.
struct UnreachableError : Error { using Error::Error; };
/// Operation not supported by the space kind (e.g. rays on a finite graph).
struct CapabilityError : Error { using Error::Error; };
/// A limit evaluation failed to stabilize within its horizon.
struct ConvergenceError : Error { using Error::Error; };
/// A finite-horizon surrogate could not decide (e.g. a sequence straddling
/// distinct horofunctions); distinct from failure.
struct InconclusiveError : Error { using Error::Error; };
/// Bad argument (empty sample, mismatched spaces, ...).
struct ArgumentError : Error { using Error::Error; };
/// Numeric preimage / root solve did not reach its residual tolerance.
struct SolverError : Error { using Error::Error; };
/// Rejection sampler starved (target set too small inside the box).
struct SamplingError : Error { using Error::Error; };
/// A map failed its non-expansion validation at construction.
struct ValidationError : Error { using Error::Error; };

}  // namespace horolab
