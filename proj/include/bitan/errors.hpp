#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace bitan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resultant was requested for an identically zero operand.
class DegenerateElimination : public Error {
 public:
  using Error::Error;
};

/// An iterative method (root finder, Gauss-Newton polish) failed its
/// residual bound. `index` identifies the offending approximation when the
/// method works on several at once, and is npos otherwise.
class NonConvergence : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit NonConvergence(const std::string& what, std::size_t index = npos)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The bitangent solver did not end up with exactly 28 lines. `diagnostics`
/// carries a JSON document with per-chart information.
class WrongCount : public Error {
 public:
  WrongCount(std::size_t count, std::string diagnostics)
      : Error("expected 28 bitangents, found " + std::to_string(count)),
        count_(count),
        diagnostics_(std::move(diagnostics)) {}

  std::size_t count() const noexcept { return count_; }
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::size_t count_;
  std::string diagnostics_;
};

/// The gradient of the quartic vanishes (numerically) at a tangency point.
class SingularCurve : public Error {
 public:
  using Error::Error;
};

/// Group closure produced more elements than the cap allows.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("group closure exceeded cap of " + std::to_string(cap) + " elements"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// Two projectively distinct objects fell inside the separation guard of the
/// tolerance-based matcher; the tolerance regime cannot be trusted.
class AmbiguousMatch : public Error {
 public:
  using Error::Error;
};

/// A group element mapped a bitangent outside the computed set.
class NotInvariant : public Error {
 public:
  NotInvariant(std::size_t element, std::size_t line)
      : Error("group element " + std::to_string(element) + " maps bitangent " +
              std::to_string(line) + " outside the set"),
        element_(element),
        line_(line) {}
  std::size_t element() const noexcept { return element_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t element_;
  std::size_t line_;
};

/// Parameters hit an exclusion locus of a catalog family. `promoted` names the
/// type the curve is promoted to ("singular" when the curve degenerates).
class ExcludedParameter : public Error {
 public:
  ExcludedParameter(std::string promoted, std::string rule)
      : Error("parameters excluded (" + rule + "): curve becomes " + promoted),
        promoted_(std::move(promoted)),
        rule_(std::move(rule)) {}
  const std::string& promoted() const noexcept { return promoted_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string promoted_;
  std::string rule_;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// specialize() was called on a family without free parameters.
class DegenerateFamily : public Error {
 public:
  using Error::Error;
};

}  // namespace bitan
