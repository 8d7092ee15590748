#pragma once

#include <stdexcept>
#include <string>

namespace heat {

/// Unknown vertex, or an argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two vertices of a finite graph lie in different components.
class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph description document violates the graph invariants.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stated precondition (degree bound, parameter range, ...) does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested at |t| >= r for a finite radius certificate.
class RadiusExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The certified tail could not be pushed below the tolerance within the
/// term cap. Carries the best bound reached.
class TruncationFailure : public std::runtime_error {
 public:
  TruncationFailure(const std::string& what, double best_bound, int terms)
      : std::runtime_error(what), best_bound_(best_bound), terms_(terms) {}
  double best_bound() const noexcept { return best_bound_; }
  int terms() const noexcept { return terms_; }

 private:
  double best_bound_;
  int terms_;
};

/// The requested audit window contains no points.
class AuditWindowEmpty : public std::runtime_error {
 public:
  AuditWindowEmpty(const std::string& what, double r0)
      : std::runtime_error(what), r0_(r0) {}
  double r0() const noexcept { return r0_; }

 private:
  double r0_;
};

}  // namespace heat
