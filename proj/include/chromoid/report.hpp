#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chromoid/errors.hpp"

namespace chromoid {

/// One concrete counterexample to a law. `items` holds display names in the
/// order the law names them, e.g. (f, g, h) for associativity.
struct Witness {
  std::string law;
  std::vector<std::string> items;
  std::string message;

  bool operator==(const Witness &) const = default;
};

/// Outcome of one verification check. Witnesses are kept in the order they
/// were found; checks enumerate in index order so the order is deterministic.
/// At most `kMaxWitnessesPerLaw` witnesses are stored per law, but every
/// violation is counted.
class ValidationReport {
public:
  static constexpr std::size_t kMaxWitnessesPerLaw = 16;

  ValidationReport() = default;
  explicit ValidationReport(std::string check) : check_(std::move(check)) {}

  const std::string &check() const { return check_; }
  bool passed() const { return violations_ == 0; }
  std::size_t violation_count() const { return violations_; }
  std::span<const Witness> witnesses() const { return witnesses_; }

  /// Laws with at least one violation, sorted.
  std::vector<std::string> violated_laws() const;

  void add(Witness w);
  void add(std::string law, std::vector<std::string> items,
           std::string message = {});

  /// Appends every witness of `other` (used when a check aggregates others).
  void merge(const ValidationReport &other);

  bool operator==(const ValidationReport &) const = default;

private:
  std::string check_;
  std::vector<Witness> witnesses_;
  std::map<std::string, std::size_t> per_law_;
  std::size_t violations_ = 0;
};

/// Thrown when an operation's precondition check fails; carries the report.
class PreconditionError : public Error {
public:
  PreconditionError(const std::string &what, ValidationReport report)
      : Error(what), report_(std::move(report)) {}

  const ValidationReport &report() const { return report_; }

private:
  ValidationReport report_;
};

} // namespace chromoid
