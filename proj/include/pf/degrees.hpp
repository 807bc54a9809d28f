#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

namespace pf {

/// Counts s^(i) of vertices having i children.
///
/// Stored sparsely; a valid sequence has n(s) >= 1 and
/// c(s) = sum (1 - i) s^(i) >= 1, so that it is realised by plane forests
/// with exactly c(s) trees.
class DegreeSequence {
 public:
  using Counts = std::map<std::int64_t, std::int64_t>;

  /// Validates and builds. Zero counts are dropped.
  /// Throws Error{EmptySequence} if n = 0, Error{NotAForest} if c <= 0,
  /// Error{InvalidArgument} on negative degrees or counts.
  static DegreeSequence validate(const Counts& counts);

  /// Histogram of a child-count vector.
  static DegreeSequence from_children(const std::vector<std::int64_t>& children);

  const Counts& counts() const noexcept { return counts_; }
  std::int64_t count(std::int64_t degree) const;

  std::int64_t n() const noexcept { return n_; }
  std::int64_t c() const noexcept { return c_; }
  std::int64_t max_degree() const noexcept { return counts_.rbegin()->first; }

  bool operator==(const DegreeSequence&) const = default;

 private:
  DegreeSequence() = default;

  Counts counts_;
  std::int64_t n_ = 0;
  std::int64_t c_ = 0;
};

struct DegreeStats {
  std::int64_t n;
  std::int64_t c;
  std::int64_t delta;
  std::int64_t sigma2_s;  // sum i^2 s^(i)
  double sigma2_p;        // sigma2_s / n
  double mu_p;            // sum i s^(i) / n = (n - c) / n
  double variance_p;      // sigma2_p - mu_p^2, the offspring variance

  bool operator==(const DegreeStats&) const = default;
};

DegreeStats stats(const DegreeSequence& s);

/// d(s): weakly increasing vector holding s^(i) copies of i.
std::vector<std::int64_t> child_vector(const DegreeSequence& s);

struct RegimeDiagnostics {
  std::int64_t n;
  double c_over_sigma_sqrt_n;  // c / (sqrt(sigma2_p) sqrt(n))
  double c_over_std_sqrt_n;    // c / (sqrt(variance_p) sqrt(n))
  double mu_p;
  double sigma2_p;
  double delta_over_sqrt_n;
};

/// Throws Error{DegenerateSigma} when sigma2_p = 0.
RegimeDiagnostics regime_diagnostics(const DegreeSequence& s);

nlohmann::json to_json(const DegreeSequence& s);
DegreeSequence degree_sequence_from_json(const nlohmann::json& j);

/// {0,2} family with c trees; one degree-1 vertex absorbs parity when
/// n - c is odd.
DegreeSequence binary_family(std::int64_t n, std::int64_t c);

/// Binary family whose c is tuned so that c / (std sqrt n) is close to lambda,
/// using the offspring standard deviation of the resulting sequence.
DegreeSequence binary_family_for_lambda(std::int64_t n, double lambda);

/// Geometric-tailed family: s^(i) ~ n 2^-(i+1) for i >= 2, with degree-0 and
/// degree-1 counts adjusted so that c matches lambda as above.
DegreeSequence geometric_family_for_lambda(std::int64_t n, double lambda);

}  // namespace pf
