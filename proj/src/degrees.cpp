#include "pf/degrees.hpp"

#include <cmath>
#include <string>

#include "pf/error.hpp"

namespace pf {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "64-bit sum overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "64-bit product overflow");
  return r;
}

}  // namespace

DegreeSequence DegreeSequence::validate(const Counts& counts) {
  DegreeSequence s;
  std::int64_t n = 0;
  std::int64_t edges = 0;  // sum i s^(i)
  for (auto [degree, count] : counts) {
    if (degree < 0 || count < 0) {
      throw Error(ErrorCode::InvalidArgument, "negative degree or count");
    }
    if (count == 0) continue;
    s.counts_.emplace(degree, count);
    n = checked_add(n, count);
    edges = checked_add(edges, checked_mul(degree, count));
  }
  if (n == 0) throw Error(ErrorCode::EmptySequence, "degree sequence has no vertices");
  const std::int64_t c = n - edges;
  if (c <= 0) {
    throw Error(ErrorCode::NotAForest, "c(s) = " + std::to_string(c) + " must be positive");
  }
  s.n_ = n;
  s.c_ = c;
  return s;
}

DegreeSequence DegreeSequence::from_children(const std::vector<std::int64_t>& children) {
  Counts counts;
  for (auto k : children) ++counts[k];
  return validate(counts);
}

std::int64_t DegreeSequence::count(std::int64_t degree) const {
  auto it = counts_.find(degree);
  return it == counts_.end() ? 0 : it->second;
}

DegreeStats stats(const DegreeSequence& s) {
  std::int64_t sigma2 = 0;
  for (auto [degree, count] : s.counts()) {
    sigma2 = checked_add(sigma2, checked_mul(checked_mul(degree, degree), count));
  }
  const double n = static_cast<double>(s.n());
  const double sigma2_p = static_cast<double>(sigma2) / n;
  const double mu_p = static_cast<double>(s.n() - s.c()) / n;
  return DegreeStats{s.n(), s.c(), s.max_degree(), sigma2, sigma2_p, mu_p,
                     sigma2_p - mu_p * mu_p};
}

std::vector<std::int64_t> child_vector(const DegreeSequence& s) {
  std::vector<std::int64_t> d;
  d.reserve(static_cast<std::size_t>(s.n()));
  for (auto [degree, count] : s.counts()) d.insert(d.end(), static_cast<std::size_t>(count), degree);
  return d;
}

RegimeDiagnostics regime_diagnostics(const DegreeSequence& s) {
  const auto st = stats(s);
  if (st.sigma2_s == 0) throw Error(ErrorCode::DegenerateSigma, "no vertex has positive degree");
  const double sqrt_n = std::sqrt(static_cast<double>(st.n));
  const double c = static_cast<double>(st.c);
  const double std_p = st.variance_p > 0 ? std::sqrt(st.variance_p) : 0.0;
  return RegimeDiagnostics{
      st.n,
      c / (std::sqrt(st.sigma2_p) * sqrt_n),
      std_p > 0 ? c / (std_p * sqrt_n) : INFINITY,
      st.mu_p,
      st.sigma2_p,
      static_cast<double>(st.delta) / sqrt_n,
  };
}

nlohmann::json to_json(const DegreeSequence& s) {
  nlohmann::json counts = nlohmann::json::object();
  for (auto [degree, count] : s.counts()) counts[std::to_string(degree)] = count;
  return {{"counts", counts}};
}

DegreeSequence degree_sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("counts") || !j["counts"].is_object()) {
    throw Error(ErrorCode::ParseError, "expected {\"counts\": {...}}");
  }
  DegreeSequence::Counts counts;
  for (const auto& [key, value] : j["counts"].items()) {
    std::size_t used = 0;
    std::int64_t degree = 0;
    try {
      degree = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) {
      throw Error(ErrorCode::ParseError, "degree key '" + key + "' is not a decimal integer");
    }
    if (!value.is_number_integer()) {
      throw Error(ErrorCode::ParseError, "count for degree " + key + " is not an integer");
    }
    counts[degree] = value.get<std::int64_t>();
  }
  return DegreeSequence::validate(counts);
}

DegreeSequence binary_family(std::int64_t n, std::int64_t c) {
  if (c < 1 || c > n) throw Error(ErrorCode::InvalidArgument, "binary family needs 1 <= c <= n");
  if ((n - c) % 2 == 0) {
    return DegreeSequence::validate({{0, (n + c) / 2}, {2, (n - c) / 2}});
  }
  return DegreeSequence::validate({{0, (n - 1 + c) / 2}, {1, 1}, {2, (n - 1 - c) / 2}});
}

DegreeSequence binary_family_for_lambda(std::int64_t n, double lambda) {
  // One fixed-point pass: start from unit variance, then re-tune with the
  // variance of the resulting sequence.
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  auto pick = [&](double std_p) {
    const double target = lambda * std_p * sqrt_n;
    std::int64_t c = std::max<std::int64_t>(1, std::llround(target));
    // Prefer the parity that avoids the degree-1 vertex.
    if ((n - c) % 2 != 0) {
      const std::int64_t lo = c - 1, hi = c + 1;
      c = (lo >= 1 && std::abs(lo - target) <= std::abs(hi - target)) ? lo : hi;
    }
    return std::min(c, n);
  };
  auto s = binary_family(n, pick(1.0));
  return binary_family(n, pick(std::sqrt(stats(s).variance_p)));
}

DegreeSequence geometric_family_for_lambda(std::int64_t n, double lambda) {
  auto build = [&](double std_p) {
    DegreeSequence::Counts counts;
    std::int64_t used = 0, edges = 0;
    for (std::int64_t i = 2;; ++i) {
      const auto k = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * std::ldexp(1.0, -static_cast<int>(i + 1))));
      if (k == 0) break;
      counts[i] = k;
      used += k;
      edges += i * k;
    }
    // Remaining vertices split into degree 0 and 1: with s0 + s1 = rest and
    // s1 + edges = n - c we get s1 = n - c - edges.
    const std::int64_t rest = n - used;
    const std::int64_t target_c =
        std::max<std::int64_t>(1, std::llround(lambda * std_p * std::sqrt(static_cast<double>(n))));
    std::int64_t s1 = std::clamp<std::int64_t>(n - target_c - edges, 0, rest);
    counts[1] = s1;
    counts[0] = rest - s1;
    return DegreeSequence::validate(counts);
  };
  auto s = build(std::sqrt(2.0));
  return build(std::sqrt(stats(s).variance_p));
}

}  // namespace pf
