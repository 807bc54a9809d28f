#include "pf/paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pf/error.hpp"

namespace pf {

std::vector<std::int64_t> LatticePath::values() const {
  std::vector<std::int64_t> w(increments.size() + 1, 0);
  for (std::size_t i = 0; i < increments.size(); ++i) w[i + 1] = w[i] + increments[i];
  return w;
}

std::int64_t LatticePath::endpoint() const {
  std::int64_t w = 0;
  for (auto x : increments) w += x;
  return w;
}

std::int64_t LatticePath::minimum() const {
  std::int64_t w = 0, lo = 0;
  for (auto x : increments) lo = std::min(lo, w += x);
  return lo;
}

LatticePath walk_from_children(std::span<const std::int64_t> children) {
  LatticePath p;
  p.increments.reserve(children.size());
  for (auto k : children) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative child count");
    p.increments.push_back(k - 1);
  }
  return p;
}

std::vector<std::int64_t> children_of(const LatticePath& p) {
  std::vector<std::int64_t> c(p.increments.size());
  std::transform(p.increments.begin(), p.increments.end(), c.begin(), [](auto x) { return x + 1; });
  return c;
}

LatticePath cyclic_shift(const LatticePath& p, std::int64_t u) {
  const auto n = static_cast<std::int64_t>(p.size());
  if (u < 0 || u > n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "shift " + std::to_string(u) + " outside [0, " + std::to_string(n) + "]");
  }
  LatticePath q = p;
  if (n > 0) std::rotate(q.increments.begin(), q.increments.begin() + (u % n), q.increments.end());
  return q;
}

std::int64_t first_passage_index(const LatticePath& p, std::int64_t y) {
  std::int64_t w = 0;
  if (w <= y) return 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    w += p.increments[j];
    if (w <= y) return static_cast<std::int64_t>(j + 1);
  }
  return 0;
}

bool is_first_passage_bridge(const LatticePath& p) {
  const std::int64_t c = -p.endpoint();
  if (c < 1) return false;
  std::int64_t w = 0;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    w += p.increments[j];
    if (w <= -c) return false;
  }
  return true;
}

LatticePath rotate_to_first_passage(const LatticePath& bridge, std::int64_t j) {
  const std::int64_t c = -bridge.endpoint();
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "bridge must end at -c with c >= 1");
  if (j < 0 || j >= c) {
    throw Error(ErrorCode::InvalidShiftIndex,
                "j = " + std::to_string(j) + " outside [0, " + std::to_string(c - 1) + "]");
  }
  return cyclic_shift(bridge, first_passage_index(bridge, bridge.minimum() + j));
}

std::uint64_t multinomial_count(const DegreeSequence& s) {
  // Product of binomials C(running total, count), each exact.
  std::uint64_t result = 1;
  std::uint64_t total = 0;
  for (auto [degree, count] : s.counts()) {
    for (std::int64_t k = 1; k <= count; ++k) {
      ++total;
      unsigned __int128 r = static_cast<unsigned __int128>(result) * total;
      r /= static_cast<std::uint64_t>(k);
      if (r > UINT64_MAX) throw Error(ErrorCode::Overflow, "multinomial exceeds 64 bits");
      result = static_cast<std::uint64_t>(r);
    }
  }
  return result;
}

namespace {

void check_cap(const DegreeSequence& s, std::int64_t cap) {
  if (s.n() > cap) {
    throw Error(ErrorCode::TooLarge,
                "n(s) = " + std::to_string(s.n()) + " exceeds enumeration cap " + std::to_string(cap));
  }
}

}  // namespace

std::vector<LatticePath> enumerate_bridges(const DegreeSequence& s, std::int64_t cap) {
  check_cap(s, cap);
  auto d = child_vector(s);
  std::vector<LatticePath> out;
  LatticePath p = walk_from_children(d);  // sorted, so permutations come out lexicographically
  do {
    out.push_back(p);
  } while (std::next_permutation(p.increments.begin(), p.increments.end()));
  return out;
}

std::vector<LatticePath> enumerate_fp_bridges(const DegreeSequence& s, std::int64_t cap) {
  auto all = enumerate_bridges(s, cap);
  std::erase_if(all, [](const LatticePath& p) { return !is_first_passage_bridge(p); });
  return all;
}

NToOneReport verify_n_to_one(const DegreeSequence& s, std::int64_t cap) {
  NToOneReport report;
  for (const auto& fp : enumerate_fp_bridges(s, cap)) report.preimage_counts.emplace(fp, 0);
  bool ok = true;
  for (const auto& b : enumerate_bridges(s, cap)) {
    for (std::int64_t j = 0; j < s.c(); ++j) {
      auto it = report.preimage_counts.find(rotate_to_first_passage(b, j));
      if (it == report.preimage_counts.end()) {
        ok = false;  // image outside F(s)
      } else {
        ++it->second;
      }
    }
  }
  for (const auto& [path, count] : report.preimage_counts) ok = ok && count == s.n();
  report.ok = ok;
  return report;
}

BridgeStats bridge_statistics(std::span<const std::int64_t> children, double sigma_p) {
  if (children.empty()) throw Error(ErrorCode::InvalidArgument, "empty child sequence");
  if (!(sigma_p > 0)) throw Error(ErrorCode::DegenerateSigma, "sigma_p must be positive");
  const auto n = static_cast<std::int64_t>(children.size());
  std::int64_t sum = 0, sum_sq = 0;
  for (auto k : children) {
    sum += k;
    sum_sq += (k - 1) * (k - 1);
  }
  const double c = static_cast<double>(n - sum);
  const double nd = static_cast<double>(n);
  return BridgeStats{
      -c / (sigma_p * std::sqrt(nd)),
      (static_cast<double>(sum_sq) - c * c / nd) / (sigma_p * sigma_p * nd),
      sum_sq,
  };
}

nlohmann::json to_json(const LatticePath& p) { return p.increments; }

LatticePath lattice_path_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "path must be a JSON array of increments");
  LatticePath p;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < -1) {
      throw Error(ErrorCode::ParseError, "increments must be integers >= -1");
    }
    p.increments.push_back(x.get<std::int64_t>());
  }
  return p;
}

}  // namespace pf
