#include <doctest.h>

#include <cmath>

#include "pf/degrees.hpp"
#include "pf/error.hpp"

using namespace pf;

namespace {
DegreeSequence fig1() { return DegreeSequence::validate({{0, 7}, {1, 2}, {2, 2}, {3, 1}}); }
}  // namespace

TEST_CASE("validate accepts forests and rejects the rest") {
  const auto s = fig1();
  CHECK(s.n() == 12);
  CHECK(s.c() == 3);

  const auto single = DegreeSequence::validate({{0, 1}});
  CHECK(single.n() == 1);
  CHECK(single.c() == 1);

  CHECK_THROWS_AS(DegreeSequence::validate({{1, 5}}), Error);
  try {
    DegreeSequence::validate({{1, 5}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAForest);
  }
  try {
    DegreeSequence::validate({{3, 0}});
    FAIL("expected EmptySequence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySequence);
  }
  CHECK_THROWS_AS(DegreeSequence::validate({{0, -1}}), Error);
  // zero counts are dropped
  CHECK(DegreeSequence::validate({{0, 1}, {4, 0}}).counts().size() == 1);
}

TEST_CASE("overflow is an error, not a wrap") {
  try {
    DegreeSequence::validate({{0, INT64_MAX}, {1, INT64_MAX}});
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}

TEST_CASE("stats") {
  const auto st = stats(fig1());
  CHECK(st.n == 12);
  CHECK(st.c == 3);
  CHECK(st.delta == 3);
  CHECK(st.sigma2_s == 19);
  CHECK(st.mu_p == doctest::Approx(9.0 / 12));
  CHECK(st.sigma2_p == doctest::Approx(19.0 / 12));

  const auto s2 = stats(DegreeSequence::validate({{0, 3}, {1, 2}, {3, 1}}));
  CHECK(s2.n == 6);
  CHECK(s2.c == 1);

  const auto s3 = stats(DegreeSequence::validate({{0, 1}}));
  CHECK(s3.delta == 0);
  CHECK(s3.sigma2_s == 0);
  CHECK(s3.mu_p == 0.0);

  // pure: bitwise-equal on equal inputs
  CHECK(stats(fig1()) == stats(fig1()));
}

TEST_CASE("n - c equals the edge count") {
  for (const auto& counts : std::vector<DegreeSequence::Counts>{
           {{0, 7}, {1, 2}, {2, 2}, {3, 1}}, {{0, 5050}, {2, 4950}}, {{0, 9}, {5, 2}}, {{0, 1}}}) {
    const auto s = DegreeSequence::validate(counts);
    std::int64_t edges = 0;
    for (auto [i, k] : s.counts()) edges += i * k;
    CHECK(s.n() - s.c() == edges);
  }
}

TEST_CASE("child_vector") {
  CHECK(child_vector(DegreeSequence::validate({{0, 3}, {1, 2}, {3, 1}})) == std::vector<std::int64_t>{0, 0, 0, 1, 1, 3});
  CHECK(child_vector(DegreeSequence::validate({{0, 1}})) == std::vector<std::int64_t>{0});
  const auto d = child_vector(fig1());
  CHECK(d == std::vector<std::int64_t>{0, 0, 0, 0, 0, 0, 0, 1, 1, 2, 2, 3});
  CHECK(DegreeSequence::from_children(d) == fig1());
}

TEST_CASE("regime_diagnostics") {
  const auto r = regime_diagnostics(DegreeSequence::validate({{0, 5050}, {2, 4950}}));
  CHECK(r.n == 10000);
  CHECK(r.sigma2_p == doctest::Approx(1.98));
  CHECK(r.c_over_sigma_sqrt_n == doctest::Approx(100.0 / std::sqrt(1.98 * 1e4)).epsilon(1e-12));
  CHECK(r.c_over_sigma_sqrt_n == doctest::Approx(0.7107).epsilon(1e-4));
  CHECK(r.delta_over_sqrt_n == doctest::Approx(0.02));
  // offspring variance 1.98 - 0.99^2
  CHECK(r.c_over_std_sqrt_n == doctest::Approx(100.0 / std::sqrt(0.9999 * 1e4)));

  try {
    regime_diagnostics(DegreeSequence::validate({{0, 1}}));
    FAIL("expected DegenerateSigma");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSigma);
  }
  CHECK(regime_diagnostics(fig1()).c_over_sigma_sqrt_n == doctest::Approx(3.0 / std::sqrt(19.0)));
}

TEST_CASE("json round trip") {
  const auto j = to_json(fig1());
  CHECK(j["counts"]["0"] == 7);
  CHECK(j["counts"]["3"] == 1);
  CHECK(degree_sequence_from_json(j) == fig1());
  CHECK_THROWS_AS(degree_sequence_from_json(nlohmann::json::parse(R"({"counts": {"x": 1}})")), Error);
}

TEST_CASE("parametric families") {
  const auto b = binary_family(10000, 100);
  CHECK(b.count(0) == 5050);
  CHECK(b.count(2) == 4950);
  const auto odd = binary_family(10, 1);  // n - c odd: one degree-1 vertex
  CHECK(odd.c() == 1);
  CHECK(odd.n() == 10);
  CHECK(odd.count(1) == 1);

  const auto tuned = binary_family_for_lambda(10000, 1.0);
  CHECK(tuned.c() == 100);
  const auto g = geometric_family_for_lambda(10000, 1.0);
  CHECK(g.n() == 10000);
  CHECK(regime_diagnostics(g).c_over_std_sqrt_n == doctest::Approx(1.0).epsilon(0.05));
}
