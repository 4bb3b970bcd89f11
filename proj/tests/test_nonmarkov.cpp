#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "isingbath/errors.hpp"
#include "isingbath/nonmarkov.hpp"

using namespace isingbath;

namespace {

std::vector<double> squares(std::vector<double> v) {
  for (auto& x : v) x *= x;
  return v;
}

std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> step(-0.08, 0.06);
  std::vector<double> q{1.0};
  for (std::size_t i = 1; i < n; ++i) q.push_back(std::clamp(q.back() + step(rng), 0.05, 1.0));
  return q;
}

}  // namespace

TEST_CASE("extrema examples") {
  CHECK(find_extrema(std::vector<double>{1.0, 0.8, 0.5, 0.1}).events.empty());
  const auto ex = find_extrema(std::vector<double>{1.0, 0.4, 0.8, 0.3}, 0.01);
  CHECK(ex.initial == 1.0);
  REQUIRE(ex.events.size() == 2);
  CHECK(ex.events[0].kind == ExtremumKind::min);
  CHECK(ex.events[0].index == 1);
  CHECK(ex.events[0].value == 0.4);
  CHECK(ex.events[1].kind == ExtremumKind::max);
  CHECK(ex.events[1].index == 2);
  CHECK(ex.events[1].value == 0.8);
}

TEST_CASE("short series have no extrema") {
  CHECK(find_extrema(std::vector<double>{}).events.empty());
  CHECK(find_extrema(std::vector<double>{1.0, 0.2}).events.empty());
}

TEST_CASE("sub-threshold ripple is ignored") {
  const std::vector<double> q{1.0, 0.5, 0.5 + 1e-8, 0.4, 0.3};
  CHECK(find_extrema(q).events.empty());
  CHECK(find_extrema(q, 1e-12).events.size() == 2);
}

TEST_CASE("plateau collapses to its midpoint") {
  const std::vector<double> q{1.0, 0.3, 0.3, 0.3, 0.9, 0.2};
  const auto ex = find_extrema(q, 0.01);
  REQUIRE(ex.events.size() == 2);
  CHECK(ex.events[0].index == 2);
  CHECK(ex.events[1].index == 4);
}

TEST_CASE("an open rise closes at the last sample") {
  const std::vector<double> q{1.0, 0.2, 0.6, 1.0};
  const std::vector<double> t{0.0, 0.5, 1.0, 1.5};
  const auto ex = find_extrema(q, t, 0.01);
  REQUIRE(ex.events.size() == 2);
  CHECK(ex.events[1].index == 3);
  CHECK(ex.events[1].time == 1.5);
}

TEST_CASE("extrema structure on random series") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto q = random_walk(rng, 300);
    std::vector<double> t(q.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.1 * static_cast<double>(i);
    const double thr = 1e-3;
    const auto ex = find_extrema(q, t, thr);
    for (std::size_t i = 0; i < ex.events.size(); ++i) {
      const auto& e = ex.events[i];
      CHECK(e.time == t[e.index]);
      CHECK(e.value == q[e.index]);
      if (i > 0) {
        CHECK(e.time > ex.events[i - 1].time);
        CHECK(e.kind != ex.events[i - 1].kind);
      }
      if (e.kind == ExtremumKind::max && i > 0) CHECK(e.value > ex.events[i - 1].value + thr);
      if (e.kind == ExtremumKind::max && i + 1 < ex.events.size())
        CHECK(e.value > ex.events[i + 1].value + thr);
    }
  }
}

TEST_CASE("revival sum") {
  CHECK(n_q(squares({1.0, 0.9, 0.5, 0.2})) == 0.0);
  CHECK(n_q(squares({1.0, 0.2, 0.5, 0.3})) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(n_q(squares({1.0, 0.3, 0.6, 0.1, 0.2, 0.05})) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("normalized revival sum") {
  CHECK(i_q(0.0) == 0.0);
  CHECK(i_q(1.0) == 0.5);
  CHECK(i_q(std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(i_q(1e12) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK_THROWS_AS(i_q(-0.1), ConfigError);
  CHECK_THROWS_AS(i_q(std::nan("")), ConfigError);
}

TEST_CASE("normalized measure examples") {
  CHECK(normalized_n(std::vector<double>{1.0, 0.7, 0.4, 0.1}) == 0.0);
  CHECK(normalized_n(std::vector<double>{1.0, 0.2, 1.0}) == 1.0);
  CHECK(normalized_n(std::vector<double>{1.0, 0.4, 0.8}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(normalized_n(std::vector<double>{0.0, 0.4, 0.8}), ConfigError);
  // each minimum sees every later maximum: (0.9 - 0.5) / 0.5 and (0.9 - 0.2) / 0.8
  CHECK(normalized_n(std::vector<double>{1.0, 0.5, 0.6, 0.2, 0.9, 0.1}, 0.01) ==
        doctest::Approx(0.7 / 0.8).epsilon(1e-14));
}

TEST_CASE("measure properties on random series") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto q = random_walk(rng, 120);
    if (q[0] == 0.0) continue;
    const double n = normalized_n(q);
    CHECK(n >= 0.0);
    CHECK(n <= 1.0);

    const double c = scale(rng);
    auto scaled = q;
    for (auto& x : scaled) x *= c;
    CHECK(normalized_n(scaled, 1e-6 * c) == doctest::Approx(n).epsilon(1e-12));

    // a strictly decaying tail below the last value adds no revival
    auto tailed = q;
    const double last = q.back();
    for (int i = 1; i <= 20; ++i) tailed.push_back(last * std::pow(0.9, i));
    CHECK(normalized_n(tailed) == doctest::Approx(n).epsilon(1e-12));
    CHECK(n_q(squares(tailed)) == doctest::Approx(n_q(squares(q))).epsilon(1e-12));
  }
}

TEST_CASE("extremum values do not depend on the time axis scale") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = random_walk(rng, 200);
    std::vector<double> t1(q.size()), t2(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      t1[i] = 0.05 * static_cast<double>(i);
      t2[i] = 7.0 * t1[i];
    }
    const auto a = find_extrema(q, t1), b = find_extrema(q, t2);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
      CHECK(a.events[i].value == b.events[i].value);
      CHECK(a.events[i].index == b.events[i].index);
    }
  }
}
