#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "popcast/rng.hpp"
#include "popcast/tfidf.hpp"

using namespace popcast;

namespace {

SparseVector sv(std::initializer_list<std::pair<uint64_t, double>> entries) {
  SparseVector v;
  v.entries.assign(entries.begin(), entries.end());
  return v;
}

}  // namespace

TEST_CASE("idf formula") {
  SUBCASE("single unit") {
    auto m = TfIdfModel::fit({{"a", "b"}});
    CHECK(m.idf("a") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.idf("b") == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("token in all of 3 units") {
    auto m = TfIdfModel::fit({{"a"}, {"a", "b"}, {"a", "c"}});
    CHECK(m.idf("a") == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("token in 1 of 3 units") {
    auto m = TfIdfModel::fit({{"a"}, {"a", "b"}, {"a", "c"}});
    CHECK(m.idf("b") == doctest::Approx(1.6931471805599453).epsilon(1e-12));
  }
  SUBCASE("empty unit list is an error") {
    CHECK_THROWS_AS(TfIdfModel::fit({}), std::invalid_argument);
  }
}

TEST_CASE("vectorize") {
  auto m = TfIdfModel::fit({{"a", "b"}, {"b", "c"}});
  SUBCASE("empty tokens give zero vector") {
    CHECK(m.vectorize({}).empty());
  }
  SUBCASE("term frequency scales idf") {
    auto m1 = TfIdfModel::fit({{"a", "b"}});
    auto v = m1.vectorize({"a", "a"});
    REQUIRE(v.entries.size() == 1);
    CHECK(v.entries[0].second == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("mixed in/out-of-vocabulary weights") {
    // fit on {a,b},{b,c}: idf(a)=ln(3/2)+1, idf(b)=1, oov=ln(3)+1
    auto v = m.vectorize({"a", "a", "x", "b"});
    REQUIRE(v.entries.size() == 3);
    double wa = 0, wb = 0, wx = 0;
    for (const auto& [idx, w] : v.entries) {
      if (idx == 0) wa = w;         // first-seen order: a=0, b=1, c=2
      else if (idx == 1) wb = w;
      else wx = w;
    }
    CHECK(wa == doctest::Approx(2.8109302162163288).epsilon(1e-12));
    CHECK(wb == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wx == doctest::Approx(2.09861228866811).epsilon(1e-12));
  }
  SUBCASE("distinct oov tokens get distinct indices") {
    auto v = m.vectorize({"zzz", "yyy"});
    REQUIRE(v.entries.size() == 2);
    CHECK(v.entries[0].first != v.entries[1].first);
  }
}

TEST_CASE("cosine basics") {
  CHECK(cosine(sv({{0, 1.0}, {1, 2.0}}), sv({{0, 1.0}, {1, 2.0}})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(sv({{0, 1.0}}), sv({{1, 1.0}})) == 0.0);
  CHECK(cosine(sv({{0, 1.0}, {1, 1.0}}), sv({{0, 1.0}})) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cosine(sv({}), sv({{0, 1.0}})) == 0.0);
}

TEST_CASE("cosine properties on random vectors") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    SparseVector u, v;
    const int n = rng.int_in(0, 8);
    for (int i = 0; i < n; ++i) {
      if (rng.uniform() < 0.7) u.entries.emplace_back(i, rng.uniform(0.01, 3.0));
      if (rng.uniform() < 0.7) v.entries.emplace_back(i, rng.uniform(0.01, 3.0));
    }
    const double c = cosine(u, v);
    CHECK(c == cosine(v, u));  // exact symmetry
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);

    const double alpha = rng.uniform(0.1, 10.0);
    SparseVector su = u;
    for (auto& [idx, w] : su.entries) w *= alpha;
    CHECK(cosine(su, v) == doctest::Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("model fingerprint tracks the fitted units") {
  auto m1 = TfIdfModel::fit({{"a", "b"}, {"c"}});
  auto m2 = TfIdfModel::fit({{"a", "b"}, {"c"}});
  auto m3 = TfIdfModel::fit({{"a", "b"}, {"d"}});
  CHECK(m1.fingerprint() == m2.fingerprint());
  CHECK(m1.fingerprint() != m3.fingerprint());
}
