#include <doctest.h>

#include "samplers.hpp"

#include <sullivan/algebra.hpp>
#include <sullivan/errors.hpp>

#include <random>

using namespace sullivan;
using samplers::randomHomogeneous;

namespace {

AlphabetPtr alpha(std::vector<Generator> g) { return Alphabet::make(std::move(g)); }

AlgElement P(const AlphabetPtr& a, const std::string& s) { return parsePoly(a, s); }

// Sign of sorting a word of letters by ordinal, counting only odd transpositions.
// Independent of multiplyMonomials: bubble sort with explicit swaps.
std::pair<int, std::vector<std::size_t>> bubbleSign(const Alphabet& a, std::vector<std::size_t> w) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        if (a.isOdd(w[j]) && a.isOdd(w[j + 1])) sign = -sign;
        std::swap(w[j], w[j + 1]);
      }
  return {sign, w};
}

std::vector<long> seriesOracle(const Alphabet& a, int n) {
  std::vector<long> s(n + 1, 0);
  s[0] = 1;
  for (const auto& g : a.generators()) {
    std::vector<long> t(n + 1, 0);
    if (g.degree % 2 == 1) {
      for (int k = 0; k <= n; ++k) {
        t[k] += s[k];
        if (k + g.degree <= n) t[k + g.degree] += s[k];
      }
    } else {
      for (int k = 0; k <= n; ++k)
        for (int j = k; j <= n; j += g.degree) t[j] += s[k];
    }
    s = t;
  }
  return s;
}

}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
  auto a = alpha({{"x", 3}, {"y", 3}, {"u", 5}});
  auto x = AlgElement::generator(a, "x"), y = AlgElement::generator(a, "y");
  auto u = AlgElement::generator(a, "u");
  CHECK(toString(x * y) == "x*y");
  CHECK(y * x == -(x * y));
  CHECK((u * u).isZero());
}

TEST_CASE("even generators commute with odd ones") {
  auto a = alpha({{"y", 2}, {"z", 3}});
  auto y = AlgElement::generator(a, "y"), z = AlgElement::generator(a, "z");
  CHECK((y + z) * y == P(a, "y^2 + y*z"));
  CHECK(z * y == y * z);
}

TEST_CASE("multiplication sign matches a bubble-sort count") {
  auto a = alpha({{"a", 1}, {"b", 2}, {"c", 3}, {"d", 5}, {"e", 4}});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::size_t> word;
    int len = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) word.push_back(rng() % a->size());
    AlgElement prod = AlgElement::unit(a);
    for (auto w : word) prod = prod * AlgElement::generator(a, w);
    auto [sign, sorted] = bubbleSign(*a, word);
    bool dead = false;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i] == sorted[i + 1] && a->isOdd(sorted[i])) dead = true;
    if (dead) {
      CHECK(prod.isZero());
      continue;
    }
    AlgElement expect = AlgElement::unit(a);
    for (auto w : sorted) {
      Monomial m;
      for (auto f : expect.terms().begin()->first.factors) m.factors.push_back(f);
      if (!m.factors.empty() && m.factors.back().generator == w) ++m.factors.back().power;
      else m.factors.push_back({static_cast<std::uint32_t>(w), 1});
      expect = AlgElement::monomial(a, m);
    }
    CHECK(prod == expect * Rational(sign));
  }
}

TEST_CASE("ring axioms on random samples") {
  auto a = alpha({{"a", 2}, {"x", 3}, {"u", 3}, {"b", 4}, {"v", 5}});
  auto d = Derivation(a, 1,
                      {AlgElement(a), AlgElement(a), P(a, "a^2"), P(a, "x*a"), P(a, "a*b - u*x")});
  auto s = Derivation(a, -1, {AlgElement(a), P(a, "a"), AlgElement(a), P(a, "u"), P(a, "b")});
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 250; ++trial) {
    int p = 2 + static_cast<int>(rng() % 6), q = 2 + static_cast<int>(rng() % 6),
        r = 2 + static_cast<int>(rng() % 5);
    auto x = randomHomogeneous(a, p, rng), y = randomHomogeneous(a, q, rng),
         z = randomHomogeneous(a, r, rng);
    Rational sign = (p * q) % 2 ? -1 : 1;
    CHECK(x * y == sign * (y * x));
    CHECK((x * y) * z == x * (y * z));
    Rational lsign = p % 2 ? -1 : 1;
    CHECK(d.apply(x * y) == d.apply(x) * y + lsign * (x * d.apply(y)));
    CHECK(s.apply(x * y) == s.apply(x) * y + lsign * (x * s.apply(y)));
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("derivation examples") {
  auto a = alpha({{"y", 2}, {"z", 3}});
  Derivation d(a, 1, {AlgElement(a), P(a, "y^2")});
  CHECK(d.apply(P(a, "y*z")) == P(a, "y^3"));
  CHECK(d.apply(AlgElement::unit(a)).isZero());

  auto b = alpha({{"y", 2}, {"ybar", 1}});
  Derivation s(b, -1, {P(b, "ybar"), AlgElement(b)});
  CHECK(s.apply(P(b, "y^2")) == P(b, "2*y*ybar"));
}

TEST_CASE("derivations reject wrongly graded images") {
  auto a = alpha({{"y", 2}, {"z", 3}});
  CHECK_THROWS_AS(Derivation(a, 1, {AlgElement(a), P(a, "y")}), AlgebraError);
  CHECK_THROWS_AS(Derivation(a, 1, {AlgElement(a), P(a, "y^2 + z")}), AlgebraError);
}

TEST_CASE("mixing generator universes names the foreign generator") {
  auto a = alpha({{"x", 3}});
  auto b = alpha({{"q", 2}});
  try {
    (void)(AlgElement::generator(a, "x") * AlgElement::generator(b, "q"));
    FAIL("expected an AlgebraError");
  } catch (const AlgebraError& e) {
    CHECK(std::string(e.what()).find('q') != std::string::npos);
  }
}

TEST_CASE("basisOfDegree examples") {
  auto a = alpha({{"x", 3}});
  CHECK(basisOfDegree(*a, 3).size() == 1);
  CHECK(basisOfDegree(*a, 6).empty());
  auto b = alpha({{"y", 2}, {"z", 3}});
  auto b6 = basisOfDegree(*b, 6);
  REQUIRE(b6.size() == 1);
  CHECK(toString(b6[0], *b) == "y^3");
  auto b5 = basisOfDegree(*b, 5);
  REQUIRE(b5.size() == 1);
  CHECK(toString(b5[0], *b) == "y*z");
  auto c = alpha({{"u", 2}, {"x", 5}});
  auto c10 = basisOfDegree(*c, 10);
  REQUIRE(c10.size() == 1);
  CHECK(toString(c10[0], *c) == "u^5");
}

TEST_CASE("basisOfDegree counts agree with the generating function") {
  std::vector<std::vector<Generator>> cases = {
      {{"a", 2}, {"x", 3}, {"u", 3}, {"b", 4}, {"v", 5}, {"w", 7}},
      {{"p", 1}, {"q", 2}, {"r", 2}, {"s", 5}},
      {{"e", 4}, {"f", 6}, {"g", 9}, {"h", 11}},
  };
  for (const auto& gens : cases) {
    auto a = alpha(gens);
    auto oracle = seriesOracle(*a, 24);
    for (int n = 0; n <= 24; ++n) {
      auto basis = basisOfDegree(*a, n);
      CHECK(static_cast<long>(basis.size()) == oracle[n]);
      for (std::size_t i = 1; i < basis.size(); ++i) CHECK(basis[i - 1] < basis[i]);
    }
  }
}

TEST_CASE("word-length filter") {
  auto a = alpha({{"y", 2}, {"z", 3}});
  auto capped = basisOfDegree(*a, 6, WordFilter{0, 2});
  CHECK(capped.empty());
  auto exact = basisOfDegree(*a, 6, WordFilter{3, 3});
  CHECK(exact.size() == 1);
}

TEST_CASE("wordLengthSplit") {
  auto a = alpha({{"y", 2}, {"z", 3}, {"a", 2}, {"b", 4}, {"u", 3}, {"x", 3}});
  auto s = wordLengthSplit(P(a, "y^2 + z"));
  CHECK(s.size() == 2);
  CHECK(s.at(2) == P(a, "y^2"));
  CHECK(s.at(1) == P(a, "z"));
  auto unit = wordLengthSplit(AlgElement::unit(a));
  CHECK(unit.size() == 1);
  CHECK(unit.at(0) == AlgElement::unit(a));
  auto ab = wordLengthSplit(P(a, "a*b - u*x"));
  CHECK(ab.size() == 1);
  CHECK(ab.at(2) == P(a, "a*b - u*x"));
}

TEST_CASE("parse and print round-trip") {
  auto a = alpha({{"a", 2}, {"x", 3}, {"u", 3}, {"b", 4}, {"v", 5}});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = randomHomogeneous(a, 2 + static_cast<int>(rng() % 9), rng);
    Rational scale(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 7));
    scale.canonicalize();
    x *= scale;
    auto text = toString(x);
    auto back = parsePoly(a, text);
    CHECK(back == x);
    CHECK(back.terms() == x.terms());
    CHECK(toString(back) == text);
  }
  CHECK(toString(AlgElement(a)) == "0");
  CHECK(toString(AlgElement::unit(a)) == "1");
  CHECK(P(a, " 3/6 * x*  a # trailing") == Rational(1, 2) * P(a, "a*x"));
  CHECK_THROWS_AS(P(a, "a + "), ParseError);
  CHECK_THROWS_AS(P(a, "nope"), ParseError);
}
