#include <doctest.h>

#include "fixtures.hpp"

#include <sullivan/errors.hpp>
#include <sullivan/invariants.hpp>
#include <sullivan/sullivan.hpp>

using namespace sullivan;

namespace {

using Dims = std::vector<std::size_t>;

AlgElement P(const Cdga& c, const std::string& s) { return parsePoly(c.alphabet(), s); }

const char* const kMinimalFixtures[] = {"s2", "s3", "cp2", "cp3", "s3xs3", "s2xs3", "elliptic_fht"};

// Euler characteristic straight from a dimension table.
long alternatingSum(const Dims& d) {
  long s = 0;
  for (std::size_t k = 0; k < d.size(); ++k) s += (k % 2 ? -1L : 1L) * static_cast<long>(d[k]);
  return s;
}

}  // namespace

TEST_CASE("exponent profiles") {
  auto s2 = exponentProfile(fixture("s2"));
  CHECK(s2.even == std::vector<int>{1});
  CHECK(s2.odd == std::vector<int>{2});
  CHECK(s2.formalDimensionCandidate == 2);
  CHECK(exponentProfile(fixture("cp3")).formalDimensionCandidate == 6);
  auto fht = exponentProfile(fixture("elliptic_fht"));
  CHECK(fht.even.size() == 2);
  CHECK(fht.odd.size() == 4);
  CHECK(fht.formalDimensionCandidate == 14);

  auto s3s5 = parseCdga("cdga s3s5\ngen x 3\ngen y 5\n");
  auto num = exponentNumerology(exponentProfile(s3s5), 8);
  CHECK(num.oddSum == 8);
  CHECK(num.holds == std::array<bool, 4>{true, true, true, true});
  auto s3 = exponentNumerology(exponentProfile(fixture("s3")), 3);
  CHECK(s3.holds == std::array<bool, 4>{true, true, true, true});
  CHECK_FALSE(exponentNumerology(exponentProfile(s3s5), 7).holds[0]);
}

TEST_CASE("pure algebras") {
  auto fht = fixture("elliptic_fht");
  CHECK_FALSE(isPure(fht));
  CHECK(isPure(fixture("s2")));
  CHECK(isPure(fixture("s3xs3")));
  auto pure = associatedPure(fht);
  CHECK(isPure(pure));
  CHECK(pure.differentialOf(pure.alphabet()->ordinal("u")) == P(pure, "a^2"));
  CHECK(pure.differentialOf(pure.alphabet()->ordinal("b")).isZero());
  CHECK(pure.differentialOf(pure.alphabet()->ordinal("v")) == P(pure, "a*b"));
  CHECK(pure.differentialOf(pure.alphabet()->ordinal("w")) == P(pure, "b^2"));
  auto flat = fixture("s3xs3");
  auto same = associatedPure(flat);
  for (std::size_t i = 0; i < flat.generatorCount(); ++i) CHECK(same.differentialOf(i) == flat.differentialOf(i));
  CHECK_THROWS_AS(isPure(fixture("h_s2")), PreconditionError);
}

TEST_CASE("filtration homology of pure algebras") {
  auto s2 = fixture("s2");
  CHECK(pureFiltrationHomology(s2, 0, 6) == Dims{1, 0, 1, 0, 0, 0, 0});
  CHECK(pureH0(s2, 6) == Dims{1, 0, 1, 0, 0, 0, 0});
  CHECK_THROWS_AS(pureFiltrationHomology(fixture("elliptic_fht"), 0, 4), PreconditionError);

  // The top class sits in H_r, r = dim V^odd - dim V^even; the H_k sum to H.
  struct Case {
    Cdga pure;
    int n;
    int r;
  } cases[] = {{fixture("s2"), 2, 0},
               {fixture("cp2"), 4, 0},
               {fixture("s3xs3"), 6, 2},
               {associatedPure(fixture("elliptic_fht")), 14, 2}};
  for (const auto& c : cases) {
    CAPTURE(c.pure.name());
    auto total = cohomology(c.pure, c.n + 2).dims();
    Dims summed(total.size(), 0);
    int oddCount = static_cast<int>(exponentProfile(c.pure).odd.size());
    for (int k = 0; k <= oddCount + 1; ++k) {
      auto hk = pureFiltrationHomology(c.pure, k, c.n + 2);
      for (std::size_t m = 0; m < hk.size(); ++m) summed[m] += hk[m];
      CHECK(hk[static_cast<std::size_t>(c.n)] == (k == c.r ? 1u : 0u));
      if (k > oddCount) CHECK(hk == Dims(hk.size(), 0));
    }
    CHECK(summed == total);
  }
}

TEST_CASE("cohomology of the associated pure algebra of the six generator example") {
  auto pure = associatedPure(fixture("elliptic_fht"));
  CochainSpace space(pure);
  auto h = cohomology(space, 16);
  auto dims = h.dims();
  std::size_t total = 0;
  for (auto d : dims) total += d;
  CHECK(dims[15] == 0);
  CHECK(dims[16] == 0);
  CHECK(dims[14] == 1);
  CHECK(total > 7);

  // 1, a, b, y = [bu - av], z = [aw - bv] are nonzero classes.
  for (const char* rep : {"1", "a", "b", "b*u - a*v", "a*w - b*v"}) {
    CAPTURE(rep);
    auto x = P(pure, rep);
    int k = *x.degree();
    CHECK(pure.differential(x).isZero());
    auto coords = classCoordinates(h.at(k), {space.coordinates(x, k)});
    CHECK_FALSE(isZero(coords[0]));
  }
  // y and z have odd degree, so their squares vanish in the algebra itself.
  CHECK(power(P(pure, "b*u - a*v"), 2).isZero());
  CHECK(power(P(pure, "a*w - b*v"), 2).isZero());
}

TEST_CASE("finiteness test") {
  auto s2 = finitenessTest(fixture("s2"), 20);
  CHECK(s2.finite);
  CHECK(s2.verified);
  CHECK(s2.totalDim == 2);
  CHECK(s2.formalDimension == 2);

  auto odd = finitenessTest(parseCdga("cdga two\ngen x 3\ngen xp 3\n"), 20);
  CHECK(odd.finite);
  CHECK(odd.totalDim == 4);
  CHECK(odd.formalDimension == 6);

  auto poly = finitenessTest(parseCdga("cdga poly\ngen y 2\ngen yp 2\n"), 30);
  CHECK_FALSE(poly.finite);
  CHECK(poly.searchedTo == 30);
  CHECK(poly.h0Dims[30] == 16);

  // Finite outcomes agree with identity (1), and pure finiteness matches finiteness of the algebra.
  for (const char* name : kMinimalFixtures) {
    CAPTURE(name);
    auto c = fixture(name);
    auto f = finitenessTest(c, 40);
    REQUIRE(f.finite);
    CHECK(f.verified);
    CHECK(*f.formalDimension == exponentProfile(c).formalDimensionCandidate);
    auto fp = finitenessTest(associatedPure(c), 40);
    CHECK(fp.finite);
    CHECK(fp.formalDimension == f.formalDimension);
  }
}

TEST_CASE("ellipticity classification") {
  auto s2 = classifyEllipticity(fixture("s2"), 30);
  CHECK(s2.verdict == Verdict::Elliptic);
  CHECK(s2.formalDimension == 2);
  REQUIRE(s2.numerology);
  CHECK(s2.numerology->oddSum == 3);
  CHECK(s2.numerology->evenSum == 1);
  CHECK(s2.numerology->holds[0]);

  auto fht = classifyEllipticity(fixture("elliptic_fht"), 30);
  CHECK(fht.verdict == Verdict::Elliptic);
  REQUIRE(fht.numerology);
  CHECK(fht.numerology->holds == std::array<bool, 4>{true, true, true, true});

  auto cp3 = classifyEllipticity(fixture("cp3"), 30);
  CHECK(cp3.verdict == Verdict::Elliptic);
  CHECK(cp3.formalDimension == 6);

  for (const char* name : kMinimalFixtures) {
    CAPTURE(name);
    auto r = classifyEllipticity(fixture(name), 40);
    REQUIRE(r.verdict == Verdict::Elliptic);
    CHECK(r.finiteness.h0Dims.size() >= 1);
    CHECK(r.euler.chiH.value() >= 0);
    CHECK(r.euler.chiVNonpositive);
    CHECK(r.euler.clusterConsistent);
    CHECK(r.numerology->holds == std::array<bool, 4>{true, true, true, true});
    CHECK(r.boundedDegrees);
    CHECK(r.atMostOneAbove);
    CHECK(r.fewGenerators);
  }

  auto poly = classifyEllipticity(parseCdga("cdga poly\ngen y 2\ngen yp 2\n"), 20);
  CHECK(poly.verdict == Verdict::HyperbolicEvidence);
  CHECK(classifyEllipticity(parseCdga("cdga poly\ngen y 2\ngen yp 2\n"), 1).verdict == Verdict::Inconclusive);
  CHECK_THROWS_AS(classifyEllipticity(parseCdga("cdga cone\ngen u 3\ngen v 2\ndiff v = u\n"), 10),
                  PreconditionError);
}

TEST_CASE("Euler characteristics and torus rank") {
  struct Case {
    const char* name;
    long chiV;
  } cases[] = {{"s2", 0}, {"s3", -1}, {"elliptic_fht", -2}, {"s3xs3", -2}, {"cp2", 0}};
  for (const auto& c : cases) {
    CAPTURE(c.name);
    auto cdga = fixture(c.name);
    auto r = classifyEllipticity(cdga, 30);
    CHECK(r.euler.chiV == c.chiV);
    CHECK(r.euler.chiPi == c.chiV);
    auto dims = cohomology(cdga, *r.formalDimension).dims();
    CHECK(*r.euler.chiH == alternatingSum(dims));
  }
  auto s2 = eulerCharacteristics(fixture("s2"), Dims{1, 0, 1}, true);
  CHECK(*s2.chiH == 2);
  CHECK(s2.oddCohomologyZero);
  CHECK(s2.clusterConsistent);
  auto s3 = eulerCharacteristics(fixture("s3"), Dims{1, 0, 0, 1}, true);
  CHECK(*s3.chiH == 0);
  CHECK(s3.chiV == -1);
  CHECK(s3.clusterConsistent);

  CHECK(torusRankBound(fixture("s3"), 20) == 1);
  CHECK(torusRankBound(fixture("s2"), 20) == 0);
  CHECK(torusRankBound(fixture("s3xs3"), 20) == 2);
  CHECK_THROWS_AS(torusRankBound(parseCdga("cdga poly\ngen y 2\ngen yp 2\n"), 12), PreconditionError);
}

TEST_CASE("cuplength and category bounds") {
  CHECK(cuplength(fixture("s2"), 8) == 1);
  CHECK(cuplength(fixture("s3"), 8) == 1);
  CHECK(cuplength(fixture("s3xs3"), 10) == 2);
  CHECK(cuplength(fixture("h_cp3"), 10) == 3);
  // [u]·[vw] = [uvw], and degree 10 holds no cochains at all
  CHECK(cuplength(fixture("nonformal"), 14) == 2);
  for (int n : {2, 3}) {
    CAPTURE(n);
    auto b = catBounds(fixture(n == 2 ? "cp2" : "cp3"), 12);
    CHECK(b.lower == n);
    CHECK(b.upper == n);
    CHECK(b.firstPositiveDegree == 2);
  }
  auto s3xs3 = catBounds(fixture("s3xs3"), 10);
  CHECK(s3xs3.upper == 2);
  // bound needs the formal dimension within range
  CHECK_FALSE(catBounds(fixture("cp3"), 5).upper);
  for (const char* name : kMinimalFixtures) {
    CAPTURE(name);
    auto b = catBounds(fixture(name), 16);
    if (b.upper) CHECK(b.lower <= *b.upper);
  }
}

TEST_CASE("Toomer rank") {
  auto x3 = toomerRank(fixture("s3"), 4, 8);
  CHECK(x3.firstInjective == 1);
  auto cp2 = toomerRank(fixture("cp2"), 4, 8);
  CHECK(cp2.firstInjective == 2);
  REQUIRE(cp2.levels.size() == 2);
  CHECK(cp2.levels[0].ranks[4] == 0);
  CHECK(cp2.levels[1].ranks[4] == 1);
  CHECK(toomerRank(fixture("s3xs3"), 4, 8).firstInjective == 2);
  CHECK(toomerRank(fixture("cp3"), 4, 8).firstInjective == 3);
}

TEST_CASE("loop Poincaré series") {
  auto s3 = loopPoincareSeries(fixture("s3"), 8);
  CHECK(s3.coeffs == std::vector<Integer>{1, 0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(toString(s3) == "1/(1-z^2)");
  auto s2 = loopPoincareSeries(fixture("s2"), 8);
  CHECK(s2.coeffs == std::vector<Integer>(9, 1));
  CHECK(toString(s2) == "(1+z)/(1-z^2)");

  for (const char* name : kMinimalFixtures) {
    CAPTURE(name);
    auto model = fixture(name);
    CHECK(loopPoincareSeries(model, 20).coeffs == loopCohomology(model, 20).dims);
  }
  auto wedge = minimalModel(fixture("h_s3_wedge_s3"), 21).model;
  CHECK(loopPoincareSeries(wedge, 20).coeffs == loopCohomology(wedge, 20).dims);
  // 1/(1 - 2z^2) for the wedge of two 3-spheres
  auto coeffs = loopPoincareSeries(wedge, 20).coeffs;
  for (std::size_t k = 0; k <= 20; ++k) CHECK(coeffs[k] == (k % 2 ? Integer(0) : Integer(1) << (k / 2)));
}

TEST_CASE("growth classification") {
  auto wedge = minimalModel(fixture("h_s3_wedge_s3"), 16).model;
  auto series = loopPoincareSeries(wedge, 14);
  auto g = growthClassify(series.coeffs);
  CHECK(g.growth == Growth::Exponential);
  CHECK(g.rate > 1.05);
  CHECK(growthClassify(loopPoincareSeries(fixture("s3"), 14).coeffs).growth == Growth::Polynomial);
  CHECK(growthClassify(loopPoincareSeries(fixture("s3xs3"), 14).coeffs).growth == Growth::Polynomial);
  CHECK(growthClassify(std::vector<Integer>{1, 0, 1, 0, 0, 0, 0, 0, 0}).growth == Growth::Constant);
  CHECK_THROWS_AS(growthClassify(std::vector<Integer>{1, 1}), PreconditionError);

  // dim V^k of the wedge grows as well
  auto homotopy = loopCohomology(wedge, 15).homotopy;
  std::vector<Integer> v(homotopy.begin(), homotopy.end());
  CHECK(growthClassify(v).growth == Growth::Exponential);
}

TEST_CASE("gap probe") {
  auto wedge = minimalModel(fixture("h_s3_wedge_s3"), 16).model;
  auto homotopy = loopCohomology(wedge, 15).homotopy;
  auto g = gapProbe(homotopy, 3, 16);
  CHECK(g.holds());
  auto sparse = gapProbe(Dims{0, 0, 0, 1, 0, 0, 0, 0, 0, 1}, 3, 9);
  CHECK_FALSE(sparse.holds());
  CHECK(sparse.emptyWindows == std::vector<int>{3, 4, 5, 6});
}
