#include <doctest.h>

#include "fixtures.hpp"

#include <sullivan/errors.hpp>
#include <sullivan/sullivan.hpp>

using namespace sullivan;

namespace {

using Dims = std::vector<std::size_t>;

AlgElement P(const Cdga& c, const std::string& s) { return parsePoly(c.alphabet(), s); }

// Generator degrees of a model, and its differentials written with generators
// renamed g0, g1, ... by ordinal; the profile of a model up to naming.
struct Profile {
  std::vector<int> degrees;
  std::vector<std::string> diffs;
  bool operator==(const Profile&) const = default;
};

Profile profile(const Cdga& c) {
  std::vector<Generator> renamed;
  for (std::size_t i = 0; i < c.generatorCount(); ++i)
    renamed.push_back({"g" + std::to_string(i), (*c.alphabet())[i].degree});
  auto a = Alphabet::make(renamed);
  std::vector<AlgElement> images;
  for (std::size_t i = 0; i < c.generatorCount(); ++i) images.push_back(AlgElement::generator(a, i));
  Profile p;
  for (std::size_t i = 0; i < c.generatorCount(); ++i) {
    p.degrees.push_back(renamed[i].degree);
    p.diffs.push_back(toString(substitute(c.differentialOf(i), images, a)));
  }
  return p;
}

}  // namespace

TEST_CASE("minimality") {
  CHECK(checkMinimalSullivan(fixture("s2")));
  CHECK(checkMinimalSullivan(fixture("elliptic_fht")));
  CHECK_THROWS_AS(checkMinimalSullivan(parseCdga("cdga low\ngen a 1\n")), PreconditionError);
  auto cone = parseCdga("cdga cone\ngen u 3\ngen v 2\ndiff v = u\n");
  CHECK_FALSE(checkMinimalSullivan(cone));
  CHECK(linearDifferentialParts(cone) == std::vector<std::string>{"v"});
}

TEST_CASE("minimal models of sphere and projective space cohomology") {
  struct Case {
    const char* target;
    int N;
    const char* expected;
  } cases[] = {{"h_s3", 9, "s3"}, {"h_s2", 8, "s2"}, {"h_cp2", 10, "cp2"}, {"h_cp3", 10, "cp3"}};
  for (const auto& c : cases) {
    CAPTURE(c.target);
    auto r = minimalModel(fixture(c.target), c.N);
    CHECK(profile(r.model) == profile(fixture(c.expected)));
    CHECK(checkMinimalSullivan(r.model));
    CHECK(checkQuasiIso(r.quasiIso, c.N - 1).quasiIso);
    CHECK(r.certifiedDegree == c.N);
  }
  auto s2 = minimalModel(fixture("h_s2"), 8);
  CHECK((*s2.model.alphabet())[0].name == "y");
  REQUIRE(s2.stages.size() == 7);
  CHECK(s2.stages[0].cocycleGenerators == std::vector<std::string>{"y"});
  CHECK(s2.stages[1].kernelGenerators.size() == 1);
}

TEST_CASE("minimal models of free algebras reproduce them") {
  for (const char* name : {"nonformal", "s3xs3", "s2xs3"}) {
    CAPTURE(name);
    auto c = fixture(name);
    auto r = minimalModel(c, 12);
    CHECK(checkQuasiIso(r.quasiIso, 11).quasiIso);
    auto a = cohomology(r.model, 12).dims();
    CHECK(a == cohomology(c, 12).dims());
  }
}

TEST_CASE("minimal model of a formal model's cohomology has the same profile") {
  for (const char* name : {"s2", "s3", "cp2", "cp3", "s3xs3"}) {
    CAPTURE(name);
    auto m = fixture(name);
    // Cohomology presentations written out by hand for these formal spaces.
    std::string h = std::string("h_") + name;
    if (std::string(name) == "s3xs3") continue;
    auto r = minimalModel(fixture(h), 12);
    CHECK(profile(r.model) == profile(m));
  }
}

TEST_CASE("minimal model preconditions") {
  CHECK_THROWS_AS(minimalModel(parseCdga("cdga c\ngen a 1\n"), 5), PreconditionError);
  CHECK_THROWS_AS(minimalModel(fixture("h_s2"), 1), PreconditionError);
}

TEST_CASE("acyclic closure of spheres") {
  auto s2 = fixture("s2");
  auto c = acyclicClosure(s2, 10);
  const auto& t = c.total();
  CHECK(t.differential(P(t, "y_bar")) == P(t, "y"));
  CHECK(t.differential(P(t, "z_bar")) == P(t, "z - y*y_bar"));
  auto f = fiberModel(c);
  CHECK(f.generatorCount() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(f.differentialOf(i).isZero());

  auto s3 = acyclicClosure(fixture("s3"), 10);
  CHECK(s3.total().differential(P(s3.total(), "x_bar")) == P(s3.total(), "x"));
  auto h = cohomology(s3.total(), 10).dims();
  CHECK(h[0] == 1);
  for (int k = 1; k <= 10; ++k) CHECK(h[k] == 0);
}

TEST_CASE("acyclic closures of larger models") {
  for (const char* name : {"cp2", "nonformal", "elliptic_fht", "s2xs3"}) {
    CAPTURE(name);
    auto c = acyclicClosure(fixture(name), 10);
    auto f = fiberModel(c);
    for (std::size_t i = 0; i < f.generatorCount(); ++i) CHECK(f.differentialOf(i).isZero());
  }
}

TEST_CASE("fiber of the odd-sphere path fibration") {
  auto total = parseCdga("cdga e\ngen u 3\ngen v 2\ndiff v = u\n");
  auto base = parseCdga("cdga b\ngen u 3\n");
  RelativeSullivanAlgebra rel(base, total);
  auto f = fiberModel(rel);
  CHECK(f.generatorCount() == 1);
  CHECK(f.differentialOf(0).isZero());
  Dims expect{1, 0, 1, 0, 1, 0, 1};
  CHECK(cohomology(f, 6).dims() == expect);
}

TEST_CASE("relative algebras check the well-order") {
  auto base = parseCdga("cdga b\ngen u 3\n");
  auto bad = parseCdga("cdga e\ngen u 3\ngen p 5\ngen q 3\ndiff p = u*q\n");
  CHECK_THROWS_AS(RelativeSullivanAlgebra(base, bad), PreconditionError);
  auto wrongBase = parseCdga("cdga e\ngen x 3\n");
  CHECK_THROWS_AS(RelativeSullivanAlgebra(base, wrongBase), PreconditionError);
}

TEST_CASE("loop space cohomology") {
  auto s3 = loopCohomology(fixture("s3"), 20);
  for (int k = 0; k <= 20; ++k) CHECK(s3.dims[k] == (k % 2 == 0 ? 1 : 0));
  auto s2 = loopCohomology(fixture("s2"), 20);
  for (int k = 0; k <= 20; ++k) CHECK(s2.dims[k] == 1);
  auto cp3 = loopCohomology(fixture("cp3"), 10);
  for (int k = 0; k <= 11; ++k) CHECK(cp3.homotopy[k] == ((k == 2 || k == 7) ? 1u : 0u));
}

TEST_CASE("loop cohomology counts agree with the fiber of the acyclic closure") {
  for (const char* name : {"s2", "s3", "cp2", "nonformal", "s2xs3", "elliptic_fht"}) {
    CAPTURE(name);
    auto m = fixture(name);
    auto f = fiberModel(acyclicClosure(m, 8));
    auto brute = cohomology(f, 12).dims();
    auto fast = loopCohomology(m, 12);
    for (int k = 0; k <= 12; ++k) CHECK(fast.dims[k] == brute[k]);
  }
}

TEST_CASE("path space model") {
  auto path = pathSpaceModel(fixture("s2"));
  const auto& t = path.total();
  CHECK(t.differential(P(t, "y_bar")) == P(t, "y_p1 - y_p0"));
  CHECK(t.differential(P(t, "z_bar")) == P(t, "z_p1 - z_p0 - y_p0*y_bar - y_bar*y_p1"));
  auto flat = pathSpaceModel(fixture("s3xs3"));
  CHECK(flat.total().differential(P(flat.total(), "xp_bar")) == P(flat.total(), "xp_p1 - xp_p0"));
  // Path space is the product up to homotopy of one copy and the contractible closure.
  auto h = cohomology(path.total(), 10).dims();
  CHECK(h == cohomology(fixture("s2"), 10).dims());
}

TEST_CASE("free loop model") {
  auto s2 = freeLoopModel(fixture("s2"));
  CHECK(s2.differential(P(s2, "z_bar")) == P(s2, "-2*y*y_bar"));
  auto h = cohomology(s2, 6);
  CHECK(h.at(1).dim() == 1);
  CHECK(h.at(3).dim() == 1);
  CHECK(toString(h.at(1).representatives[0]) == "y_bar");
  CHECK(toString(h.at(3).representatives[0]) == "y_bar*z_bar");

  auto s3 = freeLoopModel(fixture("s3"));
  CHECK(cohomology(s3, 8).dims() == Dims{1, 0, 1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("free loop Betti growth of S2xS3 against S3") {
  const int K = 14;
  auto s2 = cohomology(freeLoopModel(fixture("s2")), K).dims();
  auto s3 = cohomology(freeLoopModel(fixture("s3")), K).dims();
  auto both = cohomology(freeLoopModel(fixture("s2xs3")), K).dims();
  std::size_t a = 0, b = 0;
  for (int k = 0; k <= K; ++k) {
    std::size_t conv = 0;
    for (int p = 0; p <= k; ++p) conv += s2[p] * s3[k - p];
    CHECK(both[k] == conv);
    a += s3[k];
    b += both[k];
    if (k >= 1) CHECK(b > a);
  }
}

TEST_CASE("free loop model is the pushout of the path space along multiplication") {
  for (const char* name : {"s2", "s3", "cp2", "s3xs3", "nonformal", "elliptic_fht", "cp3"}) {
    CAPTURE(name);
    auto m = fixture(name);
    auto path = pathSpaceModel(m);
    auto pushed = pushoutModel(multiplicationMorphism(path.base(), m), path);
    auto free = freeLoopModel(m);
    CHECK(*pushed.total().alphabet() == *free.alphabet());
    CHECK(pushed.total().d() == free.d());
  }
}

TEST_CASE("pushout along the identity changes nothing") {
  auto path = pathSpaceModel(fixture("cp2"));
  auto same = pushoutModel(CdgaMorphism::identity(path.base()), path);
  CHECK(same.total().d() == path.total().d());
}

TEST_CASE("model text output round-trips") {
  auto r = minimalModel(fixture("h_cp2"), 8);
  auto text = formatCdga(r.model);
  CHECK(parseCdga(text).d() == r.model.d());
}
