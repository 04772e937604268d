#include <doctest.h>

#include <sullivan/cdga.hpp>
#include <sullivan/errors.hpp>
#include <sullivan/io.hpp>

#include <random>

using namespace sullivan;

namespace {

using Dims = std::vector<std::size_t>;

Dims dims(const Cdga& c, int n) { return cohomology(c, n).dims(); }

const char* kNonformal = R"(cdga nonformal
gen u 3
gen v 3
gen w 5
diff w = u*v
)";

const char* kS2 = R"(cdga s2
gen y 2
gen z 3
diff z = y^2
)";

const char* kS3 = "cdga s3\ngen x 3\n";

const char* kHS2 = R"(cdga h_s2
gen y 2
rel 4 : y^2
)";

const char* kHS3 = "cdga h_s3\ngen x 3\n";

Cdga freeOn(std::vector<Generator> gens) {
  auto a = Alphabet::make(std::move(gens));
  return Cdga("free", a, std::vector<AlgElement>(a->size(), AlgElement(a)));
}

// Cochain dimensions from the generating function; an oracle for Künneth tests.
Dims sullivanBetti(const Cdga& c, int n) {
  CochainSpace s(c);
  Dims out;
  for (int k = 0; k <= n; ++k) {
    auto d = s.differential(k);
    auto dPrev = k > 0 ? s.differential(k - 1) : RatMatrix(s.dim(0), 0);
    out.push_back(s.dim(k) - rank(d) - rank(dPrev));
  }
  return out;
}

}  // namespace

TEST_CASE("validate accepts the sphere and the nonformal model") {
  CHECK(validate(parseCdga(kS2)).empty());
  CHECK(validate(parseCdga(kNonformal)).empty());
}

TEST_CASE("validate reports d squared defects with the residue") {
  auto p = parseCdgaText("cdga bad\ngen y 2\ngen z 3\ndiff z = y^2\ndiff y = z\n");
  auto defects = validate(p);
  REQUIRE(defects.size() == 2);
  CHECK(defects[0].generator.find('y') != std::string::npos);
  CHECK(toString(defects[0].residue) == "y^2");
  CHECK(toString(defects[1].residue) == "2*y*z");
  CHECK_THROWS_AS(parseCdga("cdga bad\ngen y 2\ngen z 3\ndiff z = y^2\ndiff y = z\n"),
                  PreconditionError);
}

TEST_CASE("cohomology examples") {
  CHECK(dims(parseCdga(kNonformal), 12) == Dims{1, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 1, 0});
  CHECK(dims(parseCdga(kS3), 7) == Dims{1, 0, 0, 1, 0, 0, 0, 0});
  CHECK(dims(parseCdga(kS2), 8) == Dims{1, 0, 1, 0, 0, 0, 0, 0, 0});

  auto h = cohomology(parseCdga(kNonformal), 11);
  REQUIRE(h.at(8).representatives.size() == 2);
  CHECK(toString(h.at(8).representatives[0]) == "u*w");
  CHECK(toString(h.at(8).representatives[1]) == "v*w");
}

TEST_CASE("cohomology bookkeeping matches ranks of the differential") {
  auto c = parseCdga(kNonformal);
  auto h = cohomology(c, 14);
  CHECK(h.dims() == sullivanBetti(c, 14));
  CochainSpace s(c);
  for (int k = 0; k <= 14; ++k) {
    const auto& hk = h.at(k);
    CHECK(hk.cochainDim == s.dim(k));
    CHECK(hk.dim() == hk.cocycleDim - hk.boundaryDim);
    for (const auto& r : hk.representatives) CHECK(c.differential(r).isZero());
  }
}

TEST_CASE("d squared vanishes on every basis monomial") {
  for (const char* text : {kNonformal, kS2, kS3}) {
    auto c = parseCdga(text);
    for (int k = 0; k <= 14; ++k)
      for (const auto& m : basisOfDegree(*c.alphabet(), k)) {
        auto x = AlgElement::monomial(c.alphabet(), m);
        CHECK(c.differential(c.differential(x)).isZero());
      }
  }
}

TEST_CASE("quotient presentations") {
  auto hs2 = parseCdga(kHS2);
  CHECK(dims(hs2, 6) == Dims{1, 0, 1, 0, 0, 0, 0});
  CHECK_THROWS_AS(parseCdga("cdga bad\ngen a 2\ngen b 3\ndiff b = a^2\nrel 5 : a*b\n"),
                  PreconditionError);
}

TEST_CASE("quasi-isomorphism checks") {
  auto s2 = parseCdga(kS2);
  auto id = CdgaMorphism::identity(s2);
  CHECK(checkQuasiIso(id, 12).quasiIso);

  auto hs2 = parseCdga(kHS2);
  auto ta = hs2.alphabet();
  CdgaMorphism phi(s2, hs2, {AlgElement::generator(ta, "y"), AlgElement(ta)});
  CHECK(checkQuasiIso(phi, 12).quasiIso);

  auto poly = parseCdga("cdga poly\ngen y 2\n");
  CdgaMorphism inc(poly, s2, {AlgElement::generator(s2.alphabet(), "y")});
  auto r = checkQuasiIso(inc, 8);
  CHECK_FALSE(r.quasiIso);
  REQUIRE(r.firstFailure);
  CHECK(*r.firstFailure == 4);
}

TEST_CASE("morphisms must commute with the differentials") {
  auto s2 = parseCdga(kS2);
  auto s3 = parseCdga(kS3);
  CHECK_THROWS_AS(CdgaMorphism(s3, s2, {AlgElement::generator(s2.alphabet(), "z")}),
                  PreconditionError);
}

TEST_CASE("tensor products") {
  auto s3 = parseCdga(kS3);
  auto t = tensorProduct(s3, s3);
  CHECK(t.product.alphabet()->size() == 2);
  CHECK((*t.product.alphabet())[1].name == "x_2");
  CHECK(dims(t.product, 7) == Dims{1, 0, 0, 2, 0, 0, 1, 0});

  auto unit = freeOn({});
  CHECK(dims(tensorProduct(s3, unit).product, 7) == dims(s3, 7));

  auto mixed = tensorProduct(parseCdga(kS2), s3);
  CHECK(dims(mixed.product, 6)[5] == 1);
}

TEST_CASE("Künneth on random pairs") {
  std::mt19937_64 rng(41);
  const char* pool[] = {kNonformal, kS2, kS3, kHS2,
                        "cdga cp2\ngen u 2\ngen x 5\ndiff x = u^3\n",
                        "cdga t\ngen a 2\ngen b 3\ngen c 3\ndiff c = a^2\n",
                        "cdga h\ngen u 2\nrel 6 : u^3\n"};
  for (int trial = 0; trial < 12; ++trial) {
    auto a = parseCdga(pool[rng() % 7]);
    auto b = parseCdga(pool[rng() % 7]);
    const int n = 12;
    auto ha = dims(a, n), hb = dims(b, n);
    auto hp = dims(tensorProduct(a, b).product, n);
    for (int k = 0; k <= n; ++k) {
      std::size_t expect = 0;
      for (int p = 0; p <= k; ++p) expect += ha[p] * hb[k - p];
      CHECK(hp[k] == expect);
    }
  }
}

TEST_CASE("fibered products of augmented algebras") {
  auto hs2 = parseCdga(kHS2);
  auto hs3 = parseCdga(kHS3);
  auto hs3t = parseCdga("cdga h_s3\ngen x 3\nrel 6 : x*x\n");
  auto wedge = fiberedProductAugmented({hs2, hs3t});
  CHECK(dims(wedge, 6) == Dims{1, 0, 1, 1, 0, 0, 0});
  auto single = fiberedProductAugmented({hs3});
  CHECK(dims(single, 6) == dims(hs3, 6));

  auto two = fiberedProductAugmented({hs2, hs2});
  auto h = cohomology(two, 4);
  CHECK(h.at(2).dim() == 2);
  CochainSpace s(two);
  auto prod = h.at(2).representatives[0] * h.at(2).representatives[1];
  CHECK(s.normalForm(prod).isZero());
}

TEST_CASE("word-length quotients") {
  auto s3 = parseCdga(kS3);
  auto q1 = wordLengthQuotient(s3, 1);
  CHECK(dims(q1.quotient, 9) == dims(s3, 9));

  auto s2 = parseCdga(kS2);
  auto q = wordLengthQuotient(s2, 1);
  CochainSpace qs(q.quotient);
  CHECK(qs.dim(0) == 1);
  CHECK(qs.dim(2) == 1);
  CHECK(qs.dim(3) == 1);
  for (int k = 4; k <= 9; ++k) CHECK(qs.dim(k) == 0);
  for (int k = 0; k <= 4; ++k) CHECK((qs.dim(k) == 0 || qs.dim(k + 1) == 0 || rank(qs.differential(k)) == 0));
  CHECK(dims(q.quotient, 5) == Dims{1, 0, 1, 1, 0, 0});

  auto nf = parseCdga(kNonformal);
  auto big = wordLengthQuotient(nf, 20);
  CHECK(dims(big.quotient, 12) == dims(nf, 12));
  CHECK_THROWS_AS(wordLengthQuotient(parseCdga(kHS2), 2), PreconditionError);
}

TEST_CASE("file format") {
  auto c = parseCdga(kNonformal);
  auto text = formatCdga(c, {"stage 3: added 2 cocycle gens, 0 kernel gens"});
  CHECK(text.rfind("# stage 3", 0) == 0);
  auto back = parseCdga(text);
  CHECK(back.d() == c.d());
  CHECK(back.name() == "nonformal");

  try {
    parseCdgaText("cdga x\ngen a 2\nbogus line\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parseCdgaText("cdga x\ngen a 2\ndiff b = a\n"), ParseError);
  CHECK_THROWS_AS(parseCdgaText("cdga x\ngen a 2\ngen a 4\n"), ParseError);
  CHECK_THROWS_AS(parseCdgaText("gen a 2\n"), ParseError);
  CHECK_THROWS_AS(parseCdgaText("cdga x\ndiff a = 0\ngen a 2\n"), ParseError);
}
