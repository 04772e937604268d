#include <sullivan/errors.hpp>
#include <sullivan/invariants.hpp>
#include <sullivan/sullivan.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace sullivan {

namespace {

void requireFree(const Cdga& c, const char* what) {
  if (!c.isFree()) throw PreconditionError(std::string(what) + ": '" + c.name() + "' must be free");
}

int oddLetters(const Monomial& m, const Alphabet& a) {
  int n = 0;
  for (const auto& f : m.factors)
    if (a.isOdd(f.generator)) n += static_cast<int>(f.power);
  return n;
}

int maxDegree(const Alphabet& a, bool evenOnly) {
  int out = 0;
  for (const auto& g : a.generators())
    if (!evenOnly || g.degree % 2 == 0) out = std::max(out, g.degree);
  return out;
}

}  // namespace

ExponentProfile exponentProfile(const Cdga& c) {
  ExponentProfile p;
  int oddSum = 0, evenSum = 0;
  for (const auto& g : c.alphabet()->generators()) {
    if (g.degree % 2 == 0) {
      p.even.push_back(g.degree / 2);
      evenSum += g.degree - 1;
    } else {
      p.odd.push_back((g.degree + 1) / 2);
      oddSum += g.degree;
    }
  }
  p.formalDimensionCandidate = oddSum - evenSum;
  return p;
}

bool isPure(const Cdga& c) {
  requireFree(c, "purity check");
  const Alphabet& a = *c.alphabet();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& d = c.differentialOf(i);
    if (!a.isOdd(i)) {
      if (!d.isZero()) return false;
      continue;
    }
    for (const auto& [m, coeff] : d.terms())
      if (oddLetters(m, a) != 0) return false;
  }
  return true;
}

Cdga associatedPure(const Cdga& c) {
  requireFree(c, "associated pure algebra");
  const Alphabet& a = *c.alphabet();
  std::vector<AlgElement> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    AlgElement part(c.alphabet());
    if (a.isOdd(i))
      for (const auto& [m, coeff] : c.differentialOf(i).terms())
        if (oddLetters(m, a) == 0) part.addTerm(m, coeff);
    d.push_back(part);
  }
  auto defects = validate(c.name() + "_pure", c.alphabet(), d);
  if (!defects.empty())
    throw InternalError("associated pure differential of '" + c.name() + "' does not square to zero at '" +
                        defects.front().generator + "': " + toString(defects.front().residue));
  return Cdga(c.name() + "_pure", c.alphabet(), d);
}

std::vector<std::size_t> pureFiltrationHomology(const Cdga& pure, int k, int N) {
  if (!isPure(pure)) throw PreconditionError("filtration homology: '" + pure.name() + "' is not pure");
  const Alphabet& a = *pure.alphabet();
  // A_j^m: monomials of degree m with exactly j odd letters.
  auto piece = [&](int j, int m) {
    std::vector<Monomial> out;
    if (j < 0 || m < 0) return out;
    for (auto& mono : basisOfDegree(a, m))
      if (oddLetters(mono, a) == j) out.push_back(std::move(mono));
    return out;
  };
  auto matrix = [&](const std::vector<Monomial>& src, const std::vector<Monomial>& dst) {
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], i);
    RatMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      AlgElement image = pure.d().applyToMonomial(src[j]);
      for (const auto& [mono, c] : image.terms()) m(index.at(mono), j) = c;
    }
    return m;
  };
  std::vector<std::size_t> out;
  for (int m = 0; m <= N; ++m) {
    auto here = piece(k, m);
    std::size_t cycles = here.size() - (k > 0 ? rank(matrix(here, piece(k - 1, m + 1))) : 0);
    std::size_t bounds = m > 0 ? rank(matrix(piece(k + 1, m - 1), here)) : 0;
    out.push_back(cycles - bounds);
  }
  return out;
}

namespace {

CochainSpace pureH0Space(const Cdga& c) {
  Cdga pure = associatedPure(c);
  const Alphabet& a = *c.alphabet();
  std::vector<Generator> evens;
  std::vector<AlgElement> images;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a.isOdd(i)) evens.push_back(a[i]);
  AlphabetPtr e = Alphabet::make(evens);
  for (std::size_t i = 0, j = 0; i < a.size(); ++i)
    images.push_back(a.isOdd(i) ? AlgElement(e) : AlgElement::generator(e, j++));
  std::vector<AlgElement> rels;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.isOdd(i) && !pure.differentialOf(i).isZero())
      rels.push_back(substitute(pure.differentialOf(i), images, e));
  return CochainSpace(Cdga(c.name() + "_h0", e, std::vector<AlgElement>(e->size(), AlgElement(e)), rels));
}

}  // namespace

std::vector<std::size_t> pureH0(const Cdga& c, int N) {
  CochainSpace s = pureH0Space(c);
  std::vector<std::size_t> out;
  for (int k = 0; k <= N; ++k) out.push_back(s.dim(k));
  return out;
}

FinitenessResult finitenessTest(const Cdga& c, int B) {
  requireFree(c, "finiteness test");
  FinitenessResult r;
  const Alphabet& a = *c.alphabet();
  const int window = maxDegree(a, true);
  const int n = exponentProfile(c).formalDimensionCandidate;

  bool windowFound = false;
  if (window == 0) {
    r.h0Dims = {1};
    windowFound = true;
  } else {
    CochainSpace s = pureH0Space(c);
    std::vector<std::size_t> dims{s.dim(0)};
    int run = 0;
    for (int k = 1; k <= B; ++k) {
      dims.push_back(s.dim(k));
      r.searchedTo = k;
      run = dims.back() == 0 ? run + 1 : 0;
      if (run >= window) {
        windowFound = true;
        break;
      }
    }
    r.h0Dims = dims;
  }
  if (!windowFound || n > B) return r;

  r.finite = true;
  const int top = n + maxDegree(a, false);
  r.cohomologyDims = cohomology(c, top).dims();
  std::optional<int> last;
  for (int k = 0; k <= top; ++k)
    if (r.cohomologyDims[static_cast<std::size_t>(k)] != 0) last = k;
  r.formalDimension = last;
  r.verified = last == n;
  for (int k = 0; k <= top; ++k) r.totalDim += r.cohomologyDims[static_cast<std::size_t>(k)];
  r.cohomologyDims.resize(static_cast<std::size_t>(std::max(n, 0)) + 1);
  return r;
}

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::Elliptic: return "Elliptic";
    case Verdict::HyperbolicEvidence: return "HyperbolicEvidence";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Numerology exponentNumerology(const ExponentProfile& p, int n) {
  Numerology out;
  out.n = n;
  for (int b : p.odd) out.oddSum += 2 * b - 1;
  for (int a : p.even) {
    out.evenSum += 2 * a - 1;
    out.twiceA += 2 * a;
  }
  out.holds[0] = out.oddSum - out.evenSum == n;
  out.holds[1] = out.twiceA <= n;
  out.holds[2] = out.oddSum <= 2 * n - 1;
  out.holds[3] = p.even.size() <= p.odd.size();
  return out;
}

EulerReport eulerCharacteristics(const Cdga& c, const std::vector<std::size_t>& dims, bool finite) {
  EulerReport e;
  for (const auto& g : c.alphabet()->generators()) e.chiV += g.degree % 2 == 0 ? 1 : -1;
  e.chiPi = e.chiV;
  e.chiVNonpositive = e.chiV <= 0;
  e.oddCohomologyZero = true;
  long chi = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dims[k]);
    if (k % 2 == 1 && dims[k] != 0) e.oddCohomologyZero = false;
  }
  if (finite) {
    e.chiH = chi;
    e.chiHNonnegative = chi >= 0;
    bool a = chi > 0, b = e.oddCohomologyZero, z = e.chiV == 0;
    e.clusterConsistent = a == b && b == z;
  }
  return e;
}

EllipticityReport classifyEllipticity(const Cdga& c, int B) {
  if (!checkMinimalSullivan(c))
    throw PreconditionError("classification: '" + c.name() + "' is not a minimal Sullivan algebra");
  EllipticityReport r;
  r.bound = B;
  const Alphabet& a = *c.alphabet();
  r.exponents = exponentProfile(c);
  r.homotopyDims.assign(static_cast<std::size_t>(maxDegree(a, false)) + 1, 0);
  for (const auto& g : a.generators()) ++r.homotopyDims[static_cast<std::size_t>(g.degree)];
  r.finiteness = finitenessTest(c, B);
  r.euler = eulerCharacteristics(c, r.finiteness.cohomologyDims, r.finiteness.finite);

  if (r.finiteness.finite && r.finiteness.verified) {
    r.verdict = Verdict::Elliptic;
    const int n = *r.finiteness.formalDimension;
    r.formalDimension = n;
    r.numerology = exponentNumerology(r.exponents, n);
    int above = 0;
    r.boundedDegrees = true;
    for (const auto& g : a.generators()) {
      if (g.degree > 2 * n - 1) r.boundedDegrees = false;
      if (g.degree > n) ++above;
    }
    r.atMostOneAbove = above <= 1;
    r.fewGenerators = static_cast<int>(a.size()) <= n;
  } else if (r.finiteness.finite) {
    throw InternalError("classification: cohomology of '" + c.name() +
                        "' does not end at the degree predicted by its exponents");
  } else {
    r.verdict = B < maxDegree(a, false) ? Verdict::Inconclusive : Verdict::HyperbolicEvidence;
  }
  return r;
}

long torusRankBound(const Cdga& c, int B) {
  auto r = classifyEllipticity(c, B);
  if (r.verdict != Verdict::Elliptic)
    throw PreconditionError("torus rank bound: '" + c.name() + "' is not certified elliptic within bound " +
                            std::to_string(B));
  return -r.euler.chiPi;
}

int cuplength(const Cdga& c, int N) {
  CochainSpace space(c);
  auto h = cohomology(space, N);
  // products[k]: cocycles spanning the classes in H^k that are products of `len` positive classes
  std::vector<std::vector<AlgElement>> products(static_cast<std::size_t>(N) + 1);
  for (int k = 1; k <= N; ++k) products[static_cast<std::size_t>(k)] = h.at(k).representatives;
  int len = 0;
  while (true) {
    bool any = false;
    for (const auto& p : products) any = any || !p.empty();
    if (!any) return len;
    ++len;
    std::vector<std::vector<AlgElement>> next(products.size());
    for (int k = 2; k <= N; ++k) {
      const auto& hk = h.at(k);
      if (hk.dim() == 0) continue;
      std::vector<Vector> cocycles;
      for (int j = 1; j < k; ++j)
        for (const auto& p : products[static_cast<std::size_t>(j)])
          for (const auto& g : h.at(k - j).representatives)
            cocycles.push_back(space.coordinates(p * g, k));
      if (cocycles.empty()) continue;
      auto classes = SubspaceBasis::span(hk.dim(), classCoordinates(hk, cocycles));
      for (const auto& v : classes.vectors()) {
        AlgElement rep(c.alphabet());
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] != 0) rep += hk.representatives[i] * v[i];
        next[static_cast<std::size_t>(k)].push_back(rep);
      }
    }
    products = std::move(next);
  }
}

CatBounds catBounds(const Cdga& c, int N) {
  CatBounds b;
  b.lower = cuplength(c, N);
  auto h = cohomology(c, N).dims();
  for (int k = 1; k <= N; ++k)
    if (h[static_cast<std::size_t>(k)] != 0) {
      b.firstPositiveDegree = k;
      break;
    }
  if (c.isFree()) {
    auto f = finitenessTest(c, N);
    if (f.finite && f.formalDimension && *f.formalDimension <= N) b.formalDimension = f.formalDimension;
  }
  if (b.formalDimension) {
    if (!b.firstPositiveDegree) b.upper = 0;
    else b.upper = *b.formalDimension / *b.firstPositiveDegree;
  }
  return b;
}

ToomerResult toomerRank(const Cdga& c, int cap, int N) {
  requireFree(c, "Toomer rank");
  ToomerResult out;
  CochainSpace src(c);
  auto hs = cohomology(src, N);
  for (int n = 1; n <= cap; ++n) {
    auto q = wordLengthQuotient(c, n);
    CochainSpace tgt(q.quotient);
    auto ht = cohomology(tgt, N);
    ToomerLevel level;
    level.n = n;
    level.injective = true;
    for (int k = 0; k <= N; ++k) {
      std::size_t r = rank(inducedMap(q.projection, hs.at(k), ht.at(k), tgt));
      level.ranks.push_back(r);
      if (r != hs.at(k).dim()) level.injective = false;
    }
    out.levels.push_back(level);
    if (level.injective) {
      out.firstInjective = n;
      break;
    }
  }
  return out;
}

std::string toString(const PoincareSeries& p) {
  auto factor = [](char sign, int m) {
    std::string s = "(1";
    s += sign;
    s += m == 1 ? "z" : "z^" + std::to_string(m);
    return s + ")";
  };
  std::string num, den;
  for (int m : p.numerator) num += factor('+', m);
  for (int m : p.denominator) den += factor('-', m);
  if (num.empty()) num = "1";
  return den.empty() ? num : num + "/" + (p.denominator.size() > 1 ? "(" + den + ")" : den);
}

PoincareSeries loopPoincareSeries(const Cdga& model, int N) {
  if (!checkMinimalSullivan(model))
    throw PreconditionError("loop Poincaré series: '" + model.name() + "' is not minimal");
  PoincareSeries p;
  for (const auto& g : model.alphabet()->generators()) {
    if (g.degree % 2 == 0) p.numerator.push_back(g.degree - 1);
    else p.denominator.push_back(g.degree - 1);
  }
  std::sort(p.numerator.begin(), p.numerator.end());
  std::sort(p.denominator.begin(), p.denominator.end());
  const auto len = static_cast<std::size_t>(N) + 1;
  p.coeffs.assign(len, 0);
  p.coeffs[0] = 1;
  for (int m : p.numerator) {
    std::vector<Integer> next = p.coeffs;
    for (std::size_t k = static_cast<std::size_t>(m); k < len; ++k) next[k] += p.coeffs[k - static_cast<std::size_t>(m)];
    p.coeffs = std::move(next);
  }
  for (int m : p.denominator) {
    // 1/(1 - z^m) = Σ z^{jm}
    std::vector<Integer> next(len, 0);
    for (std::size_t k = 0; k < len; ++k)
      for (std::size_t j = k; j < len; j += static_cast<std::size_t>(m)) next[j] += p.coeffs[k];
    p.coeffs = std::move(next);
  }
  return p;
}

std::string toString(Growth g) {
  switch (g) {
    case Growth::Constant: return "Constant";
    case Growth::Polynomial: return "Polynomial";
    case Growth::Exponential: return "Exponential";
  }
  return "?";
}

GrowthReport growthClassify(const std::vector<Integer>& coeffs, GrowthOptions options) {
  GrowthReport r;
  if (coeffs.size() < 5) throw PreconditionError("growth classification needs at least 5 coefficients");
  std::size_t N = coeffs.size() - 1;
  bool tailZero = true;
  for (std::size_t k = N - N / 2 + 1; k <= N; ++k) tailZero = tailZero && coeffs[k] == 0;
  if (tailZero) return r;

  // Partial sums from the first nonzero coefficient on, so every ratio is defined.
  std::size_t first = 0;
  while (coeffs[first] == 0) ++first;
  std::vector<Integer> partial;
  Integer run = 0;
  for (std::size_t k = first; k <= N; ++k) partial.push_back(run += coeffs[k]);
  N = partial.size() - 1;
  if (N < 4) {
    r.growth = Growth::Polynomial;
    return r;
  }
  auto ratio = [&](std::size_t hi, std::size_t lo) {
    mpq_class q(partial[hi], partial[lo]);
    q.canonicalize();
    return q.get_d();
  };
  const std::size_t half = N / 2, quarter = std::max<std::size_t>(N / 4, 1);
  r.rate = std::pow(ratio(N, half), 1.0 / static_cast<double>(N - half));
  r.lateSlope = std::log2(ratio(N, half));
  r.earlySlope = std::log2(ratio(half, quarter));
  bool accelerating = r.lateSlope > options.acceleration * r.earlySlope;
  r.growth = (r.rate > 1.0 + options.epsilon && accelerating) ? Growth::Exponential : Growth::Polynomial;
  return r;
}

GapProbe gapProbe(const std::vector<std::size_t>& homotopyDims, int n, int range) {
  GapProbe g;
  g.window = n;
  g.checkedUpTo = range;
  if (n < 2) throw PreconditionError("gap probe: window must be at least 2");
  for (int k = 1; k + n <= range; ++k) {
    bool hit = false;
    for (int i = k + 1; i < k + n && !hit; ++i)
      hit = static_cast<std::size_t>(i) < homotopyDims.size() && homotopyDims[static_cast<std::size_t>(i)] != 0;
    if (!hit) g.emptyWindows.push_back(k);
  }
  return g;
}

}  // namespace sullivan
