#include <sullivan/errors.hpp>
#include <sullivan/sullivan.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace sullivan {

namespace {

void requireFree(const Cdga& c, const char* what) {
  if (!c.isFree())
    throw PreconditionError(std::string(what) + ": '" + c.name() + "' must be a free algebra");
}

std::string uniqueName(std::string base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!used.count(candidate)) return candidate;
  }
}

// V̄ processing order: by degree, ties by ordinal.
std::vector<std::size_t> loopOrder(const Alphabet& a) {
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a.degree(x) < a.degree(y); });
  return order;
}

}  // namespace

// ---------------------------------------------------------------- minimality

std::vector<std::string> linearDifferentialParts(const Cdga& c) {
  requireFree(c, "minimality check");
  requireSimplyConnected(c);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.generatorCount(); ++i) {
    auto parts = wordLengthSplit(c.differentialOf(i));
    if (parts.count(1) || parts.count(0)) out.push_back((*c.alphabet())[i].name);
  }
  return out;
}

bool checkMinimalSullivan(const Cdga& c) { return linearDifferentialParts(c).empty(); }

// ---------------------------------------------------------------- relative algebras

RelativeSullivanAlgebra::RelativeSullivanAlgebra(Cdga base, Cdga total)
    : base_(std::move(base)), total_(std::move(total)) {
  requireFree(base_, "relative Sullivan algebra");
  requireFree(total_, "relative Sullivan algebra");
  const Alphabet& b = *base_.alphabet();
  const Alphabet& t = *total_.alphabet();
  if (!b.isPrefixOf(t))
    throw PreconditionError("relative Sullivan algebra: base generators must come first in the total");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!(total_.differentialOf(i) == base_.differentialOf(i).rebased(total_.alphabet())))
      throw PreconditionError("relative Sullivan algebra: D differs from the base differential on '" +
                              b[i].name + "'");
  for (std::size_t i = b.size(); i < t.size(); ++i)
    for (const auto& [m, c] : total_.differentialOf(i).terms())
      for (const auto& f : m.factors)
        if (f.generator >= i)
          throw PreconditionError("relative Sullivan algebra: D(" + t[i].name + ") involves '" +
                                  t[f.generator].name + "', which is not earlier");
}

std::vector<Generator> RelativeSullivanAlgebra::fiberGenerators() const {
  const auto& all = total_.alphabet()->generators();
  return {all.begin() + static_cast<std::ptrdiff_t>(baseCount()), all.end()};
}

const AlgElement& RelativeSullivanAlgebra::fiberDifferential(std::size_t i) const {
  return total_.differentialOf(baseCount() + i);
}

// ---------------------------------------------------------------- minimal models

namespace {

// Matrix of H^k(phi) in class coordinates, for a morphism that is still
// being assembled (no CdgaMorphism validation at every stage).
RatMatrix inducedOnClasses(const CohomologyDegree& src, const std::vector<AlgElement>& images,
                           const CochainSpace& targetSpace, const CohomologyDegree& tgt) {
  std::vector<Vector> cocycles;
  for (const auto& r : src.representatives)
    cocycles.push_back(
        targetSpace.coordinates(substitute(r, images, targetSpace.cdga().alphabet()), src.degree));
  auto cols = classCoordinates(tgt, cocycles);
  return RatMatrix::fromColumns(cols, tgt.dim());
}

AlgElement combine(const CohomologyDegree& h, const Vector& coords, const AlphabetPtr& alphabet) {
  AlgElement out(alphabet);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) out += h.representatives[i].rebased(alphabet) * coords[i];
  return out;
}

}  // namespace

MinimalModelResult minimalModel(const Cdga& target, int N) {
  if (N < 2) throw PreconditionError("minimal model: N must be at least 2");
  CochainSpace T(target);
  CohomologyReport ht = cohomology(T, N + 1);
  if (ht.at(0).dim() != 1)
    throw PreconditionError("minimal model: H^0 of '" + target.name() + "' is not Q");
  if (ht.at(1).dim() != 0)
    throw PreconditionError("minimal model: H^1 of '" + target.name() + "' is not zero");

  AlphabetPtr alphabet = Alphabet::make({});
  std::vector<AlgElement> diffs;
  std::vector<AlgElement> images;
  std::set<std::string> used;
  std::vector<ModelStage> stages;
  auto current = [&] {
    std::vector<AlgElement> d;
    for (const auto& x : diffs) d.push_back(x.rebased(alphabet));
    return Cdga::unchecked(target.name() + "_model", alphabet, d);
  };

  for (int n = 2; n <= N; ++n) {
    ModelStage stage;
    stage.degree = n;

    // New classes in degree n.
    CochainSpace M(current());
    CohomologyDegree hm = cohomologyAt(M, n);
    const CohomologyDegree& htn = ht.at(n);
    RatMatrix induced = inducedOnClasses(hm, images, T, htn);
    std::vector<Vector> imageCols;
    for (std::size_t j = 0; j < induced.cols(); ++j) imageCols.push_back(induced.column(j));
    auto imageSpan = SubspaceBasis::span(htn.dim(), imageCols);
    std::vector<Vector> unit;
    for (std::size_t i = 0; i < htn.dim(); ++i) {
      Vector e(htn.dim());
      e[i] = 1;
      unit.push_back(e);
    }
    auto coker = quotientBasis(imageSpan, SubspaceBasis::span(htn.dim(), unit));
    std::vector<Generator> added;
    std::vector<AlgElement> addedImages;
    for (const auto& v : coker) {
      AlgElement rep = combine(htn, v, target.alphabet());
      std::string name;
      if (rep.size() == 1 && rep.terms().begin()->second == 1) {
        const auto& m = rep.terms().begin()->first;
        if (m.factors.size() == 1 && m.factors[0].power == 1)
          name = (*target.alphabet())[m.factors[0].generator].name;
      }
      if (name.empty() || used.count(name))
        name = uniqueName("e" + std::to_string(n) + "_" + std::to_string(added.size() + 1), used);
      used.insert(name);
      added.push_back({name, n});
      addedImages.push_back(rep);
      stage.cocycleGenerators.push_back(name);
    }
    if (!added.empty()) {
      alphabet = alphabet->extended(added);
      for (std::size_t i = 0; i < added.size(); ++i) {
        diffs.push_back(AlgElement(alphabet));
        images.push_back(addedImages[i]);
      }
    }

    // Kill the kernel in degree n+1.
    CochainSpace M2(current());
    CohomologyDegree hm1 = cohomologyAt(M2, n + 1);
    RatMatrix induced1 = inducedOnClasses(hm1, images, T, ht.at(n + 1));
    auto kernel = kernelBasis(induced1);
    std::vector<Generator> killers;
    std::vector<AlgElement> killerDiffs, killerImages;
    for (const auto& v : kernel.vectors()) {
      AlgElement z = combine(hm1, v, alphabet);
      auto parts = wordLengthSplit(z);
      if (parts.count(0) || parts.count(1))
        throw InternalError("minimal model: degree " + std::to_string(n + 1) +
                            " kernel class has a linear part");
      Vector rhs = T.coordinates(substitute(z, images, target.alphabet()), n + 1);
      auto sol = solve(T.differential(n), rhs);
      if (!sol)
        throw InternalError("minimal model: image of a kernel class is not a boundary in degree " +
                            std::to_string(n + 1));
      std::string name =
          uniqueName("k" + std::to_string(n) + "_" + std::to_string(killers.size() + 1), used);
      used.insert(name);
      killers.push_back({name, n});
      killerDiffs.push_back(z);
      killerImages.push_back(T.element(*sol.solution, n));
      stage.kernelGenerators.push_back(name);
    }
    if (!killers.empty()) {
      alphabet = alphabet->extended(killers);
      for (std::size_t i = 0; i < killers.size(); ++i) {
        diffs.push_back(killerDiffs[i].rebased(alphabet));
        images.push_back(killerImages[i]);
      }
    }
    stages.push_back(std::move(stage));
  }

  MinimalModelResult result;
  std::vector<AlgElement> d;
  for (const auto& x : diffs) d.push_back(x.rebased(alphabet));
  result.model = Cdga(target.name() + "_model", alphabet, d);
  result.quasiIso = CdgaMorphism(result.model, target, images);
  result.certifiedDegree = N;
  result.stages = std::move(stages);
  if (!checkMinimalSullivan(result.model))
    throw InternalError("minimal model: constructed algebra is not minimal");
  return result;
}

// ---------------------------------------------------------------- relative constructions

RelativeSullivanAlgebra pushoutModel(const CdgaMorphism& phi, const RelativeSullivanAlgebra& rel) {
  const Alphabet& relBase = *rel.base().alphabet();
  const Alphabet& src = *phi.source().alphabet();
  if (!(relBase == src) || !(rel.base().d() == phi.source().d()))
    throw PreconditionError("pushout: the morphism source is not the base of the relative algebra");
  const Cdga& U = phi.target();
  requireFree(U, "pushout");
  AlphabetPtr alphabet = U.alphabet()->extended(rel.fiberGenerators());
  std::vector<AlgElement> images;
  for (const auto& img : phi.images()) images.push_back(img.rebased(alphabet));
  for (std::size_t i = 0; i < rel.fiberCount(); ++i)
    images.push_back(AlgElement::generator(alphabet, U.generatorCount() + i));
  std::vector<AlgElement> d;
  for (std::size_t i = 0; i < U.generatorCount(); ++i) d.push_back(U.differentialOf(i).rebased(alphabet));
  for (std::size_t i = 0; i < rel.fiberCount(); ++i)
    d.push_back(substitute(rel.fiberDifferential(i), images, alphabet));
  Cdga total(U.name() + "_pushout", alphabet, d);
  return RelativeSullivanAlgebra(U, total);
}

Cdga fiberModel(const RelativeSullivanAlgebra& rel) {
  AlphabetPtr alphabet = Alphabet::make(rel.fiberGenerators());
  std::vector<AlgElement> images;
  for (std::size_t i = 0; i < rel.baseCount(); ++i) images.push_back(AlgElement(alphabet));
  for (std::size_t i = 0; i < rel.fiberCount(); ++i) images.push_back(AlgElement::generator(alphabet, i));
  std::vector<AlgElement> d;
  for (std::size_t i = 0; i < rel.fiberCount(); ++i)
    d.push_back(substitute(rel.fiberDifferential(i), images, alphabet));
  return Cdga(rel.total().name() + "_fiber", alphabet, d);
}

std::vector<Generator> loopGenerators(const Cdga& model) {
  const Alphabet& a = *model.alphabet();
  std::vector<Generator> out;
  for (auto i : loopOrder(a)) out.push_back({a[i].name + "_bar", a[i].degree - 1});
  return out;
}

RelativeSullivanAlgebra acyclicClosure(const Cdga& model, int N) {
  if (!checkMinimalSullivan(model))
    throw PreconditionError("acyclic closure: '" + model.name() + "' is not minimal");
  const Alphabet& v = *model.alphabet();
  const std::size_t n = v.size();
  auto order = loopOrder(v);
  AlphabetPtr alphabet = model.alphabet()->extended(loopGenerators(model));

  std::vector<AlgElement> d(alphabet->size(), AlgElement(alphabet));
  for (std::size_t i = 0; i < n; ++i) d[i] = model.differentialOf(i).rebased(alphabet);
  std::vector<bool> allowed(alphabet->size(), false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(n), true);
  auto imageOf = [&](std::size_t i) -> const AlgElement& { return d[i]; };

  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t src = order[pos], bar = n + pos;
    const int deg = v.degree(src);
    AlgElement dv = d[src];
    AlgElement correction(alphabet);
    if (!dv.isZero()) {
      std::vector<Monomial> unknowns;
      for (auto& m : basisOfDegree(*alphabet, deg, allowed)) {
        bool hasBar = std::any_of(m.factors.begin(), m.factors.end(),
                                  [&](const Factor& f) { return f.generator >= n; });
        if (hasBar) unknowns.push_back(std::move(m));
      }
      auto rows = basisOfDegree(*alphabet, deg + 1, allowed);
      std::unordered_map<Monomial, std::size_t, MonomialHash> rowIndex;
      for (std::size_t i = 0; i < rows.size(); ++i) rowIndex.emplace(rows[i], i);
      auto coords = [&](const AlgElement& x) {
        Vector out(rows.size());
        for (const auto& [m, c] : x.terms()) {
          auto it = rowIndex.find(m);
          if (it == rowIndex.end()) throw InternalError("acyclic closure: term outside the solved span");
          out[it->second] = c;
        }
        return out;
      };
      std::vector<Vector> cols;
      for (const auto& m : unknowns)
        cols.push_back(coords(applyDerivation(alphabet, 1, imageOf, AlgElement::monomial(alphabet, m))));
      auto sol = solve(RatMatrix::fromColumns(cols, rows.size()), coords(dv));
      if (!sol)
        throw InternalError("acyclic closure: no correction for '" + v[src].name + "' in degree " +
                            std::to_string(deg));
      for (std::size_t j = 0; j < unknowns.size(); ++j)
        correction.addTerm(unknowns[j], (*sol.solution)[j]);
    }
    d[bar] = AlgElement::generator(alphabet, src) - correction;
    allowed[bar] = true;
  }

  Cdga total(model.name() + "_closure", alphabet, d);
  auto h = cohomology(total, N);
  for (int k = 1; k <= N; ++k)
    if (h.at(k).dim() != 0)
      throw InternalError("acyclic closure: H^" + std::to_string(k) + " is not zero");
  return RelativeSullivanAlgebra(model, total);
}

LoopCohomology loopCohomology(const Cdga& model, int N) {
  if (!checkMinimalSullivan(model))
    throw PreconditionError("loop cohomology: '" + model.name() + "' is not minimal");
  LoopCohomology out;
  out.loopGenerators = loopGenerators(model);
  out.dims.assign(static_cast<std::size_t>(N) + 1, 0);
  out.dims[0] = 1;
  for (const auto& g : out.loopGenerators) {
    const auto step = static_cast<std::size_t>(g.degree);
    if (g.degree % 2 != 0) {
      for (std::size_t k = out.dims.size(); k-- > step;) out.dims[k] += out.dims[k - step];
    } else {
      for (std::size_t k = step; k < out.dims.size(); ++k) out.dims[k] += out.dims[k - step];
    }
  }
  out.homotopy.assign(static_cast<std::size_t>(N) + 2, 0);
  for (const auto& g : model.alphabet()->generators())
    if (g.degree <= N + 1) ++out.homotopy[static_cast<std::size_t>(g.degree)];
  return out;
}

RelativeSullivanAlgebra pathSpaceModel(const Cdga& model, int seriesCap) {
  if (!checkMinimalSullivan(model))
    throw PreconditionError("path space: '" + model.name() + "' is not minimal");
  const Alphabet& v = *model.alphabet();
  const std::size_t n = v.size();
  std::vector<Generator> copies;
  for (int copy = 0; copy < 2; ++copy)
    for (const auto& g : v.generators()) copies.push_back({g.name + "_p" + std::to_string(copy), g.degree});
  AlphabetPtr baseAlphabet = Alphabet::make(copies);
  std::vector<AlgElement> first, second;
  for (std::size_t i = 0; i < n; ++i) {
    first.push_back(AlgElement::generator(baseAlphabet, i));
    second.push_back(AlgElement::generator(baseAlphabet, n + i));
  }
  std::vector<AlgElement> baseD;
  for (std::size_t i = 0; i < n; ++i) baseD.push_back(substitute(model.differentialOf(i), first, baseAlphabet));
  for (std::size_t i = 0; i < n; ++i) baseD.push_back(substitute(model.differentialOf(i), second, baseAlphabet));
  Cdga base(model.name() + "_sq", baseAlphabet, baseD);

  auto order = loopOrder(v);
  AlphabetPtr alphabet = baseAlphabet->extended(loopGenerators(model));
  std::vector<std::size_t> barOf(n);
  for (std::size_t pos = 0; pos < n; ++pos) barOf[order[pos]] = 2 * n + pos;

  std::vector<AlgElement> s(alphabet->size(), AlgElement(alphabet));
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = AlgElement::generator(alphabet, barOf[i]);
    s[n + i] = AlgElement::generator(alphabet, barOf[i]);
  }
  Derivation S(alphabet, -1, s);

  std::vector<AlgElement> d(alphabet->size(), AlgElement(alphabet));
  std::vector<bool> known(alphabet->size(), false);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    d[i] = baseD[i].rebased(alphabet);
    known[i] = true;
  }
  auto imageOf = [&](std::size_t i) -> const AlgElement& {
    if (!known[i]) throw InternalError("path space: differential of '" + (*alphabet)[i].name + "' used before it is defined");
    return d[i];
  };

  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t i = order[pos];
    AlgElement term = AlgElement::generator(alphabet, i);
    AlgElement series(alphabet);
    bool vanished = false;
    for (int k = 1; k <= seriesCap; ++k) {
      term = S.apply(applyDerivation(alphabet, 1, imageOf, term)) * Rational(1, k);
      if (term.isZero()) {
        vanished = true;
        break;
      }
      series += term;
    }
    if (!vanished)
      throw PreconditionError("path space: series for '" + v[i].name + "' did not vanish within " +
                              std::to_string(seriesCap) + " terms");
    d[2 * n + pos] = AlgElement::generator(alphabet, n + i) - AlgElement::generator(alphabet, i) - series;
    known[2 * n + pos] = true;
  }
  Cdga total(model.name() + "_path", alphabet, d);
  return RelativeSullivanAlgebra(base, total);
}

Cdga freeLoopModel(const Cdga& model) {
  if (!checkMinimalSullivan(model))
    throw PreconditionError("free loop model: '" + model.name() + "' is not minimal");
  const Alphabet& v = *model.alphabet();
  const std::size_t n = v.size();
  auto order = loopOrder(v);
  AlphabetPtr alphabet = model.alphabet()->extended(loopGenerators(model));
  std::vector<AlgElement> s(alphabet->size(), AlgElement(alphabet));
  for (std::size_t pos = 0; pos < n; ++pos) s[order[pos]] = AlgElement::generator(alphabet, n + pos);
  Derivation S(alphabet, -1, s);
  std::vector<AlgElement> d(alphabet->size(), AlgElement(alphabet));
  for (std::size_t i = 0; i < n; ++i) d[i] = model.differentialOf(i).rebased(alphabet);
  for (std::size_t pos = 0; pos < n; ++pos) d[n + pos] = -S.apply(d[order[pos]]);
  return Cdga(model.name() + "_freeloop", alphabet, d);
}

CdgaMorphism multiplicationMorphism(const Cdga& doubled, const Cdga& model) {
  const std::size_t n = model.generatorCount();
  if (doubled.generatorCount() != 2 * n)
    throw PreconditionError("multiplication: source must have twice the generators of the target");
  std::vector<AlgElement> images;
  for (std::size_t i = 0; i < 2 * n; ++i) images.push_back(AlgElement::generator(model.alphabet(), i % n));
  return CdgaMorphism(doubled, model, images);
}

}  // namespace sullivan
