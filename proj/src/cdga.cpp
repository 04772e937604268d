#include <sullivan/cdga.hpp>
#include <sullivan/errors.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace sullivan {

// ---------------------------------------------------------------- Cdga

namespace {

std::vector<AlgElement> rebasedAll(std::vector<AlgElement> xs, const AlphabetPtr& alphabet) {
  for (auto& x : xs) x = x.alphabet() ? x.rebased(alphabet) : AlgElement(alphabet);
  return xs;
}

std::string describeDefects(const std::string& name, const std::vector<CdgaDefect>& defects) {
  std::string msg = "invalid CDGA '" + name + "':";
  for (const auto& d : defects) {
    msg += "\n  " + d.generator + ": " + d.message;
    if (!d.residue.isZero()) msg += " (residue " + toString(d.residue) + ")";
  }
  return msg;
}

}  // namespace

Cdga Cdga::unchecked(std::string name, AlphabetPtr alphabet, std::vector<AlgElement> differential,
                     std::vector<AlgElement> relations, std::optional<int> wordLengthCap) {
  Cdga c;
  c.name_ = std::move(name);
  c.alphabet_ = alphabet;
  c.d_ = Derivation(alphabet, +1, rebasedAll(std::move(differential), alphabet));
  c.relations_ = rebasedAll(std::move(relations), alphabet);
  c.relations_.erase(std::remove_if(c.relations_.begin(), c.relations_.end(),
                                    [](const AlgElement& r) { return r.isZero(); }),
                     c.relations_.end());
  c.wordLengthCap_ = wordLengthCap;
  return c;
}

Cdga::Cdga(std::string name, AlphabetPtr alphabet, std::vector<AlgElement> differential,
           std::vector<AlgElement> relations, std::optional<int> wordLengthCap) {
  auto defects = validate(name, alphabet, differential, relations, wordLengthCap);
  if (!defects.empty()) throw PreconditionError(describeDefects(name, defects));
  *this = unchecked(std::move(name), std::move(alphabet), std::move(differential),
                    std::move(relations), wordLengthCap);
}

Cdga Cdga::withName(std::string name) const {
  Cdga c = *this;
  c.name_ = std::move(name);
  return c;
}

std::vector<CdgaDefect> validate(const std::string& name, const AlphabetPtr& alphabet,
                                 const std::vector<AlgElement>& differential,
                                 const std::vector<AlgElement>& relations,
                                 std::optional<int> wordLengthCap) {
  (void)name;
  std::vector<CdgaDefect> defects;
  if (differential.size() > alphabet->size())
    defects.push_back({"<presentation>", "more differentials than generators", {}});
  for (std::size_t i = 0; i < alphabet->size(); ++i)
    if ((*alphabet)[i].degree < 1)
      defects.push_back({(*alphabet)[i].name, "generator degree must be at least 1", {}});
  if (wordLengthCap && *wordLengthCap < 1)
    defects.push_back({"<presentation>", "word-length cap must be at least 1", {}});

  std::vector<AlgElement> diffs;
  for (std::size_t i = 0; i < differential.size() && i < alphabet->size(); ++i) {
    const auto& g = (*alphabet)[i];
    AlgElement img;
    try {
      img = differential[i].alphabet() ? differential[i].rebased(alphabet) : AlgElement(alphabet);
    } catch (const AlgebraError& e) {
      defects.push_back({g.name, e.what(), {}});
      continue;
    }
    if (!img.isZero()) {
      auto d = img.degree();
      if (!d)
        defects.push_back({g.name, "differential is not homogeneous", img});
      else if (*d != g.degree + 1)
        defects.push_back({g.name,
                           "differential has degree " + std::to_string(*d) + ", expected " +
                               std::to_string(g.degree + 1),
                           img});
    }
    diffs.push_back(img);
  }
  std::vector<AlgElement> rels;
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const std::string label = "relation #" + std::to_string(i + 1);
    AlgElement r;
    try {
      r = relations[i].alphabet() ? relations[i].rebased(alphabet) : AlgElement(alphabet);
    } catch (const AlgebraError& e) {
      defects.push_back({label, e.what(), {}});
      continue;
    }
    if (r.isZero()) continue;
    auto d = r.degree();
    if (!d)
      defects.push_back({label, "relation is not homogeneous", r});
    else if (*d < 1)
      defects.push_back({label, "relation must have positive degree", r});
    rels.push_back(r);
  }
  if (!defects.empty()) return defects;

  Cdga c = Cdga::unchecked(name, alphabet, diffs, rels, wordLengthCap);
  CochainSpace space(c);
  for (std::size_t i = 0; i < alphabet->size(); ++i) {
    const auto& g = (*alphabet)[i];
    const AlgElement& dg = c.differentialOf(i);
    if (dg.isZero()) continue;
    AlgElement dd = space.normalForm(c.differential(dg));
    if (!dd.isZero()) defects.push_back({g.name, "d(d(" + g.name + ")) is not zero", dd});
  }
  for (std::size_t i = 0; i < rels.size(); ++i) {
    AlgElement dr = space.normalForm(c.differential(rels[i]));
    if (!dr.isZero())
      defects.push_back({"relation #" + std::to_string(i + 1),
                         "differential of the relation leaves the ideal", dr});
  }
  return defects;
}

std::vector<CdgaDefect> validate(const Cdga& c) {
  return validate(c.name(), c.alphabet(), c.d().images(), c.relations(), c.wordLengthCap());
}

void requireSimplyConnected(const Cdga& c) {
  for (const auto& g : c.alphabet()->generators())
    if (g.degree < 2)
      throw PreconditionError("'" + c.name() + "' is not simply connected: generator '" + g.name +
                              "' has degree " + std::to_string(g.degree));
}

// ---------------------------------------------------------------- CochainSpace

struct CochainSpace::Piece {
  std::vector<Monomial> monomials;  // full monomial basis of the degree
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  SubspaceBasis relations;                 // ideal in this degree, monomial coordinates
  std::vector<std::size_t> standard;       // monomial positions that survive
  std::vector<std::ptrdiff_t> standardOf;  // monomial position -> standard index or -1
  std::vector<Monomial> basis;
};

struct CochainSpace::Cache {
  std::mutex mutex;
  std::map<int, std::unique_ptr<Piece>> pieces;
};

CochainSpace::CochainSpace(Cdga cdga)
    : cdga_(std::make_shared<const Cdga>(std::move(cdga))), cache_(std::make_shared<Cache>()) {}

const CochainSpace::Piece& CochainSpace::piece(int k) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->pieces.find(k);
    if (it != cache_->pieces.end()) return *it->second;
  }
  auto p = std::make_unique<Piece>();
  const Alphabet& alphabet = *cdga_->alphabet();
  WordFilter filter;
  if (cdga_->wordLengthCap()) filter.maxLength = *cdga_->wordLengthCap();
  if (k >= 0) p->monomials = basisOfDegree(alphabet, k, filter);
  for (std::size_t i = 0; i < p->monomials.size(); ++i) p->index.emplace(p->monomials[i], i);

  std::vector<Vector> rels;
  for (const auto& r : cdga_->relations()) {
    int e = *r.degree();
    if (e > k) continue;
    for (const auto& m : basisOfDegree(alphabet, k - e, filter)) {
      AlgElement prod = AlgElement::monomial(cdga_->alphabet(), m) * r;
      Vector v(p->monomials.size());
      for (const auto& [mono, c] : prod.terms()) {
        auto it = p->index.find(mono);
        if (it != p->index.end()) v[it->second] = c;  // longer words are zero under the cap
      }
      if (!isZero(v)) rels.push_back(std::move(v));
    }
  }
  p->relations = SubspaceBasis::span(p->monomials.size(), rels);
  std::vector<bool> pivot(p->monomials.size(), false);
  for (auto c : p->relations.pivots()) pivot[c] = true;
  p->standardOf.assign(p->monomials.size(), -1);
  for (std::size_t i = 0; i < p->monomials.size(); ++i)
    if (!pivot[i]) {
      p->standardOf[i] = static_cast<std::ptrdiff_t>(p->standard.size());
      p->standard.push_back(i);
      p->basis.push_back(p->monomials[i]);
    }

  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->pieces.emplace(k, std::move(p));
  return *it->second;
}

std::size_t CochainSpace::dim(int k) const { return piece(k).basis.size(); }

const std::vector<Monomial>& CochainSpace::basis(int k) const { return piece(k).basis; }

Vector CochainSpace::coordinates(const AlgElement& x, int k) const {
  const Piece& p = piece(k);
  const Alphabet& alphabet = *cdga_->alphabet();
  if (x.alphabet() && x.alphabet() != cdga_->alphabet()) (void)unifyAlphabets(x, AlgElement(cdga_->alphabet()));
  Vector full(p.monomials.size());
  for (const auto& [m, c] : x.terms()) {
    if (m.degree(alphabet) != k)
      throw AlgebraError("element " + toString(x) + " has a term outside degree " + std::to_string(k));
    auto it = p.index.find(m);
    if (it == p.index.end()) {
      if (cdga_->wordLengthCap() && m.wordLength() > *cdga_->wordLengthCap()) continue;
      throw AlgebraError("monomial " + toString(m, alphabet) + " is not in the degree basis");
    }
    full[it->second] += c;
  }
  full = p.relations.reduce(std::move(full));
  Vector out(p.basis.size());
  for (std::size_t i = 0; i < p.standard.size(); ++i) out[i] = full[p.standard[i]];
  return out;
}

AlgElement CochainSpace::element(std::span<const Rational> coords, int k) const {
  const Piece& p = piece(k);
  if (coords.size() != p.basis.size()) throw PreconditionError("coordinate vector has wrong length");
  AlgElement e(cdga_->alphabet());
  for (std::size_t i = 0; i < coords.size(); ++i) e.addTerm(p.basis[i], coords[i]);
  return e;
}

AlgElement CochainSpace::normalForm(const AlgElement& x) const {
  std::map<int, AlgElement> parts;
  const Alphabet& alphabet = *cdga_->alphabet();
  for (const auto& [m, c] : x.terms()) {
    auto [it, _] = parts.try_emplace(m.degree(alphabet), cdga_->alphabet());
    it->second.addTerm(m, c);
  }
  AlgElement out(cdga_->alphabet());
  for (const auto& [k, part] : parts) out += element(coordinates(part, k), k);
  return out;
}

RatMatrix CochainSpace::differential(int k) const {
  const auto& src = basis(k);
  RatMatrix m(dim(k + 1), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    Vector col = coordinates(cdga_->d().applyToMonomial(src[j]), k + 1);
    for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
  }
  return m;
}

// ---------------------------------------------------------------- cohomology

std::vector<std::size_t> CohomologyReport::dims() const {
  std::vector<std::size_t> out;
  for (const auto& h : degrees) out.push_back(h.dim());
  return out;
}

namespace {

CohomologyDegree assembleDegree(const CochainSpace& space, int k, const RatMatrix& dOut,
                                const RatMatrix* dIn) {
  CohomologyDegree h;
  h.degree = k;
  h.cochainDim = space.dim(k);
  h.cocycles = kernelBasis(dOut);
  h.boundaries = dIn ? imageBasis(*dIn) : SubspaceBasis(h.cochainDim);
  h.cocycleDim = h.cocycles.dim();
  h.boundaryDim = h.boundaries.dim();
  h.representativeCoords = quotientBasis(h.boundaries, h.cocycles);
  for (const auto& v : h.representativeCoords) h.representatives.push_back(space.element(v, k));
  return h;
}

}  // namespace

CohomologyDegree cohomologyAt(const CochainSpace& space, int k) {
  RatMatrix dOut = space.differential(k);
  if (k == 0) return assembleDegree(space, k, dOut, nullptr);
  RatMatrix dIn = space.differential(k - 1);
  return assembleDegree(space, k, dOut, &dIn);
}

CohomologyReport cohomology(const CochainSpace& space, int maxDegree) {
  if (maxDegree < 0) throw PreconditionError("cohomology: maximal degree must be nonnegative");
  CohomologyReport report;
  RatMatrix previous;
  for (int k = 0; k <= maxDegree; ++k) {
    RatMatrix dOut = space.differential(k);
    report.degrees.push_back(assembleDegree(space, k, dOut, k == 0 ? nullptr : &previous));
    previous = std::move(dOut);
  }
  return report;
}

CohomologyReport cohomology(const Cdga& c, int maxDegree) {
  return cohomology(CochainSpace(c), maxDegree);
}

std::vector<Vector> classCoordinates(const CohomologyDegree& h, const std::vector<Vector>& cocycles) {
  if (cocycles.empty()) return {};
  std::vector<Vector> columns = h.representativeCoords;
  for (const auto& b : h.boundaries.vectors()) columns.push_back(b);
  RatMatrix m = RatMatrix::fromColumns(columns, h.cochainDim);
  auto sols = solveMany(m, cocycles);
  std::vector<Vector> out;
  for (auto& s : sols) {
    if (!s) throw InternalError("degree " + std::to_string(h.degree) + ": vector is not a cocycle");
    out.emplace_back(s->begin(), s->begin() + static_cast<std::ptrdiff_t>(h.dim()));
  }
  return out;
}

// ---------------------------------------------------------------- morphisms

std::vector<std::string> morphismDefects(const Cdga& source, const Cdga& target,
                                         const std::vector<AlgElement>& images) {
  std::vector<std::string> defects;
  const Alphabet& src = *source.alphabet();
  if (source.wordLengthCap()) {
    defects.push_back("word-length quotients are not supported as morphism sources");
    return defects;
  }
  if (images.size() != src.size()) {
    defects.push_back("expected " + std::to_string(src.size()) + " generator images, got " +
                      std::to_string(images.size()));
    return defects;
  }
  std::vector<AlgElement> imgs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    AlgElement img;
    try {
      img = images[i].alphabet() ? images[i].rebased(target.alphabet()) : AlgElement(target.alphabet());
    } catch (const AlgebraError& e) {
      defects.push_back(src[i].name + ": " + e.what());
      imgs.emplace_back(target.alphabet());
      continue;
    }
    if (!img.isZero() && img.degree() != std::optional<int>(src[i].degree))
      defects.push_back(src[i].name + ": image " + toString(img) + " does not have degree " +
                        std::to_string(src[i].degree));
    imgs.push_back(img);
  }
  if (!defects.empty()) return defects;

  CochainSpace tspace(target);
  for (std::size_t i = 0; i < src.size(); ++i) {
    AlgElement lhs = substitute(source.differentialOf(i), imgs, target.alphabet());
    AlgElement rhs = target.differential(imgs[i]);
    AlgElement diff = tspace.normalForm(lhs - rhs);
    if (!diff.isZero())
      defects.push_back(src[i].name + ": phi(d " + src[i].name + ") - d phi(" + src[i].name +
                        ") = " + toString(diff));
  }
  for (std::size_t i = 0; i < source.relations().size(); ++i) {
    AlgElement r = tspace.normalForm(substitute(source.relations()[i], imgs, target.alphabet()));
    if (!r.isZero())
      defects.push_back("relation #" + std::to_string(i + 1) + " is not sent into the target ideal");
  }
  return defects;
}

CdgaMorphism::CdgaMorphism(Cdga source, Cdga target, std::vector<AlgElement> images)
    : source_(std::move(source)), target_(std::move(target)) {
  auto defects = morphismDefects(source_, target_, images);
  if (!defects.empty()) {
    std::string msg = "invalid morphism '" + source_.name() + "' -> '" + target_.name() + "':";
    for (const auto& d : defects) msg += "\n  " + d;
    throw PreconditionError(msg);
  }
  images_ = rebasedAll(std::move(images), target_.alphabet());
}

CdgaMorphism CdgaMorphism::identity(const Cdga& c) {
  std::vector<AlgElement> images;
  for (std::size_t i = 0; i < c.generatorCount(); ++i)
    images.push_back(AlgElement::generator(c.alphabet(), i));
  return CdgaMorphism(c, c, std::move(images));
}

AlgElement CdgaMorphism::apply(const AlgElement& a) const {
  return substitute(a.rebased(source_.alphabet()), images_, target_.alphabet());
}

RatMatrix inducedMap(const CdgaMorphism& phi, const CohomologyDegree& src,
                     const CohomologyDegree& tgt, const CochainSpace& targetSpace) {
  std::vector<Vector> images;
  for (const auto& z : src.representatives)
    images.push_back(targetSpace.coordinates(phi.apply(z), src.degree));
  return RatMatrix::fromColumns(classCoordinates(tgt, images), tgt.dim());
}

QuasiIsoReport checkQuasiIso(const CdgaMorphism& phi, int maxDegree) {
  CochainSpace sspace(phi.source()), tspace(phi.target());
  CohomologyReport hs = cohomology(sspace, maxDegree);
  CohomologyReport ht = cohomology(tspace, maxDegree);
  QuasiIsoReport report;
  for (int k = 0; k <= maxDegree; ++k) {
    QuasiIsoDegree q;
    q.degree = k;
    q.sourceDim = hs.at(k).dim();
    q.targetDim = ht.at(k).dim();
    q.rank = q.sourceDim == 0 || q.targetDim == 0
                 ? 0
                 : rank(inducedMap(phi, hs.at(k), ht.at(k), tspace));
    q.injective = q.rank == q.sourceDim;
    q.surjective = q.rank == q.targetDim;
    if (!(q.injective && q.surjective) && report.quasiIso) {
      report.quasiIso = false;
      report.firstFailure = k;
    }
    report.degrees.push_back(q);
  }
  return report;
}

// ---------------------------------------------------------------- constructions

namespace {

struct Combined {
  AlphabetPtr alphabet;
  std::vector<std::size_t> offsets;
};

Combined combineAlphabets(const std::vector<const Cdga*>& parts) {
  std::vector<Generator> gens;
  std::unordered_set<std::string> used;
  Combined out;
  for (std::size_t f = 0; f < parts.size(); ++f) {
    out.offsets.push_back(gens.size());
    for (const auto& g : parts[f]->alphabet()->generators()) {
      std::string name = g.name;
      for (int suffix = 2; used.count(name) != 0; ++suffix) name = g.name + "_" + std::to_string(suffix);
      used.insert(name);
      gens.push_back({name, g.degree});
    }
  }
  out.alphabet = Alphabet::make(std::move(gens));
  return out;
}

std::vector<AlgElement> inclusionImages(const Cdga& part, const Combined& combined, std::size_t f) {
  std::vector<AlgElement> images;
  for (std::size_t i = 0; i < part.generatorCount(); ++i)
    images.push_back(AlgElement::generator(combined.alphabet, combined.offsets[f] + i));
  return images;
}

}  // namespace

TensorProduct tensorProduct(const Cdga& a, const Cdga& b) {
  if (a.wordLengthCap() || b.wordLengthCap())
    throw PreconditionError("tensorProduct: word-length quotients are not supported as factors");
  Combined comb = combineAlphabets({&a, &b});
  std::vector<AlgElement> diffs, rels;
  const Cdga* parts[2] = {&a, &b};
  for (std::size_t f = 0; f < 2; ++f) {
    auto images = inclusionImages(*parts[f], comb, f);
    for (std::size_t i = 0; i < parts[f]->generatorCount(); ++i)
      diffs.push_back(substitute(parts[f]->differentialOf(i), images, comb.alphabet));
    for (const auto& r : parts[f]->relations()) rels.push_back(substitute(r, images, comb.alphabet));
  }
  Cdga product(a.name() + "*" + b.name(), comb.alphabet, diffs, rels);
  CdgaMorphism left(a, product, inclusionImages(a, comb, 0));
  CdgaMorphism right(b, product, inclusionImages(b, comb, 1));
  return {product, left, right};
}

Cdga fiberedProductAugmented(const std::vector<Cdga>& factors) {
  if (factors.empty()) throw PreconditionError("fiberedProductAugmented: no factors");
  if (factors.size() == 1) return factors.front();
  std::vector<const Cdga*> parts;
  std::string name;
  for (const auto& f : factors) {
    if (f.wordLengthCap())
      throw PreconditionError("fiberedProductAugmented: word-length quotients are not supported");
    parts.push_back(&f);
    name += (name.empty() ? "" : "v") + f.name();
  }
  Combined comb = combineAlphabets(parts);
  std::vector<AlgElement> diffs, rels;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    auto images = inclusionImages(factors[f], comb, f);
    for (std::size_t i = 0; i < factors[f].generatorCount(); ++i)
      diffs.push_back(substitute(factors[f].differentialOf(i), images, comb.alphabet));
    for (const auto& r : factors[f].relations()) rels.push_back(substitute(r, images, comb.alphabet));
  }
  // products of positive-degree elements from different factors vanish
  for (std::size_t f = 0; f < factors.size(); ++f)
    for (std::size_t g = f + 1; g < factors.size(); ++g)
      for (std::size_t i = 0; i < factors[f].generatorCount(); ++i)
        for (std::size_t j = 0; j < factors[g].generatorCount(); ++j)
          rels.push_back(AlgElement::generator(comb.alphabet, comb.offsets[f] + i) *
                         AlgElement::generator(comb.alphabet, comb.offsets[g] + j));
  return Cdga(name, comb.alphabet, diffs, rels);
}

WordLengthQuotient wordLengthQuotient(const Cdga& c, int n) {
  if (!c.isFree()) throw PreconditionError("wordLengthQuotient: input must be a free CDGA");
  if (n < 1) throw PreconditionError("wordLengthQuotient: n must be at least 1");
  Cdga q(c.name() + "/wl>" + std::to_string(n), c.alphabet(), c.d().images(), {}, n);
  std::vector<AlgElement> images;
  for (std::size_t i = 0; i < c.generatorCount(); ++i)
    images.push_back(AlgElement::generator(c.alphabet(), i));
  return {q, CdgaMorphism(c, q, images)};
}

}  // namespace sullivan
