#include <sullivan/errors.hpp>
#include <sullivan/plforms.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace sullivan {

// ---------------------------------------------------------------- forms on Δⁿ

AlphabetPtr formAlphabet(int n) {
  static std::mutex mutex;
  static std::map<int, AlphabetPtr> cache;
  if (n < 0) throw PreconditionError("simplex dimension must be nonnegative");
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    std::vector<Generator> gens;
    for (int i = 1; i <= n; ++i) gens.push_back({"t" + std::to_string(i), 0});
    for (int i = 1; i <= n; ++i) gens.push_back({"y" + std::to_string(i), 1});
    slot = Alphabet::make(gens);
  }
  return slot;
}

PolyForm::PolyForm(int simplexDim, AlgElement value) : dim_(simplexDim), value_(std::move(value)) {
  AlphabetPtr a = formAlphabet(simplexDim);
  if (!value_.alphabet()) value_ = AlgElement(a);
  else if (value_.alphabet() != a) value_ = value_.rebased(a);
}

PolyForm PolyForm::zero(int simplexDim) { return PolyForm(simplexDim, AlgElement(formAlphabet(simplexDim))); }

PolyForm PolyForm::parse(int simplexDim, std::string_view text) {
  return PolyForm(simplexDim, parsePoly(formAlphabet(simplexDim), text));
}

namespace {

void requireSameSimplex(const PolyForm& a, const PolyForm& b) {
  if (a.simplexDim() != b.simplexDim())
    throw PreconditionError("forms live on simplices of different dimension");
}

// t_j and y_j of Δⁿ in reduced coordinates, j = 0..n.
AlgElement tCoord(int n, int j) {
  AlphabetPtr a = formAlphabet(n);
  if (j > 0) return AlgElement::generator(a, static_cast<std::size_t>(j - 1));
  AlgElement out = AlgElement::unit(a);
  for (int l = 1; l <= n; ++l) out -= AlgElement::generator(a, static_cast<std::size_t>(l - 1));
  return out;
}

AlgElement yCoord(int n, int j) {
  AlphabetPtr a = formAlphabet(n);
  if (j > 0) return AlgElement::generator(a, static_cast<std::size_t>(n + j - 1));
  AlgElement out(a);
  for (int l = 1; l <= n; ++l) out -= AlgElement::generator(a, static_cast<std::size_t>(n + l - 1));
  return out;
}

}  // namespace

PolyForm PolyForm::operator+(const PolyForm& o) const {
  requireSameSimplex(*this, o);
  return PolyForm(dim_, value_ + o.value_);
}

PolyForm PolyForm::operator-(const PolyForm& o) const {
  requireSameSimplex(*this, o);
  return PolyForm(dim_, value_ - o.value_);
}

PolyForm PolyForm::operator*(const PolyForm& o) const {
  requireSameSimplex(*this, o);
  return PolyForm(dim_, value_ * o.value_);
}

PolyForm PolyForm::operator*(const Rational& c) const { return PolyForm(dim_, value_ * c); }

std::string toString(const PolyForm& f) { return toString(f.value()); }

PolyForm faceForm(const PolyForm& f, int i) {
  const int n = f.simplexDim();
  if (n < 1 || i < 0 || i > n)
    throw PreconditionError("face index " + std::to_string(i) + " out of range on a " +
                            std::to_string(n) + "-simplex");
  AlphabetPtr target = formAlphabet(n - 1);
  std::vector<AlgElement> images(static_cast<std::size_t>(2 * n), AlgElement(target));
  for (int k = 1; k <= n; ++k) {
    if (k == i) continue;
    int j = k < i ? k : k - 1;
    images[static_cast<std::size_t>(k - 1)] = tCoord(n - 1, j);
    images[static_cast<std::size_t>(n + k - 1)] = yCoord(n - 1, j);
  }
  return PolyForm(n - 1, substitute(f.value(), images, target));
}

PolyForm degenForm(const PolyForm& f, int i) {
  const int n = f.simplexDim();
  if (i < 0 || i > n)
    throw PreconditionError("degeneracy index " + std::to_string(i) + " out of range on a " +
                            std::to_string(n) + "-simplex");
  AlphabetPtr target = formAlphabet(n + 1);
  std::vector<AlgElement> images;
  images.reserve(static_cast<std::size_t>(2 * n));
  for (int pass = 0; pass < 2; ++pass)
    for (int k = 1; k <= n; ++k) {
      auto coord = [&](int j) { return pass == 0 ? tCoord(n + 1, j) : yCoord(n + 1, j); };
      if (k < i) images.push_back(coord(k));
      else if (k == i) images.push_back(coord(k) + coord(k + 1));
      else images.push_back(coord(k + 1));
    }
  return PolyForm(n + 1, substitute(f.value(), images, target));
}

PolyForm formDifferential(const PolyForm& f) {
  const int n = f.simplexDim();
  AlphabetPtr a = formAlphabet(n);
  std::vector<AlgElement> images(static_cast<std::size_t>(2 * n), AlgElement(a));
  for (int k = 1; k <= n; ++k) images[static_cast<std::size_t>(k - 1)] = yCoord(n, k);
  static thread_local std::map<int, Derivation> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Derivation(a, 1, images)).first;
  return PolyForm(n, it->second.apply(f.value()));
}

Rational integrateForm(const PolyForm& f) {
  const int n = f.simplexDim();
  if (f.isZero()) return 0;
  if (f.formDegree() != std::optional<int>(n))
    throw PreconditionError("only forms of degree " + std::to_string(n) + " integrate over a " +
                            std::to_string(n) + "-simplex");
  Rational total = 0;
  for (const auto& [m, c] : f.value().terms()) {
    Integer num = 1;
    unsigned sum = 0;
    for (const auto& fac : m.factors)
      if (static_cast<int>(fac.generator) < n) {
        num *= factorial(fac.power);
        sum += fac.power;
      }
    Rational term(num, factorial(static_cast<unsigned>(n) + sum));
    term.canonicalize();
    total += c * term;
  }
  return total;
}

// ---------------------------------------------------------------- simplicial sets

std::vector<int> normalizeDegeneracies(std::vector<int> word) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      int a = word[k], b = word[k + 1];
      if (a <= b) {
        word[k] = b + 1;
        word[k + 1] = a;
        changed = true;
      }
    }
  }
  return word;
}

SimplicialSet::SimplicialSet(std::string name, std::vector<Simplex> simplices)
    : name_(std::move(name)), simplices_(std::move(simplices)) {
  position_.resize(simplices_.size());
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    const auto& x = simplices_[s];
    if (x.dim < 0) throw PreconditionError("simplex '" + x.id + "' has negative dimension");
    top_ = std::max(top_, x.dim);
    if (byDim_.size() <= static_cast<std::size_t>(x.dim)) byDim_.resize(static_cast<std::size_t>(x.dim) + 1);
    position_[s] = byDim_[static_cast<std::size_t>(x.dim)].size();
    byDim_[static_cast<std::size_t>(x.dim)].push_back(s);
  }
  for (const auto& x : simplices_) {
    const std::size_t expected = x.dim == 0 ? 0 : static_cast<std::size_t>(x.dim) + 1;
    if (x.faces.size() != expected)
      throw PreconditionError("simplex '" + x.id + "' needs " + std::to_string(expected) + " faces, has " +
                              std::to_string(x.faces.size()));
    for (std::size_t i = 0; i < x.faces.size(); ++i) {
      const auto& f = x.faces[i];
      std::string where = "face " + std::to_string(i) + " of '" + x.id + "'";
      if (f.simplex >= simplices_.size()) throw PreconditionError(where + " points to an unknown simplex");
      if (normalizeDegeneracies(f.degeneracies) != f.degeneracies)
        throw PreconditionError(where + ": degeneracy word is not in normal form");
      int d = simplices_[f.simplex].dim;
      for (auto it = f.degeneracies.rbegin(); it != f.degeneracies.rend(); ++it, ++d)
        if (*it < 0 || *it > d) throw PreconditionError(where + ": degeneracy index out of range");
      if (d != x.dim - 1)
        throw PreconditionError(where + " has dimension " + std::to_string(d) + ", expected " +
                                std::to_string(x.dim - 1));
    }
  }
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    const auto& x = simplices_[s];
    for (int j = 1; j <= x.dim && x.dim >= 2; ++j)
      for (int i = 0; i < j; ++i) {
        SimplexRef lhs = face(face({s, {}}, j), i);
        SimplexRef rhs = face(face({s, {}}, i), j - 1);
        if (!(lhs == rhs))
          throw PreconditionError("simplicial identity d" + std::to_string(i) + " d" + std::to_string(j) +
                                  " = d" + std::to_string(j - 1) + " d" + std::to_string(i) +
                                  " fails on '" + x.id + "'");
      }
  }
}

const std::vector<std::size_t>& SimplicialSet::ofDimension(int k) const {
  static const std::vector<std::size_t> none;
  if (k < 0 || static_cast<std::size_t>(k) >= byDim_.size()) return none;
  return byDim_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialSet::find(const std::string& id) const {
  for (std::size_t s = 0; s < simplices_.size(); ++s)
    if (simplices_[s].id == id) return s;
  return std::nullopt;
}

int SimplicialSet::dimension(const SimplexRef& x) const {
  return simplices_.at(x.simplex).dim + static_cast<int>(x.degeneracies.size());
}

SimplexRef SimplicialSet::face(const SimplexRef& x, int i) const {
  if (i < 0 || i > dimension(x) || dimension(x) == 0)
    throw PreconditionError("face index " + std::to_string(i) + " out of range");
  if (x.degeneracies.empty()) return simplices_[x.simplex].faces[static_cast<std::size_t>(i)];
  const int j = x.degeneracies.front();
  SimplexRef rest{x.simplex, {x.degeneracies.begin() + 1, x.degeneracies.end()}};
  if (i == j || i == j + 1) return rest;
  SimplexRef inner = face(rest, i < j ? i : i - 1);
  inner.degeneracies.insert(inner.degeneracies.begin(), i < j ? j - 1 : j);
  inner.degeneracies = normalizeDegeneracies(std::move(inner.degeneracies));
  return inner;
}

namespace {

SimplicialSet simplexSubsets(int n, bool withTop, std::string name) {
  if (n < 0 || n > 9) throw PreconditionError("standard simplices are supported for 0 <= n <= 9");
  std::vector<std::vector<int>> sets;
  for (int size = 1; size <= n + 1; ++size) {
    if (size == n + 1 && !withTop) break;
    std::vector<bool> pick(static_cast<std::size_t>(n + 1), false);
    std::fill(pick.begin(), pick.begin() + size, true);
    std::vector<std::vector<int>> level;
    do {
      std::vector<int> s;
      for (int v = 0; v <= n; ++v)
        if (pick[static_cast<std::size_t>(v)]) s.push_back(v);
      level.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(level.begin(), level.end());
    sets.insert(sets.end(), level.begin(), level.end());
  }
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t s = 0; s < sets.size(); ++s) index[sets[s]] = s;
  std::vector<SimplicialSet::Simplex> simplices;
  for (const auto& s : sets) {
    SimplicialSet::Simplex x;
    for (int v : s) x.id += static_cast<char>('0' + v);
    x.dim = static_cast<int>(s.size()) - 1;
    if (x.dim > 0)
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        x.faces.push_back({index.at(f), {}});
      }
    simplices.push_back(std::move(x));
  }
  return SimplicialSet(std::move(name), std::move(simplices));
}

}  // namespace

SimplicialSet SimplicialSet::standardSimplex(int n) { return simplexSubsets(n, true, "delta" + std::to_string(n)); }

SimplicialSet SimplicialSet::simplexBoundary(int n) {
  if (n < 1) throw PreconditionError("the boundary of a simplex needs n >= 1");
  return simplexSubsets(n, false, "bddelta" + std::to_string(n));
}

SimplicialSet SimplicialSet::builtin(const std::string& name) {
  if (name == "delta2") return standardSimplex(2);
  if (name == "delta3") return standardSimplex(3);
  if (name == "bddelta3") return simplexBoundary(3);
  throw PreconditionError("unknown built-in simplicial set '" + name + "' (expected delta2, delta3, bddelta3)");
}

SimplicialSet parseSimplicialSet(std::istream& in) {
  std::string name;
  std::vector<SimplicialSet::Simplex> simplices;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<bool>> given;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream words(raw);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "scomplex") {
      if (!name.empty()) throw ParseError("duplicate 'scomplex' header", line);
      if (!(words >> name)) throw ParseError("'scomplex' requires a name", line);
    } else if (keyword == "simplex") {
      std::string id;
      int dim = -1;
      if (!(words >> id >> dim) || dim < 0) throw ParseError("expected 'simplex <id> <dim>'", line);
      if (index.count(id)) throw ParseError("simplex '" + id + "' declared twice", line);
      index[id] = simplices.size();
      SimplicialSet::Simplex x{id, dim, {}};
      x.faces.resize(dim == 0 ? 0 : static_cast<std::size_t>(dim) + 1);
      simplices.push_back(std::move(x));
      given.emplace_back(simplices.back().faces.size(), false);
    } else if (keyword == "face") {
      std::string id, eq, target;
      int i = -1;
      if (!(words >> id >> i >> eq >> target) || eq != "=")
        throw ParseError("expected 'face <id> <i> = <target-id> [s<j> ...]'", line);
      auto s = index.find(id);
      if (s == index.end()) throw ParseError("face of undeclared simplex '" + id + "'", line);
      auto t = index.find(target);
      if (t == index.end()) throw ParseError("face target '" + target + "' is not declared", line);
      auto& x = simplices[s->second];
      if (i < 0 || static_cast<std::size_t>(i) >= x.faces.size())
        throw ParseError("face index " + std::to_string(i) + " out of range for '" + id + "'", line);
      if (given[s->second][static_cast<std::size_t>(i)])
        throw ParseError("face " + std::to_string(i) + " of '" + id + "' given twice", line);
      SimplexRef ref{t->second, {}};
      std::string op;
      while (words >> op) {
        if (op.size() < 2 || op[0] != 's') throw ParseError("bad degeneracy '" + op + "'", line);
        try {
          ref.degeneracies.push_back(std::stoi(op.substr(1)));
        } catch (const std::exception&) {
          throw ParseError("bad degeneracy '" + op + "'", line);
        }
      }
      ref.degeneracies = normalizeDegeneracies(std::move(ref.degeneracies));
      x.faces[static_cast<std::size_t>(i)] = ref;
      given[s->second][static_cast<std::size_t>(i)] = true;
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line);
    }
  }
  if (name.empty()) throw ParseError("missing 'scomplex <name>' header", 0);
  for (std::size_t s = 0; s < simplices.size(); ++s)
    for (std::size_t i = 0; i < given[s].size(); ++i)
      if (!given[s][i])
        throw ParseError("face " + std::to_string(i) + " of '" + simplices[s].id + "' is missing", 0);
  return SimplicialSet(name, std::move(simplices));
}

SimplicialSet parseSimplicialSet(const std::string& text) {
  std::istringstream in(text);
  return parseSimplicialSet(in);
}

SimplicialSet loadSimplicialSet(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  try {
    return parseSimplicialSet(in);
  } catch (const ParseError& e) {
    throw ParseError::inContext(path, e);
  }
}

// ---------------------------------------------------------------- global forms

PolyForm GlobalForm::at(const SimplexRef& x) const {
  PolyForm f = values.at(x.simplex);
  for (auto it = x.degeneracies.rbegin(); it != x.degeneracies.rend(); ++it) f = degenForm(f, *it);
  return f;
}

bool GlobalForm::isZero() const {
  return std::all_of(values.begin(), values.end(), [](const PolyForm& f) { return f.isZero(); });
}

std::vector<std::string> compatibilityDefects(const GlobalForm& w) {
  std::vector<std::string> out;
  const SimplicialSet& K = *w.complex;
  for (std::size_t s = 0; s < K.size(); ++s) {
    const int n = K.simplex(s).dim;
    for (int i = 0; i <= n && n > 0; ++i) {
      PolyForm lhs = faceForm(w.values[s], i);
      PolyForm rhs = w.at(K.face({s, {}}, i));
      if (!(lhs == rhs))
        out.push_back("face " + std::to_string(i) + " of '" + K.simplex(s).id + "': " + toString(lhs) +
                      " vs " + toString(rhs));
    }
  }
  return out;
}

GlobalForm globalDifferential(const GlobalForm& w) {
  GlobalForm out{w.complex, w.degree + 1, {}};
  for (const auto& f : w.values) out.values.push_back(formDifferential(f));
  return out;
}

namespace {

void exponentTuples(int vars, int cap, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (static_cast<int>(cur.size()) == vars) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= cap; ++a) {
    cur.push_back(static_cast<unsigned>(a));
    exponentTuples(vars, cap - a, cur, out);
    cur.pop_back();
  }
}

// Basis of the degree-k forms on Δᵐ with polynomial degree <= cap.
std::vector<Monomial> localBasis(int m, int k, int cap) {
  std::vector<Monomial> out;
  if (k > m) return out;
  std::vector<std::vector<unsigned>> tuples;
  std::vector<unsigned> cur;
  exponentTuples(m, cap, cur, tuples);
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  std::vector<std::vector<int>> subsets;
  do {
    std::vector<int> s;
    for (int j = 0; j < m; ++j)
      if (pick[static_cast<std::size_t>(j)]) s.push_back(j);
    subsets.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  for (const auto& a : tuples)
    for (const auto& s : subsets) {
      Monomial mono;
      for (int j = 0; j < m; ++j)
        if (a[static_cast<std::size_t>(j)] > 0)
          mono.factors.push_back({static_cast<std::uint32_t>(j), a[static_cast<std::size_t>(j)]});
      for (int j : s) mono.factors.push_back({static_cast<std::uint32_t>(m + j), 1});
      out.push_back(std::move(mono));
    }
  std::sort(out.begin(), out.end());
  return out;
}

struct FormSpace {
  std::vector<std::size_t> simplexOf;  // unknown -> simplex
  std::vector<Monomial> monomialOf;    // unknown -> local basis monomial
  std::vector<Vector> basis;           // kernel vectors over the unknowns
};

FormSpace solveCompatibility(const SimplicialSet& K, int k, int cap) {
  FormSpace space;
  for (std::size_t s = 0; s < K.size(); ++s)
    for (auto& m : localBasis(K.simplex(s).dim, k, cap)) {
      space.simplexOf.push_back(s);
      space.monomialOf.push_back(std::move(m));
    }
  const std::size_t unknowns = space.simplexOf.size();

  // Faces that land on each simplex: (source simplex, face index, degeneracies).
  struct Incoming {
    std::size_t from;
    int index;
    std::vector<int> word;
  };
  std::vector<std::vector<Incoming>> incoming(K.size());
  for (std::size_t s = 0; s < K.size(); ++s)
    for (int i = 0; i <= K.simplex(s).dim && K.simplex(s).dim > 0; ++i) {
      auto f = K.face({s, {}}, i);
      incoming[f.simplex].push_back({s, i, f.degeneracies});
    }

  std::map<std::tuple<std::size_t, int, Monomial>, std::size_t> rowIndex;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(unknowns);
  auto addTo = [&](std::size_t col, std::size_t s, int i, const PolyForm& f, int sign) {
    for (const auto& [m, c] : f.value().terms()) {
      auto key = std::make_tuple(s, i, m);
      auto it = rowIndex.find(key);
      if (it == rowIndex.end()) it = rowIndex.emplace(key, rowIndex.size()).first;
      columns[col].push_back({it->second, sign > 0 ? c : Rational(-c)});
    }
  };
  for (std::size_t u = 0; u < unknowns; ++u) {
    const std::size_t s = space.simplexOf[u];
    const int m = K.simplex(s).dim;
    PolyForm e(m, AlgElement::monomial(formAlphabet(m), space.monomialOf[u]));
    for (int i = 0; i <= m && m > 0; ++i) addTo(u, s, i, faceForm(e, i), +1);
    for (const auto& in : incoming[s]) {
      PolyForm f = e;
      for (auto it = in.word.rbegin(); it != in.word.rend(); ++it) f = degenForm(f, *it);
      addTo(u, in.from, in.index, f, -1);
    }
  }
  RatMatrix A(rowIndex.size(), unknowns);
  for (std::size_t u = 0; u < unknowns; ++u)
    for (const auto& [r, c] : columns[u]) A(r, u) += c;
  space.basis = kernelBasis(A).vectors();
  return space;
}

GlobalForm assemble(const std::shared_ptr<const SimplicialSet>& K, int k, const FormSpace& space,
                    const Vector& coeffs) {
  GlobalForm w{K, k, {}};
  for (std::size_t s = 0; s < K->size(); ++s) w.values.push_back(PolyForm::zero(K->simplex(s).dim));
  std::vector<AlgElement> acc;
  for (const auto& f : w.values) acc.push_back(f.value());
  for (std::size_t u = 0; u < coeffs.size(); ++u)
    if (coeffs[u] != 0) acc[space.simplexOf[u]].addTerm(space.monomialOf[u], coeffs[u]);
  for (std::size_t s = 0; s < K->size(); ++s) w.values[s] = PolyForm(K->simplex(s).dim, acc[s]);
  return w;
}

Rational sampleCoefficient(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 19) - 9;
  long den = static_cast<long>(rng() % 4) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

GlobalForm sampleFrom(const std::shared_ptr<const SimplicialSet>& K, int k, const FormSpace& space,
                      std::mt19937_64& rng) {
  Vector coeffs(space.simplexOf.size());
  for (const auto& b : space.basis) {
    Rational c = sampleCoefficient(rng);
    for (std::size_t u = 0; u < b.size(); ++u) coeffs[u] += c * b[u];
  }
  return assemble(K, k, space, coeffs);
}

}  // namespace

std::vector<GlobalForm> globalFormBasis(std::shared_ptr<const SimplicialSet> K, int k, int polyCap) {
  if (k < 0 || polyCap < 0) throw PreconditionError("form degree and polynomial cap must be nonnegative");
  FormSpace space = solveCompatibility(*K, k, polyCap);
  std::vector<GlobalForm> out;
  for (const auto& b : space.basis) out.push_back(assemble(K, k, space, b));
  return out;
}

GlobalForm sampleGlobalForm(std::shared_ptr<const SimplicialSet> K, int k, int polyCap, std::uint64_t seed) {
  if (k < 0 || polyCap < 0) throw PreconditionError("form degree and polynomial cap must be nonnegative");
  std::mt19937_64 rng(seed);
  return sampleFrom(K, k, solveCompatibility(*K, k, polyCap), rng);
}

// ---------------------------------------------------------------- cochains

Cochain integrate(const GlobalForm& w) {
  const SimplicialSet& K = *w.complex;
  Cochain c{w.degree, {}};
  for (auto s : K.ofDimension(w.degree)) c.values.push_back(integrateForm(w.values[s]));
  return c;
}

RatMatrix coboundaryMatrix(const SimplicialSet& K, int k) {
  const auto& src = K.ofDimension(k);
  const auto& dst = K.ofDimension(k + 1);
  RatMatrix m(dst.size(), src.size());
  for (std::size_t r = 0; r < dst.size(); ++r)
    for (int i = 0; i <= k + 1; ++i) {
      auto f = K.face({dst[r], {}}, i);
      if (f.isDegenerate()) continue;
      m(r, K.position(f.simplex)) += (i % 2 == 0) ? 1 : -1;
    }
  return m;
}

Cochain cochainDifferential(const SimplicialSet& K, const Cochain& c) {
  if (c.values.size() != K.ofDimension(c.degree).size())
    throw PreconditionError("cochain has the wrong number of values");
  return {c.degree + 1, coboundaryMatrix(K, c.degree) * c.values};
}

std::vector<std::size_t> cochainCohomology(const SimplicialSet& K, int N) {
  std::vector<std::size_t> out;
  std::size_t previousRank = 0;
  for (int k = 0; k <= N; ++k) {
    std::size_t r = rank(coboundaryMatrix(K, k));
    out.push_back(K.ofDimension(k).size() - r - previousRank);
    previousRank = r;
  }
  return out;
}

Cochain cup(const SimplicialSet& K, const Cochain& a, const Cochain& b) {
  const int p = a.degree, q = b.degree, n = p + q;
  Cochain out{n, {}};
  for (auto s : K.ofDimension(n)) {
    SimplexRef front{s, {}}, back{s, {}};
    for (int i = n; i > p; --i) front = K.face(front, i);
    for (int i = 0; i < p; ++i) back = K.face(back, 0);
    if (front.isDegenerate() || back.isDegenerate()) {
      out.values.push_back(0);
      continue;
    }
    out.values.push_back(a.values.at(K.position(front.simplex)) * b.values.at(K.position(back.simplex)));
  }
  return out;
}

StokesReport verifyStokes(std::shared_ptr<const SimplicialSet> K, int trials, int polyCap, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("at least one trial is required");
  const int top = K->topDimension();
  std::vector<FormSpace> spaces;
  for (int k = 0; k <= top; ++k) spaces.push_back(solveCompatibility(*K, k, polyCap));

  StokesReport report;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int k = t % (top + 1);
    GlobalForm w = sampleFrom(K, k, spaces[static_cast<std::size_t>(k)], rng);
    StokesTrial trial;
    trial.degree = k;
    trial.solutionDim = spaces[static_cast<std::size_t>(k)].basis.size();
    trial.nonzero = !w.isZero();
    trial.equal = compatibilityDefects(w).empty() &&
                  integrate(globalDifferential(w)) == cochainDifferential(*K, integrate(w));
    if (trial.equal) ++report.passed;
    report.trials.push_back(trial);
  }

  report.cohomologyDims = cochainCohomology(*K, top);
  for (int k = 0; k <= top; ++k) {
    // Closed forms in the sampled slice, then the rank of their integrals in cohomology.
    const FormSpace& space = spaces[static_cast<std::size_t>(k)];
    std::vector<GlobalForm> forms;
    for (const auto& b : space.basis) forms.push_back(assemble(K, k, space, b));
    std::map<std::pair<std::size_t, Monomial>, std::size_t> rowIndex;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(forms.size());
    for (std::size_t j = 0; j < forms.size(); ++j) {
      GlobalForm dw = globalDifferential(forms[j]);
      for (std::size_t s = 0; s < K->size(); ++s)
        for (const auto& [m, c] : dw.values[s].value().terms()) {
          auto it = rowIndex.emplace(std::make_pair(s, m), rowIndex.size()).first;
          cols[j].push_back({it->second, c});
        }
    }
    RatMatrix D(rowIndex.size(), forms.size());
    for (std::size_t j = 0; j < forms.size(); ++j)
      for (const auto& [r, c] : cols[j]) D(r, j) += c;
    std::vector<Vector> boundaries;
    if (k > 0) {
      RatMatrix delta = coboundaryMatrix(*K, k - 1);
      for (std::size_t j = 0; j < delta.cols(); ++j) boundaries.push_back(delta.column(j));
    }
    const std::size_t dimC = K->ofDimension(k).size();
    std::size_t base = SubspaceBasis::span(dimC, boundaries).dim();
    std::vector<Vector> all = boundaries;
    SubspaceBasis closed = kernelBasis(D);
    for (const auto& z : closed.vectors()) {
      Vector coeffs(space.simplexOf.size());
      for (std::size_t j = 0; j < z.size(); ++j)
        for (std::size_t u = 0; u < coeffs.size(); ++u) coeffs[u] += z[j] * space.basis[j][u];
      all.push_back(integrate(assemble(K, k, space, coeffs)).values);
    }
    report.integratedRank.push_back(SubspaceBasis::span(dimC, all).dim() - base);
  }
  return report;
}

}  // namespace sullivan
