#include <sullivan/algebra.hpp>
#include <sullivan/errors.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sullivan {

// ---------------------------------------------------------------- rationals

Rational parseRational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational", 0);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'", 0);
  if (s.find('/') != std::string::npos && q.get_den() == 0)
    throw ParseError("zero denominator in '" + s + "'", 0);
  q.canonicalize();
  return q;
}

std::string toString(const Rational& q) { return q.get_str(); }

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// ---------------------------------------------------------------- alphabet

Alphabet::Alphabet(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.degree < 0) throw AlgebraError("generator '" + g.name + "' has negative degree");
    if (!index_.emplace(g.name, i).second)
      throw AlgebraError("duplicate generator name '" + g.name + "'");
  }
}

AlphabetPtr Alphabet::make(std::vector<Generator> generators) {
  return AlphabetPtr(new Alphabet(std::move(generators)));
}

AlphabetPtr Alphabet::extended(const std::vector<Generator>& more) const {
  auto all = generators_;
  all.insert(all.end(), more.begin(), more.end());
  return make(std::move(all));
}

std::optional<std::size_t> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::ordinal(const std::string& name) const {
  auto i = find(name);
  if (!i) throw AlgebraError("unknown generator '" + name + "'");
  return *i;
}

bool Alphabet::isPrefixOf(const Alphabet& other) const {
  if (generators_.size() > other.generators_.size()) return false;
  return std::equal(generators_.begin(), generators_.end(), other.generators_.begin());
}

// ---------------------------------------------------------------- monomials

int Monomial::degree(const Alphabet& alphabet) const {
  int d = 0;
  for (const auto& f : factors) d += static_cast<int>(f.power) * alphabet.degree(f.generator);
  return d;
}

int Monomial::wordLength() const {
  int n = 0;
  for (const auto& f : factors) n += static_cast<int>(f.power);
  return n;
}

bool Monomial::contains(std::size_t ordinal) const {
  return std::any_of(factors.begin(), factors.end(),
                     [&](const Factor& f) { return f.generator == ordinal; });
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : m.factors) {
    h ^= (static_cast<std::size_t>(f.generator) << 20) ^ f.power;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::optional<std::pair<int, Monomial>> multiplyMonomials(const Alphabet& alphabet,
                                                          const Monomial& a,
                                                          const Monomial& b) {
  int oddLeftInA = 0;
  for (const auto& f : a.factors)
    if (alphabet.isOdd(f.generator)) ++oddLeftInA;

  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    const Factor& fa = a.factors[i];
    const Factor& fb = b.factors[j];
    if (fa.generator < fb.generator) {
      if (alphabet.isOdd(fa.generator)) --oddLeftInA;
      out.factors.push_back(fa);
      ++i;
    } else if (fb.generator < fa.generator) {
      // moving an odd letter of b past the odd letters of a still to its left
      if (alphabet.isOdd(fb.generator) && (oddLeftInA % 2 != 0)) sign = -sign;
      out.factors.push_back(fb);
      ++j;
    } else {
      if (alphabet.isOdd(fa.generator)) return std::nullopt;
      out.factors.push_back({fa.generator, fa.power + fb.power});
      ++i;
      ++j;
    }
  }
  out.factors.insert(out.factors.end(), a.factors.begin() + static_cast<std::ptrdiff_t>(i),
                     a.factors.end());
  out.factors.insert(out.factors.end(), b.factors.begin() + static_cast<std::ptrdiff_t>(j),
                     b.factors.end());
  return std::make_pair(sign, std::move(out));
}

// ---------------------------------------------------------------- elements

AlgElement::AlgElement(AlphabetPtr alphabet, TermMap terms) : alphabet_(std::move(alphabet)) {
  for (auto& [m, c] : terms)
    if (c != 0) terms_.emplace(m, c);
}

AlgElement AlgElement::unit(AlphabetPtr alphabet) { return scalar(std::move(alphabet), 1); }

AlgElement AlgElement::scalar(AlphabetPtr alphabet, const Rational& c) {
  AlgElement e(std::move(alphabet));
  e.addTerm(Monomial{}, c);
  return e;
}

AlgElement AlgElement::generator(AlphabetPtr alphabet, std::size_t ordinal) {
  if (ordinal >= alphabet->size()) throw AlgebraError("generator ordinal out of range");
  AlgElement e(std::move(alphabet));
  e.terms_.emplace(Monomial{{{static_cast<std::uint32_t>(ordinal), 1}}}, 1);
  return e;
}

AlgElement AlgElement::generator(AlphabetPtr alphabet, const std::string& name) {
  auto i = alphabet->ordinal(name);
  return generator(std::move(alphabet), i);
}

AlgElement AlgElement::monomial(AlphabetPtr alphabet, Monomial m, const Rational& c) {
  AlgElement e(std::move(alphabet));
  e.addTerm(m, c);
  return e;
}

std::optional<int> AlgElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree(*alphabet_);
  for (const auto& [m, c] : terms_)
    if (m.degree(*alphabet_) != d) return std::nullopt;
  return d;
}

bool AlgElement::isHomogeneous() const { return terms_.empty() || degree().has_value(); }

Rational AlgElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgElement::addTerm(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

// Does every generator in the support of `e` sit at the same ordinal in `target`?
const Generator* foreignGenerator(const AlgElement& e, const Alphabet& target) {
  if (!e.alphabet()) return nullptr;
  for (const auto& [m, c] : e.terms())
    for (const auto& f : m.factors) {
      const Generator& g = (*e.alphabet())[f.generator];
      if (f.generator >= target.size() || !(target[f.generator] == g)) return &g;
    }
  return nullptr;
}

}  // namespace

AlphabetPtr unifyAlphabets(const AlgElement& a, const AlgElement& b) {
  const auto& pa = a.alphabet();
  const auto& pb = b.alphabet();
  if (pa == pb || !pb) return pa;
  if (!pa) return pb;
  if (pa->isPrefixOf(*pb)) return pb;
  if (pb->isPrefixOf(*pa)) return pa;
  if (!foreignGenerator(b, *pa)) return pa;
  if (!foreignGenerator(a, *pb)) return pb;
  const Generator* g = foreignGenerator(b, *pa);
  throw AlgebraError("generator '" + g->name + "' (degree " + std::to_string(g->degree) +
                     ") is foreign to the other operand's generator universe");
}

AlgElement AlgElement::rebased(AlphabetPtr target) const {
  if (target == alphabet_) return *this;
  if (const Generator* g = foreignGenerator(*this, *target))
    throw AlgebraError("generator '" + g->name + "' is not part of the target universe");
  AlgElement r(std::move(target));
  r.terms_ = terms_;
  return r;
}

AlgElement& AlgElement::operator+=(const AlgElement& other) {
  auto common = unifyAlphabets(*this, other);
  alphabet_ = common;
  for (const auto& [m, c] : other.terms_) addTerm(m, c);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& other) {
  auto common = unifyAlphabets(*this, other);
  alphabet_ = common;
  for (const auto& [m, c] : other.terms_) addTerm(m, -c);
  return *this;
}

AlgElement& AlgElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

AlgElement AlgElement::operator-() const {
  AlgElement r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool AlgElement::operator==(const AlgElement& other) const {
  if (terms_ != other.terms_) return false;
  if (terms_.empty()) return true;
  if (alphabet_ == other.alphabet_) return true;
  return !foreignGenerator(*this, *other.alphabet_) && !foreignGenerator(other, *alphabet_);
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  AlphabetPtr alphabet = unifyAlphabets(a, b);
  AlgElement out(alphabet);
  if (a.isZero() || b.isZero()) return out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = multiplyMonomials(*alphabet, ma, mb);
      if (!prod) continue;
      Rational c = ca * cb;
      if (prod->first < 0) c = -c;
      out.addTerm(prod->second, c);
    }
  }
  return out;
}

AlgElement multiply(const AlgElement& a, const AlgElement& b) { return a * b; }

AlgElement power(const AlgElement& a, unsigned exponent) {
  AlgElement result = AlgElement::unit(a.alphabet());
  AlgElement base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- derivations

AlgElement applyDerivation(const AlphabetPtr& alphabet, int shift,
                           const std::function<const AlgElement&(std::size_t)>& imageOf,
                           const AlgElement& a) {
  AlgElement out(a.alphabet() ? a.alphabet() : alphabet);
  for (const auto& [m, c] : a.terms()) {
    const Alphabet& alpha = *a.alphabet();
    int prefixDegree = 0;
    for (std::size_t idx = 0; idx < m.factors.size(); ++idx) {
      const Factor& f = m.factors[idx];
      const AlgElement& img = imageOf(f.generator);
      if (!img.isZero()) {
        const auto split = m.factors.begin() + static_cast<std::ptrdiff_t>(idx);
        Monomial prefix{std::vector<Factor>(m.factors.begin(), split)};
        Monomial suffix{std::vector<Factor>(split + 1, m.factors.end())};
        Rational coef = c;
        if (f.power > 1) {
          coef *= f.power;
          suffix.factors.insert(suffix.factors.begin(), Factor{f.generator, f.power - 1});
        }
        if ((shift * prefixDegree) % 2 != 0) coef = -coef;
        AlgElement left = AlgElement::monomial(a.alphabet(), std::move(prefix), coef);
        AlgElement right = AlgElement::monomial(a.alphabet(), std::move(suffix));
        // g^{p-1} is even when p > 1, so it may sit on either side of the image
        out += left * img * right;
      }
      prefixDegree += static_cast<int>(f.power) * alpha.degree(f.generator);
    }
  }
  return out;
}

Derivation::Derivation(AlphabetPtr alphabet, int shift, std::vector<AlgElement> images)
    : alphabet_(std::move(alphabet)), shift_(shift), images_(std::move(images)), zero_(alphabet_) {
  if (images_.size() > alphabet_->size())
    throw AlgebraError("derivation has more images than generators");
  images_.resize(alphabet_->size(), AlgElement(alphabet_));
  for (std::size_t i = 0; i < images_.size(); ++i) {
    auto& img = images_[i];
    if (!img.alphabet()) img = AlgElement(alphabet_);
    if (img.isZero()) continue;
    auto d = img.degree();
    const auto& g = (*alphabet_)[i];
    if (!d) throw AlgebraError("image of '" + g.name + "' is not homogeneous");
    if (*d != g.degree + shift)
      throw AlgebraError("image of '" + g.name + "' has degree " + std::to_string(*d) +
                         ", expected " + std::to_string(g.degree + shift));
  }
}

const AlgElement& Derivation::image(std::size_t ordinal) const {
  return ordinal < images_.size() ? images_[ordinal] : zero_;
}

AlgElement Derivation::apply(const AlgElement& a) const {
  return applyDerivation(alphabet_, shift_,
                         [this](std::size_t i) -> const AlgElement& { return image(i); }, a);
}

AlgElement Derivation::applyToMonomial(const Monomial& m) const {
  return apply(AlgElement::monomial(alphabet_, m));
}

bool Derivation::operator==(const Derivation& other) const {
  if (shift_ != other.shift_) return false;
  if (!alphabet_ || !other.alphabet_) return alphabet_ == other.alphabet_;
  if (!(*alphabet_ == *other.alphabet_)) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!(images_[i] == other.images_[i])) return false;
  return true;
}

// ---------------------------------------------------------------- substitution

AlgElement substitute(const AlgElement& a, std::span<const AlgElement> images,
                      const AlphabetPtr& target) {
  AlgElement out(target);
  std::map<std::pair<std::uint32_t, std::uint32_t>, AlgElement> powers;
  auto powerOf = [&](const Factor& f) -> const AlgElement& {
    auto key = std::make_pair(f.generator, f.power);
    auto it = powers.find(key);
    if (it == powers.end()) {
      if (f.generator >= images.size())
        throw AlgebraError("no image for generator '" + (*a.alphabet())[f.generator].name + "'");
      it = powers.emplace(key, power(images[f.generator].rebased(target), f.power)).first;
    }
    return it->second;
  };
  for (const auto& [m, c] : a.terms()) {
    AlgElement term = AlgElement::scalar(target, c);
    for (const auto& f : m.factors) {
      term = term * powerOf(f);
      if (term.isZero()) break;
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------- bases

namespace {

void enumerate(const Alphabet& alphabet, const std::vector<std::size_t>& gens, std::size_t idx,
               int remaining, int length, const WordFilter& filter, Monomial& current,
               std::vector<Monomial>& out) {
  if (filter.maxLength >= 0 && length > filter.maxLength) return;
  if (idx == gens.size()) {
    if (remaining == 0 && length >= filter.minLength) out.push_back(current);
    return;
  }
  const std::size_t g = gens[idx];
  const int deg = alphabet.degree(g);
  enumerate(alphabet, gens, idx + 1, remaining, length, filter, current, out);
  const int maxPower = alphabet.isOdd(g) ? 1 : (deg == 0 ? filter.maxLength - length : remaining / deg);
  for (int p = 1; p <= maxPower; ++p) {
    if (deg * p > remaining) break;
    current.factors.push_back({static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(p)});
    enumerate(alphabet, gens, idx + 1, remaining - deg * p, length + p, filter, current, out);
    current.factors.pop_back();
  }
}

}  // namespace

std::vector<Monomial> basisOfDegree(const Alphabet& alphabet, int n,
                                    const std::vector<bool>& allowed, WordFilter filter) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (i < allowed.size() && !allowed[i]) continue;
    if (alphabet.degree(i) == 0 && filter.maxLength < 0)
      throw AlgebraError("degree-0 generator '" + alphabet[i].name +
                         "' requires a bounded word-length filter");
    gens.push_back(i);
  }
  Monomial current;
  enumerate(alphabet, gens, 0, n, 0, filter, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> basisOfDegree(const Alphabet& alphabet, int n, WordFilter filter) {
  return basisOfDegree(alphabet, n, std::vector<bool>(alphabet.size(), true), filter);
}

std::map<int, AlgElement> wordLengthSplit(const AlgElement& a) {
  std::map<int, AlgElement> out;
  for (const auto& [m, c] : a.terms()) {
    auto [it, _] = out.try_emplace(m.wordLength(), a.alphabet());
    it->second.addTerm(m, c);
  }
  return out;
}

// ---------------------------------------------------------------- text

namespace {

class PolyParser {
 public:
  PolyParser(const AlphabetPtr& alphabet, std::string_view text) : alphabet_(alphabet) {
    auto hash = text.find('#');
    text_ = text.substr(0, hash);
  }

  AlgElement parse() {
    AlgElement sum(alphabet_);
    skipSpace();
    if (atEnd()) throw ParseError("empty polynomial", 0);
    bool first = true;
    while (!atEnd()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skipSpace();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      AlgElement term = parseTerm();
      if (sign < 0) term = -term;
      sum += term;
      first = false;
      skipSpace();
    }
    return sum;
  }

 private:
  AlgElement parseTerm() {
    AlgElement term = AlgElement::unit(alphabet_);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      term = AlgElement::scalar(alphabet_, parseRat());
      skipSpace();
      if (atEnd() || peek() != '*') return term;
      ++pos_;
      skipSpace();
    }
    term = term * parseFactor();
    skipSpace();
    while (!atEnd() && peek() == '*') {
      ++pos_;
      skipSpace();
      term = term * parseFactor();
      skipSpace();
    }
    return term;
  }

  Rational parseRat() {
    std::string digits = readDigits();
    skipSpace();
    if (!atEnd() && peek() == '/') {
      ++pos_;
      skipSpace();
      std::string den = readDigits();
      if (Integer(den) == 0) fail("zero denominator");
      return parseRational(digits + "/" + den);
    }
    return parseRational(digits);
  }

  AlgElement parseFactor() {
    if (atEnd() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      fail("expected generator name");
    std::size_t start = pos_;
    while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto ord = alphabet_->find(name);
    if (!ord) fail("undeclared generator '" + name + "'");
    AlgElement g = AlgElement::generator(alphabet_, *ord);
    skipSpace();
    if (!atEnd() && peek() == '^') {
      ++pos_;
      skipSpace();
      std::string digits = readDigits();
      unsigned long e = std::stoul(digits);
      if (e == 0) fail("exponent must be positive");
      return power(g, static_cast<unsigned>(e));
    }
    return g;
  }

  std::string readDigits() {
    std::size_t start = pos_;
    while (!atEnd() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in '" +
                         std::string(text_) + "'",
                     0);
  }

  void skipSpace() {
    while (!atEnd() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool atEnd() const { return pos_ >= text_.size(); }
  char peek() const { return atEnd() ? '\0' : text_[pos_]; }

  const AlphabetPtr& alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgElement parsePoly(const AlphabetPtr& alphabet, std::string_view text) {
  return PolyParser(alphabet, text).parse();
}

std::string toString(const Monomial& m, const Alphabet& alphabet) {
  if (m.isUnit()) return "1";
  std::string s;
  for (const auto& f : m.factors) {
    if (!s.empty()) s += '*';
    s += alphabet[f.generator].name;
    if (f.power > 1) s += "^" + std::to_string(f.power);
  }
  return s;
}

std::string toString(const AlgElement& a) {
  if (a.isZero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.isUnit()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += toString(m, *a.alphabet());
    }
  }
  return s;
}

}  // namespace sullivan
