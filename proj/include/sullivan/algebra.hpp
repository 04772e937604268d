#pragma once

// Free graded-commutative algebras over Q: polynomial on even generators,
// exterior on odd ones.  Elements are sparse maps from canonical monomials to
// nonzero rationals; multiplication sorts letters by generator ordinal and
// collects the Koszul sign.

#include <sullivan/rational.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sullivan {

struct Generator {
  std::string name;
  int degree = 0;

  bool operator==(const Generator&) const = default;
};

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// An ordered set of generators; the position of a generator is its ordinal.
class Alphabet {
 public:
  static AlphabetPtr make(std::vector<Generator> generators);

  /// A new alphabet with `more` appended; this alphabet is a prefix of it.
  AlphabetPtr extended(const std::vector<Generator>& more) const;

  std::size_t size() const { return generators_.size(); }
  const Generator& operator[](std::size_t ordinal) const { return generators_[ordinal]; }
  const std::vector<Generator>& generators() const { return generators_; }
  int degree(std::size_t ordinal) const { return generators_[ordinal].degree; }
  bool isOdd(std::size_t ordinal) const { return generators_[ordinal].degree % 2 != 0; }

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t ordinal(const std::string& name) const;  // throws AlgebraError

  bool isPrefixOf(const Alphabet& other) const;
  bool operator==(const Alphabet& other) const { return generators_ == other.generators_; }

 private:
  explicit Alphabet(std::vector<Generator> generators);

  std::vector<Generator> generators_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Factor {
  std::uint32_t generator = 0;
  std::uint32_t power = 0;

  auto operator<=>(const Factor&) const = default;
};

/// A canonical monomial: factors sorted by generator ordinal, powers positive,
/// odd generators at power one.  The empty monomial is the unit.
struct Monomial {
  std::vector<Factor> factors;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  bool isUnit() const { return factors.empty(); }
  int degree(const Alphabet& alphabet) const;
  int wordLength() const;
  bool contains(std::size_t ordinal) const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Product of two canonical monomials.  Returns the sign (+1/-1) and the
/// product, or nullopt when an odd generator appears twice.
std::optional<std::pair<int, Monomial>> multiplyMonomials(const Alphabet& alphabet,
                                                          const Monomial& a,
                                                          const Monomial& b);

class AlgElement {
 public:
  using TermMap = std::map<Monomial, Rational>;

  AlgElement() = default;
  explicit AlgElement(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  AlgElement(AlphabetPtr alphabet, TermMap terms);

  static AlgElement unit(AlphabetPtr alphabet);
  static AlgElement scalar(AlphabetPtr alphabet, const Rational& c);
  static AlgElement generator(AlphabetPtr alphabet, std::size_t ordinal);
  static AlgElement generator(AlphabetPtr alphabet, const std::string& name);
  static AlgElement monomial(AlphabetPtr alphabet, Monomial m, const Rational& c = 1);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Degree of a nonzero homogeneous element; nullopt when zero or inhomogeneous.
  std::optional<int> degree() const;
  bool isHomogeneous() const;
  Rational coefficient(const Monomial& m) const;

  /// The same element viewed in `target`, which must contain every generator
  /// of the support at the same ordinal.
  AlgElement rebased(AlphabetPtr target) const;

  AlgElement& operator+=(const AlgElement& other);
  AlgElement& operator-=(const AlgElement& other);
  AlgElement& operator*=(const Rational& c);
  AlgElement operator-() const;

  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(AlgElement a, const Rational& c) { return a *= c; }
  friend AlgElement operator*(const Rational& c, AlgElement a) { return a *= c; }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);

  /// Equal term maps over structurally compatible alphabets.
  bool operator==(const AlgElement& other) const;

  void addTerm(const Monomial& m, const Rational& c);

 private:
  AlphabetPtr alphabet_;
  TermMap terms_;
};

AlgElement multiply(const AlgElement& a, const AlgElement& b);
AlgElement power(const AlgElement& a, unsigned exponent);

/// Alphabet able to hold both operands; throws AlgebraError naming a
/// generator of one operand that is foreign to the other.
AlphabetPtr unifyAlphabets(const AlgElement& a, const AlgElement& b);

/// A derivation of degree `shift`, given by the images of the generators.
/// Generators without an image are sent to zero.
class Derivation {
 public:
  Derivation() = default;
  Derivation(AlphabetPtr alphabet, int shift, std::vector<AlgElement> images);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  int shift() const { return shift_; }
  const AlgElement& image(std::size_t ordinal) const;
  const std::vector<AlgElement>& images() const { return images_; }

  AlgElement apply(const AlgElement& a) const;
  AlgElement applyToMonomial(const Monomial& m) const;

  bool operator==(const Derivation& other) const;

 private:
  AlphabetPtr alphabet_;
  int shift_ = 0;
  std::vector<AlgElement> images_;
  AlgElement zero_;
};

/// Graded-Leibniz extension of generator images given by a callback; used
/// while a derivation is still being assembled.
AlgElement applyDerivation(const AlphabetPtr& alphabet, int shift,
                           const std::function<const AlgElement&(std::size_t)>& imageOf,
                           const AlgElement& a);

/// The algebra map sending generator i of `a`'s alphabet to images[i].
AlgElement substitute(const AlgElement& a, std::span<const AlgElement> images,
                      const AlphabetPtr& target);

struct WordFilter {
  int minLength = 0;
  int maxLength = -1;  // negative: unbounded
};

/// Every canonical monomial of total degree n within the word-length window,
/// in ascending monomial order.  Degree-0 generators require a bounded window.
std::vector<Monomial> basisOfDegree(const Alphabet& alphabet, int n, WordFilter filter = {});

/// Same, restricted to monomials built from the generators in `allowed`.
std::vector<Monomial> basisOfDegree(const Alphabet& alphabet, int n,
                                    const std::vector<bool>& allowed, WordFilter filter = {});

std::map<int, AlgElement> wordLengthSplit(const AlgElement& a);

/// Expression grammar shared with the file formats:
///   poly := term (('+'|'-') term)*,  term := [rat '*'] factor ('*' factor)*
///   factor := ident ['^' posint],    rat := int ['/' posint]
/// A bare rational is accepted as a constant term.
AlgElement parsePoly(const AlphabetPtr& alphabet, std::string_view text);

std::string toString(const Monomial& m, const Alphabet& alphabet);
std::string toString(const AlgElement& a);

}  // namespace sullivan
