#pragma once

// Commutative differential graded algebras presented as a free algebra on
// generators with a differential, optionally divided by a homogeneous ideal.
// The ideal is either given by generating relations or is the ideal of words
// longer than a cap; in both cases all computation happens degreewise on
// finite monomial bases.

#include <sullivan/algebra.hpp>
#include <sullivan/linalg.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sullivan {

struct CdgaDefect {
  std::string generator;  // offending generator or relation label
  std::string message;
  AlgElement residue;
};

class Cdga {
 public:
  Cdga() = default;

  /// Validates the presentation; throws PreconditionError listing every defect.
  Cdga(std::string name, AlphabetPtr alphabet, std::vector<AlgElement> differential,
       std::vector<AlgElement> relations = {}, std::optional<int> wordLengthCap = std::nullopt);

  /// Skips validation.  For callers that validate afterwards themselves.
  static Cdga unchecked(std::string name, AlphabetPtr alphabet, std::vector<AlgElement> differential,
                        std::vector<AlgElement> relations = {},
                        std::optional<int> wordLengthCap = std::nullopt);

  const std::string& name() const { return name_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Derivation& d() const { return d_; }
  const AlgElement& differentialOf(std::size_t ordinal) const { return d_.image(ordinal); }
  AlgElement differential(const AlgElement& a) const { return d_.apply(a); }
  std::size_t generatorCount() const { return alphabet_->size(); }

  const std::vector<AlgElement>& relations() const { return relations_; }
  std::optional<int> wordLengthCap() const { return wordLengthCap_; }
  bool isFree() const { return relations_.empty() && !wordLengthCap_; }

  Cdga withName(std::string name) const;

 private:
  std::string name_;
  AlphabetPtr alphabet_;
  Derivation d_;
  std::vector<AlgElement> relations_;
  std::optional<int> wordLengthCap_;
};

/// Every defect of a presentation: generator degrees below 1, inhomogeneous or
/// wrongly graded differentials and relations, d(d(g)) != 0, and relations
/// whose differential leaves the ideal.  Never throws on a bad presentation.
std::vector<CdgaDefect> validate(const std::string& name, const AlphabetPtr& alphabet,
                                 const std::vector<AlgElement>& differential,
                                 const std::vector<AlgElement>& relations = {},
                                 std::optional<int> wordLengthCap = std::nullopt);
std::vector<CdgaDefect> validate(const Cdga& c);

/// Throws PreconditionError unless every generator has degree >= 2.
void requireSimplyConnected(const Cdga& c);

/// Degreewise view of a Cdga: finite monomial bases, normal forms modulo the
/// ideal, and differential matrices.  Pieces are computed on first use and
/// cached; copies share the cache, which is guarded for concurrent readers.
class CochainSpace {
 public:
  explicit CochainSpace(Cdga cdga);

  const Cdga& cdga() const { return *cdga_; }
  std::size_t dim(int k) const;
  /// Standard monomials: those not eliminated by the ideal in degree k.
  const std::vector<Monomial>& basis(int k) const;

  /// Normal-form coordinates of a degree-k element (zero allowed).
  Vector coordinates(const AlgElement& x, int k) const;
  AlgElement element(std::span<const Rational> coords, int k) const;
  /// Homogeneous-component-wise normal form.
  AlgElement normalForm(const AlgElement& x) const;

  /// Matrix of d: A^k -> A^{k+1} in the standard bases.
  RatMatrix differential(int k) const;

 private:
  struct Piece;
  struct Cache;
  const Piece& piece(int k) const;

  std::shared_ptr<const Cdga> cdga_;
  std::shared_ptr<Cache> cache_;
};

struct CohomologyDegree {
  int degree = 0;
  std::size_t cochainDim = 0;
  std::size_t cocycleDim = 0;
  std::size_t boundaryDim = 0;
  std::vector<AlgElement> representatives;
  std::vector<Vector> representativeCoords;
  SubspaceBasis cocycles;
  SubspaceBasis boundaries;

  std::size_t dim() const { return representatives.size(); }
};

class CohomologyReport {
 public:
  std::vector<CohomologyDegree> degrees;  // index == degree

  int maxDegree() const { return static_cast<int>(degrees.size()) - 1; }
  const CohomologyDegree& at(int k) const { return degrees.at(static_cast<std::size_t>(k)); }
  std::vector<std::size_t> dims() const;
};

CohomologyDegree cohomologyAt(const CochainSpace& space, int k);
CohomologyReport cohomology(const CochainSpace& space, int maxDegree);
CohomologyReport cohomology(const Cdga& c, int maxDegree);

/// Coordinates, in the class basis of `h`, of cocycles given in cochain
/// coordinates.  Throws InternalError for a vector that is not a cocycle.
std::vector<Vector> classCoordinates(const CohomologyDegree& h, const std::vector<Vector>& cocycles);

class CdgaMorphism {
 public:
  CdgaMorphism() = default;
  /// Validates degrees, compatibility with the differentials and that the
  /// source relations are sent into the target ideal.
  CdgaMorphism(Cdga source, Cdga target, std::vector<AlgElement> images);

  static CdgaMorphism identity(const Cdga& c);

  const Cdga& source() const { return source_; }
  const Cdga& target() const { return target_; }
  const std::vector<AlgElement>& images() const { return images_; }
  const AlgElement& image(std::size_t ordinal) const { return images_.at(ordinal); }

  /// Extends multiplicatively; the result is not reduced modulo the target ideal.
  AlgElement apply(const AlgElement& a) const;

 private:
  Cdga source_;
  Cdga target_;
  std::vector<AlgElement> images_;
};

std::vector<std::string> morphismDefects(const Cdga& source, const Cdga& target,
                                         const std::vector<AlgElement>& images);

/// Matrix of H^k(phi) from the class basis of `src` to that of `tgt`.
RatMatrix inducedMap(const CdgaMorphism& phi, const CohomologyDegree& src,
                     const CohomologyDegree& tgt, const CochainSpace& targetSpace);

struct QuasiIsoDegree {
  int degree = 0;
  std::size_t sourceDim = 0;
  std::size_t targetDim = 0;
  std::size_t rank = 0;
  bool injective = false;
  bool surjective = false;
};

struct QuasiIsoReport {
  std::vector<QuasiIsoDegree> degrees;
  bool quasiIso = true;
  std::optional<int> firstFailure;
};

QuasiIsoReport checkQuasiIso(const CdgaMorphism& phi, int maxDegree);

struct TensorProduct {
  Cdga product;
  CdgaMorphism left;
  CdgaMorphism right;
};

/// Generators of b whose names clash with a are renamed name_2, name_3, ...
TensorProduct tensorProduct(const Cdga& a, const Cdga& b);

/// The fibered product over Q of augmented CDGAs: Q in degree zero and the
/// direct sum of the augmentation ideals above it, with cross products zero.
Cdga fiberedProductAugmented(const std::vector<Cdga>& factors);

struct WordLengthQuotient {
  Cdga quotient;
  CdgaMorphism projection;
};

/// (ΛV, d) modulo the ideal of words of length > n.
WordLengthQuotient wordLengthQuotient(const Cdga& c, int n);

}  // namespace sullivan
