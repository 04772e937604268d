#pragma once

// Polynomial differential forms on simplices and on finite simplicial sets,
// normalized cochains, and integration of forms to cochains.
//
// A form on Δⁿ is stored in reduced coordinates t1..tn (degree 0) and
// y1..yn (degree 1, y_i = dt_i); t0 = 1 - Σt and y0 = -Σy are eliminated.

#include <sullivan/algebra.hpp>
#include <sullivan/linalg.hpp>

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace sullivan {

/// Alphabet t1..tn, y1..yn for forms on Δⁿ; shared per n.
AlphabetPtr formAlphabet(int n);

class PolyForm {
 public:
  PolyForm() = default;
  PolyForm(int simplexDim, AlgElement value);
  static PolyForm zero(int simplexDim);
  static PolyForm parse(int simplexDim, std::string_view text);

  int simplexDim() const { return dim_; }
  const AlgElement& value() const { return value_; }
  bool isZero() const { return value_.isZero(); }
  /// Number of y-letters; nullopt for zero or mixed forms.
  std::optional<int> formDegree() const { return value_.degree(); }

  PolyForm operator+(const PolyForm& o) const;
  PolyForm operator-(const PolyForm& o) const;
  PolyForm operator*(const PolyForm& o) const;
  PolyForm operator*(const Rational& c) const;
  bool operator==(const PolyForm& o) const { return dim_ == o.dim_ && value_ == o.value_; }

 private:
  int dim_ = 0;
  AlgElement value_;
};

std::string toString(const PolyForm& f);

/// ∂_i: forms on Δⁿ -> forms on Δⁿ⁻¹, 0 <= i <= n, n >= 1.
PolyForm faceForm(const PolyForm& f, int i);
/// s_i: forms on Δⁿ -> forms on Δⁿ⁺¹, 0 <= i <= n.
PolyForm degenForm(const PolyForm& f, int i);
PolyForm formDifferential(const PolyForm& f);

/// ∫ over Δⁿ of the top-degree part, with t^a y1..yn integrating to
/// Π a_i! / (n + Σ a_i)!.  Requires form degree n (or zero).
Rational integrateForm(const PolyForm& f);

/// A simplex of a simplicial set: a nondegenerate simplex with degeneracies
/// s_{j1} s_{j2} ... applied, outermost first, normalized to j1 > j2 > ...
struct SimplexRef {
  std::size_t simplex = 0;
  std::vector<int> degeneracies;

  bool isDegenerate() const { return !degeneracies.empty(); }
  bool operator==(const SimplexRef&) const = default;
};

/// Brings a degeneracy word to strictly decreasing form using s_i s_j = s_{j+1} s_i (i <= j).
std::vector<int> normalizeDegeneracies(std::vector<int> word);

class SimplicialSet {
 public:
  struct Simplex {
    std::string id;
    int dim = 0;
    std::vector<SimplexRef> faces;  // d_0 .. d_dim
  };

  SimplicialSet() = default;
  /// Checks dimensions of faces and the identities d_i d_j = d_{j-1} d_i (i < j);
  /// throws PreconditionError.
  SimplicialSet(std::string name, std::vector<Simplex> simplices);

  static SimplicialSet standardSimplex(int n);
  static SimplicialSet simplexBoundary(int n);
  /// delta2, delta3, bddelta3.
  static SimplicialSet builtin(const std::string& name);

  const std::string& name() const { return name_; }
  int topDimension() const { return top_; }
  std::size_t size() const { return simplices_.size(); }
  const Simplex& simplex(std::size_t s) const { return simplices_[s]; }
  /// Indices of the nondegenerate simplices of dimension k, in declaration order.
  const std::vector<std::size_t>& ofDimension(int k) const;
  /// Position of simplex s within ofDimension(dim s).
  std::size_t position(std::size_t s) const { return position_[s]; }
  std::optional<std::size_t> find(const std::string& id) const;

  int dimension(const SimplexRef& x) const;
  SimplexRef face(const SimplexRef& x, int i) const;

 private:
  std::string name_;
  int top_ = -1;
  std::vector<Simplex> simplices_;
  std::vector<std::vector<std::size_t>> byDim_;
  std::vector<std::size_t> position_;
};

/// Simplicial set file format:
///   scomplex <name>
///   simplex <id> <dim>
///   face <id> <i> = <target-id> [s<j> ...]
SimplicialSet parseSimplicialSet(std::istream& in);
SimplicialSet parseSimplicialSet(const std::string& text);
SimplicialSet loadSimplicialSet(const std::string& path);

/// A form of one degree on every nondegenerate simplex.
struct GlobalForm {
  std::shared_ptr<const SimplicialSet> complex;
  int degree = 0;
  std::vector<PolyForm> values;  // indexed by simplex

  /// The form on an arbitrary (possibly degenerate) simplex.
  PolyForm at(const SimplexRef& x) const;
  bool isZero() const;
};

/// Descriptions of face mismatches; empty iff the family is compatible.
std::vector<std::string> compatibilityDefects(const GlobalForm& w);

GlobalForm globalDifferential(const GlobalForm& w);

/// Basis of compatible degree-k families whose polynomial parts have degree <= polyCap.
std::vector<GlobalForm> globalFormBasis(std::shared_ptr<const SimplicialSet> K, int k, int polyCap);

/// A seeded pseudorandom point of the span of globalFormBasis(K, k, polyCap).
GlobalForm sampleGlobalForm(std::shared_ptr<const SimplicialSet> K, int k, int polyCap,
                            std::uint64_t seed);

struct Cochain {
  int degree = 0;
  Vector values;  // indexed by position among the nondegenerate degree-k simplices

  bool operator==(const Cochain&) const = default;
};

/// (∮w)(x) = ∫_{Δᵏ} w(x).
Cochain integrate(const GlobalForm& w);
Cochain cochainDifferential(const SimplicialSet& K, const Cochain& c);
/// Matrix of δ: C^k -> C^{k+1}.
RatMatrix coboundaryMatrix(const SimplicialSet& K, int k);
std::vector<std::size_t> cochainCohomology(const SimplicialSet& K, int N);
/// Alexander-Whitney cup product.
Cochain cup(const SimplicialSet& K, const Cochain& a, const Cochain& b);

struct StokesTrial {
  int degree = 0;
  std::size_t solutionDim = 0;
  bool nonzero = false;
  bool equal = false;
};

struct StokesReport {
  std::vector<StokesTrial> trials;
  std::size_t passed = 0;
  std::vector<std::size_t> cohomologyDims;  // of the cochain complex
  std::vector<std::size_t> integratedRank;  // rank of ∮ on closed forms, in cohomology
  bool allPassed() const { return passed == trials.size(); }
};

/// Trial t samples a form of degree t mod (top+1) and checks ∮dw = δ∮w exactly.
StokesReport verifyStokes(std::shared_ptr<const SimplicialSet> K, int trials, int polyCap,
                          std::uint64_t seed);

}  // namespace sullivan
