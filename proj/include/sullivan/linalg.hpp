#pragma once

// Exact linear algebra over Q.  Everything here is deterministic: echelon
// forms are unique, and wherever a choice exists (free variables, coset
// representatives) the first/leftmost candidate wins.

#include <sullivan/rational.hpp>

#include <optional>
#include <span>
#include <vector>

namespace sullivan {

bool isZero(std::span<const Rational> v);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix fromRows(const std::vector<Vector>& rows, std::size_t cols);
  static RatMatrix fromColumns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  RatMatrix transposed() const;

  Vector operator*(std::span<const Rational> x) const;
  RatMatrix operator*(const RatMatrix& other) const;
  bool operator==(const RatMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form.  Forward elimination runs fraction-free on
/// integer-scaled rows; pivots are normalized to 1 only when back-substituting.
Echelon rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// A subspace of Q^ambient, stored as the nonzero rows of its reduced
/// echelon form.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(std::size_t ambient) : ambient_(ambient) {}

  /// Span of arbitrary vectors of length `ambient`.
  static SubspaceBasis span(std::size_t ambient, const std::vector<Vector>& vectors);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return vectors_.size(); }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its projection along the pivot coordinates; zero iff v is in the span.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> vectors_;
  std::vector<std::size_t> pivots_;
};

/// Growing set of independent vectors kept mutually reduced at their pivots;
/// membership tests cost one reduction.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(std::size_t ambient);

  /// Adds v if it is independent of the current span; reports whether it was.
  bool insert(const Vector& v);
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const { return isZero(reduce(v)); }
  std::size_t dim() const { return rows_.size(); }

 private:
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

SubspaceBasis kernelBasis(const RatMatrix& m);
SubspaceBasis imageBasis(const RatMatrix& m);

/// Coset representatives of within/sub: the basis vectors of `within`, in
/// order, that are independent of `sub` and of those already chosen, each
/// reduced modulo `sub`.  Throws PreconditionError if sub is not contained in within.
std::vector<Vector> quotientBasis(const SubspaceBasis& sub, const SubspaceBasis& within);

struct SolveResult {
  std::optional<Vector> solution;
  /// When unsolvable: y with y*m == 0 and y.b != 0.
  Vector certificate;

  explicit operator bool() const { return solution.has_value(); }
};

/// Solves m x = b.  The returned solution sets every free variable to zero.
SolveResult solve(const RatMatrix& m, std::span<const Rational> b);

/// Solves m X = B for several right-hand sides with one elimination; entries
/// are nullopt for inconsistent systems.
std::vector<std::optional<Vector>> solveMany(const RatMatrix& m, const std::vector<Vector>& rhs);

}  // namespace sullivan
