#include <sullivan/errors.hpp>
#include <sullivan/linalg.hpp>

#include <algorithm>

namespace sullivan {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::fromRows(const std::vector<Vector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw PreconditionError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::fromColumns(const std::vector<Vector>& columns, std::size_t rows) {
  RatMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw PreconditionError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vector RatMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector RatMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector RatMatrix::operator*(std::span<const Rational> x) const {
  if (x.size() != cols_) throw PreconditionError("matrix-vector dimension mismatch");
  Vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (x[c] != 0 && (*this)(r, c) != 0) y[r] += (*this)(r, c) * x[c];
  return y;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
  if (cols_ != other.rows_) throw PreconditionError("matrix product dimension mismatch");
  RatMatrix p(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c)
        if (other(k, c) != 0) p(r, c) += a * other(k, c);
    }
  return p;
}

bool isZero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

namespace {

using IntRow = std::vector<Integer>;

IntRow toIntegerRow(const RatMatrix& m, std::size_t r) {
  Integer l = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const Rational& q = m(r, c);
    if (q != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  IntRow row(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const Rational& q = m(r, c);
    if (q != 0) row[c] = q.get_num() * (l / q.get_den());
  }
  return row;
}

void makePrimitive(IntRow& row) {
  Integer g = 0;
  for (const auto& x : row)
    if (x != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
  if (g <= 1) return;
  for (auto& x : row)
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

Echelon rref(const RatMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<IntRow> a(rows);
  for (std::size_t r = 0; r < rows; ++r) a[r] = toIntegerRow(m, r);

  // forward elimination, fraction-free with row content removal
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::size_t sel = prow;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[prow], a[sel]);
    const Integer& p = a[prow][c];
    for (std::size_t r = prow + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Integer f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        a[r][k] *= p;
        if (a[prow][k] != 0) a[r][k] -= f * a[prow][k];
      }
      makePrimitive(a[r]);
    }
    pivots.push_back(c);
    ++prow;
  }

  // back substitution in rationals
  Echelon e{RatMatrix(rows, cols), pivots};
  std::vector<Vector> q(pivots.size(), Vector(cols));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const Integer& p = a[r][pivots[r]];
    for (std::size_t k = pivots[r]; k < cols; ++k)
      if (a[r][k] != 0) {
        q[r][k] = Rational(a[r][k], p);
        q[r][k].canonicalize();
      }
  }
  for (std::size_t r = pivots.size(); r-- > 0;) {
    for (std::size_t above = 0; above < r; ++above) {
      Rational f = q[above][pivots[r]];
      if (f == 0) continue;
      for (std::size_t k = pivots[r]; k < cols; ++k)
        if (q[r][k] != 0) q[above][k] -= f * q[r][k];
    }
  }
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t k = 0; k < cols; ++k) e.reduced(r, k) = q[r][k];
  return e;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

SubspaceBasis SubspaceBasis::span(std::size_t ambient, const std::vector<Vector>& vectors) {
  SubspaceBasis s(ambient);
  if (vectors.empty()) return s;
  Echelon e = rref(RatMatrix::fromRows(vectors, ambient));
  s.pivots_ = e.pivots;
  for (std::size_t r = 0; r < e.rank(); ++r) s.vectors_.push_back(e.reduced.row(r));
  return s;
}

Vector SubspaceBasis::reduce(Vector v) const {
  if (v.size() != ambient_) throw PreconditionError("vector length does not match subspace ambient");
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    Rational f = v[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t k = pivots_[i]; k < ambient_; ++k)
      if (vectors_[i][k] != 0) v[k] -= f * vectors_[i][k];
  }
  return v;
}

bool SubspaceBasis::contains(const Vector& v) const { return isZero(reduce(v)); }

SubspaceBasis kernelBasis(const RatMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> isPivot(m.cols(), false);
  for (auto p : e.pivots) isPivot[p] = true;
  std::vector<Vector> vs;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (isPivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    vs.push_back(std::move(v));
  }
  return SubspaceBasis::span(m.cols(), vs);
}

SubspaceBasis imageBasis(const RatMatrix& m) {
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return SubspaceBasis::span(m.rows(), cols);
}

std::vector<Vector> quotientBasis(const SubspaceBasis& sub, const SubspaceBasis& within) {
  if (sub.ambient() != within.ambient())
    throw PreconditionError("quotientBasis: ambient dimensions differ");
  for (std::size_t i = 0; i < sub.dim(); ++i)
    if (!within.contains(sub.vectors()[i]))
      throw PreconditionError("quotientBasis: subspace vector #" + std::to_string(i) +
                              " is not contained in the enclosing space");
  std::vector<Vector> reps;
  IncrementalBasis accumulated(sub.ambient());
  for (const auto& v : sub.vectors()) accumulated.insert(v);
  for (const auto& v : within.vectors()) {
    if (reps.size() + sub.dim() == within.dim()) break;
    if (accumulated.insert(v)) reps.push_back(sub.reduce(v));
  }
  return reps;
}

IncrementalBasis::IncrementalBasis(std::size_t ambient) : ambient_(ambient) {}

Vector IncrementalBasis::reduce(Vector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Rational f = v[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t k = 0; k < ambient_; ++k)
      if (rows_[i][k] != 0) v[k] -= f * rows_[i][k];
  }
  return v;
}

bool IncrementalBasis::insert(const Vector& v) {
  Vector r = reduce(v);
  std::size_t p = 0;
  while (p < ambient_ && r[p] == 0) ++p;
  if (p == ambient_) return false;
  Rational inv = 1 / r[p];
  for (auto& x : r)
    if (x != 0) x *= inv;
  for (auto& row : rows_) {
    Rational f = row[p];
    if (f == 0) continue;
    for (std::size_t k = 0; k < ambient_; ++k)
      if (r[k] != 0) row[k] -= f * r[k];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

std::vector<std::optional<Vector>> solveMany(const RatMatrix& m, const std::vector<Vector>& rhs) {
  const std::size_t rows = m.rows(), cols = m.cols();
  RatMatrix aug(rows, cols + rhs.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug(r, c) = m(r, c);
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      if (rhs[j].size() != rows) throw PreconditionError("solve: right-hand side has wrong length");
      aug(r, cols + j) = rhs[j][r];
    }
  }
  Echelon e = rref(aug);
  std::size_t coefRank = 0;
  while (coefRank < e.rank() && e.pivots[coefRank] < cols) ++coefRank;

  std::vector<std::optional<Vector>> out;
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    bool consistent = true;
    for (std::size_t r = coefRank; r < rows; ++r)
      if (e.reduced(r, cols + j) != 0) {
        consistent = false;
        break;
      }
    if (!consistent) {
      out.emplace_back(std::nullopt);
      continue;
    }
    Vector x(cols);
    for (std::size_t r = 0; r < coefRank; ++r) x[e.pivots[r]] = e.reduced(r, cols + j);
    out.emplace_back(std::move(x));
  }
  return out;
}

SolveResult solve(const RatMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw PreconditionError("solve: right-hand side has wrong length");
  SolveResult result;
  auto sols = solveMany(m, {Vector(b.begin(), b.end())});
  result.solution = std::move(sols.front());
  if (!result.solution) {
    // a left-kernel vector detecting the inconsistency
    SubspaceBasis left = kernelBasis(m.transposed());
    for (const auto& y : left.vectors()) {
      Rational dot = 0;
      for (std::size_t i = 0; i < y.size(); ++i) dot += y[i] * b[i];
      if (dot != 0) {
        result.certificate = y;
        break;
      }
    }
  }
  return result;
}

}  // namespace sullivan
