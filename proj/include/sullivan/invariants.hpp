#pragma once

// Numerical invariants of Sullivan algebras: pure parts and finiteness,
// the elliptic exponent identities, Euler characteristics, cuplength and
// category bounds, and loop-space Poincaré series.

#include <sullivan/cdga.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sullivan {

struct ExponentProfile {
  std::vector<int> even;  // a_j: even generator of degree 2a_j
  std::vector<int> odd;   // b_i: odd generator of degree 2b_i - 1
  int formalDimensionCandidate = 0;  // Σ(2b_i - 1) - Σ(2a_j - 1)
};

ExponentProfile exponentProfile(const Cdga& c);

bool isPure(const Cdga& c);
/// d_σ: zero on even generators, and on odd generators the part of d free of odd letters.
Cdga associatedPure(const Cdga& c);

/// dim of H_k of a pure algebra in degrees 0..N, where the lower grading is
/// the number of odd letters.
std::vector<std::size_t> pureFiltrationHomology(const Cdga& pure, int k, int N);

/// Q[V^even] / (d_σ V^odd) in degrees 0..N.
std::vector<std::size_t> pureH0(const Cdga& c, int N);

struct FinitenessResult {
  bool finite = false;
  int searchedTo = 0;               // last degree of H_0 examined
  std::vector<std::size_t> h0Dims;  // of the associated pure algebra
  std::optional<int> formalDimension;
  std::size_t totalDim = 0;
  std::vector<std::size_t> cohomologyDims;  // H*(c), on Finite only
  bool verified = false;                    // H*(c) vanishes just above the formal dimension
};

/// Searches H_0 of the associated pure algebra up to degree B for a run of
/// zero degrees as long as the largest even generator degree.
FinitenessResult finitenessTest(const Cdga& c, int B);

enum class Verdict { Elliptic, HyperbolicEvidence, Inconclusive };
std::string toString(Verdict v);

struct Numerology {
  int n = 0;
  int oddSum = 0;   // Σ(2b_i - 1)
  int evenSum = 0;  // Σ(2a_j - 1)
  int twiceA = 0;   // Σ 2a_j
  std::array<bool, 4> holds{};
};

Numerology exponentNumerology(const ExponentProfile& p, int n);

struct EulerReport {
  std::optional<long> chiH;  // finite cohomology only
  long chiV = 0;
  long chiPi = 0;
  bool chiHNonnegative = true;
  bool chiVNonpositive = true;
  bool oddCohomologyZero = false;
  bool clusterConsistent = true;  // χ_H > 0 ⇔ H^odd = 0 ⇔ χ_V = 0
};

EulerReport eulerCharacteristics(const Cdga& c, const std::vector<std::size_t>& cohomologyDims, bool finite);

struct EllipticityReport {
  Verdict verdict = Verdict::Inconclusive;
  int bound = 0;
  std::optional<int> formalDimension;
  FinitenessResult finiteness;
  ExponentProfile exponents;
  std::optional<Numerology> numerology;
  EulerReport euler;
  std::vector<std::size_t> homotopyDims;  // dim V^k
  bool boundedDegrees = false;            // V = V^{<= 2n-1}
  bool atMostOneAbove = false;            // dim V^{>n} <= 1
  bool fewGenerators = false;             // dim V <= n
};

/// Requires a minimal Sullivan algebra.
EllipticityReport classifyEllipticity(const Cdga& c, int B);

/// -χ_π; requires an elliptic verdict within bound B.
long torusRankBound(const Cdga& c, int B);

int cuplength(const Cdga& c, int N);

struct CatBounds {
  int lower = 0;
  std::optional<int> upper;
  std::optional<int> formalDimension;
  std::optional<int> firstPositiveDegree;
};

/// lower = cuplength; upper = ⌊fdim / r⌋ with r the first positive degree of
/// nonzero cohomology, when c is free and its cohomology is finite with fdim <= N.
CatBounds catBounds(const Cdga& c, int N);

struct ToomerLevel {
  int n = 0;
  std::vector<std::size_t> ranks;  // rank of H^k(q) for k = 0..N
  bool injective = false;
};

struct ToomerResult {
  std::vector<ToomerLevel> levels;
  std::optional<int> firstInjective;
};

/// H(q) for q: ΛV -> ΛV/Λ^{>n}V, n = 1..cap, through degree N.
ToomerResult toomerRank(const Cdga& c, int cap, int N);

struct PoincareSeries {
  std::vector<int> numerator;    // factors (1 + z^m)
  std::vector<int> denominator;  // factors (1 - z^m)
  std::vector<Integer> coeffs;
};

std::string toString(const PoincareSeries& p);

/// Series of ΛV̄: (1 + z^{2a-1}) per generator of degree 2a and 1/(1 - z^{2b-2})
/// per generator of degree 2b-1, expanded through z^N.
PoincareSeries loopPoincareSeries(const Cdga& model, int N);

enum class Growth { Constant, Polynomial, Exponential };
std::string toString(Growth g);

struct GrowthOptions {
  double epsilon = 0.05;
  double acceleration = 1.25;
};

struct GrowthReport {
  Growth growth = Growth::Constant;
  double rate = 1.0;          // geometric mean of partial-sum ratios over the last half
  double earlySlope = 0.0;    // log2(s_{N/2} / s_{N/4})
  double lateSlope = 0.0;     // log2(s_N / s_{N/2})
};

GrowthReport growthClassify(const std::vector<Integer>& coeffs, GrowthOptions options = {});

struct GapProbe {
  int window = 0;
  int checkedUpTo = 0;
  std::vector<int> emptyWindows;  // k with no i in (k, k + window) where dim V^i != 0
  bool holds() const { return emptyWindows.empty(); }
};

/// Every open window (k, k+n) with k + n <= range must meet a degree of V.
GapProbe gapProbe(const std::vector<std::size_t>& homotopyDims, int n, int range);

}  // namespace sullivan
