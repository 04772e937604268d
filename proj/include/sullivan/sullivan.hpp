#pragma once

// Sullivan algebras: minimality, minimal-model synthesis, relative
// extensions and the loop-space constructions built from them.

#include <sullivan/cdga.hpp>

#include <string>
#include <vector>

namespace sullivan {

/// True iff no generator differential has a linear part.  Requires a free
/// presentation with every generator in degree >= 2 (PreconditionError otherwise).
bool checkMinimalSullivan(const Cdga& c);

/// Generators whose differential has a nonzero word-length-1 part.
std::vector<std::string> linearDifferentialParts(const Cdga& c);

/// (B ⊗ ΛW, D): a free base B followed by fiber generators W in their
/// well-order.  D restricts to the base differential and D(w) involves only
/// base generators and fiber generators listed before w.
class RelativeSullivanAlgebra {
 public:
  RelativeSullivanAlgebra() = default;
  /// Validates every invariant above; throws PreconditionError.
  RelativeSullivanAlgebra(Cdga base, Cdga total);

  const Cdga& base() const { return base_; }
  const Cdga& total() const { return total_; }
  std::size_t baseCount() const { return base_.generatorCount(); }
  std::size_t fiberCount() const { return total_.generatorCount() - baseCount(); }
  std::vector<Generator> fiberGenerators() const;
  /// D of the i-th fiber generator.
  const AlgElement& fiberDifferential(std::size_t i) const;

 private:
  Cdga base_;
  Cdga total_;
};

struct ModelStage {
  int degree = 0;
  std::vector<std::string> cocycleGenerators;  // new classes
  std::vector<std::string> kernelGenerators;   // kill kernel in degree+1
};

struct MinimalModelResult {
  Cdga model;
  CdgaMorphism quasiIso;  // model -> target
  int certifiedDegree = 0;
  std::vector<ModelStage> stages;
};

/// Degree-by-degree construction for n = 2..N.  The target must be connected
/// and simply connected in cohomology and finite in each degree up to N+1.
MinimalModelResult minimalModel(const Cdga& target, int N);

/// Base change of `rel` along phi: fiber generators are kept and base
/// generators in D are replaced by their images.
RelativeSullivanAlgebra pushoutModel(const CdgaMorphism& phi, const RelativeSullivanAlgebra& rel);

/// Q ⊗_B (B ⊗ ΛW, D): drops every monomial containing a base generator.
Cdga fiberModel(const RelativeSullivanAlgebra& rel);

/// Acyclic closure ΛV ⊗ ΛV̄ of a minimal model, with Dv̄ = v - C(v) solved
/// degreewise; acyclicity is verified through degree N.
RelativeSullivanAlgebra acyclicClosure(const Cdga& model, int N);

/// Generators v̄ of degree deg(v) - 1, in order of increasing degree (ties by
/// the order of V), named v_bar.
std::vector<Generator> loopGenerators(const Cdga& model);

struct LoopCohomology {
  std::vector<Generator> loopGenerators;
  std::vector<Integer> dims;          // dim H^k(ΩX) for k = 0..N
  std::vector<std::size_t> homotopy;  // rank π_k = dim V^k for k = 0..N+1
};

LoopCohomology loopCohomology(const Cdga& model, int N);

/// Based path space over ΛV' ⊗ ΛV'': D(v̄) = v'' - v' - Σ (SD)^n(v')/n!.
/// The series must vanish within `seriesCap` terms.
RelativeSullivanAlgebra pathSpaceModel(const Cdga& model, int seriesCap = 64);

/// Λ(V ⊕ V̄) with D̄v = dv and D̄v̄ = -S̄(dv).
Cdga freeLoopModel(const Cdga& model);

/// ΛV ⊗ ΛV -> ΛV sending both copies of v to v.  `doubled` must list the
/// generators of two copies of `model`, first copy first.
CdgaMorphism multiplicationMorphism(const Cdga& doubled, const Cdga& model);

}  // namespace sullivan
