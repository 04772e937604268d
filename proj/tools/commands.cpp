#include "commands.hpp"

#include <sullivan/errors.hpp>
#include <sullivan/invariants.hpp>
#include <sullivan/io.hpp>
#include <sullivan/plforms.hpp>
#include <sullivan/sullivan.hpp>

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace sullivan::cli {

namespace {

using Json = nlohmann::ordered_json;

Json header(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

Json integerJson(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json generatorsJson(const Alphabet& a) {
  Json out = Json::array();
  for (const auto& g : a.generators()) out.push_back({{"name", g.name}, {"degree", g.degree}});
  return out;
}

Json differentialsJson(const Cdga& c, std::size_t from = 0) {
  Json out = Json::object();
  for (std::size_t i = from; i < c.generatorCount(); ++i)
    out[(*c.alphabet())[i].name] = toString(c.differentialOf(i));
  return out;
}

std::string joined(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class T>
std::string listed(const std::vector<T>& xs) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? ", " : "") << xs[i];
  s << ")";
  return s.str();
}

void requireN(int N) {
  if (N < 2) throw PreconditionError("-N must be at least 2");
}

struct ResolvedModel {
  Cdga model;
  std::optional<MinimalModelResult> computed;  // set when the input was not a minimal model itself
};

bool isMinimalModel(const Cdga& c) {
  if (!c.isFree()) return false;
  for (const auto& g : c.alphabet()->generators())
    if (g.degree < 2) return false;
  return checkMinimalSullivan(c);
}

// A minimal model of the input, certified through degree N.
ResolvedModel resolveModel(const Cdga& input, int N) {
  if (isMinimalModel(input)) return {input, std::nullopt};
  auto r = minimalModel(input, N);
  Cdga model = r.model;
  return {model, std::move(r)};
}

std::vector<std::string> modelComments(const ResolvedModel& m) {
  if (!m.computed) return {};
  std::vector<std::string> out;
  for (const auto& s : m.computed->stages)
    out.push_back("stage " + std::to_string(s.degree) + ": added " + std::to_string(s.cocycleGenerators.size()) +
                  " cocycle gens, " + std::to_string(s.kernelGenerators.size()) + " kernel gens");
  out.push_back("certified through degree " + std::to_string(m.computed->certifiedDegree));
  return out;
}

// ------------------------------------------------------------------ commands

int cmdCohomology(const RunConfig& cfg, std::ostream& out) {
  Cdga c = loadCdga(cfg.input);
  if (cfg.maxDegree < 0) throw PreconditionError("-N must be nonnegative");
  auto h = cohomology(c, cfg.maxDegree);
  if (cfg.json) {
    Json j = header("cohomology");
    j["name"] = c.name();
    j["maxDegree"] = cfg.maxDegree;
    j["dims"] = h.dims();
    Json reps = Json::array();
    for (const auto& d : h.degrees) {
      Json r = Json::array();
      for (const auto& x : d.representatives) r.push_back(toString(x));
      reps.push_back(r);
    }
    j["representatives"] = reps;
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "cohomology of " << c.name() << " through degree " << cfg.maxDegree << "\n";
  out << std::setw(6) << "degree" << std::setw(6) << "dim" << "  representatives\n";
  for (const auto& d : h.degrees) {
    std::vector<std::string> reps;
    for (const auto& x : d.representatives) reps.push_back(toString(x));
    out << std::setw(6) << d.degree << std::setw(6) << d.dim() << (reps.empty() ? "" : "  " + joined(reps)) << "\n";
  }
  return kOk;
}

int cmdMinimalModel(const RunConfig& cfg, std::ostream& out) {
  requireN(cfg.maxDegree);
  Cdga target = loadCdga(cfg.input);
  ResolvedModel m{Cdga(), minimalModel(target, cfg.maxDegree)};
  m.model = m.computed->model;
  if (cfg.json) {
    Json j = header("minimal-model");
    j["name"] = m.model.name();
    j["generators"] = generatorsJson(*m.model.alphabet());
    j["differentials"] = differentialsJson(m.model);
    j["certifiedDegree"] = m.computed->certifiedDegree;
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << formatCdga(m.model, modelComments(m));
  return kOk;
}

int cmdLoop(const RunConfig& cfg, std::ostream& out) {
  requireN(cfg.maxDegree);
  auto m = resolveModel(loadCdga(cfg.input), cfg.maxDegree + 1);
  auto loop = loopCohomology(m.model, cfg.maxDegree);
  if (cfg.json) {
    Json j = header("loop");
    j["name"] = m.model.name();
    Json gens = Json::array();
    for (const auto& g : loop.loopGenerators) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    j["loopGenerators"] = gens;
    Json dims = Json::array();
    for (const auto& d : loop.dims) dims.push_back(integerJson(d));
    j["dims"] = dims;
    j["homotopyRanks"] = loop.homotopy;
    out << j.dump(2) << "\n";
    return kOk;
  }
  std::vector<std::string> gens;
  for (const auto& g : loop.loopGenerators) gens.push_back(g.name + ":" + std::to_string(g.degree));
  out << "loop space cohomology of " << m.model.name() << " through degree " << cfg.maxDegree << "\n";
  out << "loop generators: " << joined(gens) << "\n";
  out << std::setw(6) << "degree" << std::setw(10) << "dim H" << std::setw(9) << "rank pi" << "\n";
  for (int k = 0; k <= cfg.maxDegree; ++k) {
    // rank π_k(ΩX) = dim V^{k+1}
    out << std::setw(6) << k << std::setw(10) << loop.dims[static_cast<std::size_t>(k)].get_str() << std::setw(9)
        << loop.homotopy[static_cast<std::size_t>(k) + 1] << "\n";
  }
  return kOk;
}

int cmdFreeLoop(const RunConfig& cfg, std::ostream& out) {
  requireN(cfg.maxDegree);
  auto m = resolveModel(loadCdga(cfg.input), cfg.maxDegree + 1);
  Cdga L = freeLoopModel(m.model);
  auto dims = cohomology(L, cfg.maxDegree).dims();
  if (cfg.json) {
    Json j = header("free-loop");
    j["name"] = L.name();
    j["generators"] = generatorsJson(*L.alphabet());
    j["differentials"] = differentialsJson(L);
    j["dims"] = dims;
    out << j.dump(2) << "\n";
    return kOk;
  }
  auto comments = modelComments(m);
  comments.push_back("free loop model of " + m.model.name());
  out << formatCdga(L, comments);
  out << "\n" << std::setw(6) << "degree" << std::setw(6) << "dim" << "\n";
  for (std::size_t k = 0; k < dims.size(); ++k) out << std::setw(6) << k << std::setw(6) << dims[k] << "\n";
  return kOk;
}

int cmdPathSpace(const RunConfig& cfg, std::ostream& out) {
  requireN(cfg.maxDegree);
  auto m = resolveModel(loadCdga(cfg.input), cfg.maxDegree);
  auto P = pathSpaceModel(m.model);
  if (cfg.json) {
    Json j = header("path-space");
    j["name"] = P.total().name();
    j["base"] = {{"name", P.base().name()},
                 {"generators", generatorsJson(*P.base().alphabet())},
                 {"differentials", differentialsJson(P.base())}};
    Json fiber = Json::array();
    for (const auto& g : P.fiberGenerators()) fiber.push_back({{"name", g.name}, {"degree", g.degree}});
    j["generators"] = fiber;
    j["differentials"] = differentialsJson(P.total(), P.baseCount());
    out << j.dump(2) << "\n";
    return kOk;
  }
  auto comments = modelComments(m);
  comments.push_back("relative Sullivan algebra over " + P.base().name() + " (first " +
                     std::to_string(P.baseCount()) + " generators)");
  out << formatCdga(P.total(), comments);
  return kOk;
}

// Highest degree <= N with nonzero cohomology.
int topDegree(const Cdga& c, int N) {
  auto dims = cohomology(c, N).dims();
  int top = 0;
  for (int k = 0; k <= N; ++k)
    if (dims[static_cast<std::size_t>(k)] != 0) top = k;
  return top;
}

struct Classification {
  ResolvedModel model;
  EllipticityReport report;
  std::vector<std::string> notes;
};

Classification classify(const RunConfig& cfg) {
  requireN(cfg.maxDegree);
  Cdga input = loadCdga(cfg.input);
  Classification out{resolveModel(input, cfg.maxDegree), {}, {}};
  out.report = classifyEllipticity(out.model.model, cfg.bound);
  if (!out.model.computed) return out;

  const auto& phi = out.model.computed->quasiIso;
  const int N = out.model.computed->certifiedDegree;
  if (out.report.verdict == Verdict::Elliptic) {
    int maxGen = 0;
    for (const auto& g : out.model.model.alphabet()->generators()) maxGen = std::max(maxGen, g.degree);
    int check = *out.report.formalDimension + maxGen + 1;
    auto q = checkQuasiIso(phi, check);
    if (!q.quasiIso) {
      out.report.verdict = Verdict::Inconclusive;
      out.notes.push_back("model through degree " + std::to_string(N) + " is not a quasi-isomorphism in degree " +
                          std::to_string(*q.firstFailure) + "; raise -N");
    }
  } else {
    int top = topDegree(input, std::max(N, cfg.bound));
    if (N < 2 * top - 1) {
      out.report.verdict = Verdict::Inconclusive;
      out.notes.push_back("model certified only through degree " + std::to_string(N) + " while cohomology reaches degree " +
                          std::to_string(top) + "; raise -N to at least " + std::to_string(2 * top - 1));
    }
  }
  return out;
}

Json classificationJson(const Classification& c) {
  const auto& r = c.report;
  Json j;
  j["verdict"] = toString(r.verdict);
  j["bound"] = r.bound;
  j["formalDimension"] = r.formalDimension ? Json(*r.formalDimension) : Json();
  j["exponents"] = {{"even", r.exponents.even}, {"odd", r.exponents.odd}};
  if (r.numerology) j["numerology"] = r.numerology->holds;
  else j["numerology"] = Json();
  j["chi"] = {{"H", r.euler.chiH ? Json(*r.euler.chiH) : Json()}, {"V", r.euler.chiV}, {"pi", r.euler.chiPi}};
  j["h0Dims"] = r.finiteness.h0Dims;
  j["cohomologyDims"] = r.finiteness.cohomologyDims;
  j["homotopyDims"] = r.homotopyDims;
  j["notes"] = c.notes;
  return j;
}

void printClassification(const Classification& c, std::ostream& out) {
  const auto& r = c.report;
  auto row = [&](const std::string& label) -> std::ostream& {
    return out << std::left << std::setw(20) << label << std::right;
  };
  out << "classification of " << c.model.model.name() << " (bound " << r.bound << ")\n";
  row("verdict") << toString(r.verdict) << "\n";
  if (r.formalDimension) row("formal dimension") << *r.formalDimension << "\n";
  row("exponents") << "even " << listed(r.exponents.even) << " odd " << listed(r.exponents.odd) << "\n";
  if (r.numerology) {
    const auto& n = *r.numerology;
    auto yes = [](bool b) { return b ? "true" : "false"; };
    row("identity (1)") << n.oddSum << " - " << n.evenSum << " = " << n.n << "  " << yes(n.holds[0]) << "\n";
    row("identity (2)") << n.twiceA << " <= " << n.n << "  " << yes(n.holds[1]) << "\n";
    row("identity (3)") << n.oddSum << " <= " << 2 * n.n - 1 << "  " << yes(n.holds[2]) << "\n";
    row("identity (4)") << r.exponents.even.size() << " <= " << r.exponents.odd.size() << "  " << yes(n.holds[3])
                        << "\n";
    row("V bounds") << "V = V^{<=2n-1} " << yes(r.boundedDegrees) << ", dim V^{>n} <= 1 " << yes(r.atMostOneAbove)
                    << ", dim V <= n " << yes(r.fewGenerators) << "\n";
  }
  row("chi") << "H " << (r.euler.chiH ? std::to_string(*r.euler.chiH) : "-") << "  V " << r.euler.chiV << "  pi "
             << r.euler.chiPi << "\n";
  if (r.verdict == Verdict::Elliptic) {
    row("H dims") << listed(r.finiteness.cohomologyDims) << "\n";
  } else if (r.finiteness.searchedTo >= r.bound) {
    row("H_0 searched to") << r.finiteness.searchedTo << "\n";
  } else {
    row("fdim candidate") << r.exponents.formalDimensionCandidate << " > bound " << r.bound << "\n";
  }
  out << std::setw(6) << "degree" << std::setw(8) << "dim V" << "\n";
  for (std::size_t k = 0; k < r.homotopyDims.size(); ++k)
    if (r.homotopyDims[k] != 0) out << std::setw(6) << k << std::setw(8) << r.homotopyDims[k] << "\n";
  if (r.verdict != Verdict::Elliptic && r.homotopyDims.size() >= 5) {
    std::vector<Integer> v(r.homotopyDims.begin(), r.homotopyDims.end());
    auto g = growthClassify(v);
    row("growth of dim V") << toString(g.growth) << "\n";
  }
  for (const auto& n : c.notes) out << "note: " << n << "\n";
}

int cmdClassify(const RunConfig& cfg, std::ostream& out) {
  auto c = classify(cfg);
  if (cfg.json) {
    Json j = header("classify");
    j["name"] = c.model.model.name();
    j.update(classificationJson(c));
    out << j.dump(2) << "\n";
    return kOk;
  }
  printClassification(c, out);
  return kOk;
}

int cmdInvariants(const RunConfig& cfg, std::ostream& out) {
  RunConfig shifted = cfg;
  shifted.maxDegree = cfg.maxDegree + 1;  // the loop series needs V through N+1
  auto c = classify(shifted);
  const Cdga& model = c.model.model;
  const int N = cfg.maxDegree;
  auto cat = catBounds(model, N);
  auto toomer = toomerRank(model, cfg.toomerCap, N);
  auto series = loopPoincareSeries(model, N);
  auto growth = growthClassify(series.coeffs);
  std::optional<long> torus;
  if (c.report.verdict == Verdict::Elliptic) torus = -c.report.euler.chiPi;

  if (cfg.json) {
    Json j = header("invariants");
    j["name"] = model.name();
    j.update(classificationJson(c));
    j["cuplength"] = cat.lower;
    j["catUpper"] = cat.upper ? Json(*cat.upper) : Json();
    j["toomerN"] = toomer.firstInjective ? Json(*toomer.firstInjective) : Json();
    j["torusRankBound"] = torus ? Json(*torus) : Json();
    Json factors = {{"numerator", series.numerator}, {"denominator", series.denominator}};
    Json coeffs = Json::array();
    for (const auto& z : series.coeffs) coeffs.push_back(integerJson(z));
    j["poincare"] = {{"factors", factors}, {"series", toString(series)}, {"coeffs", coeffs}};
    j["growth"] = toString(growth.growth);
    out << j.dump(2) << "\n";
    return kOk;
  }
  printClassification(c, out);
  auto row = [&](const std::string& label) -> std::ostream& {
    return out << std::left << std::setw(20) << label << std::right;
  };
  row("cuplength") << cat.lower << "\n";
  row("cat upper bound") << (cat.upper ? std::to_string(*cat.upper) : "-") << "\n";
  row("Toomer n") << (toomer.firstInjective ? std::to_string(*toomer.firstInjective)
                                            : "> " + std::to_string(cfg.toomerCap))
                  << "\n";
  row("torus rank bound") << (torus ? std::to_string(*torus) : "-") << "\n";
  row("loop series") << toString(series) << "\n";
  std::vector<std::string> coeffs;
  for (const auto& z : series.coeffs) coeffs.push_back(z.get_str());
  row("coefficients") << joined(coeffs, " ") << "\n";
  row("growth") << toString(growth.growth) << "\n";
  return kOk;
}

int cmdPlVerify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.builtin.empty() == cfg.input.empty())
    throw PreconditionError("pl-verify takes exactly one of --builtin NAME or FILE");
  auto K = std::make_shared<const SimplicialSet>(cfg.builtin.empty() ? loadSimplicialSet(cfg.input)
                                                                     : SimplicialSet::builtin(cfg.builtin));
  auto report = verifyStokes(K, cfg.trials, cfg.polyCap, cfg.seed);
  if (cfg.json) {
    Json j = header("pl-verify");
    j["complex"] = K->name();
    j["seed"] = cfg.seed;
    j["polyCap"] = cfg.polyCap;
    Json trials = Json::array();
    for (const auto& t : report.trials)
      trials.push_back({{"degree", t.degree}, {"solutionDim", t.solutionDim}, {"nonzero", t.nonzero}, {"equal", t.equal}});
    j["trials"] = trials;
    j["passed"] = report.passed;
    j["total"] = report.trials.size();
    j["cohomologyDims"] = report.cohomologyDims;
    j["integratedRank"] = report.integratedRank;
    out << j.dump(2) << "\n";
  } else {
    out << "Stokes check on " << K->name() << ": " << cfg.trials << " trials, poly cap " << cfg.polyCap << ", seed "
        << cfg.seed << "\n";
    out << std::setw(6) << "trial" << std::setw(8) << "degree" << std::setw(7) << "span" << std::setw(9) << "nonzero"
        << std::setw(8) << "stokes" << "\n";
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
      const auto& t = report.trials[i];
      out << std::setw(6) << i << std::setw(8) << t.degree << std::setw(7) << t.solutionDim << std::setw(9)
          << (t.nonzero ? "yes" : "no") << std::setw(8) << (t.equal ? "ok" : "FAIL") << "\n";
    }
    out << "passed " << report.passed << "/" << report.trials.size() << "\n";
    out << "cochain cohomology  " << listed(report.cohomologyDims) << "\n";
    out << "integrated rank     " << listed(report.integratedRank) << "\n";
  }
  return report.allPassed() ? kOk : kDomainError;
}

int cmdValidate(const RunConfig& cfg, std::ostream& out) {
  const std::string& path = cfg.input;
  bool simplicial = path.size() >= 4 && path.compare(path.size() - 4, 4, ".scx") == 0;
  if (cfg.json) {
    Json j = header("validate");
    j["file"] = path;
    if (simplicial) {
      auto K = loadSimplicialSet(path);
      j["kind"] = "simplicial-set";
      j["name"] = K.name();
      j["simplices"] = K.size();
    } else {
      auto c = loadCdga(path);
      j["kind"] = "cdga";
      j["name"] = c.name();
      j["generators"] = c.generatorCount();
      j["relations"] = c.relations().size();
    }
    j["valid"] = true;
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (simplicial) {
    auto K = loadSimplicialSet(path);
    out << path << ": valid simplicial set " << K.name() << ", " << K.size() << " nondegenerate simplices, top dimension "
        << K.topDimension() << "\n";
  } else {
    auto c = loadCdga(path);
    out << path << ": valid cdga " << c.name() << ", " << c.generatorCount() << " generators, " << c.relations().size()
        << " relations\n";
  }
  return kOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // Buffer so that a failing command prints nothing partial.
  std::ostringstream buffer;
  int code = kOk;
  try {
    if (cfg.command == "cohomology") code = cmdCohomology(cfg, buffer);
    else if (cfg.command == "minimal-model") code = cmdMinimalModel(cfg, buffer);
    else if (cfg.command == "loop") code = cmdLoop(cfg, buffer);
    else if (cfg.command == "free-loop") code = cmdFreeLoop(cfg, buffer);
    else if (cfg.command == "path-space") code = cmdPathSpace(cfg, buffer);
    else if (cfg.command == "classify") code = cmdClassify(cfg, buffer);
    else if (cfg.command == "invariants") code = cmdInvariants(cfg, buffer);
    else if (cfg.command == "pl-verify") code = cmdPlVerify(cfg, buffer);
    else if (cfg.command == "validate") code = cmdValidate(cfg, buffer);
    else {
      err << "error: unknown command '" << cfg.command << "'\n";
      return kUsageError;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  out << buffer.str();
  return code;
}

}  // namespace sullivan::cli
