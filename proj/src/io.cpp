#include <sullivan/errors.hpp>
#include <sullivan/io.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace sullivan {

namespace {

std::string trim(std::string s) {
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool isIdentifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

int parseInt(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
}

AlgElement parsePolyAt(const AlphabetPtr& alphabet, const std::string& text, int line) {
  try {
    return parsePoly(alphabet, text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  } catch (const AlgebraError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

CdgaPresentation parseCdgaText(std::istream& in) {
  CdgaPresentation p;
  std::vector<Generator> gens;
  struct Pending {
    std::string text;
    int line;
  };
  std::vector<std::pair<std::string, Pending>> diffs;
  std::vector<std::pair<int, Pending>> rels;

  std::string raw;
  int line = 0;
  bool sawHeader = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty()) continue;
    std::istringstream words(s);
    std::string keyword;
    words >> keyword;
    if (keyword == "cdga") {
      if (sawHeader) throw ParseError("duplicate 'cdga' header", line);
      words >> p.name;
      if (p.name.empty()) throw ParseError("'cdga' requires a name", line);
      sawHeader = true;
    } else if (keyword == "gen") {
      if (!diffs.empty() || !rels.empty())
        throw ParseError("generators must be declared before diff/rel lines", line);
      std::string name, deg, extra;
      words >> name >> deg;
      if (!isIdentifier(name)) throw ParseError("invalid generator name '" + name + "'", line);
      if (deg.empty()) throw ParseError("'gen' requires a degree", line);
      if (words >> extra) throw ParseError("unexpected text after generator degree", line);
      for (const auto& g : gens)
        if (g.name == name) throw ParseError("generator '" + name + "' declared twice", line);
      gens.push_back({name, parseInt(deg, line)});
      p.generatorLines.push_back(line);
    } else if (keyword == "diff") {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw ParseError("'diff' requires '='", line);
      std::istringstream lhs(s.substr(4, eq - 4));
      std::string name, extra;
      lhs >> name;
      if (lhs >> extra) throw ParseError("unexpected text before '='", line);
      diffs.push_back({name, {s.substr(eq + 1), line}});
    } else if (keyword == "rel") {
      auto colon = s.find(':');
      if (colon == std::string::npos) throw ParseError("'rel' requires ':'", line);
      std::string deg = trim(s.substr(3, colon - 3));
      rels.push_back({parseInt(deg, line), {s.substr(colon + 1), line}});
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line);
    }
  }
  if (!sawHeader) throw ParseError("missing 'cdga <name>' header", line > 0 ? 1 : 0);

  p.alphabet = Alphabet::make(gens);
  p.differential.assign(gens.size(), AlgElement(p.alphabet));
  std::vector<bool> seen(gens.size(), false);
  for (const auto& [name, pending] : diffs) {
    auto ord = p.alphabet->find(name);
    if (!ord) throw ParseError("diff for undeclared generator '" + name + "'", pending.line);
    if (seen[*ord]) throw ParseError("second diff for '" + name + "'", pending.line);
    seen[*ord] = true;
    p.differential[*ord] = parsePolyAt(p.alphabet, pending.text, pending.line);
  }
  for (const auto& [deg, pending] : rels) {
    AlgElement r = parsePolyAt(p.alphabet, pending.text, pending.line);
    if (!r.isZero() && r.degree() != std::optional<int>(deg))
      throw ParseError("relation is not homogeneous of declared degree " + std::to_string(deg),
                       pending.line);
    p.relations.push_back(r);
    p.relationLines.push_back(pending.line);
  }
  return p;
}

CdgaPresentation parseCdgaText(const std::string& text) {
  std::istringstream in(text);
  return parseCdgaText(in);
}

std::vector<CdgaDefect> validate(const CdgaPresentation& p) {
  auto defects = validate(p.name, p.alphabet, p.differential, p.relations);
  for (auto& d : defects) {
    if (auto ord = p.alphabet->find(d.generator)) {
      d.generator = "line " + std::to_string(p.generatorLines[*ord]) + ": " + d.generator;
    } else if (d.generator.rfind("relation #", 0) == 0) {
      std::size_t idx = std::stoul(d.generator.substr(10)) - 1;
      if (idx < p.relationLines.size())
        d.generator = "line " + std::to_string(p.relationLines[idx]) + ": " + d.generator;
    }
  }
  return defects;
}

Cdga parseCdga(std::istream& in) {
  CdgaPresentation p = parseCdgaText(in);
  auto defects = validate(p);
  if (!defects.empty()) {
    std::string msg = "invalid CDGA '" + p.name + "':";
    for (const auto& d : defects) {
      msg += "\n  " + d.generator + ": " + d.message;
      if (!d.residue.isZero()) msg += " (residue " + toString(d.residue) + ")";
    }
    throw PreconditionError(msg);
  }
  return Cdga(p.name, p.alphabet, p.differential, p.relations);
}

Cdga parseCdga(const std::string& text) {
  std::istringstream in(text);
  return parseCdga(in);
}

Cdga loadCdga(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  try {
    return parseCdga(in);
  } catch (const ParseError& e) {
    throw ParseError::inContext(path, e);
  } catch (const PreconditionError& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

std::string formatCdga(const Cdga& c, const std::vector<std::string>& headerComments) {
  std::ostringstream out;
  for (const auto& line : headerComments) out << "# " << line << '\n';
  out << "cdga " << c.name() << '\n';
  const Alphabet& a = *c.alphabet();
  for (const auto& g : a.generators()) out << "gen " << g.name << ' ' << g.degree << '\n';
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!c.differentialOf(i).isZero())
      out << "diff " << a[i].name << " = " << toString(c.differentialOf(i)) << '\n';
  for (const auto& r : c.relations()) out << "rel " << *r.degree() << " : " << toString(r) << '\n';
  if (auto cap = c.wordLengthCap()) {
    int top = 0;
    for (const auto& g : a.generators()) top = std::max(top, g.degree);
    for (int k = 1; k <= top * (*cap + 1); ++k)
      for (const auto& m : basisOfDegree(a, k, WordFilter{*cap + 1, *cap + 1}))
        out << "rel " << k << " : " << toString(m, a) << '\n';
  }
  return out.str();
}

}  // namespace sullivan
