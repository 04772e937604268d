#pragma once

// Text format for CDGA presentations:
//
//   cdga <name>
//   gen <ident> <degree>
//   diff <ident> = <poly>        # absent diff lines mean d(gen)=0
//   rel <degree> : <poly>        # optional relation (quotient presentation)

#include <sullivan/cdga.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sullivan {

struct CdgaPresentation {
  std::string name;
  AlphabetPtr alphabet;
  std::vector<AlgElement> differential;  // per generator ordinal
  std::vector<AlgElement> relations;
  std::vector<int> generatorLines;       // source line of each gen declaration
  std::vector<int> relationLines;
};

/// Syntax-level parse; throws ParseError with the offending line number.
CdgaPresentation parseCdgaText(std::istream& in);
CdgaPresentation parseCdgaText(const std::string& text);

/// Parse and validate; defects are reported with their source lines.
Cdga parseCdga(std::istream& in);
Cdga parseCdga(const std::string& text);
Cdga loadCdga(const std::string& path);

std::vector<CdgaDefect> validate(const CdgaPresentation& p);

/// Writes the presentation back in the text format.  A word-length quotient
/// is written with one relation per word of length cap+1.
std::string formatCdga(const Cdga& c, const std::vector<std::string>& headerComments = {});

}  // namespace sullivan
