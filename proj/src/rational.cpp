#include "snlab/rational.hpp"

#include <cctype>

#include "snlab/error.hpp"

namespace snlab {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DuplicateLabelCount: return "DuplicateLabelCount";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NotAClosedWalk: return "NotAClosedWalk";
    case Errc::NotACycle: return "NotACycle";
    case Errc::NotSimple: return "NotSimple";
    case Errc::BaseOrientable: return "BaseOrientable";
    case Errc::NotOrientable: return "NotOrientable";
    case Errc::NotOnSphere: return "NotOnSphere";
    case Errc::CircuitBudgetExceeded: return "CircuitBudgetExceeded";
    case Errc::DimensionCapExceeded: return "DimensionCapExceeded";
    case Errc::NotDisjoint: return "NotDisjoint";
    case Errc::ProportionalClasses: return "ProportionalClasses";
    case Errc::NoSpanProgress: return "NoSpanProgress";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::Internal: return "Internal";
  }
  return "Internal";
}

Rat parse_rat(const std::string& tok) {
  std::string num = tok;
  std::string den = "1";
  if (auto slash = tok.find('/'); slash != std::string::npos) {
    num = tok.substr(0, slash);
    den = tok.substr(slash + 1);
  }
  std::string digits = num;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
  if (!all_digits(digits) || !all_digits(den))
    fail(Errc::SyntaxError, "bad rational token '" + tok + "'");
  Int p(num);
  Int q(den);
  if (q == 0) fail(Errc::SyntaxError, "zero denominator in '" + tok + "'");
  return Rat(p, q);
}

std::string format_rat(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

std::string format_rat_frac(const Rat& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace snlab
