#include "levy_chaos/chaos.hpp"

#include <algorithm>
#include <cctype>

namespace levy_chaos {

std::string_view basis_name(Basis basis) {
  switch (basis) {
    case Basis::Y: return "Y";
    case Basis::H: return "H";
    case Basis::Noncompensated: return "NONCOMPENSATED";
    case Basis::Prm: return "PRM";
  }
  return "?";
}

Basis parse_basis(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "y") return Basis::Y;
  if (s == "h") return Basis::H;
  if (s == "noncompensated" || s == "jamshidian") return Basis::Noncompensated;
  if (s == "prm") return Basis::Prm;
  throw Error("chaos.unknown_basis", "unknown basis '" + std::string(text) + "' (expected y, h, jamshidian or prm)");
}

Rational partition_weight(const Partition& p) {
  Rational w(multinomial(p.parts) * multinomial(p.multiplicities));
  return w / Rational(factorial(p.length()));
}

}  // namespace levy_chaos
