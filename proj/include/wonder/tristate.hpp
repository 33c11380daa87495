#ifndef WONDER_TRISTATE_HPP
#define WONDER_TRISTATE_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace wonder {

// Three-valued truth value (strong Kleene logic). Unknown propagates:
// a claim is Unknown exactly when the asserted facts do not force it
// either way.
enum class Tristate { False, Unknown, True };

constexpr Tristate and3(Tristate a, Tristate b) {
  if (a == Tristate::False || b == Tristate::False) return Tristate::False;
  if (a == Tristate::Unknown || b == Tristate::Unknown) return Tristate::Unknown;
  return Tristate::True;
}

constexpr Tristate or3(Tristate a, Tristate b) {
  if (a == Tristate::True || b == Tristate::True) return Tristate::True;
  if (a == Tristate::Unknown || b == Tristate::Unknown) return Tristate::Unknown;
  return Tristate::False;
}

constexpr Tristate not3(Tristate a) {
  switch (a) {
    case Tristate::True: return Tristate::False;
    case Tristate::False: return Tristate::True;
    default: return Tristate::Unknown;
  }
}

inline std::string_view to_string(Tristate t) {
  switch (t) {
    case Tristate::True: return "true";
    case Tristate::False: return "false";
    default: return "unknown";
  }
}

inline Tristate tristate_from_string(std::string_view s) {
  if (s == "true") return Tristate::True;
  if (s == "false") return Tristate::False;
  if (s == "unknown") return Tristate::Unknown;
  throw std::invalid_argument("not a tristate: " + std::string(s));
}

}  // namespace wonder

#endif
