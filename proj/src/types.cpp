#include "srgeo/types.hpp"

namespace srgeo {

std::string_view to_string(SingularityClass c)
{
  switch (c) {
    case SingularityClass::NotSingular: return "NotSingular";
    case SingularityClass::Fold: return "Fold";
    case SingularityClass::Tangential: return "Tangential";
    case SingularityClass::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string_view to_string(Stratum s)
{
  switch (s) {
    case Stratum::C0: return "C0";
    case Stratum::C1: return "C1";
    case Stratum::Other: return "other";
  }
  return "?";
}

}  // namespace srgeo
