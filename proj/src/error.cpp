#include "karamata/error.hpp"

#include <sstream>

namespace karamata {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Generator: return "generator";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

std::string format_real(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace karamata
