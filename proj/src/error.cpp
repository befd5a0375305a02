#include "pgain/error.hpp"

namespace pgain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::empty_graph: return "empty-graph";
    case ErrorKind::domain: return "domain";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::divergence_risk: return "divergence-risk";
    case ErrorKind::overflow_risk: return "overflow-risk";
    case ErrorKind::pole: return "pole";
    case ErrorKind::undefined_correlation: return "undefined-correlation";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::unreliable_reference: return "unreliable-reference";
    case ErrorKind::resource_cap: return "resource-cap";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace pgain
