#include "jumpgue/error.hpp"

namespace jumpgue {

std::string_view to_string(ErrorTag tag) noexcept {
  switch (tag) {
    case ErrorTag::invalid_argument: return "invalid_argument";
    case ErrorTag::loss_of_positivity: return "loss_of_positivity";
    case ErrorTag::degenerate_jump: return "degenerate_jump";
    case ErrorTag::pole_or_sign_change: return "pole_or_sign_change";
    case ErrorTag::route_disagreement: return "route_disagreement";
    case ErrorTag::non_convergence: return "non_convergence";
    case ErrorTag::insufficient_conditioning: return "insufficient_conditioning";
    case ErrorTag::blow_up: return "blow_up";
    case ErrorTag::io: return "io";
  }
  return "unknown";
}

}  // namespace jumpgue
