#include <stdexcept>

#include "forge.hpp"

namespace chainforge {

gsift::ChainSpec forge_j2_eight(const gsift::EnumeratedGroup&) {
  throw std::runtime_error("j2-eight recipe not implemented");
}

gsift::ChainSpec forge_j2_involution(const gsift::EnumeratedGroup&) {
  throw std::runtime_error("j2-involution recipe not implemented");
}

}  // namespace chainforge
