#include <stdexcept>

#include "forge.hpp"

namespace chainforge {

gsift::ChainSpec forge_m22_involution(const gsift::EnumeratedGroup&) {
  throw std::runtime_error("m22-involution recipe not implemented");
}

}  // namespace chainforge
