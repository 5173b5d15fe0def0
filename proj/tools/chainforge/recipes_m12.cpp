#include <stdexcept>

#include "forge.hpp"

namespace chainforge {

gsift::ChainSpec forge_m12_involution(const gsift::EnumeratedGroup&) {
  throw std::runtime_error("m12-involution recipe not implemented");
}

}  // namespace chainforge
