#include "trapid/ode.hpp"

namespace trapid::ode {
template class DormandPrince<2>;
}  // namespace trapid::ode
