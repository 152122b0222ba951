#include "nilq/polynomial.hpp"

namespace nilq {

std::string coefficient_string(const Scalar& c) { return c.get_str(); }

}  // namespace nilq
