#ifndef ZML_ZML_HPP
#define ZML_ZML_HPP

#include "zml/common.hpp"
#include "zml/divisor_sums.hpp"
#include "zml/identities.hpp"
#include "zml/laurent.hpp"
#include "zml/moments.hpp"
#include "zml/oscillatory.hpp"
#include "zml/parallel.hpp"
#include "zml/phi.hpp"
#include "zml/quadrature.hpp"
#include "zml/scaling.hpp"
#include "zml/special_functions.hpp"

#endif  // ZML_ZML_HPP
