#pragma once

#include "efetlab/precision.hpp"

namespace efet {

// Principal branch of log Gamma. Shifts s up by the recurrence
// Gamma(s+1) = s Gamma(s) until Re(s) >= 32, then applies a 20-term
// Stirling series. Throws DomainError at the poles s = 0, -1, -2, ...
Complex log_gamma(const Complex& s, const PrecisionContext& ctx);

// Modified Bessel function I_h(x) by its defining series
// sum_m (x/2)^(2m+h) / (m! (m+h)!), with tail below ctx tolerance.
// Serves as an independent oracle for self-correlation values.
Real bessel_i(unsigned h, const Real& x, const PrecisionContext& ctx);

}  // namespace efet
