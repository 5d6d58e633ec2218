#pragma once

#include <complex>

namespace factorkit {

// Every entry is stored as a complex double; a real value is one with a zero
// imaginary part and behaves identically under arithmetic.
using Scalar = std::complex<double>;

// Principal square root: Re(w) > 0, or Re(w) = 0 with Im(w) >= 0.
Scalar principal_sqrt(Scalar z);

}  // namespace factorkit
