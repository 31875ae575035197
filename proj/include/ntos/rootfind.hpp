#ifndef NTOS_ROOTFIND_HPP
#define NTOS_ROOTFIND_HPP

#include <optional>

#include "ntos/model.hpp"

namespace ntos {

class no_root_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of the extended-precision search for the consistency-condition
/// root nearest zero.
struct EminRoot {
  double value = 0.0;     // real root (may underflow double; see ln_abs)
  double ln_abs = 0.0;    // ln |root|, valid even when value underflows
  int sign = +1;
  double residual = 0.0;  // normalized |D| at the root, extended precision
};

// Real root of the consistency condition D(E) = 0 nearest 0, computed in
// >= 100-bit floating arithmetic by bracketing on sign changes around the
// supplied guess and bisection refinement.
//
// ln_center is the natural log of the expected |E_min| (e.g. from the
// linear law); the scan covers ln_center +/- ln_halfwidth on both signs
// of E. Throws no_root_error when no sign change is found (caller widens).
EminRoot emin_root(const ChainParams& p, int N, double ln_center,
                   double ln_halfwidth = 4.0);

// Normalized consistency residual |D(E)| evaluated in extended precision,
// for certification of roots below the double-precision floor.
double consistency_residual_mp(const ChainParams& p, int N, double ln_abs_e, int sign);

}  // namespace ntos

#endif
