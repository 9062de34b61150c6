#pragma once

#include <stdexcept>

#include "qsep/rat_func.hpp"
#include "qsep/symbols.hpp"

namespace qsep {

// Coefficient-ring convention for l. Odd rank keeps the symbol l; even rank
// needs l^{1/2}, so l is written as L^2 throughout.
struct Ell {
  bool half = false;

  static Ell for_rank(int n) { return Ell{n % 2 == 0}; }
  RatFunc ell(int k = 1) const { return half ? RatFunc::var(sym::L, 2 * k) : RatFunc::var(sym::l, k); }
  // l^{k/2}
  RatFunc half_pow(int k) const {
    if (half) return RatFunc::var(sym::L, k);
    if (k % 2) throw std::domain_error("odd power of sqrt(l) without the L symbol");
    return RatFunc::var(sym::l, k / 2);
  }
};

}  // namespace qsep
