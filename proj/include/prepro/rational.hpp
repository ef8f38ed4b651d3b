#pragma once

#include <gmpxx.h>

#include <string>

#include "prepro/errors.hpp"

namespace prepro {

// Exact rational scalar. All algebra in this project is exact; the only
// floating-point computation anywhere is the Frobenius-Perron iteration.
using Rat = mpq_class;
using Int = mpz_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

inline Rat rat_from_int(long n) { return Rat(n); }

// Parses "3", "-3", "3/2". Used by the element literal syntax and the
// RepPoint JSON format.
inline Rat parse_rat(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& x) { return x.get_str(); }

struct RatCtx {
  using Elem = Rat;
  Rat from_int(long n) const { return Rat(n); }
  Rat from_rat(const Rat& r) const { return r; }
  std::string name() const { return "Q"; }
};

}  // namespace prepro
