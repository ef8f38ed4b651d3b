#pragma once

#include <cstdint>
#include <string>

#include "prepro/errors.hpp"
#include "prepro/rational.hpp"

namespace prepro {

// Prime field element with a runtime modulus. The modulus travels with the
// value; a default-constructed element (p == 0) is the zero of any modulus,
// so containers of "empty" coefficients need no field context.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(long long n, std::uint64_t mod) : p(mod) {
    long long r = n % static_cast<long long>(mod);
    if (r < 0) r += static_cast<long long>(mod);
    v = static_cast<std::uint64_t>(r);
    if (v == 0) p = mod;  // keep modulus; zero stays comparable
  }

  bool zero() const { return v == 0; }
};

inline std::uint64_t fp_merge_mod(const Fp& a, const Fp& b) {
  if (a.p == 0) return b.p;
  if (b.p == 0) return a.p;
  if (a.p != b.p) throw InputError("mixed prime-field moduli");
  return a.p;
}

inline bool is_zero(const Fp& x) { return x.v == 0; }

inline Fp operator+(const Fp& a, const Fp& b) {
  std::uint64_t m = fp_merge_mod(a, b);
  if (m == 0) return Fp{};
  Fp r;
  r.p = m;
  r.v = (a.v + b.v) % m;
  return r;
}

inline Fp operator-(const Fp& a) {
  Fp r = a;
  if (r.v != 0) r.v = r.p - r.v;
  return r;
}

inline Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }

inline Fp operator*(const Fp& a, const Fp& b) {
  std::uint64_t m = fp_merge_mod(a, b);
  if (m == 0) return Fp{};
  Fp r;
  r.p = m;
  r.v = (a.v * b.v) % m;  // moduli are < 2^31, no overflow
  return r;
}

inline std::uint64_t fp_powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline Fp inverse(const Fp& a) {
  if (a.v == 0 || a.p == 0) throw DomainError("division by zero in F_p");
  Fp r;
  r.p = a.p;
  r.v = fp_powmod(a.v, a.p - 2, a.p);
  return r;
}

inline Fp operator/(const Fp& a, const Fp& b) { return a * inverse(b); }

inline bool operator==(const Fp& a, const Fp& b) {
  if (a.v == 0 && b.v == 0) return true;
  return a.p == b.p && a.v == b.v;
}
inline bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

inline Fp& operator+=(Fp& a, const Fp& b) { return a = a + b; }
inline Fp& operator-=(Fp& a, const Fp& b) { return a = a - b; }
inline Fp& operator*=(Fp& a, const Fp& b) { return a = a * b; }

inline std::string to_string(const Fp& x) { return std::to_string(x.v); }

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FpCtx {
  using Elem = Fp;
  std::uint64_t p = 2;

  explicit FpCtx(std::uint64_t prime = 2) : p(prime) {
    if (!is_prime_u64(p) || p >= (1ull << 31)) throw InputError("field modulus must be a prime < 2^31");
  }
  Fp from_int(long n) const { return Fp(n, p); }
  Fp from_rat(const Rat& r) const {
    Int num = r.get_num(), den = r.get_den();
    Fp n(static_cast<long long>(mpz_fdiv_ui(num.get_mpz_t(), p)), p);
    Fp d(static_cast<long long>(mpz_fdiv_ui(den.get_mpz_t(), p)), p);
    return n / d;
  }
  std::string name() const { return "Fp:" + std::to_string(p); }
};

}  // namespace prepro
