#pragma once

#include <cstdint>
#include <stdexcept>

namespace k55::linalg {

// Element of Z/pZ for an odd prime p < 2^62.
//
// The modulus travels with the value: matrices over different primes cannot
// be mixed silently, and a whole run can be switched to another prime from
// the command line. p = 2^61 - 1 gets a Mersenne reduction fast path.
class Fp {
 public:
  static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  Fp() : v_(0), p_(kMersenne61) {}

  Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {
    if (p < 2 || p >= kMaxModulus) throw std::invalid_argument("Fp: modulus out of range");
  }

  static Fp from_int(std::int64_t x, std::uint64_t p) {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return Fp(static_cast<std::uint64_t>(r), p);
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    std::uint64_t s = a.v_ + b.v_;  // both < 2^62, no overflow
    if (s >= a.p_) s -= a.p_;
    return raw(s, a.p_);
  }

  friend Fp operator-(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    std::uint64_t s = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_;
    return raw(s, a.p_);
  }

  friend Fp operator-(const Fp& a) { return raw(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }

  friend Fp operator*(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    return raw(mulmod(a.v_, b.v_, a.p_), a.p_);
  }

  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc = raw(1 % p_, p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  // Fermat inverse; the modulus is prime by contract.
  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    return pow(p_ - 2);
  }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
    if (p == kMersenne61) {
      // 2^61 == 1 (mod p): fold the high limb in twice.
      std::uint64_t lo = static_cast<std::uint64_t>(t) & kMersenne61;
      std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
      std::uint64_t s = lo + hi;  // < 2^62
      s = (s & kMersenne61) + (s >> 61);
      if (s >= kMersenne61) s -= kMersenne61;
      return s;
    }
    return static_cast<std::uint64_t>(t % p);
  }

  void check_same_field(const Fp& o) const {
    if (p_ != o.p_) throw std::logic_error("Fp: mixed moduli");
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

inline bool is_zero(const Fp& a) { return a.is_zero(); }
inline Fp zero_like(const Fp& a) { return Fp(0, a.modulus()); }
inline Fp one_like(const Fp& a) { return Fp(1, a.modulus()); }

}  // namespace k55::linalg
