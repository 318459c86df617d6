#pragma once

// Exact scalar arithmetic: roots of unity as reduced angles in Q/Z, and the
// cyclotomic fields Q(zeta_N) in the power basis reduced mod the N-th
// cyclotomic polynomial.  All operator entries downstream live here; nothing
// is ever rounded.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weil {

struct weil_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a truncation window is too coarse to decide a value.
struct precision_error : weil_error {
  using weil_error::weil_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw weil_error(msg); }
[[noreturn]] inline void fail_precision(const std::string& msg) {
  throw precision_error(msg);
}

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);
long euler_phi(long n);

// A root of unity stored as its angle num/den in Q/Z, always reduced with
// 0 <= num < den.  Multiplication is addition of angles mod 1.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  static RootOfUnity of(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_one() const { return num_ == 0; }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity inverse() const { return of(-num_, den_); }
  RootOfUnity pow(long long k) const;

  bool operator==(const RootOfUnity& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
  bool operator<(const RootOfUnity& o) const {  // for use as map key
    return num_ * o.den_ < o.num_ * den_;
  }

  std::string str() const;

 private:
  long long num_ = 0;
  long long den_ = 1;
};

// Cached data for one cyclotomic order: Phi_N and the power-basis expansion
// of zeta^k for every exponent a product of two reduced values can reach.
struct CycloTable {
  long order = 1;
  long deg = 1;                              // phi(order)
  std::vector<mpz_class> phi;                // monic, coefficients c0..c_deg
  std::vector<std::vector<mpz_class>> pow;   // pow[k] = zeta^k reduced, k < max(order, 2*deg)
};

const CycloTable& cyclo_table(long order);

// Exact element of Q(zeta_N).  Canonical form: coefficient vector of length
// phi(N) in the basis 1, zeta, ..., zeta^{phi(N)-1}; an empty vector means 0.
// Two values are equal iff their vectors agree after lifting to a common
// order, independently of which common order is chosen.
class Cyclotomic {
 public:
  Cyclotomic() = default;

  static Cyclotomic zero(long order = 1);
  static Cyclotomic rational(const mpq_class& v, long order = 1);
  static Cyclotomic integer(long v, long order = 1) {
    return rational(mpq_class(v), order);
  }
  // zeta_order^(order * angle); requires den(angle) | order.
  static Cyclotomic from_root(const RootOfUnity& z, long order);
  // coefficients in the power basis; reduced mod Phi if longer than phi(order)
  static Cyclotomic from_coeffs(long order, std::vector<mpq_class> coeffs);

  long order() const { return order_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const;
  mpq_class rational_part() const;  // coefficient of 1 (value must be rational)

  Cyclotomic lifted(long new_order) const;  // order | new_order

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic inverse() const;  // fails on zero

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // Coefficient in the power basis at the element's own order (0 <= k < phi).
  mpq_class coeff(long k) const;

  std::string str() const;

 private:
  long order_ = 1;
  std::vector<mpq_class> c_;  // size phi(order_) when nonzero

  void normalize();
  static void reduce_mod_phi(std::vector<mpq_class>& v, const CycloTable& t);
};

// Accumulator for exact sums of roots of unity with integer multiplicities;
// the workhorse of character-sum checks.  Reduction to canonical form happens
// once, at the end.
class RootSum {
 public:
  explicit RootSum(long order) : order_(order), cnt_(order, 0) {}

  long order() const { return order_; }
  void add(const RootOfUnity& z, long long mult = 1);
  Cyclotomic value() const;
  bool is_zero() const { return value().is_zero(); }

 private:
  long order_;
  std::vector<long long> cnt_;
};

}  // namespace weil
