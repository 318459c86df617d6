#pragma once

// Truncated arithmetic in a nonarchimedean local field k: elements are known
// on a window pi^a*o mod pi^b*o and carry their own precision.  Three kinds
// are supported: p-adic Q_p, Laurent series F_q((t)) with q odd, and a
// totally ramified Eisenstein extension of Q_2.  The additive character psi
// of conductor 2e lives here as well.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weil/scalars.hpp"

namespace weil {

enum class FieldKind { padic, laurent, eisenstein };

class FieldSpec;

// An element x with floor a and modulus b > a: x in pi^a*o, known mod pi^b*o.
// dig[i] is the residue-field digit of x*pi^{-a} at pi^i, i < b-a; digits are
// indices 0..q-1 (for laurent, the index encodes an F_q element in base p).
struct Elem {
  long floor = 0;
  std::vector<int32_t> dig;

  long modulus() const { return floor + (long)dig.size(); }
  bool zero_on_window() const {
    for (int32_t d : dig)
      if (d) return false;
    return true;
  }
  // valuation if visible in the window
  std::optional<long> valuation() const {
    for (size_t i = 0; i < dig.size(); ++i)
      if (dig[i]) return floor + (long)i;
    return std::nullopt;
  }
};

class FieldSpec {
 public:
  static FieldSpec make_padic(long p);
  static FieldSpec make_laurent(long p, long f);
  // monic integer polynomial, ascending coefficients, Eisenstein at 2
  static FieldSpec make_eisenstein(std::vector<long> poly);
  static FieldSpec parse(const std::string& s);  // "p:2", "laurent:3:1", "eis2:1,0,-2"

  FieldKind kind() const { return kind_; }
  long p() const { return p_; }
  long f() const { return f_; }
  long q() const { return q_; }
  long e() const { return e_; }
  std::string str() const;

  // ---- element construction ----
  Elem zero(long floor, long modulus) const;
  Elem one(long modulus) const { return from_integer(1, modulus); }
  Elem from_integer(long long v, long modulus) const;  // window [0, modulus)
  Elem uniformizer_pow(long k, long modulus) const;    // window [k, k+modulus)
  // canonical representative of a coset of pi^a*o/pi^b*o from its digit index,
  // padded to an exact element with the given extra modulus
  Elem rep(long a, long b, long long index, long pad) const;
  long long index_in_window(const Elem& x, long a, long b) const;

  // ---- arithmetic (windows follow the min rules; never widened) ----
  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem invert(const Elem& x) const;  // requires visible valuation
  bool congruent(const Elem& x, const Elem& y) const;  // on the common window
  Elem restricted(const Elem& x, long a, long b) const;  // reduce to a window

  // ---- additive character of conductor 2e ----
  // value depends on x mod 4o only; requires modulus >= psi_min_modulus(floor)
  RootOfUnity psi(const Elem& x) const;
  long psi_min_modulus(long floor) const;
  // upper bound for the denominator of psi on elements of valuation >= v
  long long psi_denominator_bound(long v) const;

  // residue-field helpers (indices 0..q-1)
  int32_t fq_add(int32_t a, int32_t b) const;
  int32_t fq_neg(int32_t a) const;
  int32_t fq_mul(int32_t a, int32_t b) const;
  int32_t fq_inv(int32_t a) const;
  int32_t fq_trace(int32_t a) const;  // to F_p

  long eis_degree() const { return (long)eis_poly_.size() - 1; }
  long eis_shift() const { return eis_shift_; }

 private:
  FieldKind kind_ = FieldKind::padic;
  long p_ = 2, f_ = 1, q_ = 2, e_ = 1;

  // laurent residue field F_q = F_p[x]/(h), h found by search
  std::vector<int32_t> fq_h_;  // ascending, degree f, monic
  std::vector<int32_t> fq_mul_table_, fq_inv_table_, fq_trace_table_;

  // eisenstein data
  std::vector<long> eis_poly_;          // ascending, monic, degree d
  std::vector<uint64_t> eis_twopi_;     // 2/pi as a poly mod (g, 2^PREC)
  std::vector<uint64_t> eis_sinv_;      // inverse of pi^d/2 mod (g, 2^PREC)
  std::vector<uint64_t> eis_tr_;        // Tr(pi^i) mod 2^PREC, i < 2d
  long eis_vdiff_ = 0;                  // valuation of g'(pi) (the different)
  long eis_shift_ = 0;                  // psi(x) = psi_Q2(Tr(pi^shift * x)/4)

  void init_laurent_tables();
  void init_eisenstein();
  friend struct EisHelper;
};

// Additive character, optionally twisted: psi'(x) = psi(scale * x).
struct AdditiveCharacter {
  const FieldSpec* field;
  std::optional<Elem> scale;

  RootOfUnity operator()(const Elem& x) const {
    return scale ? field->psi(field->mul(*scale, x)) : field->psi(x);
  }
};

// Coset representatives of (pi^a*o/pi^b*o)^n, indexed 0..q^{(b-a)n}-1 in
// mixed radix with coordinate 0 fastest.  Stable indexing is what matrix
// rows and columns are keyed by everywhere downstream.
struct Quotient {
  const FieldSpec* field;
  long a, b, n;
  long long per_coord;  // q^(b-a)
  long long count;      // per_coord^n

  static Quotient make(const FieldSpec& F, long a, long b, long n);
  long long coord_index(long long idx, long j) const;
  std::vector<Elem> rep(long long idx, long pad) const;
  long long neg_index(long long idx) const;  // index of -x
};

// Exhaustive conductor check: over x in pi^{-V}o/4o, psi(t x) = 1 for all t
// iff x in 4o.  Used both as a localfield self-test and as the oracle
// backing the eisenstein shift search.
bool verify_conductor(const AdditiveCharacter& chi, long V);

}  // namespace weil
