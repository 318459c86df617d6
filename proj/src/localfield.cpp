#include "weil/localfield.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <sstream>

namespace weil {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// p^k as uint64, guarded; windows deep enough to overflow are a caller bug
uint64_t upow(long p, long k) {
  uint64_t r = 1;
  for (long i = 0; i < k; ++i) {
    if (r > (uint64_t(1) << 62) / (uint64_t)p)
      fail("truncation window too deep for this residue characteristic");
    r *= (uint64_t)p;
  }
  return r;
}

uint64_t pack_padic(const std::vector<int32_t>& dig, long p) {
  uint64_t v = 0;
  for (size_t i = dig.size(); i-- > 0;) v = v * (uint64_t)p + (uint64_t)dig[i];
  return v;
}

std::vector<int32_t> unpack_padic(uint64_t v, long p, long len) {
  std::vector<int32_t> d(len);
  for (long i = 0; i < len; ++i) {
    d[i] = (int32_t)(v % (uint64_t)p);
    v /= (uint64_t)p;
  }
  return d;
}

uint64_t odd_inverse_u64(uint64_t a) {
  // Newton iteration, full 2^64 precision
  uint64_t x = a;  // correct mod 8 for odd a
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// residue-field F_q helpers (laurent kind)

namespace {

int32_t fp_poly_index(const std::vector<int32_t>& c, long p) {
  int32_t idx = 0;
  for (size_t i = c.size(); i-- > 0;) idx = idx * (int32_t)p + c[i];
  return idx;
}

std::vector<int32_t> fp_poly_digits(int32_t idx, long p, long f) {
  std::vector<int32_t> c(f);
  for (long i = 0; i < f; ++i) {
    c[i] = idx % (int32_t)p;
    idx /= (int32_t)p;
  }
  return c;
}

std::vector<int32_t> fp_poly_mulmod(const std::vector<int32_t>& a,
                                    const std::vector<int32_t>& b,
                                    const std::vector<int32_t>& h, long p) {
  long f = (long)h.size() - 1;
  std::vector<int32_t> conv(2 * f - 1, 0);
  for (long i = 0; i < f; ++i)
    for (long j = 0; j < f; ++j)
      conv[i + j] = (int32_t)((conv[i + j] + (long)a[i] * b[j]) % p);
  for (long k = 2 * f - 2; k >= f; --k) {
    int32_t t = conv[k];
    if (!t) continue;
    conv[k] = 0;
    for (long i = 0; i < f; ++i)
      conv[k - f + i] = (int32_t)(((long)conv[k - f + i] - (long)t * h[i] % p + (long)p * p) % p);
  }
  conv.resize(f);
  return conv;
}

}  // namespace

void FieldSpec::init_laurent_tables() {
  if (f_ > 3) fail("laurent residue degree capped at 3");
  // find a monic irreducible h of degree f over F_p (no roots suffices, f <= 3)
  fq_h_.assign(f_ + 1, 0);
  fq_h_[f_] = 1;
  if (f_ == 1) {
    fq_h_[0] = 0;  // h = x, F_p[x]/(x) = F_p
  } else {
    bool found = false;
    for (int32_t lo = 0; lo < (int32_t)upow(p_, f_) && !found; ++lo) {
      auto c = fp_poly_digits(lo, p_, f_);
      bool has_root = false;
      for (long x = 0; x < p_ && !has_root; ++x) {
        long v = 1, acc = 0;
        for (long i = 0; i < f_; ++i) {
          acc = (acc + c[i] * v) % p_;
          v = v * x % p_;
        }
        acc = (acc + v) % p_;  // + x^f
        if (acc == 0) has_root = true;
      }
      if (!has_root) {
        for (long i = 0; i < f_; ++i) fq_h_[i] = c[i];
        found = true;
      }
    }
    if (!found) fail("no irreducible polynomial found");
  }
  fq_mul_table_.assign(q_ * q_, 0);
  for (int32_t a = 0; a < q_; ++a)
    for (int32_t b = 0; b < q_; ++b) {
      auto pa = fp_poly_digits(a, p_, f_), pb = fp_poly_digits(b, p_, f_);
      fq_mul_table_[a * q_ + b] = fp_poly_index(fp_poly_mulmod(pa, pb, fq_h_, p_), p_);
    }
  fq_inv_table_.assign(q_, 0);
  for (int32_t a = 1; a < q_; ++a)
    for (int32_t b = 1; b < q_; ++b)
      if (fq_mul_table_[a * q_ + b] == 1) {
        fq_inv_table_[a] = b;
        break;
      }
  // trace to F_p: sum of the Frobenius conjugates a^(p^i)
  fq_trace_table_.assign(q_, 0);
  for (int32_t a = 0; a < q_; ++a) {
    int32_t sum = 0, cur = a;
    for (long i = 0; i < f_; ++i) {
      sum = [&] {
        auto ps = fp_poly_digits(sum, p_, f_);
        auto pc = fp_poly_digits(cur, p_, f_);
        for (long j = 0; j < f_; ++j) ps[j] = (int32_t)((ps[j] + pc[j]) % p_);
        return fp_poly_index(ps, p_);
      }();
      // cur <- cur^p
      int32_t next = 1;
      for (long rep = 0; rep < p_; ++rep) next = fq_mul_table_[next * q_ + cur];
      cur = next;
    }
    auto pd = fp_poly_digits(sum, p_, f_);
    for (long j = 1; j < f_; ++j)
      if (pd[j]) fail("trace landed outside the prime field");
    fq_trace_table_[a] = pd[0];
  }
}

int32_t FieldSpec::fq_add(int32_t a, int32_t b) const {
  if (kind_ == FieldKind::padic || kind_ == FieldKind::eisenstein)
    fail("fq_add is a laurent helper");
  auto pa = fp_poly_digits(a, p_, f_), pb = fp_poly_digits(b, p_, f_);
  for (long i = 0; i < f_; ++i) pa[i] = (int32_t)((pa[i] + pb[i]) % p_);
  return fp_poly_index(pa, p_);
}

int32_t FieldSpec::fq_neg(int32_t a) const {
  auto pa = fp_poly_digits(a, p_, f_);
  for (long i = 0; i < f_; ++i) pa[i] = (int32_t)((p_ - pa[i]) % p_);
  return fp_poly_index(pa, p_);
}

int32_t FieldSpec::fq_mul(int32_t a, int32_t b) const { return fq_mul_table_[a * q_ + b]; }

int32_t FieldSpec::fq_inv(int32_t a) const {
  if (a == 0) fail("inversion of zero residue");
  return fq_inv_table_[a];
}

int32_t FieldSpec::fq_trace(int32_t a) const { return fq_trace_table_[a]; }

// ---------------------------------------------------------------------------
// eisenstein internals: polynomials in pi of degree < d, coefficients mod 2^64

struct EisHelper {
  const FieldSpec& F;
  long d;
  explicit EisHelper(const FieldSpec& f) : F(f), d((long)f.eis_poly_.size() - 1) {}

  using Poly = std::vector<uint64_t>;

  Poly zero() const { return Poly(d, 0); }

  void mul_by_pi(Poly& c) const {
    uint64_t lead = c[d - 1];
    for (long i = d - 1; i > 0; --i) c[i] = c[i - 1];
    c[0] = 0;
    if (lead)
      for (long i = 0; i < d; ++i) c[i] -= lead * (uint64_t)F.eis_poly_[i];
  }

  Poly mul(const Poly& a, const Poly& b) const {
    std::vector<uint64_t> conv(2 * d - 1, 0);
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j) conv[i + j] += a[i] * b[j];
    for (long k = 2 * d - 2; k >= d; --k) {
      uint64_t t = conv[k];
      if (!t) continue;
      conv[k] = 0;
      for (long i = 0; i < d; ++i) conv[k - d + i] -= t * (uint64_t)F.eis_poly_[i];
    }
    conv.resize(d);
    return conv;
  }

  Poly pi_pow(long k) const {
    Poly c = zero();
    c[0] = 1;
    for (long i = 0; i < k; ++i) mul_by_pi(c);
    return c;
  }

  // digits of an integral element, length len; consumes the poly
  std::vector<int32_t> to_digits(Poly c, long len) const {
    std::vector<int32_t> dig(len);
    for (long k = 0; k < len; ++k) {
      int32_t bit = (int32_t)(c[0] & 1);
      dig[k] = bit;
      c[0] -= (uint64_t)bit;
      // divide by pi: shift down, then add (c0/2) * (2/pi)
      uint64_t half = c[0] >> 1;
      for (long i = 0; i + 1 < d; ++i) c[i] = c[i + 1];
      c[d - 1] = 0;
      if (half)
        for (long i = 0; i < d; ++i) c[i] += half * F.eis_twopi_[i];
    }
    return dig;
  }

  Poly from_digits(const std::vector<int32_t>& dig) const {
    Poly acc = zero();
    Poly p = zero();
    p[0] = 1;
    for (size_t i = 0; i < dig.size(); ++i) {
      if (dig[i])
        for (long j = 0; j < d; ++j) acc[j] += p[j];
      mul_by_pi(p);
    }
    return acc;
  }

  Poly newton_inverse(const Poly& u, long iters = 7) const {
    Poly w = zero();
    w[0] = 1;
    for (long it = 0; it < iters; ++it) {
      Poly uw = mul(u, w);
      Poly corr = zero();
      for (long i = 0; i < d; ++i) corr[i] = (i == 0 ? 2 : 0) - uw[i];
      w = mul(w, corr);
    }
    return w;
  }

  uint64_t trace(const Poly& c) const {
    uint64_t t = 0;
    for (long i = 0; i < d; ++i) t += c[i] * F.eis_tr_[i];
    return t;
  }
};

void FieldSpec::init_eisenstein() {
  long d = (long)eis_poly_.size() - 1;
  if (d < 1) fail("eisenstein polynomial must have degree >= 1");
  if (eis_poly_[d] != 1) fail("eisenstein polynomial must be monic");
  for (long i = 0; i < d; ++i)
    if (eis_poly_[i] % 2 != 0) fail("polynomial is not Eisenstein at 2");
  if ((eis_poly_[0] / 2) % 2 == 0) fail("polynomial is not Eisenstein at 2");
  p_ = 2;
  f_ = 1;
  q_ = 2;
  e_ = d;

  EisHelper H(*this);
  // 2/pi = -gamma^{-1} (pi^{d-1} + sum_{1<=i<d} g_i pi^{i-1}), gamma = g_0/2
  uint64_t gamma = (uint64_t)(eis_poly_[0] / 2);
  uint64_t ginv = odd_inverse_u64(gamma);
  eis_twopi_.assign(d, 0);
  eis_twopi_[d - 1] = 1;
  for (long i = 1; i < d; ++i) eis_twopi_[i - 1] += (uint64_t)eis_poly_[i];
  for (long i = 0; i < d; ++i) eis_twopi_[i] = (uint64_t)(0) - ginv * eis_twopi_[i];

  // s = pi^d / 2 = -(g_0/2 + (g_1/2) pi + ...), a unit; store its inverse
  EisHelper::Poly s(d, 0);
  for (long i = 0; i < d; ++i) s[i] = (uint64_t)(0) - (uint64_t)(eis_poly_[i] / 2);
  eis_sinv_ = H.newton_inverse(s);

  // power sums Tr(pi^k) via Newton's identities:
  //   k < d:  p_k = -(sum_{i=1}^{k-1} a_{d-i} p_{k-i} + k a_{d-k})
  //   k >= d: p_k = -(sum_{i=1}^{d} a_{d-i} p_{k-i}),  a_0..a_{d-1} = eis_poly_
  eis_tr_.assign(2 * d, 0);
  eis_tr_[0] = (uint64_t)d;
  for (long k = 1; k < 2 * d; ++k) {
    uint64_t acc = 0;
    if (k < d) {
      for (long i = 1; i < k; ++i) acc += (uint64_t)eis_poly_[d - i] * eis_tr_[k - i];
      acc += (uint64_t)k * (uint64_t)eis_poly_[d - k];
    } else {
      for (long i = 1; i <= d; ++i) acc += (uint64_t)eis_poly_[d - i] * eis_tr_[k - i];
    }
    eis_tr_[k] = (uint64_t)(0) - acc;
  }

  // valuation of the different g'(pi)
  EisHelper::Poly gp(d, 0);
  gp[d - 1] = (uint64_t)d;
  for (long i = 1; i < d; ++i) gp[i - 1] += (uint64_t)i * (uint64_t)eis_poly_[i];
  auto dgs = H.to_digits(gp, 4 * d + 8);
  eis_vdiff_ = -1;
  for (size_t i = 0; i < dgs.size(); ++i)
    if (dgs[i]) {
      eis_vdiff_ = (long)i;
      break;
    }
  if (eis_vdiff_ < 0) fail("could not determine the different");

  // conductor-fixing shift, searched and certified by verify_conductor
  eis_shift_ = 0;
  AdditiveCharacter chi{this, std::nullopt};
  bool ok = false;
  for (long radius = 0; radius <= 2 * d + eis_vdiff_ + 2 && !ok; ++radius) {
    for (long sgn : {-1, 1}) {
      long cand = sgn * radius;
      if (sgn == 1 && radius == 0) continue;
      eis_shift_ = cand;
      try {
        if (verify_conductor(chi, 1) && verify_conductor(chi, 2)) {
          ok = true;
          break;
        }
      } catch (const weil_error&) {
      }
    }
  }
  if (!ok) fail("no uniformizer shift gives psi conductor 2e");
}

// ---------------------------------------------------------------------------

FieldSpec FieldSpec::make_padic(long p) {
  if (!is_prime(p)) fail("p must be prime");
  FieldSpec F;
  F.kind_ = FieldKind::padic;
  F.p_ = p;
  F.f_ = 1;
  F.q_ = p;
  F.e_ = (p == 2) ? 1 : 0;
  return F;
}

FieldSpec FieldSpec::make_laurent(long p, long f) {
  if (!is_prime(p)) fail("p must be prime");
  if (p == 2) fail("laurent kind requires odd p (characteristic 2 excluded)");
  if (f < 1) fail("residue degree must be positive");
  FieldSpec F;
  F.kind_ = FieldKind::laurent;
  F.p_ = p;
  F.f_ = f;
  F.q_ = 1;
  for (long i = 0; i < f; ++i) F.q_ *= p;
  F.e_ = 0;
  F.init_laurent_tables();
  return F;
}

FieldSpec FieldSpec::make_eisenstein(std::vector<long> poly) {
  FieldSpec F;
  F.kind_ = FieldKind::eisenstein;
  F.eis_poly_ = std::move(poly);
  F.init_eisenstein();
  return F;
}

FieldSpec FieldSpec::parse(const std::string& s) {
  auto split = [](const std::string& x, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : x) {
      if (c == sep) {
        out.push_back(cur);
        cur.clear();
      } else
        cur.push_back(c);
    }
    out.push_back(cur);
    return out;
  };
  auto parts = split(s, ':');
  if (parts.size() == 2 && parts[0] == "p") return make_padic(std::stol(parts[1]));
  if (parts.size() == 3 && parts[0] == "laurent")
    return make_laurent(std::stol(parts[1]), std::stol(parts[2]));
  if (parts.size() == 2 && parts[0] == "eis2") {
    std::vector<long> coeffs;
    for (auto& c : split(parts[1], ',')) coeffs.push_back(std::stol(c));
    // input has the constant last; internal order is ascending
    std::reverse(coeffs.begin(), coeffs.end());
    return make_eisenstein(std::move(coeffs));
  }
  fail("cannot parse field spec '" + s + "'");
}

std::string FieldSpec::str() const {
  std::ostringstream os;
  switch (kind_) {
    case FieldKind::padic:
      os << "p:" << p_;
      break;
    case FieldKind::laurent:
      os << "laurent:" << p_ << ":" << f_;
      break;
    case FieldKind::eisenstein: {
      os << "eis2:";
      for (long i = (long)eis_poly_.size() - 1; i >= 0; --i) {
        os << eis_poly_[i];
        if (i) os << ",";
      }
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// element arithmetic

Elem FieldSpec::zero(long floor, long modulus) const {
  if (modulus < floor) fail("modulus below floor");
  Elem x;
  x.floor = floor;
  x.dig.assign(modulus - floor, 0);
  return x;
}

Elem FieldSpec::from_integer(long long v, long modulus) const {
  long len = modulus;
  if (len < 1) fail("empty window");
  Elem x;
  x.floor = 0;
  switch (kind_) {
    case FieldKind::padic: {
      uint64_t m = upow(p_, len);
      long long r = v % (long long)m;
      if (r < 0) r += (long long)m;
      x.dig = unpack_padic((uint64_t)r, p_, len);
      break;
    }
    case FieldKind::laurent: {
      long long r = v % p_;
      if (r < 0) r += p_;
      x.dig.assign(len, 0);
      x.dig[0] = (int32_t)r;  // integers embed as residue-field constants
      break;
    }
    case FieldKind::eisenstein: {
      EisHelper H(*this);
      auto c = H.zero();
      c[0] = (uint64_t)v;
      x.dig = H.to_digits(std::move(c), len);
      break;
    }
  }
  return x;
}

Elem FieldSpec::uniformizer_pow(long k, long modulus) const {
  Elem x;
  x.floor = k;
  x.dig.assign(modulus, 0);
  x.dig[0] = 1;
  return x;
}

Elem FieldSpec::rep(long a, long b, long long index, long pad) const {
  Elem x;
  x.floor = a;
  long w = b - a;
  x.dig.assign(w + pad, 0);
  for (long i = 0; i < w; ++i) {
    x.dig[i] = (int32_t)(index % q_);
    index /= q_;
  }
  if (index) fail("coset index out of range");
  return x;
}

Elem FieldSpec::restricted(const Elem& x, long a, long b) const {
  if (b > x.modulus()) fail_precision("window [" + std::to_string(a) + "," +
                                      std::to_string(b) + ") exceeds element modulus");
  Elem r;
  r.floor = a;
  r.dig.assign(b - a, 0);
  for (long j = a; j < b; ++j) {
    long src = j - x.floor;
    if (src < 0) continue;
    r.dig[j - a] = x.dig[src];
  }
  for (long j = x.floor; j < a; ++j)
    if (x.dig[j - x.floor]) fail("element does not lie in pi^" + std::to_string(a) + "o");
  return r;
}

long long FieldSpec::index_in_window(const Elem& x, long a, long b) const {
  Elem r = restricted(x, a, b);
  long long idx = 0;
  for (size_t i = r.dig.size(); i-- > 0;) idx = idx * q_ + r.dig[i];
  return idx;
}

Elem FieldSpec::add(const Elem& x, const Elem& y) const {
  long a = std::min(x.floor, y.floor);
  long b = std::min(x.modulus(), y.modulus());
  if (b <= a) return zero(a, a);
  long len = b - a;
  Elem r;
  r.floor = a;
  switch (kind_) {
    case FieldKind::padic: {
      uint64_t m = upow(p_, len);
      uint64_t vx = pack_padic(restricted(x, a, b).dig, p_);
      uint64_t vy = pack_padic(restricted(y, a, b).dig, p_);
      r.dig = unpack_padic((vx + vy) % m, p_, len);
      break;
    }
    case FieldKind::laurent: {
      Elem rx = restricted(x, a, b), ry = restricted(y, a, b);
      r.dig.assign(len, 0);
      for (long i = 0; i < len; ++i) r.dig[i] = fq_add(rx.dig[i], ry.dig[i]);
      break;
    }
    case FieldKind::eisenstein: {
      EisHelper H(*this);
      auto cx = H.from_digits(restricted(x, a, b).dig);
      auto cy = H.from_digits(restricted(y, a, b).dig);
      for (long i = 0; i < H.d; ++i) cx[i] += cy[i];
      r.dig = H.to_digits(std::move(cx), len);
      break;
    }
  }
  return r;
}

Elem FieldSpec::neg(const Elem& x) const {
  Elem r;
  r.floor = x.floor;
  long len = (long)x.dig.size();
  switch (kind_) {
    case FieldKind::padic: {
      uint64_t m = upow(p_, len);
      uint64_t v = pack_padic(x.dig, p_);
      r.dig = unpack_padic(v ? m - v : 0, p_, len);
      break;
    }
    case FieldKind::laurent: {
      r.dig.assign(len, 0);
      for (long i = 0; i < len; ++i) r.dig[i] = fq_neg(x.dig[i]);
      break;
    }
    case FieldKind::eisenstein: {
      EisHelper H(*this);
      auto c = H.from_digits(x.dig);
      for (long i = 0; i < H.d; ++i) c[i] = (uint64_t)(0) - c[i];
      r.dig = H.to_digits(std::move(c), len);
      break;
    }
  }
  return r;
}

Elem FieldSpec::sub(const Elem& x, const Elem& y) const { return add(x, neg(y)); }

Elem FieldSpec::mul(const Elem& x, const Elem& y) const {
  long a = x.floor + y.floor;
  long len = std::min(x.dig.size(), y.dig.size());
  Elem r;
  r.floor = a;
  if (len == 0) {
    r.dig.clear();
    return r;
  }
  switch (kind_) {
    case FieldKind::padic: {
      uint64_t m = upow(p_, len);
      uint64_t vx = pack_padic(x.dig, p_) % m;
      uint64_t vy = pack_padic(y.dig, p_) % m;
      uint64_t v = (uint64_t)((unsigned __int128)vx * vy % m);
      r.dig = unpack_padic(v, p_, len);
      break;
    }
    case FieldKind::laurent: {
      r.dig.assign(len, 0);
      for (long i = 0; i < len; ++i) {
        int32_t acc = 0;
        for (long j = 0; j <= i; ++j)
          if (j < (long)x.dig.size() && i - j < (long)y.dig.size())
            acc = fq_add(acc, fq_mul(x.dig[j], y.dig[i - j]));
        r.dig[i] = acc;
      }
      break;
    }
    case FieldKind::eisenstein: {
      EisHelper H(*this);
      auto c = H.mul(H.from_digits(x.dig), H.from_digits(y.dig));
      r.dig = H.to_digits(std::move(c), len);
      break;
    }
  }
  return r;
}

Elem FieldSpec::invert(const Elem& x) const {
  auto v = x.valuation();
  if (!v) fail("inversion: valuation not visible in window");
  long shift = *v - x.floor;
  long ulen = (long)x.dig.size() - shift;
  std::vector<int32_t> u(x.dig.begin() + shift, x.dig.end());
  Elem r;
  r.floor = -*v;
  switch (kind_) {
    case FieldKind::padic: {
      uint64_t m = upow(p_, ulen);
      mpz_class um((unsigned long)(pack_padic(u, p_) % m)), mm((unsigned long)m), res;
      if (mpz_invert(res.get_mpz_t(), um.get_mpz_t(), mm.get_mpz_t()) == 0)
        fail("inversion of non-unit");
      r.dig = unpack_padic(mpz_get_ui(res.get_mpz_t()), p_, ulen);
      break;
    }
    case FieldKind::laurent: {
      std::vector<int32_t> w(ulen, 0);
      int32_t u0inv = fq_inv(u[0]);
      w[0] = u0inv;
      for (long k = 1; k < ulen; ++k) {
        int32_t acc = 0;
        for (long i = 1; i <= k; ++i) acc = fq_add(acc, fq_mul(u[i], w[k - i]));
        w[k] = fq_mul(fq_neg(acc), u0inv);
      }
      r.dig = std::move(w);
      break;
    }
    case FieldKind::eisenstein: {
      EisHelper H(*this);
      auto w = H.newton_inverse(H.from_digits(u), 8);
      r.dig = H.to_digits(std::move(w), ulen);
      break;
    }
  }
  return r;
}

bool FieldSpec::congruent(const Elem& x, const Elem& y) const {
  return sub(x, y).zero_on_window();
}

// ---------------------------------------------------------------------------
// the additive character

long FieldSpec::psi_min_modulus(long /*floor*/) const {
  if (kind_ == FieldKind::eisenstein) {
    long d = eis_degree();
    return std::max(2 * e_, eis_vdiff_ + 2 * d - eis_shift_);
  }
  return 2 * e_;
}

long long FieldSpec::psi_denominator_bound(long v) const {
  switch (kind_) {
    case FieldKind::padic:
      return (long long)upow(p_, std::max<long>(0, 2 * e_ - v));
    case FieldKind::laurent:
      return p_;
    case FieldKind::eisenstein: {
      long d = eis_degree();
      long A = v + eis_shift_;
      long k = (A >= 0) ? 0 : (-A + d - 1) / d;
      return (long long)upow(2, k + 2);
    }
  }
  return 1;
}

RootOfUnity FieldSpec::psi(const Elem& x) const {
  if (x.modulus() < psi_min_modulus(x.floor))
    fail_precision("psi: window too coarse (modulus " + std::to_string(x.modulus()) +
                   " < " + std::to_string(psi_min_modulus(x.floor)) + ")");
  switch (kind_) {
    case FieldKind::padic: {
      // psi(x) = e(frac part of x/4); for p odd, 4 is a unit
      Elem y = x;
      if (p_ == 2) {
        y.floor -= 2;
      } else {
        Elem inv4 = invert(from_integer(4, std::max<long>(1, (long)x.dig.size())));
        y = mul(x, inv4);
      }
      long a = y.floor;
      if (a >= 0) return RootOfUnity::of(0, 1);
      long long num = 0;
      long long den = (long long)upow(p_, -a);
      long long P = 1;
      for (long j = a; j < 0; ++j) {
        long src = j - a;
        if (src >= (long)y.dig.size())
          fail_precision("psi: fractional digits not covered by window");
        num += y.dig[src] * P;
        P *= p_;
      }
      return RootOfUnity::of(num, den);
    }
    case FieldKind::laurent: {
      Elem inv4 = invert(from_integer(4, std::max<long>(1, (long)x.dig.size())));
      Elem y = mul(x, inv4);
      if (y.floor > -1) return RootOfUnity::of(0, 1);
      long src = -1 - y.floor;
      if (src >= (long)y.dig.size()) fail_precision("psi: t^{-1} digit not covered");
      int32_t c = y.dig[src];
      return RootOfUnity::of(fq_trace(c), p_);
    }
    case FieldKind::eisenstein: {
      EisHelper H(*this);
      long d = H.d;
      long A = x.floor + eis_shift_;
      long k = (A >= 0) ? 0 : (-A + d - 1) / d;
      // y * 2^k = pi^(A + kd) * unit-digits * sinv^k
      long lead = A + k * d;
      EisHelper::Poly acc = H.zero();
      EisHelper::Poly pw = H.pi_pow(lead);
      for (size_t i = 0; i < x.dig.size(); ++i) {
        if (x.dig[i])
          for (long j = 0; j < d; ++j) acc[j] += pw[j];
        H.mul_by_pi(pw);
      }
      for (long i = 0; i < k; ++i) acc = H.mul(acc, eis_sinv_);
      uint64_t T = H.trace(acc);  // = 2^k * Tr(pi^shift * x) mod 2^64
      long bits = k + 2;
      if (bits >= 62) fail("psi: eisenstein angle too deep");
      uint64_t mask = (uint64_t(1) << bits) - 1;
      return RootOfUnity::of((long long)(T & mask), (long long)(uint64_t(1) << bits));
    }
  }
  return RootOfUnity::of(0, 1);
}

// ---------------------------------------------------------------------------

Quotient Quotient::make(const FieldSpec& F, long a, long b, long n) {
  if (b < a) fail("enumerate_quotient: b < a");
  Quotient Q;
  Q.field = &F;
  Q.a = a;
  Q.b = b;
  Q.n = n;
  Q.per_coord = 1;
  for (long i = 0; i < b - a; ++i) Q.per_coord *= F.q();
  Q.count = 1;
  for (long j = 0; j < n; ++j) Q.count *= Q.per_coord;
  return Q;
}

long long Quotient::coord_index(long long idx, long j) const {
  for (long t = 0; t < j; ++t) idx /= per_coord;
  return idx % per_coord;
}

std::vector<Elem> Quotient::rep(long long idx, long pad) const {
  std::vector<Elem> out;
  out.reserve(n);
  for (long j = 0; j < n; ++j) out.push_back(field->rep(a, b, coord_index(idx, j), pad));
  return out;
}

long long Quotient::neg_index(long long idx) const {
  long long out = 0, mult = 1;
  for (long j = 0; j < n; ++j) {
    Elem x = field->rep(a, b, coord_index(idx, j), 0);
    long long ni = field->index_in_window(field->neg(x), a, b);
    out += ni * mult;
    mult *= per_coord;
  }
  return out;
}

bool verify_conductor(const AdditiveCharacter& chi, long V) {
  const FieldSpec& F = *chi.field;
  long twoe = 2 * F.e();
  long pad = std::max<long>(0, F.psi_min_modulus(0) - twoe) + 2;
  Quotient qx = Quotient::make(F, -V, twoe, 1);
  Quotient qt = Quotient::make(F, 0, V + twoe, 1);
  for (long long xi = 0; xi < qx.count; ++xi) {
    Elem x = F.rep(-V, twoe, xi, pad + V);
    bool in_4o = x.zero_on_window();  // x = 0 mod pi^{2e} = 4o
    bool trivial = true;
    for (long long ti = 0; ti < qt.count && trivial; ++ti) {
      Elem t = F.rep(0, V + twoe, ti, pad);
      if (!chi(F.mul(t, x)).is_one()) trivial = false;
    }
    if (trivial != in_4o) return false;
  }
  return true;
}

}  // namespace weil
