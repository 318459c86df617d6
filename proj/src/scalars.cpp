#include "weil/scalars.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace weil {

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

RootOfUnity RootOfUnity::of(long long num, long long den) {
  if (den == 0) fail("root_of_unity: zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  num %= den;
  if (num < 0) num += den;
  long long g = gcd_ll(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  RootOfUnity z;
  z.num_ = num;
  z.den_ = den;
  return z;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  long long d = lcm_ll(den_, o.den_);
  return of(num_ * (d / den_) + o.num_ * (d / o.den_), d);
}

RootOfUnity RootOfUnity::pow(long long k) const {
  long long r = (num_ * (k % den_)) % den_;
  return of(r, den_);
}

std::string RootOfUnity::str() const {
  if (num_ == 0) return "1";
  if (num_ * 2 == den_) return "-1";
  std::ostringstream os;
  os << "e(" << num_ << "/" << den_ << ")";
  return os.str();
}

namespace {

// Polynomials over Z, coefficients ascending.  Enough machinery to build
// cyclotomic polynomials by the exact division
//   Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
std::vector<mpz_class> poly_div_exact(const std::vector<mpz_class>& a,
                                      const std::vector<mpz_class>& b) {
  std::vector<mpz_class> r = a;
  std::vector<mpz_class> q(a.size() - b.size() + 1, 0);
  for (long i = (long)q.size() - 1; i >= 0; --i) {
    mpz_class c = r[i + b.size() - 1] / b.back();
    q[i] = c;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
  }
  for (auto& c : r)
    if (c != 0) fail("cyclotomic polynomial division not exact");
  return q;
}

std::vector<mpz_class> cyclotomic_poly(long n);

std::vector<mpz_class> cyclotomic_poly_uncached(long n) {
  std::vector<mpz_class> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;  // x^n - 1
  for (long d = 1; d < n; ++d)
    if (n % d == 0) num = poly_div_exact(num, cyclotomic_poly(d));
  return num;
}

std::mutex g_cyclo_mutex;
std::map<long, std::vector<mpz_class>> g_phi_cache;
std::map<long, std::unique_ptr<CycloTable>> g_table_cache;

std::vector<mpz_class> cyclotomic_poly(long n) {
  auto it = g_phi_cache.find(n);
  if (it != g_phi_cache.end()) return it->second;
  auto p = cyclotomic_poly_uncached(n);
  g_phi_cache[n] = p;
  return p;
}

std::unique_ptr<CycloTable> build_table(long order) {
  auto t = std::make_unique<CycloTable>();
  t->order = order;
  t->deg = euler_phi(order);
  t->phi = cyclotomic_poly(order);
  long top = std::max<long>(order, 2 * t->deg);
  t->pow.assign(top, {});
  std::vector<mpz_class> cur(t->deg, 0);
  cur[0] = 1;
  for (long k = 0; k < top; ++k) {
    t->pow[k] = cur;
    // cur <- x * cur mod Phi
    mpz_class lead = cur[t->deg - 1];
    for (long i = t->deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (lead != 0)
      for (long i = 0; i < t->deg; ++i) cur[i] -= lead * t->phi[i];
  }
  return t;
}

}  // namespace

const CycloTable& cyclo_table(long order) {
  if (order < 1) fail("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lk(g_cyclo_mutex);
  auto it = g_table_cache.find(order);
  if (it == g_table_cache.end())
    it = g_table_cache.emplace(order, build_table(order)).first;
  return *it->second;
}

void Cyclotomic::normalize() {
  bool all_zero = true;
  for (auto& x : c_)
    if (x != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) c_.clear();
}

void Cyclotomic::reduce_mod_phi(std::vector<mpq_class>& v, const CycloTable& t) {
  for (long k = (long)v.size() - 1; k >= t.deg; --k) {
    if (v[k] == 0) continue;
    const auto& row = t.pow[k];
    for (long i = 0; i < t.deg; ++i) v[i] += v[k] * row[i];
    v[k] = 0;
  }
  v.resize(t.deg);
}

Cyclotomic Cyclotomic::zero(long order) {
  Cyclotomic z;
  z.order_ = order;
  return z;
}

Cyclotomic Cyclotomic::rational(const mpq_class& v, long order) {
  Cyclotomic z;
  z.order_ = order;
  if (v != 0) {
    z.c_.assign(euler_phi(order), 0);
    z.c_[0] = v;
  }
  return z;
}

Cyclotomic Cyclotomic::from_coeffs(long order, std::vector<mpq_class> coeffs) {
  const CycloTable& t = cyclo_table(order);
  if ((long)coeffs.size() > t.deg) reduce_mod_phi(coeffs, t);
  coeffs.resize(t.deg, 0);
  Cyclotomic r;
  r.order_ = order;
  r.c_ = std::move(coeffs);
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::from_root(const RootOfUnity& z, long order) {
  if (order % z.den() != 0)
    fail("to_cyclotomic: order " + std::to_string(order) +
         " is not a multiple of denominator " + std::to_string(z.den()));
  const CycloTable& t = cyclo_table(order);
  long k = (long)(z.num() * (order / z.den()));
  Cyclotomic r;
  r.order_ = order;
  r.c_.assign(t.deg, 0);
  for (long i = 0; i < t.deg; ++i) r.c_[i] = t.pow[k][i];
  r.normalize();
  return r;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class Cyclotomic::rational_part() const {
  if (!is_rational()) fail("value is not rational");
  return c_.empty() ? mpq_class(0) : c_[0];
}

mpq_class Cyclotomic::coeff(long k) const {
  if (c_.empty()) return 0;
  return c_.at(k);
}

Cyclotomic Cyclotomic::lifted(long new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0) fail("lift: incompatible cyclotomic orders");
  Cyclotomic r = zero(new_order);
  if (is_zero()) return r;
  const CycloTable& t = cyclo_table(new_order);
  long step = new_order / order_;
  std::vector<mpq_class> acc(t.deg, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& row = t.pow[(long)i * step];
    for (long j = 0; j < t.deg; ++j) acc[j] += c_[i] * row[j];
  }
  r.c_ = std::move(acc);
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  long N = lcm_ll(order_, o.order_);
  Cyclotomic a = lifted(N), b = o.lifted(N);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  a.normalize();
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  long N = lcm_ll(order_, o.order_);
  Cyclotomic a = lifted(N), b = o.lifted(N);
  Cyclotomic r = zero(N);
  if (a.is_zero() || b.is_zero()) return r;
  const CycloTable& t = cyclo_table(N);
  std::vector<mpq_class> conv(2 * t.deg, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) conv[i + j] += a.c_[i] * b.c_[j];
  }
  reduce_mod_phi(conv, t);
  r.c_ = std::move(conv);
  r.normalize();
  return r;
}

namespace {

// Extended Euclid in Q[x] against Phi_N; only the Bezout coefficient of the
// input is needed.
struct QPoly {
  std::vector<mpq_class> c;
  long deg() const {
    for (long i = (long)c.size() - 1; i >= 0; --i)
      if (c[i] != 0) return i;
    return -1;
  }
  void trim() { c.resize(std::max<long>(deg() + 1, 0)); }
};

QPoly qp_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  // a - q*b
  QPoly r = a;
  long need = q.deg() + b.deg() + 1;
  if ((long)r.c.size() < need) r.c.resize(need, 0);
  for (long i = 0; i <= q.deg(); ++i) {
    if (q.c[i] == 0) continue;
    for (long j = 0; j <= b.deg(); ++j) r.c[i + j] -= q.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

QPoly qp_divmod(QPoly a, const QPoly& b, QPoly* rem) {
  QPoly q;
  long db = b.deg();
  q.c.assign(std::max<long>(a.deg() - db + 1, 0), 0);
  while (a.deg() >= db && a.deg() >= 0) {
    long sh = a.deg() - db;
    mpq_class f = a.c[a.deg()] / b.c[db];
    q.c[sh] += f;
    for (long j = 0; j <= db; ++j) a.c[sh + j] -= f * b.c[j];
    a.trim();
  }
  *rem = a;
  return q;
}

}  // namespace

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) fail("inversion of zero cyclotomic value");
  const CycloTable& t = cyclo_table(order_);
  QPoly r0, r1, s0, s1;
  r0.c.assign(t.phi.begin(), t.phi.end());
  r1.c = c_;
  r1.trim();
  s0.c = {mpq_class(0)};
  s1.c = {mpq_class(1)};
  while (r1.deg() >= 1) {
    QPoly rem;
    QPoly q = qp_divmod(r0, r1, &rem);
    r0 = r1;
    r1 = rem;
    QPoly s2 = qp_sub_mul(s0, q, s1);
    s0 = s1;
    s1 = s2;
  }
  if (r1.deg() != 0) fail("cyclotomic inverse: unexpected gcd");
  mpq_class lead = r1.c[0];
  Cyclotomic out = zero(order_);
  out.c_.assign(t.deg, 0);
  for (long i = 0; i <= s1.deg() && i < t.deg; ++i) out.c_[i] = s1.c[i] / lead;
  out.normalize();
  return out;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  long N = lcm_ll(order_, o.order_);
  Cyclotomic a = lifted(N), b = o.lifted(N);
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  return a.c_ == b.c_;
}

std::string Cyclotomic::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << c_[i].get_str();
    if (i > 0) os << "*z" << order_ << "^" << i;
    first = false;
  }
  return os.str();
}

void RootSum::add(const RootOfUnity& z, long long mult) {
  if (order_ % z.den() != 0) fail("RootSum: incompatible order");
  cnt_[(size_t)(z.num() * (order_ / z.den()))] += mult;
}

Cyclotomic RootSum::value() const {
  const CycloTable& t = cyclo_table(order_);
  std::vector<mpz_class> acc(t.deg, 0);
  for (long k = 0; k < order_; ++k) {
    if (cnt_[k] == 0) continue;
    const auto& row = t.pow[k];
    for (long i = 0; i < t.deg; ++i) acc[i] += (long)cnt_[k] * row[i];
  }
  std::vector<mpq_class> v(acc.begin(), acc.end());
  return Cyclotomic::from_coeffs(order_, std::move(v));
}

}  // namespace weil
