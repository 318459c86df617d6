#include "weil/symplectic.hpp"

#include <sstream>

namespace weil {

namespace {

// compact digit spelling, low power first, trailing zeros trimmed
std::string elem_str(const Elem& x) {
  std::ostringstream os;
  size_t top = x.dig.size();
  while (top > 0 && x.dig[top - 1] == 0) --top;
  if (top == 0) {
    os << "0";
  } else {
    for (size_t i = 0; i < top; ++i) {
      if (i) os << ".";
      os << x.dig[i];
    }
  }
  if (x.floor != 0) os << "@" << x.floor;
  return os.str();
}

}  // namespace

std::string SpLabel::str() const {
  std::ostringstream os;
  switch (kind) {
    case identity:
      return "1";
    case root_unipotent:
      os << "x[" << AffineRoot{root, m}.str() << "](" << elem_str(t) << ")";
      return os.str();
    case torus:
      os << "h(";
      for (size_t j = 0; j < h.size(); ++j) {
        if (j) os << ",";
        os << elem_str(h[j]);
      }
      os << ")";
      return os.str();
    case eta_w:
      os << "eta[" << i << "]w";
      return os.str();
  }
  return "?";
}

SpMatrix sp_identity(const FieldSpec& F, long n, long prec) {
  SpMatrix m;
  m.field = &F;
  m.n = n;
  m.a.assign(4 * n * n, F.zero(0, prec));
  for (long j = 0; j < 2 * n; ++j) m.at(j, j) = F.one(prec);
  return m;
}

SpMatrix sp_mul(const SpMatrix& x, const SpMatrix& y) {
  const FieldSpec& F = *x.field;
  long N = 2 * x.n;
  SpMatrix r;
  r.field = x.field;
  r.n = x.n;
  r.a.reserve(N * N);
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      Elem acc = F.mul(x.at(i, 0), y.at(0, j));
      for (long k = 1; k < N; ++k) acc = F.add(acc, F.mul(x.at(i, k), y.at(k, j)));
      r.a.push_back(acc);
    }
  return r;
}

SpMatrix sp_inverse(const SpMatrix& m) {
  // block inverse ((D^T, -B^T), (-C^T, A^T))
  const FieldSpec& F = *m.field;
  long n = m.n;
  SpMatrix r;
  r.field = m.field;
  r.n = n;
  r.a.assign(4 * n * n, Elem{});
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      r.at(i, j) = m.at(n + j, n + i);
      r.at(i, n + j) = F.neg(m.at(j, n + i));
      r.at(n + i, j) = F.neg(m.at(n + j, i));
      r.at(n + i, n + j) = m.at(j, i);
    }
  return r;
}

bool sp_equal(const SpMatrix& x, const SpMatrix& y) {
  const FieldSpec& F = *x.field;
  if (x.n != y.n) return false;
  for (size_t k = 0; k < x.a.size(); ++k)
    if (!F.congruent(x.a[k], y.a[k])) return false;
  return true;
}

bool check_symplectic(const SpMatrix& m) {
  const FieldSpec& F = *m.field;
  long n = m.n;
  long prec = 2;
  for (const auto& x : m.a) prec = std::max(prec, x.modulus());
  for (long i = 0; i < 2 * n; ++i)
    for (long j = 0; j < 2 * n; ++j) {
      // (M^T J M)_{ij} = sum_k M_{k,i} M_{n+k,j} - M_{n+k,i} M_{k,j}
      Elem acc = F.zero(0, prec);
      for (long k = 0; k < n; ++k) {
        acc = F.add(acc, F.mul(m.at(k, i), m.at(n + k, j)));
        acc = F.add(acc, F.neg(F.mul(m.at(n + k, i), m.at(k, j))));
      }
      long expect = 0;
      if (j == i + n) expect = 1;
      if (i == j + n) expect = -1;
      Elem e = expect ? (expect > 0 ? F.one(prec) : F.neg(F.one(prec))) : F.zero(0, prec);
      if (!F.congruent(acc, e)) return false;
    }
  return true;
}

SpMatrix chev_x(const FieldSpec& F, long n, const Root& alpha, const Elem& t, long prec) {
  SpMatrix m = sp_identity(F, n, prec);
  m.label.kind = SpLabel::root_unipotent;
  m.label.root = alpha;
  m.label.m = 0;
  m.label.t = t;
  long pos = -1, neg = -1, lng = -1;
  for (long j = 0; j < n; ++j) {
    if (alpha.c[j] == 1) pos = j;
    if (alpha.c[j] == -1) neg = j;
    if (alpha.c[j] == 2 || alpha.c[j] == -2) lng = j;
  }
  if (lng >= 0) {
    if (alpha.c[lng] > 0)
      m.at(lng, n + lng) = t;  // upper: B = t E_ii
    else
      m.at(n + lng, lng) = t;  // lower: C = t E_ii
  } else if (pos >= 0 && neg >= 0) {
    // eps_pos - eps_neg: A = 1 + t E_{pos,neg}, D = 1 - t E_{neg,pos}
    m.at(pos, neg) = F.add(m.at(pos, neg), t);
    m.at(n + neg, n + pos) = F.add(m.at(n + neg, n + pos), F.neg(t));
  } else {
    // +-(eps_i + eps_j), i < j
    long i = -1, j = -1;
    for (long k = 0; k < n; ++k)
      if (alpha.c[k] != 0) {
        if (i < 0)
          i = k;
        else
          j = k;
      }
    if (alpha.c[i] > 0) {
      m.at(i, n + j) = t;
      m.at(j, n + i) = t;
    } else {
      m.at(n + i, j) = t;
      m.at(n + j, i) = t;
    }
  }
  return m;
}

SpMatrix chev_w(const FieldSpec& F, long n, const Root& alpha, const Elem& t, long prec) {
  Elem tinv = F.invert(t);
  auto a = chev_x(F, n, alpha, t, prec);
  auto b = chev_x(F, n, -alpha, F.neg(tinv), prec);
  auto m = sp_mul(sp_mul(a, b), a);
  m.label = SpLabel{};
  return m;
}

SpMatrix chev_h(const FieldSpec& F, long n, const Root& alpha, const Elem& t, long prec) {
  auto m = sp_mul(chev_w(F, n, alpha, t, prec),
                  chev_w(F, n, alpha, F.neg(F.one(prec)), prec));
  m.label = SpLabel{};
  return m;
}

SpMatrix affine_x(const FieldSpec& F, long n, const Root& alpha, long m, const Elem& t, long prec) {
  Elem s = F.mul(F.uniformizer_pow(m, prec), t);
  auto out = chev_x(F, n, alpha, s, prec);
  out.label.m = (int)m;
  return out;
}

SpMatrix torus_matrix(const FieldSpec& F, long n, const std::vector<Elem>& h, long prec) {
  SpMatrix m = sp_identity(F, n, prec);
  m.label.kind = SpLabel::torus;
  m.label.h = h;
  for (long j = 0; j < n; ++j) {
    m.at(j, j) = h[j];
    m.at(n + j, n + j) = F.invert(h[j]);
  }
  return m;
}

SpMatrix eta(const FieldSpec& F, long n, long i, long prec) {
  std::vector<Elem> h;
  for (long j = 0; j < n; ++j)
    h.push_back(j < i ? F.uniformizer_pow(-1, prec) : F.one(prec));
  auto m = torus_matrix(F, n, h, prec);
  m.label = SpLabel{};
  return m;
}

SpMatrix w_long(const FieldSpec& F, long n, long prec) {
  SpMatrix m = sp_identity(F, n, prec);
  for (long j = 0; j < 2 * n; ++j) m.at(j, j) = F.zero(0, prec);
  for (long j = 0; j < n; ++j) {
    m.at(j, n + j) = F.one(prec);
    m.at(n + j, j) = F.neg(F.one(prec));
  }
  m.label = SpLabel{};
  return m;
}

SpMatrix eta_w(const FieldSpec& F, long n, long i, long prec) {
  auto m = sp_mul(eta(F, n, i, prec), w_long(F, n, prec));
  m.label.kind = SpLabel::eta_w;
  m.label.i = i;
  return m;
}

LatticeProfile LatticeProfile::L(long n, long i) {
  LatticeProfile P;
  P.lambda.assign(2 * n, 0);
  for (long j = 0; j < i; ++j) P.lambda[n + j] = 1;
  return P;
}

LatticeProfile LatticeProfile::L_dual(long n, long i) {
  LatticeProfile P;
  P.lambda.assign(2 * n, 0);
  for (long j = 0; j < i; ++j) P.lambda[j] = -1;
  return P;
}

namespace {

bool entries_stabilize(const SpMatrix& m, const LatticeProfile& L) {
  long N = 2 * m.n;
  for (long k = 0; k < N; ++k)
    for (long j = 0; j < N; ++j) {
      long need = L.lambda[k] - L.lambda[j];
      const Elem& x = m.at(k, j);
      auto v = x.valuation();
      if (v) {
        if (*v < need) return false;
      } else if (x.modulus() < need) {
        fail_precision("stabilizes: window cannot decide valuation bound");
      }
    }
  return true;
}

}  // namespace

bool stabilizes(const SpMatrix& m, const LatticeProfile& L) {
  return entries_stabilize(m, L) && entries_stabilize(sp_inverse(m), L);
}

SpMatrix conjugate_by_g(const SpMatrix& m) {
  const FieldSpec& F = *m.field;
  long n = m.n;
  long prec = 4;
  for (const auto& x : m.a) prec = std::max(prec, x.modulus() + 2);
  SpMatrix r = m;
  r.label = SpLabel{};
  for (long k = 0; k < 2 * n; ++k)
    for (long j = 0; j < 2 * n; ++j) {
      long s = (j < n ? 1 : 0) - (k < n ? 1 : 0);
      if (s) r.at(k, j) = F.mul(F.uniformizer_pow(s, prec), m.at(k, j));
    }
  return r;
}

long generator_precision(const FieldSpec& F, long D) {
  long psi_extra = std::max<long>(0, F.psi_min_modulus(0) - 2 * F.e());
  return D + psi_extra + 8;
}

std::vector<Elem> unit_representatives(const FieldSpec& F, long D, long pad) {
  std::vector<Elem> out;
  long long count = 1;
  for (long i = 0; i < D; ++i) count *= F.q();
  for (long long idx = 0; idx < count; ++idx) {
    Elem u = F.rep(0, D, idx, pad);
    if (u.dig[0] != 0) out.push_back(u);
  }
  return out;
}

std::vector<SpMatrix> ki_group_generators(const FieldSpec& F, long n, long i, long D) {
  long prec = generator_precision(F, D);
  std::vector<SpMatrix> out;
  if (D <= 0) {
    out.push_back(sp_identity(F, n, prec));
    return out;
  }
  long long tcount = 1;
  for (long k = 0; k < D; ++k) tcount *= F.q();
  for (const auto& mu : ki_affine_roots(n, i)) {
    for (long long idx = 0; idx < tcount; ++idx) {
      Elem t = F.rep(0, D, idx, prec - D);
      out.push_back(affine_x(F, n, mu.root, mu.offset, t, prec));
    }
  }
  for (long j = 0; j < n; ++j) {
    for (const auto& u : unit_representatives(F, D, prec - D)) {
      if (j > 0 && u.valuation() == 0 && F.congruent(u, F.one(D))) continue;
      std::vector<Elem> h(n, F.one(prec));
      h[j] = u;
      out.push_back(torus_matrix(F, n, h, prec));
    }
  }
  out.push_back(eta_w(F, n, i, prec));
  return out;
}

std::vector<SpMatrix> iwahori_generators(const FieldSpec& F, long n, long D) {
  long prec = generator_precision(F, D);
  std::vector<SpMatrix> out;
  if (D <= 0) {
    out.push_back(sp_identity(F, n, prec));
    return out;
  }
  long long tcount = 1;
  for (long k = 0; k < D; ++k) tcount *= F.q();
  auto add_family = [&](const Root& alpha, long m) {
    for (long long idx = 0; idx < tcount; ++idx) {
      Elem t = F.rep(0, D, idx, prec - D);
      out.push_back(affine_x(F, n, alpha, m, t, prec));
    }
  };
  for (const auto& alpha : all_roots(n)) {
    bool positive = false;
    for (int c : alpha.c) {
      if (c > 0) positive = true;
      if (c != 0) break;
    }
    add_family(alpha, positive ? 0 : 1);
  }
  for (long j = 0; j < n; ++j)
    for (const auto& u : unit_representatives(F, D, prec - D)) {
      if (j > 0 && F.congruent(u, F.one(D))) continue;
      std::vector<Elem> h(n, F.one(prec));
      h[j] = u;
      out.push_back(torus_matrix(F, n, h, prec));
    }
  return out;
}

}  // namespace weil
