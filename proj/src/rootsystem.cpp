#include "weil/rootsystem.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace weil {

bool Root::is_long() const {
  for (int x : c)
    if (x == 2 || x == -2) return true;
  return false;
}

Root Root::operator-() const {
  Root r = *this;
  for (int& x : r.c) x = -x;
  return r;
}

std::string Root::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < c.size(); ++j) {
    if (!c[j]) continue;
    if (c[j] > 0 && !first) os << "+";
    if (c[j] == -1)
      os << "-";
    else if (c[j] != 1)
      os << c[j];
    os << "e" << (j + 1);
    first = false;
  }
  return os.str();
}

std::string AffineRoot::str() const {
  std::ostringstream os;
  os << root.str();
  if (offset > 0) os << "+" << offset;
  if (offset < 0) os << offset;
  return os.str();
}

Root make_root(std::vector<int> coeffs) {
  long n = (long)coeffs.size();
  long n_pm1 = 0, n_pm2 = 0, other = 0;
  for (int x : coeffs) {
    if (x == 1 || x == -1)
      ++n_pm1;
    else if (x == 2 || x == -2)
      ++n_pm2;
    else if (x != 0)
      ++other;
  }
  bool short_root = (n_pm1 == 2 && n_pm2 == 0 && other == 0);
  bool long_root = (n_pm1 == 0 && n_pm2 == 1 && other == 0);
  if (!(short_root || long_root) || n < 1) fail("not a root of type C_n");
  return Root{std::move(coeffs)};
}

mpq_class pairing(const Root& alpha, const QVec& a) {
  mpq_class s = 0;
  for (size_t j = 0; j < a.size(); ++j) s += alpha.c[j] * a[j];
  return s;
}

mpq_class affine_eval(const AffineRoot& mu, const QVec& a) {
  return pairing(mu.root, a) + mu.offset;
}

std::vector<Root> all_roots(long n) {
  std::vector<Root> out;
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          std::vector<int> c(n, 0);
          c[i] = si;
          c[j] = sj;
          out.push_back(make_root(std::move(c)));
        }
  for (long i = 0; i < n; ++i)
    for (int s : {2, -2}) {
      std::vector<int> c(n, 0);
      c[i] = s;
      out.push_back(make_root(std::move(c)));
    }
  return out;
}

std::vector<AffineRoot> simple_affine(long n) {
  if (n < 1) fail("rank must be positive");
  std::vector<AffineRoot> out;
  std::vector<int> c0(n, 0);
  c0[0] = -2;
  out.push_back({make_root(std::move(c0)), 1});  // alpha_0 = -2eps_1 + 1
  for (long i = 1; i < n; ++i) {
    std::vector<int> c(n, 0);
    c[i - 1] = 1;
    c[i] = -1;
    out.push_back({make_root(std::move(c)), 0});
  }
  std::vector<int> cn(n, 0);
  cn[n - 1] = 2;
  out.push_back({make_root(std::move(cn)), 0});  // alpha_n = 2eps_n
  return out;
}

std::vector<int> coroot(const Root& alpha) {
  std::vector<int> d(alpha.c.size(), 0);
  if (alpha.is_long()) {
    for (size_t j = 0; j < alpha.c.size(); ++j) d[j] = alpha.c[j] / 2;
  } else {
    d = alpha.c;
  }
  return d;
}

QVec affine_reflect(const AffineRoot& mu, const QVec& a) {
  mpq_class v = affine_eval(mu, a);
  auto cr = coroot(mu.root);
  QVec out = a;
  for (size_t j = 0; j < a.size(); ++j) out[j] -= v * cr[j];
  return out;
}

QVec vertex(long n, long i) {
  if (i < 0 || i > n) fail("vertex index out of range");
  QVec z(n, 0);
  for (long j = 0; j < i; ++j) z[j] = mpq_class(1, 2);
  return z;
}

bool chamber_contains(long n, const QVec& a) {
  for (const auto& mu : simple_affine(n)) {
    mpq_class v = affine_eval(mu, a);
    if (v <= 0 || v >= 1) return false;
  }
  return true;
}

std::vector<AffineRoot> ki_affine_roots(long n, long i) {
  if (i < 0 || i > n) fail("vertex index out of range");
  auto out = simple_affine(n);
  AffineRoot extra{-out[i].root, 1};
  bool dup = false;
  for (const auto& mu : out)
    if (mu == extra) dup = true;
  if (!dup) out.push_back(extra);
  QVec z = vertex(n, i);
  for (const auto& mu : out)
    if (affine_eval(mu, z) < 0) fail("generator selection: negative value at z_i");
  return out;
}

AffineWeylElement AffineWeylElement::identity(long n) {
  AffineWeylElement w;
  w.n = n;
  w.lin.assign(n * n, 0);
  for (long j = 0; j < n; ++j) w.lin[j * n + j] = 1;
  w.tr.assign(n, 0);
  return w;
}

AffineWeylElement AffineWeylElement::translation(std::vector<int> d) {
  AffineWeylElement w = identity((long)d.size());
  w.tr = std::move(d);
  return w;
}

AffineWeylElement AffineWeylElement::reflection(long n, const AffineRoot& mu) {
  // s_{alpha+m} = T(-m coroot(alpha)) s_alpha, with s_alpha = 1 - coroot alpha^T
  AffineWeylElement w = identity(n);
  auto cr = coroot(mu.root);
  for (long k = 0; k < n; ++k)
    for (long j = 0; j < n; ++j) w.lin[k * n + j] -= cr[k] * mu.root.c[j];
  for (long k = 0; k < n; ++k) w.tr[k] = -mu.offset * cr[k];
  return w;
}

AffineWeylElement AffineWeylElement::operator*(const AffineWeylElement& o) const {
  AffineWeylElement r;
  r.n = n;
  r.lin.assign(n * n, 0);
  r.tr.assign(n, 0);
  for (long k = 0; k < n; ++k)
    for (long j = 0; j < n; ++j) {
      int s = 0;
      for (long t = 0; t < n; ++t) s += lin[k * n + t] * o.lin[t * n + j];
      r.lin[k * n + j] = s;
    }
  for (long k = 0; k < n; ++k) {
    int s = tr[k];
    for (long t = 0; t < n; ++t) s += lin[k * n + t] * o.tr[t];
    r.tr[k] = s;
  }
  return r;
}

QVec AffineWeylElement::apply(const QVec& a) const {
  QVec out(n, 0);
  for (long k = 0; k < n; ++k) {
    mpq_class s = tr[k];
    for (long j = 0; j < n; ++j) s += lin[k * n + j] * a[j];
    out[k] = s;
  }
  return out;
}

std::vector<AffineWeylElement> generate_finite_weyl(long n) {
  if (n > 4) fail("finite Weyl enumeration capped at n = 4");
  std::vector<AffineWeylElement> gens;
  auto simple = simple_affine(n);
  for (long i = 1; i <= n; ++i)
    gens.push_back(AffineWeylElement::reflection(n, {simple[i].root, 0}));
  std::set<AffineWeylElement> seen;
  std::vector<AffineWeylElement> frontier{AffineWeylElement::identity(n)};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<AffineWeylElement> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        auto h = w * g;
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

DynkinDiagram dynkin_adjacency(long n, long removed) {
  DynkinDiagram D;
  for (long v = 0; v <= n; ++v)
    if (v != removed) D.vertices.push_back((int)v);
  auto add_edge = [&](long a, long b, int bond, int arrow_to) {
    if (a == removed || b == removed) return;
    D.edges.push_back({(int)a, (int)b, bond, arrow_to});
  };
  for (long a = 0; a + 1 <= n; ++a) {
    long b = a + 1;
    if (n == 1) {
      add_edge(a, b, 2, -1);  // both endpoints long; arrows point both ways
    } else if (a == 0) {
      add_edge(a, b, 2, (int)b);  // alpha_0 long, arrow toward the short side
    } else if (b == n) {
      add_edge(a, b, 2, (int)a);  // alpha_n long
    } else {
      add_edge(a, b, 1, -1);
    }
  }
  return D;
}

}  // namespace weil
