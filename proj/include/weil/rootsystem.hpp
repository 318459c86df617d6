#pragma once

// Root and affine-root data of type C_n: roots, coroots, affine reflections,
// the fundamental alcove with vertices z_0..z_n, the extended Dynkin diagram,
// and the affine-root generator selection for each maximal compact K_i.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "weil/scalars.hpp"

namespace weil {

// A root sum c_j eps_j of type C_n: one of +-(eps_i +- eps_j) or +-2eps_i.
struct Root {
  std::vector<int> c;

  bool is_long() const;
  std::string str() const;
  bool operator==(const Root& o) const { return c == o.c; }
  bool operator<(const Root& o) const { return c < o.c; }
  Root operator-() const;
};

Root make_root(std::vector<int> coeffs);  // validates membership in Delta

// alpha + m, evaluated on points as alpha(a) + m
struct AffineRoot {
  Root root;
  int offset = 0;

  std::string str() const;
  bool operator==(const AffineRoot& o) const {
    return root == o.root && offset == o.offset;
  }
};

using QVec = std::vector<mpq_class>;

mpq_class pairing(const Root& alpha, const QVec& a);        // alpha(a)
mpq_class affine_eval(const AffineRoot& mu, const QVec& a); // alpha(a) + m

std::vector<Root> all_roots(long n);               // 2n^2 of them
std::vector<AffineRoot> simple_affine(long n);     // alpha_0, ..., alpha_n
std::vector<int> coroot(const Root& alpha);        // (coroot, alpha) = 2

QVec affine_reflect(const AffineRoot& mu, const QVec& a);

QVec vertex(long n, long i);           // z_i = (1/2 x i, 0 x (n-i))
bool chamber_contains(long n, const QVec& a);

// Simple generator selection for K_i: the simple affine roots together with
// the substitute (-root(alpha_i), 1); every entry is >= 0 at z_i.
std::vector<AffineRoot> ki_affine_roots(long n, long i);

// Affine Weyl elements as (signed permutation, coroot translation) pairs with
// the composition law (A,d)(B,e) = (AB, d + A e).
struct AffineWeylElement {
  long n = 0;
  std::vector<int> lin;       // n x n, row-major, entries 0/+-1
  std::vector<int> tr;        // translation

  static AffineWeylElement identity(long n);
  static AffineWeylElement translation(std::vector<int> d);
  static AffineWeylElement reflection(long n, const AffineRoot& mu);

  AffineWeylElement operator*(const AffineWeylElement& o) const;
  QVec apply(const QVec& a) const;
  bool operator==(const AffineWeylElement& o) const {
    return lin == o.lin && tr == o.tr;
  }
  bool operator<(const AffineWeylElement& o) const {
    return lin != o.lin ? lin < o.lin : tr < o.tr;
  }
};

// closure of the simple reflections; n <= 4
std::vector<AffineWeylElement> generate_finite_weyl(long n);

struct DynkinEdge {
  int a, b;
  int bond;      // 1 simple, 2 double
  int arrow_to;  // vertex the arrow points at, -1 if none
};

struct DynkinDiagram {
  std::vector<int> vertices;
  std::vector<DynkinEdge> edges;
};

DynkinDiagram dynkin_adjacency(long n, long removed = -1);

}  // namespace weil
