#pragma once

// Sp_2n(k) at truncated precision: Chevalley generator matrices and their
// affine variants, torus elements, eta_i and the long Weyl element, the
// lattice chains L_i / L_i^* with stabilizer tests, and labeled generator
// sets for the maximal compacts K_i and the Iwahori subgroup.

#include <string>
#include <vector>

#include "weil/localfield.hpp"
#include "weil/rootsystem.hpp"

namespace weil {

// Construction label; the Schroedinger-model operator factory dispatches on
// this rather than on matrix entries.
struct SpLabel {
  enum Kind { identity, root_unipotent, torus, eta_w } kind = identity;
  Root root;          // root_unipotent
  int m = 0;          // affine offset: parameter ranges over pi^m t
  Elem t;             // unipotent parameter (already includes pi^m)
  std::vector<Elem> h;  // torus entries h_1..h_n
  long i = 0;         // eta_w
  std::string str() const;
};

struct SpMatrix {
  const FieldSpec* field = nullptr;
  long n = 0;
  std::vector<Elem> a;  // 2n x 2n row-major; basis order e_1..e_n, f_1..f_n
  SpLabel label;

  Elem& at(long r, long c) { return a[r * 2 * n + c]; }
  const Elem& at(long r, long c) const { return a[r * 2 * n + c]; }
};

SpMatrix sp_identity(const FieldSpec& F, long n, long prec);
SpMatrix sp_mul(const SpMatrix& x, const SpMatrix& y);
// closed-form inverse -J M^T J from the symplectic relation
SpMatrix sp_inverse(const SpMatrix& m);
bool sp_equal(const SpMatrix& x, const SpMatrix& y);  // congruent entrywise

// M^T J M = J within precision
bool check_symplectic(const SpMatrix& m);

// x_alpha(t) for any root alpha (positive patterns and their transposes)
SpMatrix chev_x(const FieldSpec& F, long n, const Root& alpha, const Elem& t, long prec);
// w_alpha(t) = x_alpha(t) x_{-alpha}(-t^{-1}) x_alpha(t), h_alpha(t) = w_alpha(t) w_alpha(-1)
SpMatrix chev_w(const FieldSpec& F, long n, const Root& alpha, const Elem& t, long prec);
SpMatrix chev_h(const FieldSpec& F, long n, const Root& alpha, const Elem& t, long prec);
// x_{alpha+m}(t) = x_alpha(pi^m t)
SpMatrix affine_x(const FieldSpec& F, long n, const Root& alpha, long m, const Elem& t, long prec);
SpMatrix torus_matrix(const FieldSpec& F, long n, const std::vector<Elem>& h, long prec);
SpMatrix eta(const FieldSpec& F, long n, long i, long prec);
SpMatrix w_long(const FieldSpec& F, long n, long prec);
SpMatrix eta_w(const FieldSpec& F, long n, long i, long prec);

// lattice spanned by pi^{lambda_k} basis vectors, order e_1..e_n, f_1..f_n
struct LatticeProfile {
  std::vector<long> lambda;
  static LatticeProfile L(long n, long i);       // o^n + (pi o)^i o^{n-i}
  static LatticeProfile L_dual(long n, long i);  // (pi^-1 o)^i o^{n-i} + o^n
};

// M L <= L and M^{-1} L <= L, decided by valuation inequalities
bool stabilizes(const SpMatrix& m, const LatticeProfile& L);

// conjugation by g = diag(pi,..,pi,1,..,1); maps K_0 onto K_n
SpMatrix conjugate_by_g(const SpMatrix& m);

// labeled generator sets; unipotent parameters run over representatives of
// o/pi^D, torus entries over per-coordinate unit representatives
std::vector<SpMatrix> ki_group_generators(const FieldSpec& F, long n, long i, long D);
std::vector<SpMatrix> iwahori_generators(const FieldSpec& F, long n, long D);

// unit representatives of (o/pi^D)^x as exact elements
std::vector<Elem> unit_representatives(const FieldSpec& F, long D, long pad);

// entry precision used when building depth-D generators
long generator_precision(const FieldSpec& F, long D);

}  // namespace weil
