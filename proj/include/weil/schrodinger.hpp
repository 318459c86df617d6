#pragma once

// The Schroedinger model on finite quotients: spaces S(A/B) with enumerated
// cosets, even/odd bases, the discrete Fourier transform, and the projective
// Weil operator attached to each labeled symplectic generator.  Dense
// matrices serve small spaces; the classified-action layer answers stage
// invariance questions on spaces of any size by factored exact sweeps.

#include <string>
#include <utility>
#include <vector>

#include "weil/linalg.hpp"
#include "weil/localfield.hpp"
#include "weil/symplectic.hpp"

namespace weil {

// support/invariance exponent pair; inv absorbs the factor 2 as +e
struct LatticePair {
  std::vector<long> supp, inv;
  std::string label;
  bool operator==(const LatticePair& o) const { return supp == o.supp && inv == o.inv; }
};

// S_{i,m} and S'_{i,m} exponents
LatticePair s_pair(const FieldSpec& F, long n, long i, long m);
LatticePair s_prime_pair(const FieldSpec& F, long n, long i, long m);
// S_{i,0} c S'_{i,1} c S_{i,1} c ... c S_{i,M}, duplicates collapsed
std::vector<LatticePair> filtration_chain(const FieldSpec& F, long n, long i, long M);

// inner ⊆ outer as subspaces of functions on Y
bool pair_contains(const LatticePair& outer, const LatticePair& inner);

class QuotientSpace {
 public:
  static QuotientSpace make(const FieldSpec& F, LatticePair p);

  const FieldSpec& field() const { return *F_; }
  long n() const { return n_; }
  const LatticePair& pair() const { return pair_; }
  const std::vector<long>& supp() const { return pair_.supp; }
  const std::vector<long>& inv() const { return pair_.inv; }
  long window(long j) const { return pair_.inv[j] - pair_.supp[j]; }
  long long dim() const { return dim_; }
  long long per_coord(long j) const { return percoord_[j]; }

  long long coord(long long idx, long j) const { return (idx / radix_[j]) % percoord_[j]; }
  long long index_from_coords(const std::vector<long long>& c) const;
  Elem rep_coord(long long idx, long j, long pad) const;
  std::vector<Elem> rep(long long idx, long pad) const;
  long long neg_index(long long idx) const;
  bool self_negative(long long idx) const { return neg_index(idx) == idx; }

  // even/odd dimensions: (dim + s)/2 and (dim - s)/2, s = #self-negative
  std::pair<long long, long long> parity_dims() const;

  LatticePair fourier_dual_pair() const;
  bool operator==(const QuotientSpace& o) const { return pair_ == o.pair_; }

 private:
  const FieldSpec* F_ = nullptr;
  long n_ = 0;
  LatticePair pair_;
  long long dim_ = 1;
  std::vector<long long> percoord_, radix_;
  std::vector<std::vector<long long>> neg_tab_;  // per coordinate
};

// dense projective operator between two quotient spaces
struct WeilOperator {
  QuotientSpace domain, codomain;
  long order = 1;              // cyclotomic order of the entries
  std::vector<Cyclotomic> m;   // row-major, codomain.dim() x domain.dim()
  bool projective = true;
  std::string label;

  Cyclotomic& at(long long r, long long c) { return m[r * domain.dim() + c]; }
  const Cyclotomic& at(long long r, long long c) const { return m[r * domain.dim() + c]; }
  CVec apply(const CVec& v) const;
};

WeilOperator op_compose(const WeilOperator& a, const WeilOperator& b);
WeilOperator op_scale_normalized(const WeilOperator& a);  // first nonzero entry -> 1
bool op_equal(const WeilOperator& a, const WeilOperator& b);
bool op_equal_projective(const WeilOperator& a, const WeilOperator& b);

// indicator-basis operators
WeilOperator fourier_op(const QuotientSpace& s);
WeilOperator negation_op(const QuotientSpace& s);
// a is a symmetric n x n matrix of elements, row-major
WeilOperator op_sym(const QuotientSpace& s, const std::vector<Elem>& a);
WeilOperator op_torus(const QuotientSpace& s, const std::vector<Elem>& h);
WeilOperator op_transvection(const QuotientSpace& s, long j, long k, const Elem& t);

// dispatch on the construction label of a symplectic generator
WeilOperator op_generator(const SpLabel& lab, const QuotientSpace& s);

// function on the small quotient re-read on the big one (injective)
WeilOperator embed(const QuotientSpace& small, const QuotientSpace& big);

// restriction of an endomorphism to the span of the given vectors
struct Restriction {
  bool invariant = false;
  std::vector<Cyclotomic> matrix;  // k x k, row-major, valid when invariant
};
Restriction restrict_op(const WeilOperator& op, const std::vector<CVec>& basis);

struct ParityBasis {
  std::vector<CVec> even, odd;
  std::vector<long long> even_rep, odd_rep;  // defining coset of each vector
};
ParityBasis basis_pm(const QuotientSpace& s, long order = 1);

// ---------------------------------------------------------------------------
// classified generator actions: exact answers without dense matrices

struct GeneratorAction {
  enum Kind { identity, multiplier, transvection, torus_perm, conj_multiplier, eta_fourier };
  struct SymTerm {
    long j, k;  // j == k: coef * y_j^2 ; j < k: 2 coef * y_j y_k
    Elem coef;
  };
  Kind kind = identity;
  std::vector<SymTerm> sym;  // multiplier (on the space) or conj_multiplier (on the dual)
  long tj = 0, tk = 0;
  Elem t;
  std::vector<Elem> h;
  long eta_i = 0;
  std::string label;
};

GeneratorAction classify_generator(const SpLabel& lab, const QuotientSpace& space);
// well-definedness of the action on the space itself; throws when the
// generator does not act (a theorem-falsifying event for bundle generators)
void check_acts(const GeneratorAction& act, const QuotientSpace& space);
// exact invariance of the sub-pair under the action (factored sweeps;
// Fourier-side transport for the conjugated kinds)
bool preserves_stage(const GeneratorAction& act, const QuotientSpace& ambient,
                     const LatticePair& stage);
WeilOperator action_to_dense(const GeneratorAction& act, const QuotientSpace& space);

// cyclotomic order large enough for every entry produced on this space at
// unipotent depth D (used to fix the common order of a bundle up front)
long bundle_order(const FieldSpec& F, const QuotientSpace& s, long D);

}  // namespace weil
