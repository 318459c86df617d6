#include "weil/schrodinger.hpp"

#include <algorithm>
#include <sstream>

namespace weil {

namespace {
constexpr long kRepPad = 12;  // extra modulus on coset representatives
constexpr long long kDenseLimit = 2048;

std::string pair_str(const std::vector<long>& supp, const std::vector<long>& inv) {
  std::ostringstream os;
  os << "S(";
  for (size_t j = 0; j < supp.size(); ++j) os << (j ? "," : "") << supp[j];
  os << "|";
  for (size_t j = 0; j < inv.size(); ++j) os << (j ? "," : "") << inv[j];
  os << ")";
  return os.str();
}
}  // namespace

LatticePair s_pair(const FieldSpec& F, long n, long i, long m) {
  LatticePair p;
  p.supp.assign(n, -m);
  p.inv.assign(n, 0);
  for (long j = 0; j < n; ++j) p.inv[j] = F.e() + m + (j < i ? 1 : 0);
  std::ostringstream os;
  os << "S[" << i << "," << m << "]";
  p.label = os.str();
  return p;
}

LatticePair s_prime_pair(const FieldSpec& F, long n, long i, long m) {
  LatticePair p;
  p.supp.assign(n, -m);
  for (long j = 0; j < i; ++j) p.supp[j] = -m + 1;
  p.inv.assign(n, F.e() + m);
  std::ostringstream os;
  os << "S'[" << i << "," << m << "]";
  p.label = os.str();
  return p;
}

std::vector<LatticePair> filtration_chain(const FieldSpec& F, long n, long i, long M) {
  std::vector<LatticePair> chain;
  auto push = [&](LatticePair p) {
    if (chain.empty() || !(chain.back() == p)) chain.push_back(std::move(p));
  };
  push(s_pair(F, n, i, 0));
  for (long m = 1; m <= M; ++m) {
    push(s_prime_pair(F, n, i, m));
    push(s_pair(F, n, i, m));
  }
  return chain;
}

bool pair_contains(const LatticePair& outer, const LatticePair& inner) {
  for (size_t j = 0; j < outer.supp.size(); ++j) {
    if (inner.supp[j] < outer.supp[j]) return false;
    if (inner.inv[j] > outer.inv[j]) return false;
  }
  return true;
}

QuotientSpace QuotientSpace::make(const FieldSpec& F, LatticePair p) {
  QuotientSpace s;
  s.F_ = &F;
  s.n_ = (long)p.supp.size();
  for (long j = 0; j < s.n_; ++j)
    if (p.supp[j] > p.inv[j]) fail("quotient space: supp exceeds inv (zero space)");
  if (p.label.empty()) p.label = pair_str(p.supp, p.inv);
  s.pair_ = std::move(p);
  s.percoord_.assign(s.n_, 1);
  s.radix_.assign(s.n_, 1);
  s.dim_ = 1;
  for (long j = 0; j < s.n_; ++j) {
    long w = s.pair_.inv[j] - s.pair_.supp[j];
    long long pc = 1;
    for (long k = 0; k < w; ++k) pc *= F.q();
    s.percoord_[j] = pc;
    s.radix_[j] = s.dim_;
    s.dim_ *= pc;
  }
  s.neg_tab_.assign(s.n_, {});
  for (long j = 0; j < s.n_; ++j) {
    auto& tab = s.neg_tab_[j];
    tab.assign(s.percoord_[j], 0);
    for (long long c = 0; c < s.percoord_[j]; ++c) {
      Elem x = F.rep(s.pair_.supp[j], s.pair_.inv[j], c, 0);
      tab[c] = F.index_in_window(F.neg(x), s.pair_.supp[j], s.pair_.inv[j]);
    }
  }
  return s;
}

long long QuotientSpace::index_from_coords(const std::vector<long long>& c) const {
  long long idx = 0;
  for (long j = 0; j < n_; ++j) idx += c[j] * radix_[j];
  return idx;
}

Elem QuotientSpace::rep_coord(long long idx, long j, long pad) const {
  return F_->rep(pair_.supp[j], pair_.inv[j], coord(idx, j), pad);
}

std::vector<Elem> QuotientSpace::rep(long long idx, long pad) const {
  std::vector<Elem> out;
  out.reserve(n_);
  for (long j = 0; j < n_; ++j) out.push_back(rep_coord(idx, j, pad));
  return out;
}

long long QuotientSpace::neg_index(long long idx) const {
  std::vector<long long> c(n_);
  for (long j = 0; j < n_; ++j) c[j] = neg_tab_[j][coord(idx, j)];
  return index_from_coords(c);
}

std::pair<long long, long long> QuotientSpace::parity_dims() const {
  long long self = 1;
  for (long j = 0; j < n_; ++j) {
    long long cnt = 0;
    for (long long c = 0; c < percoord_[j]; ++c)
      if (neg_tab_[j][c] == c) ++cnt;
    self *= cnt;
  }
  return {(dim_ + self) / 2, (dim_ - self) / 2};
}

LatticePair QuotientSpace::fourier_dual_pair() const {
  LatticePair p;
  long e = F_->e();
  p.supp.assign(n_, 0);
  p.inv.assign(n_, 0);
  for (long j = 0; j < n_; ++j) {
    p.supp[j] = e - pair_.inv[j];
    p.inv[j] = e - pair_.supp[j];
  }
  p.label = pair_.label + "^";
  return p;
}

// ---------------------------------------------------------------------------
// dense operators

CVec WeilOperator::apply(const CVec& v) const {
  CVec out(codomain.dim(), Cyclotomic::zero());
  for (long long r = 0; r < codomain.dim(); ++r) {
    Cyclotomic acc = Cyclotomic::zero();
    for (long long c = 0; c < domain.dim(); ++c) {
      const Cyclotomic& x = at(r, c);
      if (x.is_zero() || v[c].is_zero()) continue;
      acc = acc + x * v[c];
    }
    out[r] = acc;
  }
  return out;
}

WeilOperator op_compose(const WeilOperator& a, const WeilOperator& b) {
  if (!(b.codomain == a.domain)) fail("compose: domain/codomain mismatch");
  WeilOperator r;
  r.domain = b.domain;
  r.codomain = a.codomain;
  r.order = (long)lcm_ll(a.order, b.order);
  r.label = a.label + "*" + b.label;
  r.m.assign(r.codomain.dim() * r.domain.dim(), Cyclotomic::zero());
  for (long long i = 0; i < a.codomain.dim(); ++i)
    for (long long k = 0; k < a.domain.dim(); ++k) {
      const Cyclotomic& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (long long j = 0; j < b.domain.dim(); ++j) {
        const Cyclotomic& y = b.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + x * y;
      }
    }
  return r;
}

WeilOperator op_scale_normalized(const WeilOperator& a) {
  WeilOperator r = a;
  for (auto& x : r.m)
    if (!x.is_zero()) {
      Cyclotomic inv = x.inverse();
      for (auto& y : r.m)
        if (!y.is_zero()) y = y * inv;
      break;
    }
  return r;
}

bool op_equal(const WeilOperator& a, const WeilOperator& b) {
  if (!(a.domain == b.domain) || !(a.codomain == b.codomain)) return false;
  for (size_t k = 0; k < a.m.size(); ++k)
    if (a.m[k] != b.m[k]) return false;
  return true;
}

bool op_equal_projective(const WeilOperator& a, const WeilOperator& b) {
  return op_equal(op_scale_normalized(a), op_scale_normalized(b));
}

namespace {

void check_dense(const QuotientSpace& s) {
  if (s.dim() > kDenseLimit) fail("space too large for a dense operator");
}

long fourier_order(const QuotientSpace& s) {
  const FieldSpec& F = s.field();
  long vmin = 0;
  for (long j = 0; j < s.n(); ++j)
    vmin = std::min(vmin, 2 * F.e() - s.window(j));
  return (long)lcm_ll(2, F.psi_denominator_bound(vmin));
}

GeneratorAction::SymTerm sym_term(long j, long k, Elem c) {
  GeneratorAction::SymTerm t;
  t.j = std::min(j, k);
  t.k = std::max(j, k);
  t.coef = std::move(c);
  return t;
}

long val_or_bound(const Elem& x) {
  auto v = x.valuation();
  return v ? *v : x.modulus();
}

// psi(sum of symbol terms) at the given per-coordinate representatives;
// coord_slot maps a coordinate index to its position in reps
RootOfUnity symbol_value(const FieldSpec& F, const GeneratorAction& act,
                         const std::vector<Elem>& reps, const std::vector<long>& coord_slot) {
  if (act.sym.empty()) return RootOfUnity::of(0, 1);
  Elem two = F.from_integer(2, 2 * F.e() + kRepPad + 8);
  Elem acc;
  bool first = true;
  for (const auto& tm : act.sym) {
    const Elem& yj = reps[coord_slot[tm.j]];
    const Elem& yk = reps[coord_slot[tm.k]];
    Elem term = F.mul(tm.coef, F.mul(yj, yk));
    if (tm.j != tm.k) term = F.mul(two, term);
    acc = first ? term : F.add(acc, term);
    first = false;
  }
  return F.psi(acc);
}

long multiplier_order(const FieldSpec& F, const QuotientSpace& s,
                      const std::vector<GeneratorAction::SymTerm>& sym) {
  long long N = 2;
  for (const auto& tm : sym) {
    long v = val_or_bound(tm.coef) + s.supp()[tm.j] + s.supp()[tm.k] +
             (tm.j != tm.k ? F.e() : 0);
    N = lcm_ll(N, F.psi_denominator_bound(v));
  }
  return (long)N;
}

}  // namespace

WeilOperator fourier_op(const QuotientSpace& s) {
  check_dense(s);
  const FieldSpec& F = s.field();
  QuotientSpace dual = QuotientSpace::make(F, s.fourier_dual_pair());
  check_dense(dual);
  WeilOperator op;
  op.domain = s;
  op.codomain = dual;
  op.order = fourier_order(s);
  op.label = "F";
  op.m.assign(dual.dim() * s.dim(), Cyclotomic::zero());
  Elem two = F.from_integer(2, 2 * F.e() + kRepPad + 8);
  for (long long u = 0; u < dual.dim(); ++u) {
    auto urep = dual.rep(u, kRepPad);
    for (long long v = 0; v < s.dim(); ++v) {
      Elem acc = F.mul(two, F.mul(s.rep_coord(v, 0, kRepPad), urep[0]));
      for (long j = 1; j < s.n(); ++j)
        acc = F.add(acc, F.mul(two, F.mul(s.rep_coord(v, j, kRepPad), urep[j])));
      op.at(u, v) = Cyclotomic::from_root(F.psi(acc), op.order);
    }
  }
  return op;
}

WeilOperator negation_op(const QuotientSpace& s) {
  check_dense(s);
  WeilOperator op;
  op.domain = s;
  op.codomain = s;
  op.order = 1;
  op.label = "neg";
  op.m.assign(s.dim() * s.dim(), Cyclotomic::zero());
  for (long long y = 0; y < s.dim(); ++y)
    op.at(y, s.neg_index(y)) = Cyclotomic::integer(1);
  return op;
}

WeilOperator op_sym(const QuotientSpace& s, const std::vector<Elem>& a) {
  long n = s.n();
  GeneratorAction act;
  act.kind = GeneratorAction::multiplier;
  for (long j = 0; j < n; ++j)
    for (long k = j; k < n; ++k) {
      const Elem& c = a[j * n + k];
      if (c.zero_on_window()) continue;
      act.sym.push_back(sym_term(j, k, c));
    }
  act.label = "sym";
  return action_to_dense(act, s);
}

WeilOperator op_torus(const QuotientSpace& s, const std::vector<Elem>& h) {
  const FieldSpec& F = s.field();
  check_dense(s);
  LatticePair cop;
  cop.supp = s.supp();
  cop.inv = s.inv();
  for (long j = 0; j < s.n(); ++j) {
    auto v = h[j].valuation();
    if (!v) fail("op_torus: entry not invertible at this window");
    cop.supp[j] -= *v;
    cop.inv[j] -= *v;
  }
  QuotientSpace codomain = QuotientSpace::make(F, cop);
  WeilOperator op;
  op.domain = s;
  op.codomain = codomain;
  op.order = 2;
  op.label = "h";
  op.m.assign(codomain.dim() * s.dim(), Cyclotomic::zero());
  for (long long y = 0; y < codomain.dim(); ++y) {
    // [h phi](y) = phi(h_1 y_1, ..., h_n y_n)
    std::vector<long long> c(s.n());
    for (long j = 0; j < s.n(); ++j) {
      Elem prod = F.mul(h[j], codomain.rep_coord(y, j, kRepPad));
      c[j] = F.index_in_window(prod, s.supp()[j], s.inv()[j]);
    }
    op.at(y, s.index_from_coords(c)) = Cyclotomic::integer(1);
  }
  return op;
}

WeilOperator op_transvection(const QuotientSpace& s, long j, long k, const Elem& t) {
  GeneratorAction act;
  act.kind = GeneratorAction::transvection;
  act.tj = j;
  act.tk = k;
  act.t = t;
  act.label = "transvection";
  return action_to_dense(act, s);
}

GeneratorAction classify_generator(const SpLabel& lab, const QuotientSpace& space) {
  const FieldSpec& F = space.field();
  long n = space.n();
  GeneratorAction act;
  act.label = lab.str();
  switch (lab.kind) {
    case SpLabel::identity:
      act.kind = GeneratorAction::identity;
      return act;
    case SpLabel::torus:
      act.kind = GeneratorAction::torus_perm;
      act.h = lab.h;
      return act;
    case SpLabel::eta_w:
      act.kind = GeneratorAction::eta_fourier;
      act.eta_i = lab.i;
      return act;
    case SpLabel::root_unipotent:
      break;
  }
  const Root& r = lab.root;
  long pos = -1, neg = -1, lng = -1;
  for (long j = 0; j < n; ++j) {
    if (r.c[j] == 1) pos = j;
    if (r.c[j] == -1) neg = j;
    if (r.c[j] == 2 || r.c[j] == -2) lng = j;
  }
  if (lng >= 0 && r.c[lng] > 0) {
    act.kind = GeneratorAction::multiplier;
    act.sym.push_back(sym_term(lng, lng, lab.t));
  } else if (lng >= 0) {
    // x_{-2e_j}(t) = w x_{2e_j}(-t) w^{-1}
    act.kind = GeneratorAction::conj_multiplier;
    act.sym.push_back(sym_term(lng, lng, F.neg(lab.t)));
  } else if (pos >= 0 && neg >= 0) {
    // x_{e_j - e_k}(t): phi(y + t y_j f_k)
    act.kind = GeneratorAction::transvection;
    act.tj = pos;
    act.tk = neg;
    act.t = lab.t;
  } else {
    long i = -1, j = -1;
    for (long k2 = 0; k2 < n; ++k2)
      if (r.c[k2] != 0) {
        if (i < 0)
          i = k2;
        else
          j = k2;
      }
    if (r.c[i] > 0) {
      act.kind = GeneratorAction::multiplier;
      act.sym.push_back(sym_term(i, j, lab.t));
    } else {
      act.kind = GeneratorAction::conj_multiplier;
      act.sym.push_back(sym_term(i, j, F.neg(lab.t)));
    }
  }
  return act;
}

namespace {

// psi(y^T a y) constant on the inv-cosets within the supp lattice
void check_multiplier(const FieldSpec& F, const std::vector<long>& supp,
                      const std::vector<long>& inv,
                      const std::vector<GeneratorAction::SymTerm>& sym,
                      const std::string& label) {
  long twoe = 2 * F.e();
  for (const auto& tm : sym) {
    long v = val_or_bound(tm.coef);
    bool visible = tm.coef.valuation().has_value();
    long j = tm.j, k = tm.k;
    bool ok;
    if (j == k) {
      // psi(t(y+z)^2) = psi(ty^2) needs 2tyz and tz^2 in 4o
      ok = (F.e() + v + supp[j] + inv[j] >= twoe) && (v + 2 * inv[j] >= twoe);
    } else {
      long cross = std::min(std::min(supp[j] + inv[k], supp[k] + inv[j]), inv[j] + inv[k]);
      ok = (F.e() + v + cross >= twoe);
    }
    if (!ok) {
      if (visible) fail("multiplier " + label + " is not well-defined on this space");
      fail_precision("multiplier " + label + ": window cannot certify well-definedness");
    }
  }
}

}  // namespace

void check_acts(const GeneratorAction& act, const QuotientSpace& space) {
  const FieldSpec& F = space.field();
  switch (act.kind) {
    case GeneratorAction::identity:
      return;
    case GeneratorAction::multiplier:
      check_multiplier(F, space.supp(), space.inv(), act.sym, act.label);
      return;
    case GeneratorAction::conj_multiplier: {
      auto dual = space.fourier_dual_pair();
      check_multiplier(F, dual.supp, dual.inv, act.sym, act.label);
      return;
    }
    case GeneratorAction::transvection: {
      long v = val_or_bound(act.t);
      bool visible = act.t.valuation().has_value();
      bool ok = (v + space.supp()[act.tj] >= space.supp()[act.tk]) &&
                (v + space.inv()[act.tj] >= space.inv()[act.tk]);
      if (!ok) {
        if (visible) fail("transvection " + act.label + " does not preserve this space");
        fail_precision("transvection " + act.label + ": window cannot certify action");
      }
      return;
    }
    case GeneratorAction::torus_perm: {
      for (const auto& hj : act.h) {
        auto v = hj.valuation();
        if (!v) fail_precision("torus " + act.label + ": valuation not visible");
        if (*v != 0) fail("torus " + act.label + " shifts the space parameters");
      }
      return;
    }
    case GeneratorAction::eta_fourier: {
      // torus(eta_i) o F must land back on the same parameters
      long e = F.e();
      for (long j = 0; j < space.n(); ++j) {
        long v = (j < act.eta_i) ? -1 : 0;
        if (e - space.inv()[j] - v != space.supp()[j] ||
            e - space.supp()[j] - v != space.inv()[j])
          fail("eta_w does not endomorphize " + space.pair().label);
      }
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// stage invariance by factored exact sweeps

namespace {

// per-coordinate stage data inside the ambient window
struct CoordStage {
  std::vector<char> sup;       // off the stage support?
  std::vector<long long> cls;  // invariance class (valid where sup)
  std::vector<long long> rep;  // index of the class representative
};

CoordStage coord_stage(const QuotientSpace& amb, const LatticePair& st, long j) {
  const FieldSpec& F = amb.field();
  long a0 = amb.supp()[j];
  long lowdrop = st.supp[j] - a0;
  long clsfrom = st.inv[j] - a0;
  long long pc = amb.per_coord(j);
  CoordStage cs;
  cs.sup.assign(pc, 0);
  cs.cls.assign(pc, 0);
  cs.rep.assign(pc, 0);
  long long qlow = 1;
  for (long k = 0; k < clsfrom; ++k) qlow *= F.q();
  for (long long c = 0; c < pc; ++c) {
    long long x = c;
    bool ok = true;
    for (long k = 0; k < lowdrop; ++k) {
      if (x % F.q()) ok = false;
      x /= F.q();
    }
    cs.sup[c] = ok ? 1 : 0;
    cs.cls[c] = c / qlow;
    cs.rep[c] = (c / qlow) * qlow;
  }
  return cs;
}

bool stage_within(const QuotientSpace& amb, const LatticePair& st) {
  for (long j = 0; j < amb.n(); ++j) {
    if (st.supp[j] < amb.supp()[j]) return false;
    if (st.inv[j] > amb.inv()[j]) return false;
    if (st.supp[j] > st.inv[j]) return false;
  }
  return true;
}

bool multiplier_preserves(const FieldSpec& F, const QuotientSpace& amb,
                          const LatticePair& st, const GeneratorAction& act) {
  std::vector<long> coords;
  for (const auto& tm : act.sym) {
    coords.push_back(tm.j);
    coords.push_back(tm.k);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  std::vector<long> slot(amb.n(), -1);
  for (size_t s = 0; s < coords.size(); ++s) slot[coords[s]] = (long)s;
  std::vector<CoordStage> cs;
  for (long j : coords) cs.push_back(coord_stage(amb, st, j));
  long long total = 1;
  for (long j : coords) total *= amb.per_coord(j);
  std::vector<long long> idx(coords.size()), repidx(coords.size());
  std::vector<Elem> ra(coords.size()), rb(coords.size());
  for (long long t = 0; t < total; ++t) {
    long long x = t;
    bool sup = true, same = true;
    for (size_t s = 0; s < coords.size(); ++s) {
      long long c = x % amb.per_coord(coords[s]);
      x /= amb.per_coord(coords[s]);
      idx[s] = c;
      if (!cs[s].sup[c]) sup = false;
      repidx[s] = cs[s].rep[c];
      if (repidx[s] != c) same = false;
    }
    if (!sup || same) continue;
    for (size_t s = 0; s < coords.size(); ++s) {
      ra[s] = F.rep(amb.supp()[coords[s]], amb.inv()[coords[s]], idx[s], kRepPad);
      rb[s] = F.rep(amb.supp()[coords[s]], amb.inv()[coords[s]], repidx[s], kRepPad);
    }
    if (symbol_value(F, act, ra, slot) != symbol_value(F, act, rb, slot)) return false;
  }
  return true;
}

struct MappedClass {
  bool off;
  long long cls;
  bool operator!=(const MappedClass& o) const {
    return off != o.off || (!off && cls != o.cls);
  }
};

}  // namespace

bool preserves_stage(const GeneratorAction& act, const QuotientSpace& amb,
                     const LatticePair& st) {
  const FieldSpec& F = amb.field();
  if (!stage_within(amb, st)) fail("stage does not sit inside the ambient space");
  switch (act.kind) {
    case GeneratorAction::identity:
      return true;
    case GeneratorAction::multiplier:
      return multiplier_preserves(F, amb, st, act);
    case GeneratorAction::conj_multiplier: {
      // transported across F: the image of stage(A,B) is stage(e-B, e-A)
      QuotientSpace dual = QuotientSpace::make(F, amb.fourier_dual_pair());
      LatticePair dst;
      dst.supp.resize(amb.n());
      dst.inv.resize(amb.n());
      for (long j = 0; j < amb.n(); ++j) {
        dst.supp[j] = F.e() - st.inv[j];
        dst.inv[j] = F.e() - st.supp[j];
      }
      dst.label = st.label + "^";
      GeneratorAction m = act;
      m.kind = GeneratorAction::multiplier;
      return multiplier_preserves(F, dual, dst, m);
    }
    case GeneratorAction::eta_fourier: {
      LatticePair img;
      img.supp.resize(amb.n());
      img.inv.resize(amb.n());
      for (long j = 0; j < amb.n(); ++j) {
        long v = (j < act.eta_i) ? -1 : 0;
        img.supp[j] = F.e() - st.inv[j] - v;
        img.inv[j] = F.e() - st.supp[j] - v;
      }
      return pair_contains(st, img);
    }
    case GeneratorAction::torus_perm: {
      for (long j = 0; j < amb.n(); ++j) {
        CoordStage cs = coord_stage(amb, st, j);
        auto mapped = [&](long long c) -> MappedClass {
          Elem prod = F.mul(act.h[j], F.rep(amb.supp()[j], amb.inv()[j], c, kRepPad));
          long long c2 = F.index_in_window(prod, amb.supp()[j], amb.inv()[j]);
          if (!cs.sup[c2]) return {true, 0};
          return {false, cs.cls[c2]};
        };
        for (long long c = 0; c < amb.per_coord(j); ++c) {
          MappedClass img = mapped(c);
          if (!cs.sup[c]) {
            if (!img.off) return false;
            continue;
          }
          if (img != mapped(cs.rep[c])) return false;
        }
      }
      return true;
    }
    case GeneratorAction::transvection: {
      long j = act.tj, k = act.tk;
      CoordStage csj = coord_stage(amb, st, j), csk = coord_stage(amb, st, k);
      long long pcj = amb.per_coord(j), pck = amb.per_coord(k);
      std::vector<Elem> shift(pcj);
      for (long long cj = 0; cj < pcj; ++cj)
        shift[cj] = F.mul(act.t, F.rep(amb.supp()[j], amb.inv()[j], cj, kRepPad));
      auto image_k = [&](long long cj, long long ck) -> long long {
        Elem sum = F.add(F.rep(amb.supp()[k], amb.inv()[k], ck, kRepPad), shift[cj]);
        return F.index_in_window(sum, amb.supp()[k], amb.inv()[k]);
      };
      for (long long cj = 0; cj < pcj; ++cj)
        for (long long ck = 0; ck < pck; ++ck) {
          long long ik = image_k(cj, ck);
          bool src_sup = csj.sup[cj] && csk.sup[ck];
          bool img_sup = csj.sup[cj] && csk.sup[ik];
          if (!src_sup) {
            // off-support points must stay off support
            if (img_sup) return false;
            continue;
          }
          long long ik_rep = image_k(csj.rep[cj], csk.rep[ck]);
          MappedClass g{!csk.sup[ik], csk.sup[ik] ? csk.cls[ik] : 0};
          MappedClass gr{!csk.sup[ik_rep], csk.sup[ik_rep] ? csk.cls[ik_rep] : 0};
          if (g != gr) return false;
        }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

WeilOperator action_to_dense(const GeneratorAction& act, const QuotientSpace& space) {
  const FieldSpec& F = space.field();
  check_dense(space);
  check_acts(act, space);
  WeilOperator op;
  op.domain = space;
  op.codomain = space;
  op.label = act.label;
  long long dim = space.dim();
  switch (act.kind) {
    case GeneratorAction::identity: {
      op.order = 1;
      op.m.assign(dim * dim, Cyclotomic::zero());
      for (long long y = 0; y < dim; ++y) op.at(y, y) = Cyclotomic::integer(1);
      return op;
    }
    case GeneratorAction::multiplier: {
      op.order = multiplier_order(F, space, act.sym);
      op.m.assign(dim * dim, Cyclotomic::zero());
      std::vector<long> slot(space.n());
      for (long j = 0; j < space.n(); ++j) slot[j] = j;
      for (long long y = 0; y < dim; ++y) {
        auto reps = space.rep(y, kRepPad);
        op.at(y, y) = Cyclotomic::from_root(symbol_value(F, act, reps, slot), op.order);
      }
      return op;
    }
    case GeneratorAction::transvection: {
      op.order = 2;
      op.m.assign(dim * dim, Cyclotomic::zero());
      long j = act.tj, k = act.tk;
      for (long long y = 0; y < dim; ++y) {
        Elem shifted = F.add(space.rep_coord(y, k, kRepPad),
                             F.mul(act.t, space.rep_coord(y, j, kRepPad)));
        std::vector<long long> c(space.n());
        for (long jj = 0; jj < space.n(); ++jj) c[jj] = space.coord(y, jj);
        c[k] = F.index_in_window(shifted, space.supp()[k], space.inv()[k]);
        op.at(y, space.index_from_coords(c)) = Cyclotomic::integer(1);
      }
      return op;
    }
    case GeneratorAction::torus_perm: {
      auto full = op_torus(space, act.h);
      full.label = act.label;
      return full;
    }
    case GeneratorAction::conj_multiplier: {
      // Neg o F_back o M o F: entry(y, v) = sum_u psi(2 u (v - y)) m(u)
      QuotientSpace dual = QuotientSpace::make(F, space.fourier_dual_pair());
      check_dense(dual);
      long order = (long)lcm_ll(fourier_order(space), multiplier_order(F, dual, act.sym));
      op.order = order;
      op.m.assign(dim * dim, Cyclotomic::zero());
      std::vector<long> slot(space.n());
      for (long j = 0; j < space.n(); ++j) slot[j] = j;
      Elem two = F.from_integer(2, 2 * F.e() + kRepPad + 8);
      std::vector<RootOfUnity> mult(dual.dim());
      for (long long u = 0; u < dual.dim(); ++u) {
        auto ureps = dual.rep(u, kRepPad);
        mult[u] = symbol_value(F, act, ureps, slot);
      }
      for (long long y = 0; y < dim; ++y) {
        std::vector<Elem> ny;
        for (long j = 0; j < space.n(); ++j)
          ny.push_back(F.neg(space.rep_coord(y, j, kRepPad)));
        for (long long v = 0; v < dim; ++v) {
          std::vector<Elem> diff;
          for (long j = 0; j < space.n(); ++j)
            diff.push_back(F.add(ny[j], space.rep_coord(v, j, kRepPad)));
          RootSum acc(order);
          for (long long u = 0; u < dual.dim(); ++u) {
            Elem ph = F.mul(two, F.mul(dual.rep_coord(u, 0, kRepPad), diff[0]));
            for (long j = 1; j < space.n(); ++j)
              ph = F.add(ph, F.mul(two, F.mul(dual.rep_coord(u, j, kRepPad), diff[j])));
            acc.add(F.psi(ph) * mult[u]);
          }
          op.at(y, v) = acc.value();
        }
      }
      return op;
    }
    case GeneratorAction::eta_fourier: {
      // entry(y, v) = psi(2 (eta y) . v), eta = (pi^-1 x i, 1 x (n-i))
      long vmin = 0;
      for (long j = 0; j < space.n(); ++j)
        vmin = std::min(vmin, 2 * F.e() - space.window(j) - (j < act.eta_i ? 1 : 0));
      op.order = (long)lcm_ll(2, F.psi_denominator_bound(vmin));
      op.m.assign(dim * dim, Cyclotomic::zero());
      Elem two = F.from_integer(2, 2 * F.e() + kRepPad + 8);
      for (long long y = 0; y < dim; ++y) {
        std::vector<Elem> ey;
        for (long j = 0; j < space.n(); ++j) {
          Elem r = space.rep_coord(y, j, kRepPad);
          if (j < act.eta_i) r = F.mul(F.uniformizer_pow(-1, kRepPad + 4), r);
          ey.push_back(r);
        }
        for (long long v = 0; v < dim; ++v) {
          Elem acc = F.mul(two, F.mul(ey[0], space.rep_coord(v, 0, kRepPad)));
          for (long j = 1; j < space.n(); ++j)
            acc = F.add(acc, F.mul(two, F.mul(ey[j], space.rep_coord(v, j, kRepPad))));
          op.at(y, v) = Cyclotomic::from_root(F.psi(acc), op.order);
        }
      }
      return op;
    }
  }
  fail("unknown generator action");
}

WeilOperator op_generator(const SpLabel& lab, const QuotientSpace& s) {
  return action_to_dense(classify_generator(lab, s), s);
}

WeilOperator embed(const QuotientSpace& small, const QuotientSpace& big) {
  const FieldSpec& F = small.field();
  for (long j = 0; j < small.n(); ++j)
    if (big.supp()[j] > small.supp()[j] || big.inv()[j] < small.inv()[j])
      fail("embed: not a filtration inclusion");
  check_dense(big);
  WeilOperator op;
  op.domain = small;
  op.codomain = big;
  op.order = 1;
  op.label = "embed";
  op.m.assign(big.dim() * small.dim(), Cyclotomic::zero());
  for (long long Y = 0; Y < big.dim(); ++Y) {
    bool supported = true;
    std::vector<long long> c(small.n());
    for (long j = 0; j < small.n() && supported; ++j) {
      long lowdrop = small.supp()[j] - big.supp()[j];
      long long x = big.coord(Y, j);
      for (long k2 = 0; k2 < lowdrop; ++k2) {
        if (x % F.q()) supported = false;
        x /= F.q();
      }
      if (!supported) break;
      Elem r = big.rep_coord(Y, j, kRepPad);
      c[j] = F.index_in_window(r, small.supp()[j], small.inv()[j]);
    }
    if (supported) op.at(Y, small.index_from_coords(c)) = Cyclotomic::integer(1);
  }
  return op;
}

Restriction restrict_op(const WeilOperator& op, const std::vector<CVec>& basis) {
  Restriction out;
  long k = (long)basis.size();
  CycloSpan span((long)op.domain.dim());
  span.track_coords(true);
  for (const auto& v : basis) span.insert(v);
  std::vector<CVec> cols(k);
  for (long c = 0; c < k; ++c) {
    CVec img = op.apply(basis[c]);
    if (!span.solve(img, &cols[c])) {
      out.invariant = false;
      return out;
    }
  }
  out.invariant = true;
  out.matrix.assign(k * k, Cyclotomic::zero());
  for (long c = 0; c < k; ++c)
    for (long r = 0; r < k && r < (long)cols[c].size(); ++r)
      out.matrix[r * k + c] = cols[c][r];
  return out;
}

ParityBasis basis_pm(const QuotientSpace& s, long order) {
  ParityBasis out;
  for (long long x = 0; x < s.dim(); ++x) {
    long long nx = s.neg_index(x);
    if (nx == x) {
      CVec v(s.dim(), Cyclotomic::zero());
      v[x] = Cyclotomic::integer(1, order);
      out.even.push_back(std::move(v));
      out.even_rep.push_back(x);
    } else if (x < nx) {
      CVec vp(s.dim(), Cyclotomic::zero());
      vp[x] = Cyclotomic::integer(1, order);
      vp[nx] = Cyclotomic::integer(1, order);
      out.even.push_back(std::move(vp));
      out.even_rep.push_back(x);
      CVec vm(s.dim(), Cyclotomic::zero());
      vm[x] = Cyclotomic::integer(1, order);
      vm[nx] = Cyclotomic::integer(-1, order);
      out.odd.push_back(std::move(vm));
      out.odd_rep.push_back(x);
    }
  }
  return out;
}

long bundle_order(const FieldSpec& F, const QuotientSpace& s, long D) {
  (void)D;  // unipotent parameters have valuation >= 0; depth does not deepen values
  long e = F.e();
  long vmin = 0;
  for (long j = 0; j < s.n(); ++j)
    for (long k = 0; k < s.n(); ++k) {
      vmin = std::min(vmin, s.supp()[j] + s.supp()[k]);
      vmin = std::min(vmin, (e - s.inv()[j]) + (e - s.inv()[k]));
    }
  for (long j = 0; j < s.n(); ++j)
    vmin = std::min(vmin, 2 * e - s.window(j) - 1);
  return (long)lcm_ll(2, F.psi_denominator_bound(vmin));
}

}  // namespace weil
