#include "bp/bp_lattice.hpp"

#include <algorithm>
#include <map>

#include "bp/local_units.hpp"

namespace bp {

namespace {

ZMatrix times(const ZMatrix& a, const mpz_class& c) {
  ZMatrix r = a;
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) *= c;
  return r;
}

PLattice zero_column(long p, int n, int precision) {
  PLattice z;
  z.p = p;
  z.gens = ZMatrix::Zero(n, 1);
  z.precision = precision;
  return z;
}

PLattice add(const PLattice& a, const PLattice& b) {
  const int s = std::max(a.shift, b.shift);
  PLattice x = rescale(a, s), y = rescale(b, s);
  x.gens = reduce(x.gens + y.gens, pow_ui(a.p, std::min(x.precision, y.precision)));
  x.precision = std::min(x.precision, y.precision);
  return x;
}

// c * a for rational c; denominators prime to p are inverted modulo p^precision.
PLattice rational_scale(const PLattice& a, const mpq_class& c) {
  const long p = a.p;
  mpz_class den = c.get_den();
  int t = 0;
  while (den % p == 0) {
    den /= p;
    ++t;
  }
  const mpz_class mod_p = pow_ui(p, a.precision);
  PLattice r = a;
  r.gens = reduce(times(a.gens, mpz_class(c.get_num()) * inverse_mod(den, mod_p)), mod_p);
  r.shift = a.shift + t;
  return r;
}

std::vector<PlaceAboveP> places_for(const std::vector<PlaceAboveP>& places) {
  if (places.empty()) fail(ErrorCode::InvalidOperand, "no places above p");
  return places;
}

int total_degree(const std::vector<PlaceAboveP>& places) {
  int n = 0;
  for (const auto& v : places) n += v.completion->n;
  return n;
}

int completion_precision(const std::vector<PlaceAboveP>& places) {
  int m = places.front().completion->precision;
  for (const auto& v : places) m = std::min(m, v.completion->precision);
  return m;
}

}  // namespace

PLattice rescale(const PLattice& a, int shift) {
  if (shift < a.shift) fail(ErrorCode::InvalidOperand, "rescale cannot lower the shift");
  PLattice r = a;
  const int d = shift - a.shift;
  r.gens = times(a.gens, pow_ui(a.p, d));
  r.shift = shift;
  r.precision = a.precision + d;
  return r;
}

PLattice concat(const PLattice& a, const PLattice& b) {
  if (a.p != b.p || a.dim() != b.dim()) fail(ErrorCode::InvalidOperand, "lattices live in different frames");
  const int s = std::max(a.shift, b.shift);
  PLattice x = rescale(a, s), y = rescale(b, s);
  PLattice r;
  r.p = a.p;
  r.shift = s;
  r.precision = std::min(x.precision, y.precision);
  r.gens.resize(a.dim(), x.gens.cols() + y.gens.cols());
  r.gens << x.gens, y.gens;
  return r;
}

PLattice lattice_basis(const PLattice& a) {
  const SmithForm sf = smith_form(a.gens, a.p, a.precision);
  int rank = 0;
  for (int d : sf.diag)
    if (d < a.precision) ++rank;
  PLattice r = a;
  r.gens.resize(a.dim(), rank);
  for (int i = 0; i < rank; ++i) r.gens.col(i) = sf.u_inv.col(i) * pow_ui(a.p, sf.diag[i]);
  r.gens = reduce(r.gens, pow_ui(a.p, a.precision));
  return r;
}

int LogVector::precision() const {
  int m = parts.front().precision();
  for (const auto& x : parts) m = std::min(m, x.precision());
  return m;
}

PLattice LogVector::column(long p) const {
  PLattice r;
  r.p = p;
  r.shift = shift;
  r.precision = precision();
  int n = 0;
  for (const auto& x : parts) n += int(x.coeffs().size());
  r.gens.resize(n, 1);
  int at = 0;
  for (const auto& x : parts)
    for (Eigen::Index i = 0; i < x.coeffs().size(); ++i) r.gens(at++, 0) = x.coeffs()(i);
  r.gens = reduce(r.gens, pow_ui(p, r.precision));
  return r;
}

LogVector log_embedding(const std::vector<PlaceAboveP>& places_in, const NFElt& a) {
  const auto places = places_for(places_in);
  if (a.is_zero()) fail(ErrorCode::DomainError, "log of zero");
  const long p = places.front().q;
  int k = 0;
  for (size_t i = 0; i < places.size(); ++i) {
    const int w = place_valuation(places[i], a);
    if (w % places[i].e != 0) fail(ErrorCode::DomainError, "element is not a p-power times a unit at p");
    if (i == 0) k = w / places[i].e;
    else if (w / places[i].e != k) fail(ErrorCode::DomainError, "element is not a p-power times a unit at p");
  }
  const NFElt b = k == 0 ? a : a * pow(NFElt::from_integer(a.field(), p), -k);
  std::vector<LocalLog> logs;
  int s = 0;
  for (const auto& v : places) {
    logs.push_back(log_unit(complete_at(v, b)));
    s = std::max(s, logs.back().shift);
  }
  LogVector r;
  r.shift = s;
  for (const auto& l : logs) r.parts.push_back(scale(l.value, pow_ui(p, s - l.shift)));
  return r;
}

PLattice log_unit_lattice(const std::vector<PlaceAboveP>& places_in) {
  const auto places = places_for(places_in);
  const long p = places.front().q;
  const int n = total_degree(places);
  std::vector<std::vector<LocalLog>> logs(places.size());
  int s = 0;
  int cols = 0;
  for (size_t k = 0; k < places.size(); ++k) {
    const LocalFieldPtr& F = places[k].completion;
    const int top = int(p) * F->e / int(p - 1) + 1;
    LocalElt pi_i = one(F);
    for (int i = 1; i <= top; ++i) {
      pi_i = pi_i * uniformizer(F);
      for (int j = 0; j < F->f; ++j) {
        logs[k].push_back(log_principal(one(F) + pi_i * basis_element(F, 0, j)));
        s = std::max(s, logs[k].back().shift);
        ++cols;
      }
    }
  }
  PLattice r;
  r.p = p;
  r.shift = s;
  r.precision = completion_precision(places);
  r.gens = ZMatrix::Zero(n, cols);
  int row = 0, col = 0;
  for (size_t k = 0; k < places.size(); ++k) {
    for (const auto& l : logs[k]) {
      const ZVector c = l.value.coeffs() * pow_ui(p, s - l.shift);
      r.gens.block(row, col, c.size(), 1) = c;
      r.precision = std::min(r.precision, l.value.precision());
      ++col;
    }
    row += places[k].completion->n;
  }
  r.gens = reduce(r.gens, pow_ui(p, r.precision));
  PLattice b = lattice_basis(r);
  if (b.gens.cols() < n) fail(ErrorCode::PrecisionExhausted, "log(U_K) has deficient rank at this precision");
  return b;
}

LatticeIndexResult lattice_index(const PLattice& A_in, const PLattice& B_in) {
  if (A_in.p != B_in.p || A_in.dim() != B_in.dim())
    fail(ErrorCode::InvalidOperand, "lattices live in different frames");
  const long p = A_in.p;
  const int s = std::max(A_in.shift, B_in.shift);
  const PLattice A = lattice_basis(rescale(A_in, s));
  const PLattice B = rescale(B_in, s);
  const int prec = std::min(A.precision, B.precision);
  const int a = int(A.gens.cols());
  const SmithForm sf = smith_form(A.gens, p, prec);
  int dmax = 0;
  for (int i = 0; i < a; ++i) {
    if (sf.diag[i] >= prec) fail(ErrorCode::PrecisionExhausted, "lattice basis degenerates at this precision");
    dmax = std::max(dmax, sf.diag[i]);
  }
  const int prec2 = prec - dmax;
  if (prec2 <= dmax) fail(ErrorCode::PrecisionExhausted, "lattice index not resolved at this precision");
  const ZMatrix UB = reduce(sf.u * B.gens, pow_ui(p, prec2));
  for (Eigen::Index i = a; i < UB.rows(); ++i)
    for (Eigen::Index j = 0; j < UB.cols(); ++j)
      if (UB(i, j) != 0) fail(ErrorCode::NotASublattice, "B leaves the span of A");
  if (B.gens.cols() < a) fail(ErrorCode::NotASublattice, "B has smaller rank than A");
  ZMatrix X(a, UB.cols());
  for (int i = 0; i < a; ++i) {
    const mpz_class pd = pow_ui(p, sf.diag[i]);
    for (Eigen::Index j = 0; j < UB.cols(); ++j) {
      if (UB(i, j) % pd != 0) fail(ErrorCode::NotASublattice, "B is not contained in A");
      X(i, j) = UB(i, j) / pd;
    }
  }
  const int prec3 = prec2 - dmax;
  LatticeIndexResult r;
  for (int d : elementary_divisor_valuations(X, p, prec3)) {
    if (d >= prec3) fail(ErrorCode::PrecisionExhausted, "lattice index not resolved at this precision");
    r.exponent += d;
  }
  r.index = pow_ui(p, r.exponent);
  return r;
}

QuotientFrame quotient_frame(const PLattice& E) {
  const int n = E.dim(), r = int(E.gens.cols());
  QuotientFrame fr;
  fr.p = E.p;
  fr.rank_units = r;
  if (r == 0) {
    fr.projection = ZMatrix::Identity(n, n);
    fr.precision = E.precision;
    return fr;
  }
  const SmithForm sf = smith_form(E.gens, E.p, E.precision);
  int dmax = 0;
  for (int i = 0; i < r; ++i) {
    if (sf.diag[i] >= E.precision)
      fail(ErrorCode::LeopoldtRankWarning, "unit logs have deficient Z_p-rank at this precision");
    dmax = std::max(dmax, sf.diag[i]);
  }
  fr.projection = sf.u.bottomRows(n - r);
  fr.precision = E.precision - dmax;
  return fr;
}

PLattice project(const QuotientFrame& fr, const PLattice& a) {
  if (a.p != fr.p || a.dim() != fr.projection.cols()) fail(ErrorCode::InvalidOperand, "frame mismatch");
  PLattice r = a;
  r.precision = std::min(a.precision, fr.precision);
  r.gens = reduce(fr.projection * a.gens, pow_ui(a.p, r.precision));
  return r;
}

namespace {

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class c = a.back() / b.back();
    const size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

int sign_changes(const std::vector<int>& s) {
  int c = 0, last = 0;
  for (int x : s) {
    if (x == 0) continue;
    if (last != 0 && x != last) ++c;
    last = x;
  }
  return c;
}

int sgn(const mpq_class& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

Signature signature(const ZPoly& f) {
  QPoly a(f.begin(), f.end());
  qtrim(a);
  const int n = int(a.size()) - 1;
  if (n < 1) fail(ErrorCode::InvalidOperand, "signature of a constant");
  QPoly b;
  for (int i = 1; i <= n; ++i) b.push_back(a[i] * i);
  std::vector<QPoly> seq = {a, b};
  while (seq.back().size() > 1) {
    QPoly r = qrem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
  }
  std::vector<int> at_pos, at_neg;
  for (const auto& s : seq) {
    const int lead = sgn(s.back());
    at_pos.push_back(lead);
    at_neg.push_back((s.size() - 1) % 2 == 0 ? lead : -lead);
  }
  Signature sig;
  sig.r1 = sign_changes(at_neg) - sign_changes(at_pos);
  sig.r2 = (n - sig.r1) / 2;
  return sig;
}

void verify_class_data(const ClassGroupData& cls, long p) {
  for (const auto& g : cls) {
    if (g.order < 1) fail(ErrorCode::InsufficientClassData, "class " + g.name + ": order must be positive");
    if (g.generator.is_zero()) fail(ErrorCode::InsufficientClassData, "class " + g.name + ": zero generator");
    std::map<std::pair<long, int>, long> want, got;
    for (const auto& ref : g.ideal) {
      if (ref.q == p) fail(ErrorCode::InsufficientClassData, "class " + g.name + ": ideal must be prime to p");
      want[{ref.q, ref.place_index}] += long(ref.exponent) * g.order;
    }
    for (const auto& fac : principal_ideal_factorization(g.generator).factors)
      got[{fac.place.q, fac.place.index}] += fac.exponent;
    std::erase_if(want, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(got, [](const auto& kv) { return kv.second == 0; });
    if (want != got)
      fail(ErrorCode::InsufficientClassData,
           "class " + g.name + ": generator does not factor as the stated ideal power");
  }
}

void verify_unit_data(const NumberFieldPtr& K, const UnitData& units) {
  for (const auto& u : units) {
    if (u.field() != K) fail(ErrorCode::InvalidOperand, "unit is not an element of K");
    const mpq_class N = norm(u);
    if (!is_integral(u) || (N != 1 && N != -1)) fail(ErrorCode::DomainError, "unit data: " + u.to_string() + " is not a unit");
  }
  if (int(units.size()) != signature(K->poly()).unit_rank())
    fail(ErrorCode::InsufficientClassData, "unit data must have r1 + r2 - 1 elements");
}

PLattice unit_log_lattice(const std::vector<PlaceAboveP>& places, const UnitData& units) {
  const auto pl = places_for(places);
  PLattice r;
  r.p = pl.front().q;
  r.gens = ZMatrix::Zero(total_degree(pl), 0);
  r.precision = completion_precision(pl);
  for (const auto& u : units) r = concat(r, log_embedding(pl, u).column(r.p));
  return r;
}

PLattice log_ideal(const std::vector<PlaceAboveP>& places, const QuotientFrame& fr, const IdealDesc& a,
                   const ClassGroupData& cls) {
  const auto pl = places_for(places);
  const long p = pl.front().q;
  if (a.class_exponents.size() > cls.size())
    fail(ErrorCode::InsufficientClassData, "ideal uses a class generator absent from the class data");
  PLattice acc = zero_column(p, total_degree(pl), completion_precision(pl));
  for (size_t i = 0; i < a.class_exponents.size(); ++i) {
    if (a.class_exponents[i] == 0) continue;
    const PLattice c = log_embedding(pl, cls[i].generator).column(p);
    acc = add(acc, rational_scale(c, mpq_class(a.class_exponents[i], cls[i].order)));
  }
  if (a.principal) {
    for (const auto& v : pl)
      if (place_valuation(v, *a.principal) != 0) fail(ErrorCode::DomainError, "ideal must be prime to p");
    acc = add(acc, log_embedding(pl, *a.principal).column(p));
  }
  return project(fr, acc);
}

namespace {

FixedPointFactor fixed_point_factor_at(const NumberFieldPtr& K, long p, int N, const std::vector<TamePrime>& tame,
                                       const ClassGroupData& cls, const UnitData& units) {
  const auto places = K->places_above(p, N);
  const QuotientFrame fr = quotient_frame(unit_log_lattice(places, units));
  PLattice base = project(fr, log_unit_lattice(places));
  for (size_t i = 0; i < cls.size(); ++i) {
    IdealDesc d;
    d.class_exponents.assign(i + 1, 0);
    d.class_exponents[i] = 1;
    base = concat(base, log_ideal(places, fr, d, cls));
  }
  base = lattice_basis(base);
  if (base.gens.cols() != K->degree() - fr.rank_units)
    fail(ErrorCode::PrecisionExhausted, "Log(I_K) has deficient rank at this precision");
  FixedPointFactor r;
  PLattice big = base;
  for (const auto& t : tame) {
    if (t.e_q == 1) continue;
    if (t.e_q != p) fail(ErrorCode::DomainError, "ramification index of a tame prime must be 1 or p");
    ++r.numerator_exponent;
    big = concat(big, rational_scale(log_ideal(places, fr, t.ideal, cls), mpq_class(1, p)));
  }
  r.index_exponent = lattice_index(big, base).exponent;
  r.exponent = r.numerator_exponent - r.index_exponent;
  if (r.exponent < 0) fail(ErrorCode::DomainError, "fixed-point factor is not integral");
  return r;
}

int bp_order_at(const NumberFieldPtr& K, long p, const UnitData& units, int N) {
  const auto places = K->places_above(p, N);
  const PLattice L = log_unit_lattice(places);
  const PLattice E = unit_log_lattice(places, units);
  if (E.gens.cols() == 0) return 0;
  const int s = std::max(L.shift, E.shift);
  const PLattice Ls = rescale(L, s), Es = rescale(E, s);
  int prec = 0;
  const auto X = solve_integral(Ls.gens, Es.gens, p, std::min(Ls.precision, Es.precision), &prec);
  if (!X) fail(ErrorCode::PrecisionExhausted, "unit logs not resolved inside log(U_K)");
  int t = 0;
  for (int d : elementary_divisor_valuations(*X, p, prec)) {
    if (d >= prec) fail(ErrorCode::LeopoldtRankWarning, "unit logs have deficient Z_p-rank at this precision");
    t += d;
  }
  return t;
}

}  // namespace

FixedPointFactor fixed_point_factor(const NumberFieldPtr& K, long p, int N, const std::vector<TamePrime>& tame,
                                    const ClassGroupData& cls, const UnitData& units) {
  verify_unit_data(K, units);
  verify_class_data(cls, p);
  const FixedPointFactor a = fixed_point_factor_at(K, p, N, tame, cls, units);
  const FixedPointFactor b = fixed_point_factor_at(K, p, N + 20, tame, cls, units);
  if (a.exponent != b.exponent || a.index_exponent != b.index_exponent)
    fail(ErrorCode::PrecisionExhausted, "fixed-point factor changes under precision escalation");
  return a;
}

std::optional<long> im_psi_order(const CapitulationReport& r) {
  if (r.mu_K == 1 || r.mu_L != r.mu_K) return 1;
  for (const auto& pl : r.places)
    if (pl.c.kind == PlaceKind::NonSplitNotLocCyclotomic) return 1;
  if (!r.ramification) return std::nullopt;
  if (*r.ramification == KummerRamification::NotPRamified) return 1;
  if (r.mu_undetermined) return std::nullopt;
  return r.p;
}

PPowerInterval bp_fixed_points_bounds(int factor_exp, int bp_K_exp, long im_psi, long p, bool h1_quotient_trivial) {
  if (im_psi != 1 && im_psi != p) fail(ErrorCode::InvalidOperand, "|Im psi| must be 1 or p");
  const int base = factor_exp + bp_K_exp - (im_psi == p ? 1 : 0);
  PPowerInterval r;
  r.lo = std::max(0, base);
  r.hi = std::max(0, base + 1);
  if (im_psi == 1 && h1_quotient_trivial) r.hi = r.lo;
  return r;
}

int bp_order_trivial_class(const NumberFieldPtr& K, long p, const UnitData& units, int N) {
  verify_unit_data(K, units);
  const int a = bp_order_at(K, p, units, N);
  const int b = bp_order_at(K, p, units, N + 20);
  if (a != b) fail(ErrorCode::PrecisionExhausted, "torsion order changes under precision escalation");
  return a;
}

}  // namespace bp
