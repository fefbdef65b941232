#include "bp/capitulation.hpp"

namespace bp {

const char* place_kind_name(PlaceKind k) {
  switch (k) {
    case PlaceKind::Split: return "split";
    case PlaceKind::NonSplitLocCyclotomic: return "non-split, locally cyclotomic";
    case PlaceKind::NonSplitNotLocCyclotomic: return "non-split, not locally cyclotomic";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Injective: return "injective";
    case Verdict::NonInjective: return "not injective";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

PlaceClassification classify_place(const PlaceAboveP& v, const NFElt& alpha, long p) {
  if (v.q != p) fail(ErrorCode::InvalidOperand, "place does not lie above p");
  if (alpha.is_zero()) fail(ErrorCode::InvalidOperand, "alpha must be nonzero");
  PlaceClassification c;
  ScaledLocal s = complete_at_scaled(v, alpha);
  LocalElt a = s.value;
  if (s.shift > 0) a = a * from_integer(v.completion, pow_ui(p, (int(p) - 1) * s.shift));
  c.shift = s.shift;
  const LocalFieldPtr& B = v.completion;
  MuGroup muB = mu_p_part(B);
  c.mu_Kv = muB.k;

  PthPowerResult pr = is_pth_power(a);
  if (pr.is_power) {
    c.kind = PlaceKind::Split;
    c.split_root = pr.witness;
    c.mu_Lw = muB.k;
    c.xi_exponent = 0;
    return c;
  }
  KummerResult kr = make_kummer_tower(a);
  if (std::holds_alternative<SplitMarker>(kr)) {
    c.kind = PlaceKind::Split;
    c.split_root = std::get<SplitMarker>(kr).root;
    c.mu_Lw = muB.k;
    c.xi_exponent = 0;
    return c;
  }
  const LocalFieldPtr& T = std::get<LocalFieldPtr>(kr);
  c.e_rel = T->tower->e_rel;
  c.f_rel = T->tower->f_rel;
  c.mu_Lw = mu_p_part(T).k;
  if (c.mu_Lw == c.mu_Kv + 1)
    c.kind = PlaceKind::NonSplitLocCyclotomic;
  else if (c.mu_Lw == c.mu_Kv)
    c.kind = PlaceKind::NonSplitNotLocCyclotomic;
  else
    fail(ErrorCode::DomainError, "local roots of unity grew by more than a factor p");
  if (c.mu_Kv >= 1) {
    c.w_one_minus_s = int(w_one_minus_s(galois_generator(T)).order);
    if (c.kind == PlaceKind::NonSplitLocCyclotomic) {
      LocalElt zi = inverse(*muB.zeta), t = a;
      for (int i = 1; i < p; ++i) {
        t = t * zi;
        if (is_pth_power(t).is_power) {
          c.xi_exponent = i;
          break;
        }
      }
    }
  }
  return c;
}

long h1_order(const PlaceClassification& c, long p) {
  return c.kind == PlaceKind::NonSplitNotLocCyclotomic ? p : 1;
}

std::pair<long, long> kernel_order(const KernelInputs& in, std::vector<std::string>* caveats) {
  auto note = [&](const std::string& s) {
    if (caveats) caveats->push_back(s);
  };
  if (in.mu_K == 1) return {1, 1};
  if (in.globally_cyclotomic) return {1, 1};
  for (PlaceKind k : in.kinds)
    if (k == PlaceKind::NonSplitNotLocCyclotomic) return {1, 1};
  if (!in.ramification) {
    note("p-ramification undecided; kernel order is 1 or p");
    return {1, in.p};
  }
  if (*in.ramification == KummerRamification::NotPRamified) return {1, 1};
  if (*in.ramification == KummerRamification::PRamifiedWithPPart)
    note("(alpha) has a nontrivial p-part; p-ramified but outside the unit-ideal normalization");
  if (in.mu_undetermined) {
    note("global cyclotomy of L/K undetermined; kernel order is 1 or p");
    return {1, in.p};
  }
  return {in.p, in.p};
}

CapitulationReport diagnose_at(const NumberFieldPtr& K, long p, const NFElt& alpha, int N) {
  if (p < 3 || !is_prime(mpz_class(p))) fail(ErrorCode::DomainError, "p must be an odd prime");
  if (alpha.field() != K) fail(ErrorCode::InvalidOperand, "alpha is not an element of K");
  if (alpha.is_zero()) fail(ErrorCode::InvalidOperand, "alpha must be nonzero");
  CapitulationReport r;
  r.p = p;
  r.field_poly = K->poly();
  r.alpha = alpha.to_string();
  r.precision = N;
  r.caveats.push_back(kLeopoldtCaveat);

  GlobalPthPower self = is_global_pth_power(alpha, p);
  if (self.answer == PowerAnswer::Yes)
    fail(ErrorCode::DomainError, "alpha is a p-th power in K, so L = K is not a degree-p layer");
  if (self.answer == PowerAnswer::Undetermined) r.caveats.push_back("global p-th power test undetermined");
  MuOfL mu = mu_of_L(K, p, alpha);
  r.mu_K = pow_ui(p, mu.k_K).get_si();
  r.mu_L = pow_ui(p, mu.k_L).get_si();
  r.globally_cyclotomic = mu.globally_cyclotomic;
  r.mu_undetermined = mu.undetermined;
  if (mu.undetermined) r.caveats.push_back("global cyclotomy test had undetermined sub-results");

  try {
    r.ramification = is_p_ramified_kummer(alpha, p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IncompleteFactorization && e.code() != ErrorCode::NotMonogenicAtQ) throw;
    r.caveats.push_back(std::string("p-ramification undecided: ") + e.what());
  }

  KernelInputs in;
  in.p = p;
  in.mu_K = r.mu_K;
  in.globally_cyclotomic = r.globally_cyclotomic;
  in.mu_undetermined = mu.undetermined;
  in.ramification = r.ramification;
  for (const PlaceAboveP& v : K->places_above(p, N)) {
    PlaceReport pr;
    pr.q = v.q;
    pr.index = v.index;
    pr.e = v.e;
    pr.f = v.f;
    pr.c = classify_place(v, alpha, p);
    pr.h1 = h1_order(pr.c, p);
    in.kinds.push_back(pr.c.kind);
    r.places.push_back(pr);
  }
  auto [lo, hi] = kernel_order(in, &r.caveats);
  r.kernel_lo = lo;
  r.kernel_hi = hi;
  r.verdict = lo != hi ? Verdict::Undetermined : (lo == 1 ? Verdict::Injective : Verdict::NonInjective);
  return r;
}

namespace {

bool same_verdict(const CapitulationReport& a, const CapitulationReport& b) {
  if (a.verdict != b.verdict || a.kernel_lo != b.kernel_lo || a.kernel_hi != b.kernel_hi) return false;
  if (a.mu_K != b.mu_K || a.mu_L != b.mu_L || a.places.size() != b.places.size()) return false;
  for (size_t i = 0; i < a.places.size(); ++i) {
    const auto& x = a.places[i].c;
    const auto& y = b.places[i].c;
    if (x.kind != y.kind || x.mu_Kv != y.mu_Kv || x.mu_Lw != y.mu_Lw) return false;
  }
  return true;
}

}  // namespace

CapitulationReport diagnose(const NumberFieldPtr& K, long p, const NFElt& alpha, int N) {
  CapitulationReport r = diagnose_at(K, p, alpha, N);
  CapitulationReport s = diagnose_at(K, p, alpha, N + 20);
  if (!same_verdict(r, s))
    fail(ErrorCode::PrecisionExhausted, "diagnosis changed between precision " + std::to_string(N) + " and " +
                                            std::to_string(N + 20));
  return r;
}

}  // namespace bp
