// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bp/cli_report.hpp"
#include "bp/kummer.hpp"
#include "bp/local_units.hpp"

using namespace bp;

namespace {

const std::vector<std::string> kAlphaI = {"-5269/178", "-1034/89", "-111/89", "-59/178"};
const std::vector<std::string> kJ = {"-70/89", "-52/89", "-3/89", "-2/89"};
const ZPoly kFixture = {507, 48, 49, 2, 1};

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(BP_FIXTURE_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ReportDocument run_fixture(const std::string& name, std::optional<int> N = std::nullopt) {
  JobFile j = parse_job(slurp(name));
  if (N) j.precision = *N;
  return run(j);
}

int failures = 0;

void report(int k, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << "criterion " << k << " " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

std::string places_summary(const DiagnoseSection& d) {
  std::string s;
  for (const auto& pl : d.places)
    s += " " + pl.kind + "(" + std::to_string(pl.mu_Kv) + "->" + std::to_string(pl.mu_Lw) + ")";
  return s;
}

std::string diag_summary(const ReportDocument& r) {
  if (!r.diagnose) return r.errors.empty() ? "no diagnose section" : r.errors.front().code;
  const auto& d = *r.diagnose;
  return "verdict " + d.verdict + ", kernel [" + std::to_string(d.kernel_lo) + "," + std::to_string(d.kernel_hi) +
         "], mu(K) " + std::to_string(d.mu_K) + ", mu(L) " + std::to_string(d.mu_L) + ", ramification " +
         d.ramification + ", places" + places_summary(d);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ReportDocument r = run_fixture("unit_times_root_of_unity.job");
  const double t = seconds_since(t0);
  bool ok = r.diagnose && r.diagnose->verdict == "non-injective" && r.diagnose->kernel_lo == 3 &&
            r.diagnose->kernel_hi == 3 && r.diagnose->ramification == "PRamifiedUnitIdealAtP" &&
            r.diagnose->places.size() == 2 && t < 5;
  if (ok)
    for (const auto& pl : r.diagnose->places)
      ok = ok && pl.kind == "NonSplitLocCyclotomic" && pl.mu_Kv == 3 && pl.mu_Lw == 9;
  std::ostringstream d;
  d << diag_summary(r) << ", " << t << " s";
  report(1, ok, d.str());
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  auto K = NumberField::create(kFixture);
  const NFElt alpha = NFElt::parse(K, {"97/2", "3/2", "3/2", "0"});
  const CapitulationReport cr = diagnose(K, 3, alpha, 60);
  const double t = seconds_since(t0);
  bool ok = cr.verdict == Verdict::Injective && cr.places.size() == 2 && t < 5;
  std::string kinds;
  for (const auto& pl : cr.places) {
    kinds += std::string(" ") + place_kind_name(pl.c.kind);
    if (pl.c.kind != PlaceKind::Split || !pl.c.split_root) {
      ok = false;
      continue;
    }
    // w^3 = alpha * q^(3 shift) in the completion
    const auto places = K->places_above(3, 60);
    const LocalElt a = complete_at(places[size_t(pl.index)], alpha);
    const LocalElt w = *pl.c.split_root;
    const LocalElt lhs = pow(w, 3);
    const LocalElt rhs = scale(a, pow_ui(3, 3 * pl.c.shift));
    ok = ok && lhs == with_precision(rhs, lhs.precision());
  }
  std::ostringstream d;
  d << "verdict " << verdict_name(cr.verdict) << ", places" << kinds << ", " << t << " s";
  report(2, ok, d.str());
}

void criterion3() {
  auto K = NumberField::create(kFixture);
  const NFElt x = NFElt::parse(K, kAlphaI) * inverse(NFElt::parse(K, kJ)) + NFElt::from_integer(K, 1);
  bool ok = true;
  std::string d = "v(alpha j^-1 + 1) at the places above 3:";
  const auto places = K->places_above(3, 60);
  for (const auto& v : places) {
    const int w = place_valuation(v, x);
    d += " " + std::to_string(w) + " (e = " + std::to_string(v.e) + ")";
    ok = ok && w >= 3;
  }
  report(3, ok && places.size() == 2, d);
}

void criterion4() {
  const ReportDocument r = run_fixture("root_of_unity.job");
  const bool ok = r.diagnose && r.diagnose->verdict == "injective" && r.diagnose->globally_cyclotomic &&
                  r.diagnose->mu_L == 9 && r.diagnose->kernel_hi == 1 &&
                  r.diagnose->rule.rfind("L/K is globally cyclotomic", 0) == 0;
  report(4, ok, diag_summary(r) + (r.diagnose ? "; rule: " + r.diagnose->rule : ""));
}

void criterion5() {
  const ReportDocument r = run_fixture("rationals_two.job");
  const bool ok = r.diagnose && r.diagnose->verdict == "injective" && r.diagnose->mu_K == 1 &&
                  r.diagnose->kernel_hi == 1 && r.diagnose->rule.rfind("mu(K) has trivial p-part", 0) == 0;
  report(5, ok, diag_summary(r) + (r.diagnose ? "; rule: " + r.diagnose->rule : ""));
}

void criterion6() {
  auto mu_of = [](int N, int which) -> long {
    if (which == 0) return mu_p_part(make_base_field(3, N, {0, 1})).order();
    auto F = make_base_field(3, N, {1, 1, 1});
    if (which == 1) return mu_p_part(F).order();
    const KummerResult t = make_kummer_tower(LocalElt(F, F->generator, F->precision));
    return mu_p_part(std::get<LocalFieldPtr>(t)).order();
  };
  bool ok = true;
  std::string d;
  const long want[] = {1, 3, 9};
  const char* names[] = {"Q_3", "Q_3(zeta_3)", "Q_3(zeta_9) tower"};
  for (int w = 0; w < 3; ++w) {
    const long a = mu_of(60, w), b = mu_of(80, w);
    ok = ok && a == want[w] && b == want[w];
    d += std::string(names[w]) + " " + std::to_string(a) + "/" + std::to_string(b) + "  ";
  }
  report(6, ok, d + "(N = 60 / 80)");
}

LocalElt random_unit(const LocalFieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    ZVector c(F->n);
    for (int i = 0; i < F->n; ++i) c(i) = long(rng() % 100000);
    LocalElt x(F, c, F->precision);
    if (valuation(x) == 0) return x;
  }
}

LocalElt align(const LocalLog& l, int shift) { return scale(l.value, pow_ui(l.value.prime(), shift - l.shift)); }

mpz_class local_norm(const LocalElt& x) {
  return mpz_class(determinant(mult_matrix(x).cast<mpq_class>()).get_num());
}

void criterion7() {
  const std::vector<ZPoly> fields = {{0, 1}, {1, 1, 1}, {1, 0, 0, 1, 0, 0, 1}};
  std::mt19937_64 rng(2024);
  int a_n = 0, a_bad = 0, b_n = 0, b_bad = 0, c_n = 0, c_bad = 0, d_n = 0, d_bad = 0, e_n = 0, e_bad = 0;
  for (const auto& g : fields) {
    auto F = make_base_field(3, 40, g);
    const int m0 = F->e / 2 + 1;
    for (int t = 0; t < 340; ++t) {
      // (a) log homomorphism and exp(log) on the isometric domain
      const LocalElt u = one(F) + uniformizer(F) * random_unit(F, rng);
      const LocalElt v = one(F) + uniformizer(F) * random_unit(F, rng);
      const LocalLog lu = log_principal(u), lv = log_principal(v), luv = log_principal(u * v);
      const int s = std::max({lu.shift, lv.shift, luv.shift});
      const LocalElt w = one(F) + pow(uniformizer(F), m0) * random_unit(F, rng);
      const LocalElt back = exp_isometric(log_isometric(w));
      a_bad += !is_zero(align(luv, s) - align(lu, s) - align(lv, s)) || !(back == with_precision(w, back.precision()));
      ++a_n;
      // (b) norm multiplicativity and f v = v_p(N)
      ZVector cx(F->n), cy(F->n);
      for (int i = 0; i < F->n; ++i) {
        cx(i) = long(rng() % 100000);
        cy(i) = long(rng() % 100000);
      }
      const LocalElt x(F, cx, F->precision), y(F, cy, F->precision);
      const mpz_class mod = pow_ui(3, F->precision);
      const bool mult = bp::mod(local_norm(x * y) - local_norm(x) * local_norm(y), mod) == 0;
      const bool val = is_zero(x) || F->f * valuation(x) == vp(local_norm(x), 3, F->precision);
      b_bad += !mult || !val;
      ++b_n;
      // (d) p-th powers carry verified witnesses
      const LocalElt z = pow(random_unit(F, rng), 3);
      const auto r = is_pth_power(z);
      d_bad += !r.is_power || !r.witness || !(pow(*r.witness, 3) == with_precision(z, r.witness->precision()));
      ++d_n;
    }
  }
  // (c) lattice index: triangular determinant oracle, multiplicativity, unimodular invariance
  auto rnd = [&](int r, int c, long bound) {
    ZMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = long(rng() % (2 * bound + 1)) - bound;
    return m;
  };
  auto tri = [&](int k, bool uni) {
    static const long diag[] = {1, -1, 2, 3, -3, 6, 9, 5, 27};
    ZMatrix t = ZMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      t(i, i) = uni ? (rng() % 2 ? 1 : -1) : diag[rng() % 9];
      for (int j = i + 1; j < k; ++j) t(i, j) = long(rng() % 19) - 9;
    }
    return t;
  };
  auto lat = [](const ZMatrix& g) {
    PLattice L;
    L.p = 3;
    L.gens = g;
    L.precision = 80;
    return L;
  };
  while (c_n < 150) {
    const int k = 1 + int(rng() % 6), n = k + int(rng() % (7 - k));
    const ZMatrix A = rnd(n, k, 40);
    const QMatrix Aq = A.cast<mpq_class>();
    if (determinant(Aq.transpose() * Aq) == 0) continue;
    const ZMatrix T1 = tri(k, false), T2 = tri(k, false), U = tri(k, true) * tri(k, true).transpose();
    int e1 = 0;
    for (int i = 0; i < k; ++i) e1 += vp(T1(i, i), 3, 1000);
    const ZMatrix B = A * T1, C = B * T2;
    const int ab = lattice_index(lat(A), lat(B)).exponent;
    const int bc = lattice_index(lat(B), lat(C)).exponent;
    const int ac = lattice_index(lat(A), lat(C)).exponent;
    c_bad += ab != e1 || ac != ab + bc || lattice_index(lat(A), lat(B * U)).exponent != ab;
    ++c_n;
  }
  // (e) kernel order and |Im psi| agree on every generated report
  auto K = NumberField::create(kFixture);
  const NFElt j = NFElt::parse(K, kJ);
  auto check = [&](const CapitulationReport& r) {
    const auto psi = im_psi_order(r);
    const bool ok = psi ? ((*psi == r.p) == (r.kernel_lo == r.p) && r.kernel_lo == r.kernel_hi)
                        : r.kernel_lo != r.kernel_hi;
    e_bad += !ok;
    ++e_n;
  };
  for (const auto& s : {kAlphaI, std::vector<std::string>{"97/2", "3/2", "3/2", "0"}, kJ})
    check(diagnose(K, 3, NFElt::parse(K, s), 60));
  auto Q = NumberField::create({0, 1});
  for (long a : {2L, 4L, 10L, 7L}) check(diagnose(Q, 3, NFElt::from_integer(Q, a), 60));
  for (int t = 0; t < 40 && e_n < 20; ++t) {
    QVector c(4);
    for (int i = 0; i < 4; ++i) c(i) = long(rng() % 21) - 10;
    NFElt a(K, c);
    if (a.is_zero()) continue;
    if (t % 2) a = a * j;
    try {
      check(diagnose_at(K, 3, a, 60));
    } catch (const Error&) {
    }
  }
  std::ostringstream d;
  d << "(a) " << a_n << " pairs, " << a_bad << " failures; (b) " << b_n << " elements, " << b_bad
    << " failures; (c) " << c_n << " lattices, " << c_bad << " failures; (d) " << d_n << " units, " << d_bad
    << " failures; (e) " << e_n << " reports, " << e_bad << " failures";
  const bool ok = a_bad + b_bad + c_bad + d_bad + e_bad == 0 && a_n >= 1000 && b_n >= 1000 && c_n >= 100 &&
                  d_n >= 1000 && e_n >= 10;
  report(7, ok, d.str());
}

void criterion8() {
  const std::vector<std::string> jobs = {"unit_times_root_of_unity.job", "unit_times_root_of_unity_poly.job",
                                         "real_unit.job",   "root_of_unity.job",
                                         "rationals_two.job", "real_quadratic.job"};
  bool ok = true;
  int compared = 0;
  std::string bad;
  for (const auto& name : jobs) {
    ReportDocument a = run_fixture(name, 60), b = run_fixture(name, 80);
    const bool same = a.errors.empty() && b.errors.empty() && a.diagnose == b.diagnose && a.mu_local == b.mu_local &&
                      a.bp_trivial_class_exponent == b.bp_trivial_class_exponent && a.fixed_point == b.fixed_point;
    if (!same) bad += " " + name;
    ok = ok && same;
    ++compared;
  }
  const std::string cmd = std::string(BP_BINARY) + " diagnose " + BP_FIXTURE_DIR +
                          "/unit_times_root_of_unity.job --precision 8 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  ok = ok && code == 3;
  std::ostringstream d;
  d << compared << " fixtures identical at N = 60 and 80" << (bad.empty() ? "" : ", differing:" + bad)
    << "; N = 8 run exits with code " << code;
  report(8, ok, d.str());
}

}  // namespace

int main() {
  for (auto* c : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8}) {
    try {
      c();
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "criterion FAIL  unexpected error: " << e.what() << std::endl;
    }
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
