#include "bp/cli_report.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <json.hpp>
#include <regex>
#include <set>
#include <sstream>

#include "bp/local_units.hpp"

namespace nlohmann {
template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& o) {
    if (o) j = *o;
    else j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& o) {
    if (j.is_null()) o.reset();
    else o = j.get<T>();
  }
};
}  // namespace nlohmann

namespace bp {

using nlohmann::json;

namespace {

struct Issues {
  std::vector<std::string> list;
  void add(int line, const std::string& m) { list.push_back("line " + std::to_string(line) + ": " + m); }
};

int line_at(const std::string& text, size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + int(std::count(text.begin(), text.begin() + long(pos), '\n'));
}

int key_line(const std::string& text, const std::string& key) {
  const std::regex re("\"" + key + "\"\\s*:");
  std::smatch m;
  if (std::regex_search(text, m, re)) return line_at(text, size_t(m.position(0)));
  return 1;
}

// Number tokens outside strings with a fraction or exponent part.
void reject_floats(const std::string& text, Issues& is) {
  bool in_string = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
      continue;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      size_t k = i;
      bool fractional = false;
      while (k < text.size() && std::strchr("+-0123456789.eE", text[k])) {
        if (text[k] == '.' || text[k] == 'e' || text[k] == 'E') fractional = true;
        ++k;
      }
      if (fractional) is.add(line_at(text, i), "rationals must be a/b strings, found " + text.substr(i, k - i));
      i = k - 1;
    }
  }
}

bool is_rational(const std::string& s) {
  static const std::regex re("-?[0-9]+(/[0-9]*[1-9][0-9]*)?");
  return std::regex_match(s, re);
}

const std::set<std::string> kTasks = {"diagnose", "kernel", "bp-trivial-class", "fixed-point", "mu-local", "log-ideal"};
const std::set<std::string> kTopKeys = {"p",     "precision",  "base_field",    "alpha", "class_group",
                                        "units", "bp_K_order", "tame_ramified", "ideal", "tasks"};

struct Reader {
  const std::string& text;
  Issues& is;

  int line(const std::string& key) const { return key_line(text, key); }

  std::optional<long> integer(const json& j, const std::string& key) {
    if (!j.is_number_integer()) {
      is.add(line(key), "\"" + key + "\" must be an integer");
      return std::nullopt;
    }
    return j.get<long>();
  }

  std::optional<Coeffs> coeffs(const json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) {
      is.add(line(key), "\"" + key + "\" must be a nonempty list of rational strings");
      return std::nullopt;
    }
    Coeffs out;
    for (const auto& x : j) {
      if (!x.is_string()) {
        is.add(line(key), "rationals must be a/b strings in \"" + key + "\"");
        return std::nullopt;
      }
      const std::string s = x.get<std::string>();
      if (!is_rational(s)) {
        is.add(line(key), "\"" + s + "\" in \"" + key + "\" is not a rational a/b");
        return std::nullopt;
      }
      out.push_back(s);
    }
    return out;
  }

  std::optional<JobIdeal> ideal(const json& j, const std::string& key) {
    if (!j.is_object()) {
      is.add(line(key), "\"" + key + "\" must be an object");
      return std::nullopt;
    }
    JobIdeal a;
    for (const auto& [k, v] : j.items()) {
      if (k == "class_exponents") {
        if (!v.is_array()) {
          is.add(line(k), "\"class_exponents\" must be a list of integers");
          continue;
        }
        for (const auto& x : v) {
          if (auto n = integer(x, k)) a.class_exponents.push_back(int(*n));
        }
      } else if (k == "principal") {
        a.principal = coeffs(v, k);
      } else {
        is.add(line(k), "unknown key \"" + k + "\" in " + key);
      }
    }
    return a;
  }
};

}  // namespace

ZPoly construct_poly(long d) {
  const mpz_class c = mpz_class(1) + d;
  return {c * c - c + 1, 4 - 2 * c, 5 - 2 * c, 2, 1};
}

JobFile parse_job(const std::string& text) {
  Issues is;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    is.add(line_at(text, e.byte == 0 ? 0 : e.byte - 1), std::string("malformed job: ") + e.what());
    fail(ErrorCode::SchemaError, is.list.front());
  }
  reject_floats(text, is);
  JobFile job;
  Reader rd{text, is};
  if (!j.is_object()) {
    is.add(1, "a job is an object");
    fail(ErrorCode::SchemaError, is.list.front());
  }
  for (const auto& [k, v] : j.items())
    if (!kTopKeys.count(k)) is.add(rd.line(k), "unknown key \"" + k + "\"");
  for (const char* req : {"p", "base_field", "alpha", "tasks"})
    if (!j.contains(req)) is.add(1, std::string("missing required field \"") + req + "\"");

  if (j.contains("p")) {
    if (auto p = rd.integer(j["p"], "p")) {
      job.p = *p;
      if (job.p < 3 || !is_prime(mpz_class(job.p))) is.add(rd.line("p"), "\"p\" must be an odd prime");
    }
  }
  if (j.contains("precision")) {
    if (auto n = rd.integer(j["precision"], "precision")) {
      job.precision = int(*n);
      if (*n < 1 || *n > 2000) is.add(rd.line("precision"), "\"precision\" must lie in [1, 2000]");
    }
  }
  if (j.contains("base_field")) {
    const json& b = j["base_field"];
    if (!b.is_object()) {
      is.add(rd.line("base_field"), "\"base_field\" must be an object");
    } else if (b.contains("poly")) {
      if (b.size() != 1) is.add(rd.line("base_field"), "\"poly\" excludes other base_field keys");
      job.poly = rd.coeffs(b["poly"], "poly");
      if (job.poly)
        for (const auto& c : *job.poly)
          if (c.find('/') != std::string::npos) is.add(rd.line("poly"), "\"poly\" coefficients must be integers");
    } else if (b.contains("construct")) {
      if (!b["construct"].is_string() || b["construct"].get<std::string>() != "quad_times_cubic_roots")
        is.add(rd.line("construct"), "\"construct\" must be \"quad_times_cubic_roots\"");
      if (!b.contains("d")) is.add(rd.line("construct"), "missing required field \"d\"");
      else job.construct_d = rd.integer(b["d"], "d");
      for (const auto& [k, v] : b.items())
        if (k != "construct" && k != "d") is.add(rd.line(k), "unknown key \"" + k + "\" in base_field");
    } else {
      is.add(rd.line("base_field"), "\"base_field\" needs \"poly\" or \"construct\"");
    }
  }
  if (j.contains("alpha"))
    if (auto a = rd.coeffs(j["alpha"], "alpha")) job.alpha = *a;
  if (j.contains("class_group")) {
    const json& c = j["class_group"];
    job.class_group.emplace();
    if (!c.is_array()) is.add(rd.line("class_group"), "\"class_group\" must be a list");
    else
      for (const auto& e : c) {
        JobClass jc;
        if (!e.is_object() || !e.contains("ideal") || !e.contains("order") || !e.contains("principal_generator")) {
          is.add(rd.line("class_group"), "class entries need \"ideal\", \"order\" and \"principal_generator\"");
          continue;
        }
        const json& id = e["ideal"];
        if (!id.is_array() || id.size() != 2) {
          is.add(rd.line("ideal"), "\"ideal\" must be [q, [poly coefficients]]");
          continue;
        }
        if (auto q = rd.integer(id[0], "ideal")) jc.q = *q;
        if (auto g = rd.coeffs(id[1], "ideal")) jc.poly = *g;
        if (auto m = rd.integer(e["order"], "order")) jc.order = int(*m);
        if (auto g = rd.coeffs(e["principal_generator"], "principal_generator")) jc.generator = *g;
        job.class_group->push_back(jc);
      }
  }
  if (j.contains("units")) {
    const json& u = j["units"];
    job.units.emplace();
    if (!u.is_array()) is.add(rd.line("units"), "\"units\" must be a list of coefficient lists");
    else
      for (const auto& e : u)
        if (auto c = rd.coeffs(e, "units")) job.units->push_back(*c);
  }
  if (j.contains("bp_K_order")) job.bp_K_order = rd.integer(j["bp_K_order"], "bp_K_order");
  if (j.contains("tame_ramified")) {
    const json& t = j["tame_ramified"];
    if (!t.is_array()) is.add(rd.line("tame_ramified"), "\"tame_ramified\" must be a list");
    else
      for (const auto& e : t) {
        if (!e.is_object() || !e.contains("e") || !e.contains("ideal")) {
          is.add(rd.line("tame_ramified"), "tame entries need \"e\" and \"ideal\"");
          continue;
        }
        JobTame jt;
        if (auto n = rd.integer(e["e"], "e")) jt.e = int(*n);
        if (auto a = rd.ideal(e["ideal"], "ideal")) jt.ideal = *a;
        job.tame_ramified.push_back(jt);
      }
  }
  if (j.contains("ideal")) job.ideal = rd.ideal(j["ideal"], "ideal");
  if (j.contains("tasks")) {
    const json& t = j["tasks"];
    if (!t.is_array() || t.empty()) is.add(rd.line("tasks"), "\"tasks\" must be a nonempty list");
    else
      for (const auto& x : t) {
        if (!x.is_string() || !kTasks.count(x.get<std::string>())) {
          is.add(rd.line("tasks"), "unknown task " + x.dump());
          continue;
        }
        job.tasks.push_back(x.get<std::string>());
      }
  }
  auto wants = [&](const char* t) { return std::find(job.tasks.begin(), job.tasks.end(), t) != job.tasks.end(); };
  if ((wants("bp-trivial-class") || wants("fixed-point") || wants("log-ideal")) && !job.units)
    is.add(rd.line("tasks"), "tasks bp-trivial-class, fixed-point and log-ideal need \"units\"");
  if (wants("log-ideal") && !job.ideal) is.add(rd.line("tasks"), "task log-ideal needs \"ideal\"");
  if (job.bp_K_order && job.p >= 3) {
    mpz_class b = *job.bp_K_order;
    while (b > 1 && b % job.p == 0) b /= job.p;
    if (b != 1) is.add(rd.line("bp_K_order"), "\"bp_K_order\" must be a power of p");
  }
  if (!is.list.empty()) {
    std::string all;
    for (const auto& s : is.list) all += (all.empty() ? "" : "\n") + s;
    fail(ErrorCode::SchemaError, all);
  }
  return job;
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PlaceLine, q, index, e, f, kind, mu_Kv, mu_Lw, e_rel, f_rel, witness, witness_shift,
                                   w_one_minus_s, xi_exponent, h1)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DiagnoseSection, mu_K, mu_L, globally_cyclotomic, ramification, places, kernel_lo,
                                   kernel_hi, verdict, rule, im_psi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MuLocalLine, q, index, e, f, mu)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FixedPointSection, numerator_exponent, index_exponent, exponent, bp_lo, bp_hi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LogIdealSection, coords, shift, precision)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TaskError, task, code, message)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReportDocument, p, field_poly, alpha, precision, precisions_compared, tasks,
                                   diagnose, mu_local, bp_trivial_class_exponent, fixed_point, log_ideal, caveats,
                                   errors)

namespace {

const char* kind_key(PlaceKind k) {
  switch (k) {
    case PlaceKind::Split: return "Split";
    case PlaceKind::NonSplitLocCyclotomic: return "NonSplitLocCyclotomic";
    case PlaceKind::NonSplitNotLocCyclotomic: return "NonSplitNotLocCyclotomic";
  }
  return "?";
}

const char* ramification_key(KummerRamification r) {
  switch (r) {
    case KummerRamification::PRamifiedUnitIdealAtP: return "PRamifiedUnitIdealAtP";
    case KummerRamification::PRamifiedWithPPart: return "PRamifiedWithPPart";
    case KummerRamification::NotPRamified: return "NotPRamified";
  }
  return "?";
}

const char* verdict_key(Verdict v) {
  switch (v) {
    case Verdict::Injective: return "injective";
    case Verdict::NonInjective: return "non-injective";
    case Verdict::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

// The condition that decided the kernel order, in the order kernel_order tests them.
std::string governing_rule(const CapitulationReport& r) {
  if (r.mu_K == 1) return "mu(K) has trivial p-part, so j is injective";
  if (r.globally_cyclotomic) return "L/K is globally cyclotomic (mu(L) > mu(K)), so j is injective";
  for (const auto& pl : r.places)
    if (pl.c.kind == PlaceKind::NonSplitNotLocCyclotomic)
      return "a non-split place above p is not locally cyclotomic, so j is injective";
  if (!r.ramification) return "p-ramification undecided";
  if (*r.ramification == KummerRamification::NotPRamified) return "L/K is not p-ramified, so j is injective";
  if (r.mu_undetermined) return "global cyclotomy undecided";
  return "mu(K) = mu(L) != 1, L/K p-ramified, every non-split place above p locally cyclotomic: kernel of order p";
}

Coeffs to_strings(const ZPoly& f) {
  Coeffs out;
  for (const auto& c : f) out.push_back(c.get_str());
  return out;
}

Coeffs to_strings(const ZVector& v) {
  Coeffs out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).get_str());
  return out;
}

NFElt element(const NumberFieldPtr& K, const Coeffs& c, const std::string& what) {
  if (int(c.size()) != K->degree())
    fail(ErrorCode::SchemaError, what + " has " + std::to_string(c.size()) + " coefficients, the field has degree " +
                                     std::to_string(K->degree()));
  return NFElt::parse(K, c);
}

NumberFieldPtr build_field(const JobFile& job) {
  if (job.construct_d) return NumberField::create(construct_poly(*job.construct_d));
  ZPoly f;
  for (const auto& c : *job.poly) f.push_back(mpz_class(c));
  return NumberField::create(f);
}

ClassGroupData class_data(const NumberFieldPtr& K, const JobFile& job) {
  ClassGroupData cls;
  if (!job.class_group) return cls;
  int k = 0;
  for (const auto& jc : *job.class_group) {
    ClassGenerator g;
    g.name = "b" + std::to_string(k++);
    g.order = jc.order;
    g.generator = element(K, jc.generator, "class generator " + g.name);
    const NFElt h = element(K, jc.poly, "ideal polynomial of " + g.name);
    for (const auto& v : K->places_above(jc.q, 20)) {
      const int e = std::min(v.e, place_valuation(v, h));
      if (e > 0) g.ideal.push_back({jc.q, v.index, e});
    }
    cls.push_back(g);
  }
  return cls;
}

IdealDesc ideal_desc(const NumberFieldPtr& K, const JobIdeal& a) {
  IdealDesc d;
  d.class_exponents = a.class_exponents;
  if (a.principal) d.principal = element(K, *a.principal, "ideal generator");
  return d;
}

UnitData unit_data(const NumberFieldPtr& K, const JobFile& job) {
  UnitData u;
  for (const auto& c : *job.units) u.push_back(element(K, c, "unit"));
  return u;
}

ReportDocument run_once(const JobFile& job) {
  ReportDocument r;
  r.p = job.p;
  r.precision = job.precision;
  r.alpha = job.alpha;
  r.tasks = job.tasks;
  const int N = job.precision;
  auto record = [&](const std::string& task, const Error& e) {
    r.errors.push_back({task, std::string(error_code_name(e.code())), e.what()});
  };
  auto wants = [&](const char* t) { return std::find(job.tasks.begin(), job.tasks.end(), t) != job.tasks.end(); };
  auto guarded = [&](const std::string& task, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      record(task, e);
    } catch (const std::exception& e) {
      r.errors.push_back({task, "Internal", e.what()});
    }
  };

  NumberFieldPtr K;
  NFElt alpha;
  guarded("field", [&] {
    K = build_field(job);
    r.field_poly = to_strings(K->poly());
    alpha = element(K, job.alpha, "alpha");
  });
  if (!r.errors.empty()) return r;
  auto add_trace = [&](std::initializer_list<int> ns) {
    for (int n : ns)
      if (std::find(r.precisions_compared.begin(), r.precisions_compared.end(), n) == r.precisions_compared.end())
        r.precisions_compared.push_back(n);
  };

  if (wants("mu-local"))
    guarded("mu-local", [&] {
      std::vector<MuLocalLine> lines;
      const auto a = K->places_above(job.p, N);
      const auto b = K->places_above(job.p, N + 20);
      for (size_t i = 0; i < a.size(); ++i) {
        const int k = mu_p_part(a[i].completion).k;
        if (k != mu_p_part(b[i].completion).k) fail(ErrorCode::PrecisionExhausted, "local mu changes with precision");
        lines.push_back({a[i].q, a[i].index, a[i].e, a[i].f, pow_ui(job.p, k).get_si()});
      }
      r.mu_local = lines;
      add_trace({N, N + 20});
    });

  if (wants("diagnose") || wants("kernel"))
    guarded("diagnose", [&] {
      const CapitulationReport cr = diagnose(K, job.p, alpha, N);
      DiagnoseSection d;
      d.mu_K = cr.mu_K;
      d.mu_L = cr.mu_L;
      d.globally_cyclotomic = cr.globally_cyclotomic;
      d.ramification = cr.ramification ? ramification_key(*cr.ramification) : "undecided";
      for (const auto& pl : cr.places) {
        PlaceLine l;
        l.q = pl.q;
        l.index = pl.index;
        l.e = pl.e;
        l.f = pl.f;
        l.kind = kind_key(pl.c.kind);
        l.mu_Kv = int(pow_ui(job.p, pl.c.mu_Kv).get_si());
        l.mu_Lw = int(pow_ui(job.p, pl.c.mu_Lw).get_si());
        l.e_rel = pl.c.e_rel;
        l.f_rel = pl.c.f_rel;
        if (pl.c.split_root) l.witness = to_strings(pl.c.split_root->coeffs());
        l.witness_shift = pl.c.shift;
        l.w_one_minus_s = pl.c.w_one_minus_s;
        l.xi_exponent = pl.c.xi_exponent;
        l.h1 = pl.h1;
        d.places.push_back(l);
      }
      d.kernel_lo = cr.kernel_lo;
      d.kernel_hi = cr.kernel_hi;
      d.verdict = verdict_key(cr.verdict);
      d.rule = governing_rule(cr);
      d.im_psi = im_psi_order(cr);
      r.diagnose = d;
      for (const auto& c : cr.caveats) r.caveats.push_back(c);
      add_trace({N, N + 20});
    });

  if (wants("bp-trivial-class"))
    guarded("bp-trivial-class", [&] {
      r.bp_trivial_class_exponent = bp_order_trivial_class(K, job.p, unit_data(K, job), N);
      r.caveats.push_back("bp-trivial-class assumes the p-class group of K is trivial");
      add_trace({N, N + 20});
    });

  if (wants("fixed-point"))
    guarded("fixed-point", [&] {
      std::vector<TamePrime> tame;
      for (const auto& t : job.tame_ramified) tame.push_back({t.e, ideal_desc(K, t.ideal)});
      const FixedPointFactor f = fixed_point_factor(K, job.p, N, tame, class_data(K, job), unit_data(K, job));
      FixedPointSection s;
      s.numerator_exponent = f.numerator_exponent;
      s.index_exponent = f.index_exponent;
      s.exponent = f.exponent;
      std::optional<int> bpk = r.bp_trivial_class_exponent;
      if (!bpk && job.bp_K_order) bpk = vp(mpz_class(*job.bp_K_order), job.p, 1000);
      if (bpk && r.diagnose && r.diagnose->im_psi) {
        // W_L is trivial when no place of L above p has p-th roots of unity
        bool w_trivial = r.diagnose->mu_L == 1;
        for (const auto& pl : r.diagnose->places) w_trivial = w_trivial && pl.mu_Lw == 1;
        const PPowerInterval b = bp_fixed_points_bounds(f.exponent, *bpk, *r.diagnose->im_psi, job.p, w_trivial);
        s.bp_lo = b.lo;
        s.bp_hi = b.hi;
      } else {
        r.caveats.push_back("|BP_L^G| bounds need the diagnose task and |BP_K|");
      }
      r.fixed_point = s;
      add_trace({N, N + 20});
    });

  if (wants("log-ideal"))
    guarded("log-ideal", [&] {
      const auto places = K->places_above(job.p, N);
      const QuotientFrame fr = quotient_frame(unit_log_lattice(places, unit_data(K, job)));
      const PLattice v = log_ideal(places, fr, ideal_desc(K, *job.ideal), class_data(K, job));
      LogIdealSection s;
      s.coords = to_strings(ZVector(v.gens.col(0)));
      s.shift = v.shift;
      s.precision = v.precision;
      r.log_ideal = s;
    });
  return r;
}

bool has_precision_error(const ReportDocument& r) {
  for (const auto& e : r.errors)
    if (e.code == error_code_name(ErrorCode::PrecisionExhausted)) return true;
  return false;
}

}  // namespace

ReportDocument run(const JobFile& job, int escalate) {
  JobFile j = job;
  for (int k = 0;; ++k) {
    ReportDocument r = run_once(j);
    if (k < escalate && has_precision_error(r)) {
      j.precision += 20;
      continue;
    }
    if (k > 0) r.caveats.push_back("precision escalated from N = " + std::to_string(job.precision));
    return r;
  }
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::SchemaError: return 2;
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::LeopoldtRankWarning: return 3;
    default: return 4;
  }
}

int exit_code(const ReportDocument& r) {
  int code = 0;
  auto rank = [](int c) { return c == 2 ? 3 : (c == 3 ? 2 : (c == 4 ? 1 : 0)); };
  for (const auto& e : r.errors) {
    int c = 4;
    for (ErrorCode k : {ErrorCode::SchemaError, ErrorCode::PrecisionExhausted, ErrorCode::LeopoldtRankWarning})
      if (e.code == error_code_name(k)) c = exit_code_for(k);
    if (rank(c) > rank(code)) code = c;
  }
  if (code == 0 && r.diagnose && r.diagnose->verdict == verdict_key(Verdict::Undetermined)) code = 1;
  return code;
}

std::string emit(const ReportDocument& r, Format f) {
  if (f == Format::Machine) return json(r).dump(2) + "\n";
  std::ostringstream o;
  auto join = [](const Coeffs& c) {
    std::string s;
    for (const auto& x : c) s += (s.empty() ? "" : ", ") + x;
    return "[" + s + "]";
  };
  o << "field        " << join(r.field_poly) << "  (coefficients, low to high)\n";
  o << "p            " << r.p << "\n";
  o << "alpha        " << join(r.alpha) << "\n";
  o << "precision    N = " << r.precision;
  if (!r.precisions_compared.empty()) {
    o << ", stable across N =";
    for (int n : r.precisions_compared) o << " " << n;
  }
  o << "\n";
  if (r.mu_local) {
    o << "\nlocal roots of unity\n";
    for (const auto& l : *r.mu_local)
      o << "  place " << l.q << "." << l.index << "  e " << l.e << " f " << l.f << "  mu order " << l.mu << "\n";
  }
  if (r.diagnose) {
    const auto& d = *r.diagnose;
    o << "\ncapitulation\n";
    o << "  verdict    " << d.verdict;
    if (d.kernel_lo == d.kernel_hi) o << ", kernel order " << d.kernel_lo << "\n";
    else o << ", kernel order in {" << d.kernel_lo << ", " << d.kernel_hi << "}\n";
    o << "  rule       " << d.rule << "\n";
    o << "  mu(K) order " << d.mu_K << ", mu(L) order " << d.mu_L << ", ramification " << d.ramification << "\n";
    o << "  |Im psi|   " << (d.im_psi ? std::to_string(*d.im_psi) : std::string("undecided")) << "\n";
    for (const auto& pl : d.places) {
      o << "  place " << pl.q << "." << pl.index << "  e " << pl.e << " f " << pl.f << "  " << pl.kind << "  mu "
        << pl.mu_Kv << " -> " << pl.mu_Lw;
      if (pl.kind != "Split") o << "  e_rel " << pl.e_rel << " f_rel " << pl.f_rel << "  H1 order " << pl.h1;
      if (pl.w_one_minus_s) o << "  |W^(1-s)| " << *pl.w_one_minus_s;
      if (pl.xi_exponent) o << "  xi exponent " << *pl.xi_exponent;
      o << "\n";
      if (pl.witness) o << "    p-th root witness " << join(*pl.witness) << " / p^" << pl.witness_shift << "\n";
    }
  }
  if (r.bp_trivial_class_exponent)
    o << "\nBP_K (trivial class group)  order " << r.p << "^" << *r.bp_trivial_class_exponent << "\n";
  if (r.fixed_point) {
    const auto& s = *r.fixed_point;
    o << "\nfixed-point factor  " << r.p << "^" << s.exponent << "  (p^" << s.numerator_exponent << " / index p^"
      << s.index_exponent << ")\n";
    if (s.bp_lo) {
      if (*s.bp_lo == *s.bp_hi) o << "  |BP_L^G| = " << r.p << "^" << *s.bp_lo << "\n";
      else o << "  |BP_L^G| in [" << r.p << "^" << *s.bp_lo << ", " << r.p << "^" << *s.bp_hi << "]\n";
    }
  }
  if (r.log_ideal)
    o << "\nLog of ideal  " << join(r.log_ideal->coords) << " / p^" << r.log_ideal->shift << "  (mod p^"
      << r.log_ideal->precision << ")\n";
  if (!r.errors.empty()) {
    o << "\nerrors\n";
    for (const auto& e : r.errors) o << "  [" << e.task << "] " << e.code << ": " << e.message << "\n";
  }
  if (!r.caveats.empty()) {
    o << "\ncaveats\n";
    for (const auto& c : r.caveats) o << "  - " << c << "\n";
  }
  return o.str();
}

ReportDocument parse_report(const std::string& machine) {
  try {
    return json::parse(machine).get<ReportDocument>();
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace bp
