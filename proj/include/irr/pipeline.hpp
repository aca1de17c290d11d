#pragma once

// End-to-end commands: telescope, recon (exact values, scaling, deltas,
// growth, bound), scan over integrand families, closed-form measures, the
// Salikhov and Beukers families, a content-keyed result cache and the
// markdown report.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "irr/beukers.hpp"
#include "irr/diophantine.hpp"
#include "irr/errors.hpp"
#include "irr/integrate.hpp"
#include "irr/json_io.hpp"
#include "irr/quadrature.hpp"
#include "irr/recurrence.hpp"
#include "irr/telescope.hpp"
#include "irr/value.hpp"

namespace irr {

// --------------------------------------------------------------------------
// Configuration.

struct ReconOptions {
  long n_max = 1000;
  long digits = 1200;
  int max_order = 6;
  std::vector<long> delta_ns;  // extra n reported besides the final window
  long window = 11;
  double margin = 0.05;
  SubdominantChoice subdominant;
  std::optional<std::vector<Polynomial>> printed_recurrence;
  long numeric_n = 30;  // I(0..numeric_n) for the quadrature-only path
  bool check_precision_invariant = true;
};

inline SubdominantChoice subdominant_from_json(const Json& j) {
  SubdominantChoice c;
  if (j.is_null()) return c;
  if (j.is_number_integer()) {
    c.rule = SubdominantRule::RootIndex;
    c.index = j.get<std::size_t>();
    return c;
  }
  const std::string s = j.get<std::string>();
  if (s == "smallest")
    c.rule = SubdominantRule::SmallestModulus;
  else if (s == "second")
    c.rule = SubdominantRule::SecondLargestModulus;
  else
    throw Error(ErrorKind::InvalidInput, "subdominant must be \"smallest\", \"second\" or a root index");
  return c;
}

inline ReconOptions recon_options_from_json(const Json& cfg) {
  ReconOptions o;
  o.n_max = cfg.value("n_max", o.n_max);
  o.digits = cfg.value("digits", std::max(o.digits, (o.n_max * 6 + 4) / 5));
  o.max_order = cfg.value("max_order", o.max_order);
  if (cfg.contains("delta_ns")) o.delta_ns = cfg.at("delta_ns").get<std::vector<long>>();
  o.window = cfg.value("window", o.window);
  o.margin = cfg.value("margin", o.margin);
  if (cfg.contains("subdominant")) o.subdominant = subdominant_from_json(cfg.at("subdominant"));
  if (cfg.contains("printed_recurrence")) o.printed_recurrence = recurrence_coeffs_from_json(cfg.at("printed_recurrence"));
  o.numeric_n = cfg.value("numeric_n", o.numeric_n);
  if (o.n_max < 1) throw Error(ErrorKind::InvalidInput, "n_max must be positive");
  if (o.window < 1 || o.window > o.n_max + 1) throw Error(ErrorKind::InvalidInput, "window must lie in 1..n_max+1");
  if (o.check_precision_invariant && o.digits * 5 < o.n_max * 6)
    throw Error(ErrorKind::InvalidInput, "digits must be at least 1.2 * n_max");
  return o;
}

// --------------------------------------------------------------------------
// Target constant: I(n) = A(n) + B(n) x when every atom sequence is a fixed
// multiple of one sequence.

struct TargetSplit {
  std::string reason;  // empty on success
  ExactValue x;
  std::vector<Rational> A, B;
};

inline TargetSplit split_target(const std::vector<ExactValue>& vals) {
  TargetSplit t;
  CoordinateSequences cs = coordinate_sequences(vals);
  if (cs.atoms.empty()) {
    t.reason = "no target constant: every I(n) is rational";
    return t;
  }
  const std::vector<Rational>* ref = nullptr;
  std::size_t pivot = 0;
  for (const auto& [a, seq] : cs.atoms)
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (!is_zero(seq[i])) {
        if (!ref || i < pivot) {
          ref = &seq;
          pivot = i;
        }
        break;
      }
  if (!ref) {
    t.reason = "no target constant: atom coordinates vanish";
    return t;
  }
  for (const auto& [a, seq] : cs.atoms) {
    const Rational ratio = seq[pivot] / (*ref)[pivot];
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i] != ratio * (*ref)[i]) {
        t.reason = "more than one independent constant in I(n)";
        return t;
      }
    if (!is_zero(ratio)) t.x.add_coord(a, ratio);
  }
  t.A = cs.rational;
  t.B = *ref;
  return t;
}

// --------------------------------------------------------------------------
// Recon.

struct ReconResult {
  Json json;
  std::optional<MeasureBound> bound;
};

namespace detail {

/// Orientation check of a printed recurrence against exact values.
inline Json orientation_check(const std::vector<Polynomial>& printed, const LinearRecurrence& derived,
                              const std::vector<ExactValue>& vals) {
  Json j;
  const LinearRecurrence p(printed);
  const int L = p.order();
  bool annihilates = static_cast<int>(vals.size()) > L + 2;
  long first_bad = -1;
  for (long n = 0; annihilates && n + L < static_cast<long>(vals.size()) && n < 8; ++n) {
    std::vector<ExactValue> window(vals.begin() + n, vals.begin() + n + L + 1);
    if (!recurrence_residual(p, window, n).is_zero()) {
      annihilates = false;
      first_bad = n;
    }
  }
  j["printed"] = to_json(p);
  j["printed_annihilates_values"] = annihilates;
  j["matches_derived"] = p == derived;
  if (!annihilates) {
    std::vector<Polynomial> rev = printed;
    std::reverse(rev.begin(), rev.end());
    j["note"] = "printed recurrence fails on the exact values at n = " + std::to_string(first_bad) +
                "; the derived recurrence is used" +
                (LinearRecurrence(rev) == derived ? " (it equals the printed one with the coefficient list reversed)"
                                                  : "");
  }
  return j;
}

struct DeltaTable {
  std::vector<DeltaReport> rows;
  Json json = Json::array();
  long digits_used = 0;
  std::vector<std::string> notes;
};

inline DeltaTable delta_table(const TargetSplit& t, const std::vector<long>& ns, long digits, AtomRegistry& reg) {
  DeltaTable out;
  out.digits_used = digits;
  BigFloat x = t.x.evaluate(reg, bits_for_digits(digits));
  for (long n : ns) {
    const auto i = static_cast<std::size_t>(n);
    if (i >= t.B.size()) continue;
    Json row{{"n", n}};
    if (is_zero(t.B[i])) {
      row["error"] = "B(n) = 0";
      out.json.push_back(row);
      continue;
    }
    const Rational q = -t.A[i] / t.B[i];
    for (int attempt = 0;; ++attempt) {
      try {
        DeltaReport r = empirical_delta(x, q.get_num(), q.get_den(), n);
        row = to_json(r);
        out.rows.push_back(r);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientPrecision || attempt >= 6) {
          row["error"] = e.what();
          break;
        }
        const long need_digits = static_cast<long>(static_cast<double>(e.detail()) / 3.3219) + 20;
        const long next = std::max(out.digits_used * 5 / 4, need_digits);
        out.notes.push_back("precision escalated from " + std::to_string(out.digits_used) + " to " +
                            std::to_string(next) + " digits at n = " + std::to_string(n));
        out.digits_used = next;
        x = t.x.evaluate(reg, bits_for_digits(next));
      }
    }
    out.json.push_back(row);
  }
  return out;
}

inline Json sequence_head(const std::vector<Rational>& v, std::size_t count) {
  Json a = Json::array();
  for (std::size_t i = 0; i < std::min(count, v.size()); ++i) a.push_back(v[i].get_str());
  return a;
}

}  // namespace detail

/// Quadrature-only reconnaissance for kernels without an exact decomposition.
inline ReconResult recon_numeric(const HyperexponentialKernel& k, const ReconOptions& o, const std::string& why) {
  ReconResult out;
  Json& j = out.json;
  j["mode"] = "numeric-only";
  j["exact_decomposition"] = why;
  std::optional<TelescoperResult> tele;
  try {
    tele = derive_recurrence(k, o.max_order);
    j["telescope"] = to_json(*tele);
  } catch (const Error& e) {
    j["telescope_error"] = error_json(e);
  }
  const Float100 tol("1e-60");
  std::vector<Float100> vals;
  Json table = Json::array();
  for (long n = 0; n <= o.numeric_n; ++n) {
    vals.push_back(kernel_integral_numeric<Float100>(k, static_cast<unsigned>(n), tol));
    std::ostringstream s;
    s << std::setprecision(30) << std::scientific << vals.back();
    table.push_back(Json{{"n", n}, {"I", s.str()}});
  }
  j["values"] = table;
  using boost::multiprecision::abs;
  using boost::multiprecision::log;
  const long top = o.numeric_n;
  Float100 rate = log(abs(vals[static_cast<std::size_t>(top)])) / Float100(top);
  {
    std::ostringstream s;
    s << std::setprecision(20) << rate;
    j["decay_rate"] = s.str();  // log|I(n)| / n at the largest n
  }
  const double observed = rate.convert_to<double>();
  std::string verdict = std::string("numeric-only: I(n) ") + (observed < 0 ? "decays" : "does not decay") +
                        " (observed log|I(n)|/n = " + std::to_string(observed) + ")";
  if (tele) {
    // Relative residual of the quadrature values in the derived recurrence.
    Float100 worst = 0;
    const int L = tele->recurrence.order();
    for (long n = tele->min_valid_n.value_or(0); n + L <= top; ++n) {
      Float100 acc = 0, big = 0;
      for (int i = 0; i <= L; ++i) {
        Float100 t = to_real<Float100>(tele->recurrence.coeff(i)(Rational(n))) * vals[static_cast<std::size_t>(n + i)];
        acc += t;
        big = std::max(big, Float100(abs(t)));
      }
      if (big > 0) worst = std::max(worst, Float100(abs(acc) / big));
    }
    std::ostringstream s;
    s << std::setprecision(6) << std::scientific << worst;
    j["recurrence_residual"] = s.str();
    try {
      GrowthAnalysis g = growth_rates(tele->recurrence, 40, o.subdominant);
      j["growth"] = to_json(g);
      verdict += "; subdominant root gives " + std::to_string(g.subdominant_log.to_double());
    } catch (const Error& e) {
      j["growth_error"] = error_json(e);
    }
  }
  j["verdict"] = verdict;
  j["caveats"] = Json::array({"exact decomposition unsupported; no rational approximations or deltas",
                              "values from tanh-sinh quadrature at 100 digits"});
  return out;
}

/// telescope -> initial values -> exact propagation -> scaling -> deltas ->
/// growth -> bound.
inline ReconResult recon(const HyperexponentialKernel& k, const ReconOptions& o) {
  ReconResult out;
  Json& j = out.json;
  j["kernel"] = to_json(k);
  TelescoperResult tele = derive_recurrence(k, o.max_order);
  j["telescope"] = to_json(tele);
  if (!tele.min_valid_n) throw Error(ErrorKind::NeverVanishes, "boundary terms of the certificate do not vanish");
  const long n0 = *tele.min_valid_n;
  const int L = tele.recurrence.order();
  std::vector<ExactValue> init;
  try {
    init = initial_values(k, static_cast<int>(n0 + L));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedDenominator) throw;
    ReconResult num = recon_numeric(k, o, e.what());
    num.json["kernel"] = to_json(k);
    return num;
  }
  j["mode"] = "exact";
  Json iv = Json::array();
  for (const auto& v : init) iv.push_back(to_json(v));
  j["initial_values"] = iv;
  const std::vector<ExactValue> vals = evaluate_exact(tele.recurrence, init, o.n_max);
  std::vector<std::string> notes;
  if (o.printed_recurrence) {
    Json oc = detail::orientation_check(*o.printed_recurrence, tele.recurrence, vals);
    if (oc.contains("note")) notes.push_back(oc["note"]);
    j["orientation"] = oc;
  }
  TargetSplit t = split_target(vals);
  if (!t.reason.empty()) {
    j["verdict"] = "not-applicable (" + t.reason + ")";
    j["notes"] = notes;
    return out;
  }
  j["target"] = t.x.to_string();
  j["A_head"] = detail::sequence_head(t.A, 6);
  j["B_head"] = detail::sequence_head(t.B, 6);
  Json listed = Json::array();
  for (long n : o.delta_ns)
    if (n >= 0 && n <= o.n_max)
      listed.push_back(Json{{"n", n}, {"A", t.A[static_cast<std::size_t>(n)].get_str()},
                            {"B", t.B[static_cast<std::size_t>(n)].get_str()}});
  j["listed_values"] = listed;

  std::optional<ScalingRule> rule;
  try {
    rule = scaling_search(std::vector<std::vector<Rational>>{t.A, t.B});
    j["scaling"] = to_json(*rule);
  } catch (const Error& e) {
    j["scaling_error"] = error_json(e);
  }

  std::vector<long> ns = o.delta_ns;
  for (long n = o.n_max - o.window + 1; n <= o.n_max; ++n) ns.push_back(n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  AtomRegistry reg;
  detail::DeltaTable dt = detail::delta_table(t, ns, o.digits, reg);
  notes.insert(notes.end(), dt.notes.begin(), dt.notes.end());
  j["deltas"] = dt.json;
  j["digits_used"] = dt.digits_used;

  std::optional<DeltaReport> worst;
  bool window_complete = true;
  for (long n = o.n_max - o.window + 1; n <= o.n_max; ++n) {
    auto it = std::find_if(dt.rows.begin(), dt.rows.end(), [&](const DeltaReport& r) { return r.n == n; });
    if (it == dt.rows.end()) {
      window_complete = false;
      continue;
    }
    if (!worst || it->delta < worst->delta) worst = *it;
  }
  if (worst) j["window_min"] = to_json(*worst);

  try {
    GrowthAnalysis g = growth_rates(tele.recurrence, 40, o.subdominant);
    j["growth"] = to_json(g);
    if (rule) {
      MeasureBound mb = measure_bound(g, *rule, 128);
      mb.caveats.push_back("recurrence valid for n >= " + std::to_string(n0));
      j["bound"] = to_json(mb);
      out.bound = mb;
    }
  } catch (const Error& e) {
    j["bound_error"] = error_json(e);
  }
  const BigFloat margin = BigFloat::from_rational(Rational(static_cast<long>(o.margin * 1e6), 1000000), 64);
  const bool promising = window_complete && worst && worst->delta > margin;
  j["verdict"] = promising ? "promising" : "not promising";
  j["notes"] = notes;
  return out;
}

// --------------------------------------------------------------------------
// Scan over 1/(a + b x + c x^2) on [0, 1].

struct ScanCandidate {
  long a, b, c;
};

inline HyperexponentialKernel quadratic_kernel(long a, long b, long c) {
  const Polynomial p({Rational(a), Rational(b), Rational(c)});
  const Polynomial x = Polynomial::variable(Var::x);
  return {RationalFunction(x * (Polynomial::constant(1) - x), p), RationalFunction(Polynomial::constant(1), p),
          Rational(0), Rational(1)};
}

inline std::vector<ScanCandidate> scan_candidates(const Json& cfg) {
  auto range = [&](const char* key, long lo, long hi) {
    std::pair<long, long> r{lo, hi};
    if (cfg.contains(key)) r = {cfg.at(key).at(0).get<long>(), cfg.at(key).at(1).get<long>()};
    return r;
  };
  const auto ra = range("a", 1, 10), rb = range("b", 1, 10), rc = range("c", 1, 10);
  const bool coprime = cfg.value("gcd_filter", true);
  std::vector<ScanCandidate> out;
  for (long a = ra.first; a <= ra.second; ++a)
    for (long b = rb.first; b <= rb.second; ++b)
      for (long c = rc.first; c <= rc.second; ++c) {
        if (a <= 0) continue;  // 1/(b x + c x^2) has a pole at 0
        if (coprime && std::gcd(std::gcd(a, b), c) != 1) continue;
        out.push_back({a, b, c});
      }
  return out;
}

/// Runs f(i) for i in [0, count) on `jobs` threads; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& f) {
  std::vector<T> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) results[i] = f(i);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

inline Json scan_one(const ScanCandidate& cand, const ReconOptions& o) {
  Json r{{"id", Json::array({cand.a, cand.b, cand.c})}};
  try {
    ReconResult res = recon(quadratic_kernel(cand.a, cand.b, cand.c), o);
    const Json& j = res.json;
    if (j.contains("target")) r["target"] = j["target"];
    if (j.contains("window_min")) {
      r["delta_min"] = j["window_min"]["delta"];
      r["measure_estimate"] = j["window_min"]["measure_estimate"];
    }
    const std::string verdict = j.value("verdict", "");
    if (verdict.rfind("not-applicable", 0) == 0) {
      r["status"] = "NotApplicable";
      r["reason"] = verdict;
    } else if (j.contains("bound") && verdict == "promising") {
      r["status"] = "Success";
      r["mu"] = j["bound"]["mu"];
    } else {
      r["status"] = "NoPositiveDelta";
      if (j.contains("bound_error")) r["reason"] = j["bound_error"]["message"];
      else if (!j.contains("bound")) r["reason"] = "no scaling rule";
      else r["reason"] = "empirical deltas below margin";
    }
  } catch (const Error& e) {
    r["status"] = "Error";
    r["error"] = error_json(e);
  }
  return r;
}

inline Json cmd_scan(const Json& cfg, unsigned jobs) {
  ReconOptions o;
  o.n_max = cfg.value("n_max", 200L);
  o.digits = cfg.value("digits", std::max(300L, (o.n_max * 6 + 4) / 5));
  o.window = cfg.value("window", 11L);
  o.margin = cfg.value("margin", 0.05);
  o.max_order = cfg.value("max_order", 6);
  if (o.digits * 5 < o.n_max * 6) throw Error(ErrorKind::InvalidInput, "digits must be at least 1.2 * n_max");
  const auto cands = scan_candidates(cfg);
  auto rows = parallel_map<Json>(cands.size(), jobs, [&](std::size_t i) { return scan_one(cands[i], o); });
  Json successes = Json::array(), others = Json::array();
  std::map<std::string, long> counts;
  for (auto& r : rows) {
    counts[r["status"].get<std::string>()]++;
    (r["status"] == "Success" ? successes : others).push_back(r);
  }
  Json out{{"candidate_count", cands.size()}, {"successes", successes}, {"others", others}};
  Json cj = Json::object();
  for (const auto& [k, v] : counts) cj[k] = v;
  out["status_counts"] = cj;
  return out;
}

// --------------------------------------------------------------------------
// Closed-form measures and the kernel bound.

inline Json cmd_measure(const Json& cfg, int& code) {
  Json out;
  const long prec = 128;
  std::optional<BigFloat> theorem_mu;
  if (cfg.contains("theorem")) {
    const std::string th = cfg.at("theorem");
    if (th == "alladi_robinson") {
      const long a = cfg.at("a"), b = cfg.at("b");
      theorem_mu = alladi_robinson_measure(a, b, prec);
      out["theorem"] = Json{{"name", th}, {"a", a}, {"b", b}, {"mu", to_json(*theorem_mu)}};
    } else if (th == "arctan") {
      const long a = cfg.at("a");
      theorem_mu = arctan_measure(a, prec);
      out["theorem"] = Json{{"name", th}, {"a", a}, {"mu", to_json(*theorem_mu)}};
    } else if (th == "apery") {
      const BigFloat d = apery_delta(prec);
      const BigFloat one = BigFloat::from_integer(1, prec);
      theorem_mu = one + one / d;
      out["theorem"] = Json{{"name", th}, {"delta", to_json(d)}, {"mu", to_json(*theorem_mu)}};
    } else {
      throw Error(ErrorKind::InvalidInput, "unknown theorem \"" + th + "\"");
    }
  }
  if (cfg.contains("growth")) {
    const Json& g = cfg.at("growth");
    auto num = [&](const char* key) {
      return BigFloat::from_rational(rational_from_json(g.at(key)), prec);
    };
    out["growth_bound"] = to_json(measure_bound(num("a"), num("b"), num("d")));
  }
  if (cfg.contains("kernel")) {
    ReconOptions o = recon_options_from_json(cfg);
    o.delta_ns.clear();
    ReconResult r = recon(kernel_from_json(cfg.at("kernel")), o);
    if (r.json.contains("bound")) {
      out["kernel_bound"] = r.json["bound"];
    } else {
      out["kernel_bound_error"] = r.json.value("bound_error", Json("no bound: " + r.json.value("verdict", std::string())));
      if (r.json.contains("bound_error")) code = r.json["bound_error"]["exit_code"];
    }
    if (theorem_mu && r.bound) {
      const BigFloat diff = (*theorem_mu - r.bound->mu).abs();
      out["agreement"] = to_json(diff, 6);
      out["agree_1e-12"] = diff < BigFloat::from_rational(Rational(1, 1000000000000L), prec);
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "measure needs \"theorem\", \"growth\" or \"kernel\"");
  return out;
}

// --------------------------------------------------------------------------
// Salikhov family.

struct SalikhovPipeline {
  bool cubic_matches = false;
  bool shared_B = false;
  ScalingRule rule;
  BigFloat nu;
  Json json;
};

/// Telescopes E1, propagates E1 and E2 to n_max, splits off A1, A2, B and
/// derives nu from the recurrence's roots and the found scaling rule.
inline SalikhovPipeline salikhov_pipeline(long a, long n_max, int max_order = 6) {
  SalikhovPipeline out;
  auto [k1, k2] = salikhov_kernels(a);
  TelescoperResult tele = derive_recurrence(k1, max_order);
  const Polynomial chi = characteristic_poly(tele.recurrence);
  const Polynomial cubic = primitive_part(salikhov_cubic(a));
  out.cubic_matches = chi == cubic || chi == -cubic;
  const long n0 = tele.min_valid_n.value_or(0);
  const int L = tele.recurrence.order();
  auto v1 = evaluate_exact(tele.recurrence, initial_values(k1, static_cast<int>(n0 + L)), n_max);
  auto v2 = evaluate_exact(tele.recurrence, initial_values(k2, static_cast<int>(n0 + L)), n_max);
  std::vector<Rational> A1, A2, B1, B2;
  for (long n = 0; n <= n_max; ++n) {
    auto f1 = in_log_basis(v1[static_cast<std::size_t>(n)], {Rational(a + 1, a + 2)});
    auto f2 = in_log_basis(v2[static_cast<std::size_t>(n)], {Rational(a, a + 1)});
    if (!f1 || !f2) throw Error(ErrorKind::InternalCheckFailed, "E1 or E2 leaves the expected log basis");
    A1.push_back(f1->rational);
    B1.push_back(f1->log_coords[0]);
    A2.push_back(f2->rational);
    B2.push_back(f2->log_coords[0]);
  }
  out.shared_B = B1 == B2;
  out.rule = scaling_search(std::vector<std::vector<Rational>>{A1, A2, B1});
  const long prec = 128;
  GrowthAnalysis g = growth_rates(tele.recurrence, 60, {SubdominantRule::SecondLargestModulus, 0});
  const BigFloat d = out.rule.denom_growth(prec);
  const BigFloat den = g.subdominant_log + d;
  if (den.sign() >= 0) throw Error(ErrorKind::NonpositiveDelta, "pipeline Salikhov denominator is not negative");
  out.nu = -((g.dominant_log + d) / den);
  out.json = Json{{"recurrence", to_json(tele.recurrence)},
                  {"min_valid_n", n0},
                  {"cubic_matches", out.cubic_matches},
                  {"shared_B", out.shared_B},
                  {"scaling", to_json(out.rule)},
                  {"K_matches", out.rule.K == salikhov_K(a)},
                  {"growth", to_json(g)},
                  {"nu", to_json(out.nu)}};
  return out;
}

inline Json cmd_salikhov(const Json& cfg, unsigned jobs) {
  const long a_lo = cfg.value("a_lo", 1L), a_hi = cfg.value("a_hi", 5L);
  const long pipe_max = cfg.value("pipeline_a_max", 2L);
  const long n_max = cfg.value("n_max", 200L);
  if (a_lo < 1 || a_hi < a_lo) throw Error(ErrorKind::InvalidInput, "need 1 <= a_lo <= a_hi");
  auto rows = parallel_map<Json>(static_cast<std::size_t>(a_hi - a_lo + 1), jobs, [&](std::size_t i) {
    const long a = a_lo + static_cast<long>(i);
    Json r{{"a", a}};
    try {
      const BigFloat nu = salikhov_nu(a);
      r["K"] = salikhov_K(a).get_str();
      r["root_check"] = salikhov_root_check(a);
      r["nu"] = to_json(nu);
      r["asymptotic_ratio"] = to_json(nu / salikhov_nu_asymptotic(a), 8);
      r["branch"] = a == 1 ? "|C3|" : "C2";
      if (a <= pipe_max) {
        SalikhovPipeline p = salikhov_pipeline(a, n_max);
        r["pipeline"] = p.json;
        const BigFloat diff = (p.nu - nu).abs();
        r["pipeline_agrees"] = diff.is_zero() || diff.ilog2() < -40;
      }
    } catch (const Error& e) {
      r["error"] = error_json(e);
    }
    return r;
  });
  Json table = Json::array();
  for (auto& r : rows) table.push_back(r);
  return Json{{"table", table}};
}

// --------------------------------------------------------------------------
// Beukers family.

inline Json beukers_one(long a, long digits, long n_lo, long n_hi) {
  Json r{{"a", a}};
  try {
    BigFloat printed(Integer(0), 0, 64), reversed(Integer(0), 0, 64);
    for (long n = 0; n <= 10; ++n) {
      printed = std::max(printed, beukers_residual(a, n, digits));
      reversed = std::max(reversed, beukers_residual(a, n, digits, true));
    }
    r["residual_printed"] = to_json(printed, 6);
    r["residual_reversed"] = to_json(reversed, 6);
    r["orientation"] = printed < reversed ? "printed" : "reversed";
    r["dilog_reading"] = dilog_is_shifted(a, digits) ? "dilog(z) = Li2(1-z)" : "dilog(z) = Li2(z)";
    Json coeffs = Json::array();
    const auto prov = beukers_provenance();
    const auto inst = beukers_printed_coefficients(a);
    for (std::size_t i = 0; i < 4; ++i) coeffs.push_back(Json{{"printed", prov[i]}, {"instantiated", to_json(inst[i])}});
    r["recurrence"] = coeffs;
    BeukersBase base = reconstruct_base(a, digits);
    Json tri = Json::array();
    for (const auto& t : base.base) tri.push_back(Json{{"A", to_json(t.A)}, {"B", to_json(t.B)}, {"C", to_json(t.C)}});
    r["base"] = tri;
    r["gate_error"] = to_json(base.worst_gate_error, 6);
    TripleDeltaSummary s = triple_delta(a, n_lo, n_hi, digits);
    Json rows = Json::array();
    bool positive = true;
    for (const auto& d : s.reports) {
      rows.push_back(Json{{"n", d.n}, {"delta", to_json(d.delta, 12)}, {"near_trivial", d.near_trivial}});
      if (d.delta.sign() <= 0) positive = false;
    }
    r["scaling"] = to_json(s.rule);
    r["triple_deltas"] = rows;
    r["all_positive"] = positive;
    r["coeff_growth"] = to_json(s.coeff_growth, 10);
    r["dominant_log"] = to_json(s.dominant_log, 10);
  } catch (const Error& e) {
    r["error"] = error_json(e);
  }
  return r;
}

inline Json cmd_beukers(const Json& cfg, unsigned jobs) {
  std::vector<long> as = cfg.contains("a") ? cfg.at("a").get<std::vector<long>>() : std::vector<long>{2};
  const long digits = cfg.value("digits", 60L);
  const long n_lo = cfg.value("n_lo", 40L), n_hi = cfg.value("n_hi", 50L);
  auto rows = parallel_map<Json>(as.size(), jobs, [&](std::size_t i) { return beukers_one(as[i], digits, n_lo, n_hi); });
  Json table = Json::array();
  for (auto& r : rows) table.push_back(r);
  return Json{{"families", table}};
}

// --------------------------------------------------------------------------
// Cache.

inline std::string cache_key(const std::string& command, const Json& cfg) {
  return hex64(fnv1a(command + "\n" + cfg.dump()));
}

/// Serialized result for (command, cfg), computed or read from `cache_dir`.
inline std::string run_cached(const std::string& command, const Json& cfg, const std::string& cache_dir,
                              const std::function<Json()>& compute, bool& hit) {
  namespace fs = std::filesystem;
  hit = false;
  const std::string key = cache_key(command, cfg);
  fs::path path;
  if (!cache_dir.empty()) {
    path = fs::path(cache_dir) / (command + "-" + key + ".json");
    if (fs::exists(path)) {
      std::ifstream in(path);
      std::stringstream ss;
      ss << in.rdbuf();
      hit = true;
      return ss.str();
    }
  }
  Json result = compute();
  result["command"] = command;
  result["config"] = cfg;
  result["cache_key"] = key;
  const std::string text = result.dump(2) + "\n";
  if (!cache_dir.empty()) {
    fs::create_directories(cache_dir);
    std::ofstream(path) << text;
  }
  return text;
}

// --------------------------------------------------------------------------
// Markdown report.

namespace detail {

inline std::string md_value(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline void report_recon(std::ostringstream& md, const Json& r) {
  if (r.contains("kernel")) md << "Kernel: `" << r["kernel"].dump() << "`\n\n";
  if (r.contains("telescope")) {
    const Json& t = r["telescope"];
    md << "Recurrence (order " << t["recurrence"]["order"] << "): `" << md_value(t["recurrence"]["text"]) << "`\n\n";
    md << "Certificate hash: `" << md_value(t["certificate"]["hash"]) << "`, valid for n >= "
       << md_value(t["min_valid_n"]) << "\n\n";
  }
  if (r.contains("orientation") && r["orientation"].contains("note"))
    md << "Orientation note: " << md_value(r["orientation"]["note"]) << "\n\n";
  if (r.contains("initial_values")) {
    md << "Initial values:\n\n";
    long n = 0;
    for (const auto& v : r["initial_values"]) md << "- I(" << n++ << ") = " << md_value(v["text"]) << "\n";
    md << "\n";
  }
  if (r.contains("target")) md << "Target constant: `" << md_value(r["target"]) << "`\n\n";
  if (r.contains("deltas")) {
    md << "| n | delta | measure estimate |\n|---|---|---|\n";
    for (const auto& d : r["deltas"])
      md << "| " << d["n"] << " | " << (d.contains("delta") ? md_value(d["delta"]) : md_value(d["error"])) << " | "
         << (d.contains("measure_estimate") ? md_value(d["measure_estimate"]) : "") << " |\n";
    md << "\n";
  }
  if (r.contains("scaling"))
    md << "Scaling evidence: `" << md_value(r["scaling"]["text"]) << "` integral up to n = "
       << r["scaling"]["verified_upto"] << "\n\n";
  if (r.contains("growth"))
    md << "Growth: characteristic polynomial " << r["growth"]["char_poly"].dump() << ", dominant log "
       << md_value(r["growth"]["dominant_log"]) << ", subdominant log " << md_value(r["growth"]["subdominant_log"])
       << "\n\n";
  if (r.contains("bound")) {
    md << "Bound: delta = " << md_value(r["bound"]["delta"]) << ", mu = " << md_value(r["bound"]["mu"]) << "\n\n";
    for (const auto& c : r["bound"]["caveats"]) md << "- caveat: " << md_value(c) << "\n";
    md << "\n";
  }
  if (r.contains("verdict")) md << "Verdict: " << md_value(r["verdict"]) << "\n\n";
  if (r.contains("notes"))
    for (const auto& n : r["notes"]) md << "- note: " << md_value(n) << "\n";
}

}  // namespace detail

/// Deterministic markdown article from every cached result.
inline std::string cmd_report(const std::string& cache_dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (!cache_dir.empty() && fs::exists(cache_dir))
    for (const auto& e : fs::directory_iterator(cache_dir))
      if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) return "nothing to report\n";
  std::ostringstream md;
  md << "# Irrationality reconnaissance report\n\n";
  for (const auto& f : files) {
    std::ifstream in(f);
    Json r = Json::parse(in);
    const std::string cmd = r.value("command", "unknown");
    md << "## " << cmd << " `" << r.value("cache_key", "") << "`\n\n";
    if (r.contains("error")) {
      md << "Error: " << detail::md_value(r["error"]["message"]) << "\n\n";
      continue;
    }
    if (cmd == "recon" || cmd == "telescope") {
      detail::report_recon(md, r);
    } else if (cmd == "scan") {
      md << "Candidates: " << r["candidate_count"] << "; status counts " << r["status_counts"].dump() << "\n\n";
      md << "| id | target | min delta | mu |\n|---|---|---|---|\n";
      for (const auto& s : r["successes"])
        md << "| " << s["id"].dump() << " | " << detail::md_value(s.value("target", Json(""))) << " | "
           << detail::md_value(s.value("delta_min", Json(""))) << " | " << detail::md_value(s.value("mu", Json("")))
           << " |\n";
      md << "\n";
    } else if (cmd == "measure") {
      md << "```json\n" << r.dump(2) << "\n```\n\n";
    } else if (cmd == "salikhov") {
      md << "| a | K | root check | nu | ratio | pipeline |\n|---|---|---|---|---|---|\n";
      for (const auto& t : r["table"])
        md << "| " << t["a"] << " | " << detail::md_value(t.value("K", Json(""))) << " | "
           << t.value("root_check", Json("")).dump() << " | " << detail::md_value(t.value("nu", Json(""))) << " | "
           << detail::md_value(t.value("asymptotic_ratio", Json(""))) << " | "
           << (t.contains("pipeline_agrees") ? t["pipeline_agrees"].dump() : "-") << " |\n";
      md << "\n";
    } else if (cmd == "beukers") {
      for (const auto& b : r["families"]) {
        md << "### a = " << b["a"] << "\n\n";
        if (b.contains("error")) {
          md << "Error: " << detail::md_value(b["error"]["message"]) << "\n\n";
          continue;
        }
        md << "Residual (printed orientation): " << detail::md_value(b["residual_printed"])
           << "; reversed: " << detail::md_value(b["residual_reversed"]) << "; " << detail::md_value(b["dilog_reading"])
           << "\n\n";
        md << "Scaling `" << detail::md_value(b["scaling"]["text"]) << "`; all triple deltas positive: "
           << b["all_positive"] << "\n\n";
      }
    } else {
      md << "```json\n" << r.dump(2) << "\n```\n\n";
    }
  }
  return md.str();
}

}  // namespace irr
