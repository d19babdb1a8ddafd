#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "maxclass5/classify.hpp"
#include "maxclass5/consistency.hpp"
#include "maxclass5/errors.hpp"
#include "maxclass5/isomorphism.hpp"
#include "maxclass5/structure.hpp"
#include "maxclass5/transfer.hpp"

namespace maxclass5 {

/// Worker count: `requested` (0 = hardware concurrency), capped by the
/// MAXCLASS5_THREADS environment variable.
inline unsigned worker_count(unsigned requested = 0) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MAXCLASS5_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

/// Calls fn(i) for i in [0, count) on a pool of workers. The first
/// exception in index order is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

enum class PropositionId { build, prop31, prop32, prop33, thm22, lemma21 };

inline std::string to_string(PropositionId id) {
  switch (id) {
    case PropositionId::build: return "build";
    case PropositionId::prop31: return "prop31";
    case PropositionId::prop32: return "prop32";
    case PropositionId::prop33: return "prop33";
    case PropositionId::thm22: return "thm22";
    case PropositionId::lemma21: return "lemma21";
  }
  return "";
}

inline PropositionId parse_proposition(const std::string& s) {
  for (auto id : {PropositionId::build, PropositionId::prop31, PropositionId::prop32,
                  PropositionId::prop33, PropositionId::thm22, PropositionId::lemma21}) {
    if (to_string(id) == s) return id;
  }
  throw ParamError("proposition", "unknown id '" + s +
                                      "' (build, prop31, prop32, prop33, thm22, lemma21)");
}

/// Sweep range each check is stated for.
inline std::pair<int, int> default_range(PropositionId id) {
  switch (id) {
    case PropositionId::build: return {4, 8};
    case PropositionId::prop32:
    case PropositionId::prop33: return {5, 8};
    default: return {4, 7};
  }
}

struct SweepOptions {
  int n_min = 4;
  int n_max = 7;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = kDefaultSamples;
  /// For the build sweep, orders above this only take the a = () tuples.
  int full_n_max = 7;
  /// Confirm family membership by brute-force isomorphism where n <= 5.
  bool brute_force = true;
};

struct TupleObservation {
  PresentationParams params;
  FamilyLabel label;
  TransferFingerprint fingerprint{};
  int defect_k = 0;
  int coclass = 0;
  int invariant_e = 0;
  std::uint64_t gamma2_exponent = 0;
  std::array<std::uint64_t, 6> factor_orders{};
  int order25_count = 0;
  bool triggered = false;
  /// Isomorphic to the representative with a normalized; set where the
  /// brute-force check ran.
  std::optional<bool> isomorphic_to_normalized;
  std::optional<FamilyLabel> normalized;
  // Build sweep only.
  std::uint64_t triples_checked = 0;
  std::uint64_t closure_size = 0;
  bool consistent = true;
};

struct Violation {
  PresentationParams params;
  std::string reason;
  std::string category;
};

struct PropositionReport {
  PropositionId id = PropositionId::prop31;
  int n_min = 0;
  int n_max = 0;
  std::uint64_t seed = 0;
  std::uint64_t tuples_expected = 0;
  std::uint64_t tuples_tested = 0;
  std::uint64_t triggered = 0;
  std::vector<Violation> violations;
  std::vector<TupleObservation> observations;
  std::map<std::string, std::uint64_t> fingerprint_counts;
  std::vector<std::string> notes;

  bool passed() const { return violations.empty() && tuples_tested == tuples_expected; }
};

inline std::string violation_category(const PresentationParams& p) {
  return p.k() == 3 ? "k=3 (outside verified family)" : "k<=2";
}

/// Tuples a sweep visits for order 5^n.
inline std::vector<PresentationParams> sweep_tuples(PropositionId id, int n,
                                                    const SweepOptions& opt) {
  auto tuples = valid_tuples(n);
  if (id == PropositionId::build && n > opt.full_n_max) {
    std::erase_if(tuples, [](const PresentationParams& p) { return p.k() > 0; });
  }
  return tuples;
}

namespace detail {

inline std::uint64_t pow5(int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) v *= kPrime;
  return v;
}

inline void check_build(const PcGroup& g, const GroupAnalysis& a,
                        const SweepOptions& opt, std::uint64_t seed,
                        TupleObservation& obs, std::vector<std::string>& fails) {
  const int n = g.n();
  const ConsistencyReport cr = consistency_check(g, default_mode(g), opt.samples, seed);
  obs.triples_checked = cr.triples_checked;
  obs.closure_size = cr.closure_size;
  obs.consistent = cr.passed();
  if (!cr.passed()) fails.push_back("consistency: " + cr.failure());
  if (cr.mode == CheckMode::sampled && cr.triples_checked < opt.samples) {
    fails.push_back("fewer sampled triples than requested");
  }
  if (g.order() != pow5(n)) fails.push_back("order is not 5^n");
  if (a.series.nilpotency_class() != n - 1) {
    fails.push_back("class " + std::to_string(a.series.nilpotency_class()) + " != n-1");
  }
  const AbelianType top = quotient_type(g, whole_group(g), a.series.gamma(2));
  if (top != AbelianType{{5, 5}}) fails.push_back("G/gamma_2 of type " + top.to_string());
  for (int j = 2; j <= n; ++j) {
    if (a.series.gamma(j).order() != pow5(n - j)) {
      fails.push_back("|gamma_" + std::to_string(j) + "| != 5^(n-" + std::to_string(j) + ")");
    }
  }
}

inline void check_isomorphism(const PcGroup& g, const FamilyLabel& label,
                              TupleObservation& obs) {
  FamilyLabel rep = label;
  rep.a = normalized_a(label.a);
  obs.normalized = rep;
  obs.isomorphic_to_normalized =
      brute_force_isomorphic(g, build_group(rep.params())).isomorphic;
}

}  // namespace detail

/// Builds and checks one tuple. Failures are appended as reasons.
inline TupleObservation evaluate_tuple(PropositionId id, const PresentationParams& p,
                                       const SweepOptions& opt, std::uint64_t seed,
                                       std::vector<std::string>& fails) {
  TupleObservation obs;
  obs.params = p;
  std::optional<PcGroup> built;
  try {
    built = build_group(p);
  } catch (const ConsistencyError& e) {
    throw SweepError(std::string("build failed: ") + e.what());
  }
  const PcGroup& g = *built;
  const GroupAnalysis a = analyze(g);
  const StructureReport s = structure_report(g, a);
  obs.defect_k = s.defect_k;
  obs.coclass = s.coclass;
  obs.invariant_e = s.invariant_e;
  obs.gamma2_exponent = s.gamma2_exponent;
  obs.order25_count = s.order25_count;
  for (int i = 0; i < 6; ++i) obs.factor_orders[i] = s.subgroup_types[i].order();
  obs.label = family_label(g, a);
  const auto maps = maximal_transfers(g, a);
  obs.fingerprint = fingerprint(maps);
  const int n = p.n;
  const auto& f = obs.fingerprint;
  const auto& lab = obs.label;

  switch (id) {
    case PropositionId::build:
      detail::check_build(g, a, opt, seed, obs, fails);
      break;
    case PropositionId::thm22:
      if (s.defect_k != p.k()) {
        fails.push_back("defect " + std::to_string(s.defect_k) + " != length of a");
      }
      for (int i = 1; i < 6; ++i) {
        if (obs.factor_orders[i] != 25) {
          fails.push_back("|H_" + std::to_string(i + 1) + "/gamma_2(H)| = " +
                          std::to_string(obs.factor_orders[i]) + ", expected 25");
        }
      }
      if (obs.factor_orders[0] != detail::pow5(n - s.defect_k - 1)) {
        fails.push_back("|H_1/gamma_2(H_1)| = " + std::to_string(obs.factor_orders[0]) +
                        ", expected 5^(n-k-1)");
      }
      break;
    case PropositionId::lemma21:
      if (s.order25_count < 5) {
        fails.push_back(std::to_string(s.order25_count) +
                        " maximal subgroups with factor order 25");
      }
      if (s.maximal_class_criterion != (s.coclass == 1)) {
        fails.push_back("criterion flag disagrees with coclass");
      }
      break;
    case PropositionId::prop31:
      obs.triggered = prop31_triggered(f);
      if (!obs.triggered) break;
      if (n > 6) fails.push_back("hypothesis holds with n = " + std::to_string(n) + " > 6");
      if (s.gamma2_exponent != 5) {
        fails.push_back("exponent(gamma_2) = " + std::to_string(s.gamma2_exponent));
      }
      {
        const auto fam = prop31_family(n);
        if (std::find(fam.begin(), fam.end(), lab) == fam.end()) {
          fails.push_back("label " + lab.text() + " outside the stated family");
        }
      }
      if (opt.brute_force && n <= kMaxBruteForceN) detail::check_isomorphism(g, lab, obs);
      break;
    case PropositionId::prop32:
    case PropositionId::prop33: {
      const bool p32 = id == PropositionId::prop32;
      obs.triggered = p32 ? prop32_triggered(f) : prop33_triggered(f);
      if (!obs.triggered) break;
      if (lab.w != 0 || lab.z != 0) {
        fails.push_back("(w,z) = (" + std::to_string(lab.w) + "," + std::to_string(lab.z) +
                        "), expected (0,0)");
      }
      if ((!p32 || n >= 7) && s.defect_k != 0) {
        fails.push_back("defect k = " + std::to_string(s.defect_k) + ", expected 0");
      }
      if (p32 && n >= 7) {
        const KernelImage ki = transfer_kernel_image(g, maps[0]);
        if (!(ki.image == a.series.gamma(5))) {
          fails.push_back("Im V_{H_1} has order " + std::to_string(ki.image.order()) +
                          " and is not gamma_5");
        }
        if (!(ki.kernel == a.series.gamma(n - 4))) {
          fails.push_back("ker V_{H_1} has order " + std::to_string(ki.kernel.order()) +
                          " and is not gamma_{n-4}");
        }
      }
      if (opt.brute_force && n <= kMaxBruteForceN) detail::check_isomorphism(g, lab, obs);
      break;
    }
  }
  return obs;
}

/// Sweeps every valid tuple of the range and checks the named statement.
inline PropositionReport verify_proposition(PropositionId id, const SweepOptions& opt) {
  if (opt.n_min < 4 || opt.n_max > 8 || opt.n_min > opt.n_max) {
    throw ParamError("n", "sweep range must lie within 4..8");
  }
  PropositionReport report;
  report.id = id;
  report.n_min = opt.n_min;
  report.n_max = opt.n_max;
  report.seed = opt.seed;
  std::vector<PresentationParams> tuples;
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    const auto t = sweep_tuples(id, n, opt);
    report.tuples_expected += (id == PropositionId::build && n > opt.full_n_max)
                                  ? 25
                                  : tuple_count(n);
    tuples.insert(tuples.end(), t.begin(), t.end());
  }
  std::vector<TupleObservation> obs(tuples.size());
  std::vector<std::vector<std::string>> fails(tuples.size());
  parallel_for(tuples.size(), worker_count(opt.threads), [&](std::size_t i) {
    obs[i] = evaluate_tuple(id, tuples[i], opt, opt.seed * 1000003u + i, fails[i]);
  });
  report.tuples_tested = obs.size();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs[i].triggered) ++report.triggered;
    ++report.fingerprint_counts["n=" + std::to_string(obs[i].params.n) + " " +
                                to_string(obs[i].fingerprint)];
    for (auto& reason : fails[i]) {
      report.violations.push_back({obs[i].params, reason, violation_category(obs[i].params)});
    }
  }
  report.observations = std::move(obs);

  if (id == PropositionId::prop31 || id == PropositionId::prop32 ||
      id == PropositionId::prop33) {
    // Which (n, k) pairs meet the hypothesis, and whether brute force
    // identifies each a with its normalized form.
    std::map<std::pair<int, int>, std::uint64_t> by_nk;
    std::uint64_t iso_yes = 0, iso_no = 0;
    for (const auto& o : report.observations) {
      if (!o.triggered) continue;
      ++by_nk[{o.params.n, o.defect_k}];
      if (o.isomorphic_to_normalized) (*o.isomorphic_to_normalized ? iso_yes : iso_no)++;
    }
    for (const auto& [nk, count] : by_nk) {
      report.notes.push_back("hypothesis holds for " + std::to_string(count) +
                             " tuples with n = " + std::to_string(nk.first) +
                             ", k = " + std::to_string(nk.second));
    }
    if (iso_yes + iso_no) {
      report.notes.push_back(
          "brute force (n <= 5): " + std::to_string(iso_yes) +
          " triggered tuples isomorphic to the representative with a scaled to "
          "last entry 1, " + std::to_string(iso_no) + " not");
    }
    report.notes.push_back(
        "for n >= 6 family membership is checked on extracted parameters only");
  }
  return report;
}

}  // namespace maxclass5
