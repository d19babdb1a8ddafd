#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxclass5/classify.hpp"
#include "maxclass5/consistency.hpp"
#include "maxclass5/export.hpp"
#include "maxclass5/field_data.hpp"
#include "maxclass5/json_io.hpp"
#include "maxclass5/sweep.hpp"

namespace maxclass5 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolations = 2;

namespace detail {

inline long long parse_ll(const std::string& s, const char* field) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ParamError(field, "expected an integer, got '" + s + "'");
  }
  return v;
}

/// "4..7" or "5".
inline std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int v = static_cast<int>(parse_ll(s, "n"));
    return {v, v};
  }
  return {static_cast<int>(parse_ll(s.substr(0, dots), "n")),
          static_cast<int>(parse_ll(s.substr(dots + 2), "n"))};
}

inline std::vector<long long> parse_list(const std::string& s) {
  std::vector<long long> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_ll(part, "a"));
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("path", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Group given either by --group FILE or by --n/--w/--z/--a.
struct GroupArgs {
  std::string group_file;
  std::string n;
  long long w = 0;
  long long z = 0;
  std::string a;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--group", group_file, "group descriptor JSON file");
    cmd->add_option("--n", n, "order exponent");
    cmd->add_option("--w", w, "exponent w in x^5 = s_{n-1}^w");
    cmd->add_option("--z", z, "exponent z in y^5 s_2^10 s_3^10 s_4^5 s_5 = s_{n-1}^z");
    cmd->add_option("--a", a, "comma list a_{n-1},...,a_{n-k}");
  }

  PresentationParams params() const {
    if (!group_file.empty()) return descriptor_from_string(read_file(group_file));
    if (n.empty()) throw ParamError("n", "give --n or --group");
    RawParams raw;
    raw.n = parse_ll(n, "n");
    raw.w = w;
    raw.z = z;
    raw.a = parse_list(a);
    return validate_params(raw);
  }
};

/// Writes to `path`, or to `out` when the path is empty.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParamError("output", "cannot write '" + path + "'");
  f << text;
}

}  // namespace detail

/// Runs one CLI invocation and returns the exit code: 0 success, 1 usage or
/// validation error, 2 when a verification found violations.
inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"maxclass5: metabelian 5-groups of maximal class"};
  app.require_subcommand(1);

  std::string output;
  std::uint64_t seed = 0;

  detail::GroupArgs build_args, inv_args, tr_args, cl_args, ex_args;
  std::string mode = "auto";
  std::uint64_t samples = kDefaultSamples;

  auto* build = app.add_subcommand("build", "build a group and check its consistency");
  build_args.add_to(build);
  build->add_option("--mode", mode, "exhaustive, sampled or auto")
      ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
  build->add_option("--samples", samples, "random associativity triples");
  build->add_option("--seed", seed, "sampling seed");
  build->add_option("-o", output, "descriptor output path");

  auto* inv = app.add_subcommand("invariants", "structure report");
  inv_args.add_to(inv);
  inv->add_option("-o", output, "output path");

  auto* tr = app.add_subcommand("transfers", "transfers V_{H_i -> gamma_2}");
  tr_args.add_to(tr);
  tr->add_option("-o", output, "output path");

  auto* cl = app.add_subcommand("classify", "family label and transfer-based prediction");
  cl_args.add_to(cl);
  cl->add_option("-o", output, "output path");

  std::string prop, n_range, n_range_alt;
  unsigned threads = 0;
  bool summary = false;
  auto* ver = app.add_subcommand("verify", "sweep a statement over all tuples");
  ver->add_option("id", prop, "build, prop31, prop32, prop33, thm22 or lemma21")->required();
  ver->add_option("--n", n_range_alt, "range A..B");
  ver->add_option("--n-range", n_range, "range A..B");
  ver->add_option("--seed", seed, "sampling seed");
  ver->add_option("--samples", samples, "random associativity triples (build)");
  ver->add_option("--threads", threads, "worker count (capped by MAXCLASS5_THREADS)");
  ver->add_flag("--summary", summary, "omit per-tuple observations");
  ver->add_option("-o", output, "report path");

  std::string table, scenario = "HL";
  std::optional<int> s_value;
  bool claim_large = false;
  auto* pred = app.add_subcommand("predict", "Galois-group candidates from field data");
  pred->add_option("--table", table, "CSV with header p,p_mod_25,h_k5,type,rank_sigma")
      ->required();
  pred->add_option("--scenario", scenario, "HL or Htilde")
      ->check(CLI::IsMember({"HL", "Htilde"}));
  pred->add_option("--s", s_value, "h_5(L~) = 5^s");
  pred->add_flag("--claim-large", claim_large, "assert n >= 7 (requires --s)");
  pred->add_option("-o", output, "output path");

  std::string format = "json";
  auto* ex = app.add_subcommand("export", "dot, json or multiplication table");
  ex_args.add_to(ex);
  ex->add_option("--format", format, "dot, json or table")
      ->check(CLI::IsMember({"dot", "json", "table"}));
  ex->add_option("-o", output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*build) {
      const PresentationParams p = build_args.params();
      const PcGroup g = build_group(p);
      const CheckMode m = mode == "auto" ? default_mode(g)
                          : mode == "exhaustive" ? CheckMode::exhaustive
                                                 : CheckMode::sampled;
      const ConsistencyReport r = consistency_check(g, m, samples, seed);
      if (output.empty()) {
        out << Json{{"descriptor", to_json(p)}, {"consistency", to_json(r)}}.dump(2) << "\n";
      } else {
        detail::emit(output, to_json(p).dump() + "\n", out);
        out << FamilyLabel::from_params(p).text() << ": "
            << (r.passed() ? "consistent" : "INCONSISTENT: " + r.failure()) << " ("
            << r.triples_checked << " triples)\n";
      }
      return r.passed() ? kExitOk : kExitViolations;
    }
    if (*inv) {
      const PcGroup g = build_group(inv_args.params());
      detail::emit(output, to_json(structure_report(g)).dump(2) + "\n", out);
      return kExitOk;
    }
    if (*tr) {
      const PresentationParams p = tr_args.params();
      const PcGroup g = build_group(p);
      const auto maps = maximal_transfers(g, analyze(g));
      detail::emit(output, transfers_json(p, maps).dump(2) + "\n", out);
      return kExitOk;
    }
    if (*cl) {
      const PresentationParams p = cl_args.params();
      const PcGroup g = build_group(p);
      const GroupAnalysis a = analyze(g);
      const auto f = fingerprint(g, a);
      const Json j = classification_json(p, family_label(g, a), f,
                                         classify_by_transfers(g.n(), f));
      detail::emit(output, j.dump(2) + "\n", out);
      return kExitOk;
    }
    if (*ver) {
      const PropositionId id = parse_proposition(prop);
      if (!n_range.empty() && !n_range_alt.empty()) {
        throw ParamError("n", "give either --n or --n-range");
      }
      SweepOptions opt;
      std::tie(opt.n_min, opt.n_max) = default_range(id);
      const std::string& r = n_range.empty() ? n_range_alt : n_range;
      if (!r.empty()) std::tie(opt.n_min, opt.n_max) = detail::parse_range(r);
      opt.seed = seed;
      opt.samples = samples;
      opt.threads = threads;
      const PropositionReport rep = verify_proposition(id, opt);
      detail::emit(output, to_json(rep, !summary).dump(2) + "\n", out);
      if (!output.empty()) {
        out << to_string(id) << " n=" << opt.n_min << ".." << opt.n_max << ": "
            << rep.tuples_tested << " tuples, " << rep.triggered << " triggered, "
            << rep.violations.size() << " violations\n";
      }
      return rep.passed() ? kExitOk : kExitViolations;
    }
    if (*pred) {
      const auto records = parse_table_string(detail::read_file(table));
      const Scenario sc = parse_scenario(scenario);
      Json list = Json::array();
      for (const auto& rec : records) {
        const Validation v = validate_record(rec);
        std::vector<FamilyLabel> cands;
        if (v.ok()) cands = predict_families(rec, sc, s_value, claim_large).candidates;
        list.push_back(prediction_json(rec, sc, s_value, cands, v.flags));
      }
      detail::emit(output, list.dump(2) + "\n", out);
      return kExitOk;
    }
    if (*ex) {
      const PcGroup g = build_group(ex_args.params());
      std::ostringstream buf;
      export_group(g, parse_export_format(format), buf);
      detail::emit(output, buf.str(), out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace maxclass5
