#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxclass5/classify.hpp"
#include "maxclass5/errors.hpp"

namespace maxclass5 {

inline constexpr const char* kTableHeader = "p,p_mod_25,h_k5,type,rank_sigma";

/// One row of the field table for k = Q(p^(1/5), zeta_5).
struct FieldRecord {
  std::int64_t p = 0;
  /// As printed; the table writes -1 for 24.
  std::int64_t p_mod_25 = 0;
  std::int64_t h_k5 = 0;
  /// Cyclic factor orders of the 5-class group, from "(5;5)".
  std::vector<std::int64_t> type;
  std::int64_t rank_sigma = 0;
  std::size_t line = 0;
};

namespace detail {

inline std::int64_t parse_int(const std::string& s, std::size_t line,
                              const char* field) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw FormatError(line, std::string("bad integer in ") + field + ": '" + s + "'");
  }
  return v;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parses the CSV; records are not validated.
inline std::vector<FieldRecord> parse_table(std::istream& in) {
  std::vector<FieldRecord> out;
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string row = detail::trim(raw);
    if (row.empty()) continue;
    if (!header) {
      if (row != kTableHeader) {
        throw FormatError(line, "expected header '" + std::string(kTableHeader) + "'");
      }
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(detail::trim(cell));
    if (row.back() == ',') cells.push_back("");
    if (cells.size() != 5) {
      throw FormatError(line, "expected 5 fields, found " + std::to_string(cells.size()));
    }
    FieldRecord r;
    r.line = line;
    r.p = detail::parse_int(cells[0], line, "p");
    r.p_mod_25 = detail::parse_int(cells[1], line, "p_mod_25");
    r.h_k5 = detail::parse_int(cells[2], line, "h_k5");
    const std::string& t = cells[3];
    if (t.size() < 3 || t.front() != '(' || t.back() != ')') {
      throw FormatError(line, "type must look like (5;5): '" + t + "'");
    }
    std::stringstream ts(t.substr(1, t.size() - 2));
    std::string part;
    while (std::getline(ts, part, ';')) r.type.push_back(detail::parse_int(part, line, "type"));
    r.rank_sigma = detail::parse_int(cells[4], line, "rank_sigma");
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<FieldRecord> parse_table_string(const std::string& text) {
  std::istringstream in(text);
  return parse_table(in);
}

inline bool is_prime(std::int64_t v) {
  if (v < 2) return false;
  for (std::int64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

struct Validation {
  std::vector<std::string> flags;
  bool ok() const { return flags.empty(); }
};

/// Flags not_prime, bad_congruence (p not -1 mod 25, or the printed
/// residue disagrees with p) and inconsistent_order (h_k5 is not the
/// product of the type).
inline Validation validate_record(const FieldRecord& r) {
  Validation v;
  if (!is_prime(r.p)) v.flags.push_back("not_prime");
  const std::int64_t res = ((r.p % 25) + 25) % 25;
  const std::int64_t printed = ((r.p_mod_25 % 25) + 25) % 25;
  if (res != 24 || printed != res) v.flags.push_back("bad_congruence");
  std::int64_t prod = 1;
  for (auto t : r.type) prod *= t;
  if (r.type.empty() || prod != r.h_k5) v.flags.push_back("inconsistent_order");
  return v;
}

enum class Scenario { HL, Htilde };

inline std::string to_string(Scenario s) { return s == Scenario::HL ? "HL" : "Htilde"; }

inline Scenario parse_scenario(const std::string& s) {
  if (s == "HL") return Scenario::HL;
  if (s == "Htilde") return Scenario::Htilde;
  throw ParamError("scenario", "expected HL or Htilde, got '" + s + "'");
}

struct Prediction {
  FieldRecord record;
  Scenario scenario = Scenario::HL;
  std::optional<int> s;
  std::vector<FamilyLabel> candidates;
};

/// Galois-group candidates for G = Gal((k*)_5^(1)/k_0).
///
/// chi_2 = H_L: G_a^(n)(z,0) with n in {4,5,6} and a, z in {0,1}, twelve
/// labels. chi_2 = H~: G_1^(n)(0,0) for n = 5, 6, plus G_0^(s+1)(0,0)
/// when h_5(L~) = 5^s with s >= 6 is supplied. Labels are listed as
/// stated, including G_1^(4)(z,0), which does not name a valid tuple since
/// k = 1 needs n >= 5.
inline Prediction predict_families(const FieldRecord& r, Scenario scenario,
                                   std::optional<int> s = std::nullopt,
                                   bool claim_large = false) {
  const Validation v = validate_record(r);
  if (!v.ok()) {
    std::string f;
    for (const auto& x : v.flags) f += (f.empty() ? "" : ",") + x;
    throw PrecondError("record p = " + std::to_string(r.p) + " is flagged: " + f);
  }
  if (r.type != std::vector<std::int64_t>{5, 5} || r.rank_sigma != 1) {
    throw PrecondError("prediction needs type (5;5) and rank_sigma = 1");
  }
  Prediction pr;
  pr.record = r;
  pr.scenario = scenario;
  pr.s = s;
  if (scenario == Scenario::HL) {
    for (int n = 4; n <= 6; ++n) {
      for (int a = 0; a <= 1; ++a) {
        for (int z = 0; z <= 1; ++z) {
          FamilyLabel l{n, {}, z, 0};
          if (a) l.a = {1};
          pr.candidates.push_back(l);
        }
      }
    }
  } else {
    if (claim_large && !s) {
      throw MissingS("order 5^n with n >= 7 needs s with h_5(L~) = 5^s");
    }
    pr.candidates.push_back(FamilyLabel{5, {1}, 0, 0});
    pr.candidates.push_back(FamilyLabel{6, {1}, 0, 0});
    if (s && *s >= 6) pr.candidates.push_back(FamilyLabel{*s + 1, {}, 0, 0});
  }
  return pr;
}

/// Whether a candidate label names a buildable tuple.
inline bool label_realizable(const FamilyLabel& l) {
  try {
    RawParams raw{kPrime, l.n, l.w, l.z, {}};
    for (int v : l.a) raw.a.push_back(v);
    validate_params(raw);
    return true;
  } catch (const ParamError&) {
    return false;
  }
}

}  // namespace maxclass5
