#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "maxclass5/classify.hpp"
#include "maxclass5/consistency.hpp"
#include "maxclass5/errors.hpp"
#include "maxclass5/field_data.hpp"
#include "maxclass5/params.hpp"
#include "maxclass5/structure.hpp"
#include "maxclass5/sweep.hpp"
#include "maxclass5/transfer.hpp"

namespace maxclass5 {

using Json = nlohmann::ordered_json;

inline Json to_json(const PresentationParams& p) {
  return Json{{"p", p.p}, {"n", p.n}, {"w", p.w}, {"z", p.z}, {"a", p.a}};
}

/// Strict descriptor parse: exactly the keys p, n, w, z, a, all integers.
inline PresentationParams descriptor_from_json(const Json& j) {
  if (!j.is_object()) throw ParamError("descriptor", "expected a JSON object");
  static const std::vector<std::string> keys{"p", "n", "w", "z", "a"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ParamError(k, "unknown descriptor key");
    }
  }
  RawParams raw;
  auto integer = [&](const char* key) -> long long {
    if (!j.contains(key)) throw ParamError(key, "missing");
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw ParamError(key, "must be an integer");
    return v.get<long long>();
  };
  raw.p = integer("p");
  raw.n = integer("n");
  raw.w = integer("w");
  raw.z = integer("z");
  if (!j.contains("a")) throw ParamError("a", "missing");
  if (!j.at("a").is_array()) throw ParamError("a", "must be an array");
  for (const Json& v : j.at("a")) {
    if (!v.is_number_integer()) throw ParamError("a", "entries must be integers");
    raw.a.push_back(v.get<long long>());
  }
  return validate_params(raw);
}

inline PresentationParams descriptor_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParamError("descriptor", std::string("invalid JSON: ") + e.what());
  }
  return descriptor_from_json(j);
}

inline Json to_json(const Element& u) { return u.to_vector(); }

inline Json to_json(const AbelianType& t) { return t.orders; }

inline Json to_json(const StructureReport& r) {
  Json types = Json::array();
  for (const auto& t : r.subgroup_types) types.push_back(to_json(t));
  return Json{{"n", r.n},
              {"class", r.nilpotency_class},
              {"coclass", r.coclass},
              {"defect_k", r.defect_k},
              {"invariant_e", r.invariant_e},
              {"chi2_index", r.chi2_index},
              {"subgroup_types", types},
              {"gamma2_exponent", r.gamma2_exponent},
              {"series_orders", r.series_orders},
              {"order25_count", r.order25_count},
              {"maximal_class_criterion", r.maximal_class_criterion},
              {"outside_verified_family", r.outside_verified_family}};
}

inline Json to_json(const ConsistencyReport& r) {
  Json j{{"mode", r.mode == CheckMode::exhaustive ? "exhaustive" : "sampled"},
         {"triples_checked", r.triples_checked},
         {"closure_checked", r.closure_checked},
         {"closure_size", r.closure_size},
         {"passed", r.passed()}};
  Json rel = Json::array();
  for (const auto& c : r.relations) {
    rel.push_back(Json{{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  }
  j["relations"] = rel;
  j["failure"] = r.failure();
  if (r.witness) {
    j["witness"] = Json{{"u", to_json(r.witness->u)},
                        {"v", to_json(r.witness->v)},
                        {"w", to_json(r.witness->w)},
                        {"uv_w", to_json(r.witness->left)},
                        {"u_vw", to_json(r.witness->right)}};
  }
  return j;
}

inline Json to_json(const TransferMap& t, const std::string& name) {
  Json gens = Json::array(), imgs = Json::array();
  for (const auto& u : t.generators) gens.push_back(to_json(u));
  for (const auto& u : t.images) imgs.push_back(to_json(u));
  return Json{{"subgroup", name}, {"generators", gens}, {"images", imgs},
              {"trivial", t.trivial}};
}

inline Json transfers_json(const PresentationParams& p,
                           const std::array<TransferMap, 6>& maps) {
  Json list = Json::array();
  for (int i = 0; i < 6; ++i) list.push_back(to_json(maps[i], "H_" + std::to_string(i + 1)));
  return Json{{"descriptor", to_json(p)},
              {"target", "gamma_2"},
              {"transfers", list},
              {"fingerprint", to_string(fingerprint(maps))}};
}

inline Json to_json(const std::vector<FamilyLabel>& labels) {
  Json j = Json::array();
  for (const auto& l : labels) j.push_back(l.text());
  return j;
}

inline Json classification_json(const PresentationParams& p, const FamilyLabel& label,
                                const TransferFingerprint& f, const Classification& c) {
  const bool contains =
      std::find(c.candidates.begin(), c.candidates.end(), label) != c.candidates.end();
  return Json{{"descriptor", to_json(p)},   {"label", label.text()},
              {"fingerprint", to_string(f)}, {"triggered", c.triggered},
              {"candidates", to_json(c.candidates)},
              {"contains_label", contains},  {"diagnostic", c.diagnostic}};
}

inline Json to_json(const TupleObservation& o, PropositionId id) {
  Json j{{"tuple", FamilyLabel::from_params(o.params).text()},
         {"label", o.label.text()},
         {"fingerprint", to_string(o.fingerprint)},
         {"defect_k", o.defect_k},
         {"gamma2_exponent", o.gamma2_exponent},
         {"triggered", o.triggered}};
  if (id == PropositionId::thm22 || id == PropositionId::lemma21) {
    j["factor_orders"] = o.factor_orders;
    j["order25_count"] = o.order25_count;
    j["coclass"] = o.coclass;
    j["invariant_e"] = o.invariant_e;
  }
  if (id == PropositionId::build) {
    j["triples_checked"] = o.triples_checked;
    j["closure_size"] = o.closure_size;
    j["consistent"] = o.consistent;
  }
  if (o.isomorphic_to_normalized) {
    j["normalized"] = o.normalized->text();
    j["isomorphic_to_normalized"] = *o.isomorphic_to_normalized;
  }
  return j;
}

inline Json to_json(const PropositionReport& r, bool with_observations = true) {
  Json viol = Json::array();
  for (const auto& v : r.violations) {
    viol.push_back(Json{{"tuple", FamilyLabel::from_params(v.params).text()},
                        {"n", v.params.n},
                        {"k", v.params.k()},
                        {"reason", v.reason},
                        {"category", v.category}});
  }
  Json j{{"proposition", to_string(r.id)},
         {"n_range", {r.n_min, r.n_max}},
         {"seed", r.seed},
         {"tuples_expected", r.tuples_expected},
         {"tuples_tested", r.tuples_tested},
         {"triggered", r.triggered},
         {"passed", r.passed()},
         {"violations", viol},
         {"fingerprint_counts", r.fingerprint_counts},
         {"notes", r.notes}};
  if (with_observations) {
    Json obs = Json::array();
    for (const auto& o : r.observations) obs.push_back(to_json(o, r.id));
    j["observations"] = obs;
  }
  return j;
}

inline std::string type_string(const FieldRecord& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.type.size(); ++i) {
    if (i) s += ";";
    s += std::to_string(r.type[i]);
  }
  return s + ")";
}

inline Json to_json(const FieldRecord& r) {
  return Json{{"p", r.p}, {"p_mod_25", r.p_mod_25}, {"h_k5", r.h_k5},
              {"type", type_string(r)}, {"rank_sigma", r.rank_sigma}};
}

/// Prediction output; `flags` and `unrealizable` follow the stated keys.
inline Json prediction_json(const FieldRecord& r, Scenario scenario, std::optional<int> s,
                            const std::vector<FamilyLabel>& candidates,
                            const std::vector<std::string>& flags) {
  Json unrealizable = Json::array();
  for (const auto& l : candidates) {
    if (!label_realizable(l)) unrealizable.push_back(l.text());
  }
  return Json{{"record", to_json(r)},
              {"scenario", to_string(scenario)},
              {"s", s ? Json(*s) : Json(nullptr)},
              {"candidates", to_json(candidates)},
              {"flags", flags},
              {"unrealizable", unrealizable}};
}

}  // namespace maxclass5
