#pragma once

// JSON forms of functions, representative specs and codes.

#include <string>
#include <vector>

#include "ermcode/codes.hpp"
#include "ermcode/construction.hpp"
#include "ermcode/errors.hpp"
#include "ermcode/gbf.hpp"
#include "json.hpp"

namespace ermcode {

using Json = nlohmann::json;

namespace detail {

template <class T>
T json_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParameterError(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParameterError(std::string("JSON field '") + key + "' has the wrong type");
  }
}

}  // namespace detail

/// {"m": m, "q": q, "terms": [[mask, coeff], ...]} with masks ascending.
inline Json to_json(const GeneralizedBooleanFunction& f) {
  Json terms = Json::array();
  for (const auto& [mask, c] : f.anf()) terms.push_back(Json::array({mask, c}));
  return {{"m", f.num_variables()}, {"q", f.modulus()}, {"terms", terms}};
}

inline GeneralizedBooleanFunction gbf_from_json(const Json& j) {
  const int m = detail::json_field<int>(j, "m");
  const auto q = detail::json_field<Residue>(j, "q");
  std::vector<std::pair<Mask, std::int64_t>> terms;
  for (const auto& t : detail::json_field<Json>(j, "terms")) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number_integer())
      throw ParameterError("each term must be [mask, coefficient]");
    if (t[0].get<std::int64_t>() < 0) throw ParameterError("negative monomial mask");
    terms.emplace_back(t[0].get<Mask>(), t[1].get<std::int64_t>());
  }
  return GeneralizedBooleanFunction::from_terms(m, q, terms);
}

inline std::string assignment_key(std::size_t d, int k) {
  std::string s;
  for (int j = 0; j < k; ++j) s.push_back(((d >> j) & 1U) ? '1' : '0');
  return s;
}

/// {"m","k","h","perms": {"d_0...d_{k-1}": [pi_d(0), ...]}}; the empty key
/// stands for k = 0. A plain array indexed by d is also accepted on input.
inline Json to_json(const CosetRepSpec& spec) {
  Json perms = Json::object();
  for (std::size_t d = 0; d < spec.perms.size(); ++d) perms[assignment_key(d, spec.k)] = spec.perms[d];
  return {{"m", spec.m}, {"k", spec.k}, {"h", spec.h}, {"perms", perms}};
}

inline CosetRepSpec rep_spec_from_json(const Json& j) {
  CosetRepSpec spec;
  spec.m = detail::json_field<int>(j, "m");
  spec.k = detail::json_field<int>(j, "k");
  spec.h = detail::json_field<int>(j, "h");
  if (spec.k < 0 || spec.k > 20) throw ParameterError("k out of range");
  const Json perms = detail::json_field<Json>(j, "perms");
  const std::size_t count = std::size_t{1} << spec.k;
  try {
    if (perms.is_array()) {
      spec.perms = perms.get<std::vector<std::vector<int>>>();
    } else if (perms.is_object()) {
      if (perms.size() != count) throw ParameterError("need " + std::to_string(count) + " permutations");
      for (std::size_t d = 0; d < count; ++d) {
        const std::string key = assignment_key(d, spec.k);
        if (!perms.contains(key)) throw ParameterError("missing permutation for assignment '" + key + "'");
        spec.perms.push_back(perms.at(key).get<std::vector<int>>());
      }
    } else {
      throw ParameterError("perms must be an object or an array");
    }
  } catch (const nlohmann::json::exception&) {
    throw ParameterError("permutations must be integer arrays");
  }
  spec.validate();
  return spec;
}

inline Json matrix_json(const LinearCode& code) { return Json(code.generator_matrix()); }

inline Json to_json(const LinearCode& code) {
  const auto& p = code.params();
  Json gens = Json::array();
  for (const auto& g : code.generators()) gens.push_back({{"label", to_json(g.label)}, {"bits", g.bits}});
  return {{"kind", "linear"}, {"family", to_string(p.family)}, {"r", p.r},          {"m", p.m},
          {"h", p.h},         {"k", p.k},                      {"q", code.modulus()}, {"size_bits", code.size_bits()},
          {"generators", gens}, {"matrix", matrix_json(code)}};
}

inline LinearCode linear_code_from_json(const Json& j) {
  CodeParams p;
  p.family = code_family_from_string(detail::json_field<std::string>(j, "family"));
  p.r = detail::json_field<int>(j, "r");
  p.m = detail::json_field<int>(j, "m");
  p.h = detail::json_field<int>(j, "h");
  p.k = j.contains("k") ? detail::json_field<int>(j, "k") : 0;
  std::vector<GeneralizedBooleanFunction> labels;
  for (const auto& g : detail::json_field<Json>(j, "generators")) labels.push_back(gbf_from_json(detail::json_field<Json>(g, "label")));
  LinearCode code(p, std::move(labels));
  if (j.contains("matrix") && j.at("matrix") != matrix_json(code))
    throw ParameterError("generator matrix does not match the generator labels");
  return code;
}

inline Json to_json(const CosetCode& code) {
  Json reps = Json::array();
  for (std::size_t i = 0; i < code.reps.size(); ++i) {
    Json e = {{"word", code.reps[i].entries()}};
    if (i < code.rep_functions.size()) e["label"] = to_json(code.rep_functions[i]);
    reps.push_back(std::move(e));
  }
  return {{"kind", "coset"}, {"construction", code.construction}, {"k", code.k}, {"r", code.r},
          {"r_prime", code.r_prime}, {"m", code.m}, {"h", code.h}, {"s", code.s()}, {"t", code.t},
          {"base", to_json(code.base)}, {"reps", reps}};
}

/// Accepts either a coset-code object or a bare linear code (one zero coset).
inline CosetCode coset_code_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("code description must be a JSON object");
  if (!j.contains("reps")) return as_coset_code(linear_code_from_json(j));
  CosetCode code{linear_code_from_json(detail::json_field<Json>(j, "base")), {}, {}};
  code.construction = j.value("construction", 0);
  code.k = j.value("k", code.base.params().k);
  code.r = j.value("r", code.base.params().r);
  code.r_prime = j.value("r_prime", code.base.params().r);
  code.m = code.base.m();
  code.h = code.base.h();
  code.t = detail::json_field<int>(j, "t");
  for (const auto& e : detail::json_field<Json>(j, "reps")) {
    if (e.contains("label")) {
      GeneralizedBooleanFunction f = gbf_from_json(e.at("label"));
      ZqWord w = to_zq_word(f);
      if (e.contains("word") && e.at("word") != Json(w.entries()))
        throw ParameterError("representative word does not match its label");
      code.reps.push_back(std::move(w));
      code.rep_functions.push_back(std::move(f));
    } else {
      code.reps.emplace_back(code.base.modulus(), detail::json_field<std::vector<Residue>>(e, "word"));
    }
  }
  if (!code.rep_functions.empty() && code.rep_functions.size() != code.reps.size())
    throw ParameterError("either every representative carries a label or none does");
  for (const auto& w : code.reps)
    if (w.size() != code.base.length() || w.modulus() != code.base.modulus())
      throw ParameterError("representative word does not match the base code");
  code.validate();
  return code;
}

}  // namespace ermcode
