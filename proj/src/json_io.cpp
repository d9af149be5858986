#include "affine_lab/json_io.hpp"

namespace affine_lab {

using nlohmann::json;

json to_json(const ComplexValue& z) {
  json j{{"re", z.re()}, {"im", z.im()}};
  if (z.is_exact()) j["exact"] = z.to_string();
  return j;
}

json to_json(const MaximalInterval& interval) {
  json j;
  const auto lo = interval.lower();
  const auto hi = interval.upper();
  j["lower"] = lo ? json(*lo) : json(nullptr);
  j["upper"] = hi ? json(*hi) : json(nullptr);
  j["text"] = interval.to_string();
  return j;
}

json to_json(const Witness& w) {
  json j{{"type", witness_type(w)}};
  if (const auto* c = std::get_if<CylinderScalar>(&w)) {
    j["sign"] = c->sign;
    j["ratio"] = to_json(c->ratio);
  } else if (const auto* c = std::get_if<CylinderRealLinear>(&w)) {
    j["mu1"] = to_json(c->mu1);
    j["mu2"] = to_json(c->mu2);
  } else if (const auto* t = std::get_if<TorusScalar>(&w)) {
    j["alpha"] = to_json(t->alpha);
  } else if (const auto* t = std::get_if<TorusRealLinear>(&w)) {
    j["matrix"] = json::array({json::array({t->m[0][0], t->m[0][1]}), json::array({t->m[1][0], t->m[1][1]})});
  }
  return j;
}

json to_json(const ConjugacyVerdict& v) {
  json j;
  j["mode"] = to_string(v.mode);
  j["status"] = to_string(v.status);
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  j["reason"] = v.reason == NotConjugateReason::None ? json(nullptr) : json(to_string(v.reason));
  j["used_tolerance"] = v.used_tolerance();
  j["search_bound"] = v.search_bound ? json(*v.search_bound) : json(nullptr);
  return j;
}

json to_json(const VerificationReport& r) {
  return json{{"samples", r.samples},
              {"t_grid", r.t_grid},
              {"max_deviation", r.max_deviation},
              {"domain_agreements", r.domain_agreements},
              {"branch_ok", r.branch_checks_passed},
              {"boundary_ok", r.boundary_checks_passed},
              {"seed", r.seed}};
}

}  // namespace affine_lab
