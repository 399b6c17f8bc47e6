#include "cnkit/serialize.hpp"

#include <stdexcept>

namespace cnkit {

using nlohmann::json;

json int_json(const Int& v) { return v.get_str(); }

json rat_json(const Rat& q) {
  return json{{"num", rat_num(q).get_str()}, {"den", rat_den(q).get_str()}};
}

json witness_json(const Quadruple& q) {
  return json{{"b1", q.b1.get_str()},
              {"b2", q.b2.get_str()},
              {"n", q.w.N.get_str()},
              {"e", q.w.e.get_str()},
              {"m", q.w.M.get_str()}};
}

json class_entry_json(const ClassEntry& e) {
  json j;
  j["class"] = e.cls.rep().get_str();
  switch (e.origin) {
    case ClassOrigin::Torsion:
      j["tag"] = "torsion";
      break;
    case ClassOrigin::Product:
      j["tag"] = "product";
      break;
    case ClassOrigin::Search:
      j["witness"] = witness_json(*e.quad);
      j["origin"] = "search";
      break;
    case ClassOrigin::Seed:
      j["witness"] = witness_json(*e.quad);
      j["origin"] = "seed";
      break;
  }
  return j;
}

json certificate_json(const DescentCertificate& cert) {
  json j;
  j["a_curve"] = cert.a_curve.get_str();
  j["height"] = cert.height;
  j["gcd_variant"] = to_string(cert.variant);
  j["alpha"] = json::array();
  for (const ClassEntry& e : cert.alpha) j["alpha"].push_back(class_entry_json(e));
  j["alphabar"] = json::array();
  for (const ClassEntry& e : cert.alphabar) j["alphabar"].push_back(class_entry_json(e));
  j["rank_lower_bound"] = cert.rank_lower_bound;
  return j;
}

json cascade_state_json(const CascadeState& st) {
  json j;
  j["depth"] = st.depth;
  j["extracted_square"] = st.extracted_square.get_str();
  if (st.stage == CascadeState::Stage::Form1) {
    j["stage"] = "form1";
    j["r"] = st.first.get_str();
    j["s"] = st.second.get_str();
    j["beta"] = st.beta.get_str();
  } else {
    j["stage"] = "form2";
    j["w"] = st.first.get_str();
    j["z"] = st.second.get_str();
    j["beta"] = st.beta.get_str();
    j["gamma"] = st.gamma.get_str();
  }
  return j;
}

json outcome_json(const SearchOutcome& o, long height) {
  json j;
  switch (o.kind) {
    case SearchOutcome::Kind::Solved:
      j["kind"] = "solved";
      j["witness"] = json{{"n", o.witness->N.get_str()},
                          {"e", o.witness->e.get_str()},
                          {"m", o.witness->M.get_str()}};
      break;
    case SearchOutcome::Kind::ExhaustedToHeight:
      j["kind"] = "exhausted";
      j["height"] = height;
      break;
    case SearchOutcome::Kind::LocallyExcluded:
      j["kind"] = "excluded";
      // modulus 0 marks the real place (both quartic coefficients negative)
      j["modulus"] = o.modulus;
      break;
  }
  return j;
}

std::vector<SeedWitness> seed_witnesses_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("seed file: expected a JSON array");
  std::vector<SeedWitness> seeds;
  for (const json& item : j) {
    SeedWitness s;
    const std::string side = item.at("side").get<std::string>();
    if (side == "E") {
      s.side = Side::E;
    } else if (side == "Ebar") {
      s.side = Side::Ebar;
    } else {
      throw std::runtime_error("seed file: side must be E or Ebar");
    }
    s.b1 = Int(item.at("b1").get<std::string>());
    s.w.N = Int(item.at("n").get<std::string>());
    s.w.e = Int(item.at("e").get<std::string>());
    s.w.M = Int(item.at("m").get<std::string>());
    seeds.push_back(std::move(s));
  }
  return seeds;
}

}  // namespace cnkit
