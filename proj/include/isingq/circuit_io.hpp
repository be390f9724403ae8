#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "json.hpp"

#include "isingq/brickwork.hpp"
#include "isingq/circuit.hpp"
#include "isingq/iqp.hpp"

namespace isingq {

// ---- Circuit document ---------------------------------------------------------

inline nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json doc;
  doc["qubits"] = c.num_qubits;
  doc["scale"] = c.scale;
  doc["gates"] = nlohmann::json::array();
  for (const auto& g : c.gates) doc["gates"].push_back({{"kind", to_string(g.kind)}, {"q", g.q}, {"params", g.p}});
  nlohmann::json anc = nlohmann::json::array();
  for (int q = 0; q < c.num_qubits; ++q)
    if (c.roles[q] == QubitRole::Ancilla) anc.push_back(q);
  if (!anc.empty()) doc["ancillas"] = anc;
  return doc;
}

inline Circuit circuit_from_json(const nlohmann::json& doc) {
  try {
    Circuit c(doc.at("qubits").get<int>());
    if (c.num_qubits < 0) throw std::invalid_argument("negative qubit count");
    c.scale = doc.value("scale", 1.0);
    for (const auto& g : doc.at("gates")) {
      Gate gate{gate_kind_from_string(g.at("kind").get<std::string>()), g.at("q").get<std::vector<int>>(),
                g.value("params", std::vector<double>{})};
      for (double p : gate.p)
        if (!std::isfinite(p)) throw std::invalid_argument("non-finite gate parameter");
      c.add(std::move(gate));
    }
    if (doc.contains("ancillas"))
      for (int q : doc["ancillas"].get<std::vector<int>>()) c.roles.at(q) = QubitRole::Ancilla;
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed circuit document: ") + e.what());
  }
}

// ---- CommutingCircuit document ----------------------------------------------------

inline nlohmann::json commuting_to_json(const CommutingCircuit& cc) {
  nlohmann::json doc;
  doc["qubits"] = cc.num_qubits;
  doc["prefactor"] = cc.prefactor;
  doc["phase"] = cc.phase;
  doc["z"] = nlohmann::json::array();
  for (const auto& [a, t] : cc.z) doc["z"].push_back({a, t});
  doc["zz"] = nlohmann::json::array();
  for (const auto& [e, t] : cc.zz) doc["zz"].push_back({e.first, e.second, t});
  return doc;
}

inline CommutingCircuit commuting_from_json(const nlohmann::json& doc) {
  try {
    CommutingCircuit cc;
    cc.num_qubits = doc.at("qubits").get<int>();
    cc.prefactor = doc.value("prefactor", 1.0);
    cc.phase = doc.value("phase", 0.0);
    auto check = [&](int q) {
      if (q < 0 || q >= cc.num_qubits) throw std::out_of_range("qubit index out of range");
    };
    for (const auto& t : doc.value("z", nlohmann::json::array())) {
      check(t.at(0).get<int>());
      cc.add_z(t.at(0).get<int>(), t.at(1).get<double>());
    }
    for (const auto& t : doc.value("zz", nlohmann::json::array())) {
      check(t.at(0).get<int>());
      check(t.at(1).get<int>());
      if (t.at(0) == t.at(1)) throw std::invalid_argument("zz term on one qubit");
      cc.add_zz(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
    }
    return cc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed commuting-circuit document: ") + e.what());
  }
}

// ---- target circuits for embedding --------------------------------------------------
// {"wires": 2, "gates": [["H", 0], ["T", 1], ["CNOT", 0, 1], ["I"]]}

inline TargetCircuit target_from_json(const nlohmann::json& doc) {
  try {
    TargetCircuit t;
    t.n = doc.at("wires").get<int>();
    for (const auto& g : doc.at("gates")) {
      TargetGate tg;
      tg.name = g.at(0).get<std::string>();
      for (size_t i = 1; i < g.size(); ++i) tg.wires.push_back(g.at(i).get<int>());
      t.gates.push_back(std::move(tg));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed target circuit: ") + e.what());
  }
}

inline nlohmann::json target_to_json(const TargetCircuit& t) {
  nlohmann::json doc;
  doc["wires"] = t.n;
  doc["gates"] = nlohmann::json::array();
  for (const auto& g : t.gates) {
    nlohmann::json e = nlohmann::json::array({g.name});
    for (int w : g.wires) e.push_back(w);
    doc["gates"].push_back(e);
  }
  return doc;
}

// ---- CSV tables -------------------------------------------------------------------

inline std::string pattern_csv(const std::map<std::string, CellPattern>& pats) {
  std::ostringstream os;
  os << "gate,prefix,omega_count,phase,distance,wire0,wire1\n";
  for (const auto& [name, p] : pats) {
    os << name << ',' << (p.prefix == cell::Prefix::S ? "S" : "H") << ',' << p.omega_count() << ','
       << p.phase << ',' << p.distance;
    for (const auto& w : p.wires) {
      os << ',';
      // one character per horizontal column: O for Omega, s for i pi/4, . for fixed
      for (int c = 0; c + 1 < cell::kWidth; ++c) os << (cell::fixed_column(c) ? '.' : w[c] ? 'O' : 's');
    }
    os << '\n';
  }
  return os.str();
}

inline std::string embed_csv(const EmbedReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "n,m,cells,gamma_count,delta_count,omega_count,log2_delta,log2_delta_o,log2_delta_t,log2_delta_c,"
        "phase,target_re,target_im,amplitude_re,amplitude_im,error,modulus_error\n";
  os << r.instance.n() << ',' << r.instance.m() << ',' << r.cells << ',' << r.gamma_count << ',' << r.delta_count
     << ',' << r.omega_count << ',' << r.log2_delta << ',' << r.log2_delta_o << ',' << r.log2_delta_t << ','
     << r.log2_delta_c << ',' << r.phase << ',' << r.target_amplitude.real() << ',' << r.target_amplitude.imag()
     << ',' << r.amplitude.real() << ',' << r.amplitude.imag() << ',' << r.error << ',' << r.modulus_error << '\n';
  return os.str();
}

inline std::string spec_csv(const std::vector<ProjectionSpec>& specs) {
  std::ostringstream os;
  os.precision(17);
  os << "label,kind,l,theta,norm\n";
  for (const auto& s : specs)
    os << '"' << s.label << "\"," << (s.kind == ProjectionKind::I ? "I" : "II") << ',' << s.l << ',' << s.theta << ','
       << s.norm << '\n';
  return os.str();
}

}  // namespace isingq
