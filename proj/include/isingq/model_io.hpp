#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "isingq/model.hpp"

namespace isingq {

// {"n":int,"m":int,"h":[[r,c,re,im],...],"jv":[...],"jh":[...]}; omitted entries are zero.
inline IsingInstance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("instance document must be an object");
  if (!doc.contains("n") || !doc.contains("m") || !doc["n"].is_number_integer() || !doc["m"].is_number_integer())
    throw std::invalid_argument("instance document needs integer n and m");
  const long long n = doc["n"].get<long long>(), m = doc["m"].get<long long>();
  if (n <= 0 || m <= 0) throw std::invalid_argument("empty lattice");
  if (n * m > (1 << 24)) throw std::invalid_argument("lattice too large");
  IsingInstance x(static_cast<int>(n), static_cast<int>(m));

  auto read = [&](const char* key, auto setter) {
    if (!doc.contains(key)) return;
    const auto& arr = doc[key];
    if (!arr.is_array()) throw std::invalid_argument(std::string(key) + " must be an array");
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number() || !e[3].is_number())
        throw std::invalid_argument(std::string("malformed entry in ") + key);
      const double re = e[2].get<double>(), im = e[3].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("non-finite parameter");
      setter(e[0].get<int>(), e[1].get<int>()) = cplx{re, im};
    }
  };
  read("h", [&](int r, int c) -> cplx& { return x.h(r, c); });
  read("jv", [&](int r, int c) -> cplx& { return x.jv(r, c); });
  read("jh", [&](int r, int c) -> cplx& { return x.jh(r, c); });
  return x;
}

inline IsingInstance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance document: ") + e.what());
  }
  return instance_from_json(doc);
}

// Every entry is written, zeros included, so the layout is explicit.
inline nlohmann::json instance_to_json(const IsingInstance& x) {
  nlohmann::json doc;
  doc["n"] = x.n();
  doc["m"] = x.m();
  auto arr = [](auto&& fill) {
    nlohmann::json a = nlohmann::json::array();
    fill(a);
    return a;
  };
  doc["h"] = arr([&](auto& a) {
    for (int r = 0; r < x.n(); ++r)
      for (int c = 0; c < x.m(); ++c) a.push_back({r, c, x.h(r, c).real(), x.h(r, c).imag()});
  });
  doc["jv"] = arr([&](auto& a) {
    for (int r = 0; r + 1 < x.n(); ++r)
      for (int c = 0; c < x.m(); ++c) a.push_back({r, c, x.jv(r, c).real(), x.jv(r, c).imag()});
  });
  doc["jh"] = arr([&](auto& a) {
    for (int r = 0; r < x.n(); ++r)
      for (int c = 0; c + 1 < x.m(); ++c) a.push_back({r, c, x.jh(r, c).real(), x.jh(r, c).imag()});
  });
  return doc;
}

inline std::string serialize_instance(const IsingInstance& x) { return instance_to_json(x).dump(); }

}  // namespace isingq
