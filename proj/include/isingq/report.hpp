#pragma once

#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "isingq/linalg.hpp"

namespace isingq {

// One run of the command-line tool. Optional values are omitted (csv: empty
// cell, json: null) when the command does not produce them.
struct RunReport {
  int n = 0, m = 0, decorated = 0;
  std::string domain;
  std::string method;
  std::optional<cplx> z_exact;
  double z_log_scale = 0;  // z_exact is z_exact * e^{z_log_scale}
  std::optional<cplx> z_estimate;
  double delta_o = 0;
  double delta = 0;
  std::optional<double> delta_prime;
  std::optional<uint64_t> samples;
  std::optional<uint64_t> seed;
  double wall_time = 0;

  std::optional<double> additive_error() const {
    if (!z_exact || !z_estimate || z_log_scale != 0) return std::nullopt;
    return std::abs(*z_estimate - *z_exact);
  }
  std::optional<double> relative_error() const {
    auto a = additive_error();
    if (!a || std::abs(*z_exact) == 0) return std::nullopt;
    return *a / std::abs(*z_exact);
  }
};

enum class ReportFormat { Text, Csv, Json };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + s);
}

inline constexpr const char* kReportCsvHeader =
    "n,m,decorated,domain,method,z_exact_re,z_exact_im,z_log_scale,z_estimate_re,z_estimate_im,delta_o,delta,"
    "delta_prime,additive_error,relative_error,samples,seed,wall_time";

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) return num(*v);
  else return std::to_string(*v);
}

inline nlohmann::json cjson(const std::optional<cplx>& z) {
  if (!z) return nullptr;
  return nlohmann::json::array({z->real(), z->imag()});
}

inline std::optional<cplx> cfrom(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return cplx{j.at(0).get<double>(), j.at(1).get<double>()};
}

template <class T>
nlohmann::json ojson(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

template <class T>
std::optional<T> ofrom(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace detail

inline nlohmann::json report_to_json(const RunReport& r) {
  using namespace detail;
  nlohmann::json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["decorated"] = r.decorated;
  j["domain"] = r.domain;
  j["method"] = r.method;
  j["z_exact"] = cjson(r.z_exact);
  j["z_log_scale"] = r.z_log_scale;
  j["z_estimate"] = cjson(r.z_estimate);
  j["delta_o"] = r.delta_o;
  j["delta"] = r.delta;
  j["delta_prime"] = ojson(r.delta_prime);
  j["additive_error"] = ojson(r.additive_error());
  j["relative_error"] = ojson(r.relative_error());
  j["samples"] = ojson(r.samples);
  j["seed"] = ojson(r.seed);
  j["wall_time"] = r.wall_time;
  return j;
}

// derived fields (errors) are recomputed, not read back
inline RunReport report_from_json(const nlohmann::json& j) {
  using namespace detail;
  try {
    RunReport r;
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.decorated = j.at("decorated").get<int>();
    r.domain = j.at("domain").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.z_exact = cfrom(j.at("z_exact"));
    r.z_log_scale = j.value("z_log_scale", 0.0);
    r.z_estimate = cfrom(j.at("z_estimate"));
    r.delta_o = j.at("delta_o").get<double>();
    r.delta = j.at("delta").get<double>();
    r.delta_prime = ofrom<double>(j.at("delta_prime"));
    r.samples = ofrom<uint64_t>(j.at("samples"));
    r.seed = ofrom<uint64_t>(j.at("seed"));
    r.wall_time = j.at("wall_time").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

inline std::string write_report(const RunReport& r, ReportFormat f) {
  using namespace detail;
  if (f == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
  if (f == ReportFormat::Csv) {
    std::ostringstream os;
    auto cre = [](const std::optional<cplx>& z) { return z ? num(z->real()) : std::string(); };
    auto cim = [](const std::optional<cplx>& z) { return z ? num(z->imag()) : std::string(); };
    os << kReportCsvHeader << '\n'
       << r.n << ',' << r.m << ',' << r.decorated << ',' << r.domain << ',' << r.method << ',' << cre(r.z_exact)
       << ',' << cim(r.z_exact) << ',' << num(r.z_log_scale) << ',' << cre(r.z_estimate) << ','
       << cim(r.z_estimate) << ',' << num(r.delta_o) << ',' << num(r.delta) << ',' << opt(r.delta_prime) << ','
       << opt(r.additive_error()) << ',' << opt(r.relative_error()) << ',' << opt(r.samples) << ','
       << opt(r.seed) << ',' << num(r.wall_time) << '\n';
    return os.str();
  }
  std::ostringstream os;
  os << std::setprecision(12);
  auto c = [](cplx z) {
    std::ostringstream s;
    s << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return s.str();
  };
  os << "instance     " << r.n << " x " << r.m << " (" << r.decorated << " decorated qubits), " << r.domain << '\n';
  os << "method       " << r.method << '\n';
  if (r.z_exact) {
    os << "z_exact      " << c(*r.z_exact);
    if (r.z_log_scale != 0) os << "  * e^" << r.z_log_scale;
    os << '\n';
  }
  if (r.z_estimate) os << "z_estimate   " << c(*r.z_estimate) << '\n';
  if (r.delta > 0 || r.delta_o > 0) {
    os << "delta        " << r.delta << '\n';
    os << "delta_o      " << r.delta_o << '\n';
    os << "delta/delta_o " << (r.delta_o > 0 ? r.delta / r.delta_o : NAN) << '\n';
  }
  if (r.delta_prime) os << "delta_prime  " << *r.delta_prime << '\n';
  if (auto a = r.additive_error()) os << "additive_err " << *a << '\n';
  if (auto e = r.relative_error()) os << "relative_err " << *e << '\n';
  if (r.samples) os << "samples      " << *r.samples << '\n';
  if (r.seed) os << "seed         " << *r.seed << '\n';
  os << "wall_time    " << std::setprecision(4) << r.wall_time << " s\n";
  return os.str();
}

}  // namespace isingq
