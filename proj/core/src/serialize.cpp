#include "eink/serialize.hpp"

#include <sstream>

#include <json.hpp>

namespace eink {

using nlohmann::json;

std::string descriptor_to_json(const FamilyDescriptor& d, int grid) {
  json j;
  j["family"] = family_name(d.name);
  j["params"] = json::object();
  for (const auto& [key, value] : d.params) j["params"][key] = value;
  j["grid"] = grid;
  return j.dump();
}

FamilyDescriptor descriptor_from_json(const std::string& text, int* grid_out) {
  const json j = json::parse(text);
  FamilyDescriptor d;
  d.name = family_from_name(j.at("family").get<std::string>());
  if (j.contains("params"))
    for (const auto& [key, value] : j.at("params").items())
      d.params[key] = value.get<double>();
  if (grid_out) *grid_out = j.value("grid", 48);
  return d;
}

std::string params_brief(const FamilyDescriptor& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : d.params) {
    if (!first) os << ";";
    os << key << "=" << value;
    first = false;
  }
  return os.str();
}

namespace {

json report_json_body(const InvariantReport& rep) {
  json j;
  j["ein_upper"] = rep.ein_upper;
  if (rep.ein_lower.is_neg_inf())
    j["ein_lower"] = "-inf";
  else
    j["ein_lower"] = rep.ein_lower.value();
  j["scal_min"] = rep.scal_min;
  j["scal_max"] = rep.scal_max;
  j["rho_min"] = rep.rho_min;
  j["rho_max"] = rep.rho_max;
  j["grid"] = rep.grid;
  j["delta_upper"] = rep.delta_upper;
  if (rep.delta_lower)
    j["delta_lower"] = *rep.delta_lower;
  else
    j["delta_lower"] = nullptr;
  return j;
}

}  // namespace

std::string report_to_json(const FamilyDescriptor& d, const InvariantReport& rep,
                           const std::vector<std::pair<double, double>>& k_min_eigs) {
  json j;
  j["family"] = family_name(d.name);
  j["params"] = json::object();
  for (const auto& [key, value] : d.params) j["params"][key] = value;
  j["report"] = report_json_body(rep);
  if (!k_min_eigs.empty()) {
    json ks = json::array();
    for (const auto& [k, min_eig] : k_min_eigs)
      ks.push_back({{"k", k}, {"min_eig", min_eig}});
    j["ein_k_min_eigs"] = ks;
  }
  // Admissible whole-manifold values in low dimensions.
  const int dim = make_family(d).ref.dim;
  if (dim == 2) j["dim_admissible_Ein_values"] = {0, 2};
  if (dim == 3) j["dim_admissible_Ein_values"] = {0, 2, 3};
  return j.dump(2);
}

std::string report_csv_header() {
  return "family,params,k,min_eig,ein_upper,ein_lower,grid,delta";
}

std::string report_to_csv(const FamilyDescriptor& d, const InvariantReport& rep,
                          const std::vector<std::pair<double, double>>& k_min_eigs) {
  std::ostringstream os;
  os.precision(12);
  const std::string lower = rep.ein_lower.str();
  auto row = [&](const std::string& k, const std::string& min_eig) {
    os << family_name(d.name) << "," << params_brief(d) << "," << k << "," << min_eig
       << "," << rep.ein_upper << "," << lower << "," << rep.grid << ","
       << rep.delta_upper << "\n";
  };
  if (k_min_eigs.empty()) {
    row("", "");
  } else {
    for (const auto& [k, min_eig] : k_min_eigs) {
      std::ostringstream ks, ms;
      ks.precision(12);
      ms.precision(12);
      ks << k;
      ms << min_eig;
      row(ks.str(), ms.str());
    }
  }
  return os.str();
}

std::string suites_to_json(const std::vector<SuiteResult>& suites) {
  json arr = json::array();
  for (const auto& suite : suites)
    for (const auto& c : suite.checks) {
      json j;
      j["suite"] = suite.suite;
      j["check"] = c.check;
      j["params"] = c.params;
      j["lhs"] = c.lhs;
      j["rhs"] = c.rhs;
      j["residual"] = c.residual;
      j["pass"] = c.pass;
      arr.push_back(j);
    }
  return arr.dump(2);
}

std::string checks_to_csv(const std::vector<SuiteResult>& suites) {
  std::ostringstream os;
  os.precision(12);
  os << "suite,check,params,lhs,rhs,residual,pass\n";
  for (const auto& suite : suites)
    for (const auto& c : suite.checks)
      os << suite.suite << "," << c.check << "," << c.params << "," << c.lhs << ","
         << c.rhs << "," << c.residual << "," << (c.pass ? 1 : 0) << "\n";
  return os.str();
}

}  // namespace eink
