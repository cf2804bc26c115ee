#include "normmesh/serialize.hpp"

#include <sstream>

namespace normmesh {

namespace {

Json input_to_json(const InputValue& v) {
  return std::visit([](const auto& x) { return Json(x); }, v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& os) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, os);
    } else if (!value.is_array()) {
      os << csv_escape(name) << ',' << csv_escape(value.is_string() ? value.get<std::string>() : value.dump())
         << '\n';
    }
  }
}

}  // namespace

Json points_to_json(const Points& points) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    arr.push_back(Json(std::vector<double>(p.begin(), p.end())));
  }
  return arr;
}

Json to_json(const NodeSet& nodes) {
  Json j;
  j["degree"] = nodes.space.degree();
  j["ambient_dim"] = nodes.space.ambient_dim();
  j["points"] = points_to_json(nodes.nodes);
  j["log_abs_det"] = nodes.log_abs_det;
  j["swap_optimal"] = nodes.swap_optimal;
  j["lagrange_sup"] = nodes.lagrange_sup;
  j["grid_indices"] = nodes.grid_indices;
  j["swap_tolerance"] = nodes.swap_tolerance;
  j["sweeps"] = nodes.sweeps;
  j["swaps"] = nodes.swaps;
  return j;
}

Json to_json(const EmbeddingCertificate& cert) {
  Json j;
  j["n"] = cert.n;
  j["d"] = cert.d;
  j["p"] = cert.p;
  if (cert.schedule_c) j["schedule_c"] = *cert.schedule_c;
  j["nodes"] = points_to_json(cert.node_set.nodes);
  j["certified_bound"] = cert.certified_bound;
  j["grid_constant"] = cert.grid_constant;
  j["empirical_distortion"] = cert.empirical_distortion;
  j["seed"] = cert.seed;
  j["grid_size"] = cert.grid.size();
  j["coarse_bound"] = cert.coarse_bound;
  j["node_count"] = cert.node_set.nodes.size();
  j["swap_optimal"] = cert.node_set.swap_optimal;
  j["lagrange_sup"] = cert.node_set.lagrange_sup;
  return j;
}

Json to_json(const BoundReport& report) {
  Json j;
  Json inputs = Json::object();
  for (const auto& [name, value] : report.inputs) inputs[name] = input_to_json(value);
  j["inputs"] = inputs;
  Json values = Json::array();
  for (const auto& e : report.values) {
    Json v;
    v["name"] = e.name;
    v["value"] = static_cast<double>(e.value);
    v["exact"] = e.integer ? e.integer->str() : to_decimal(e.value, 30);
    v["formula"] = e.formula;
    values.push_back(v);
  }
  j["values"] = values;
  j["not_constructive"] = report.not_constructive;
  return j;
}

Json to_json(const TraceRank& rank) {
  Json j;
  j["rank"] = rank.rank;
  j["dim_full"] = rank.full_dim;
  j["determining"] = rank.determining;
  j["grid_size"] = rank.grid_size;
  return j;
}

std::string to_csv(const Json& report) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(report, "", os);
  // Bound tables are arrays of named entries; give each its own row.
  if (report.contains("values") && report["values"].is_array()) {
    for (const auto& v : report["values"]) {
      if (!v.is_object() || !v.contains("name")) continue;
      os << csv_escape("values." + v["name"].get<std::string>()) << ',' << v["exact"].get<std::string>() << '\n';
    }
  }
  return os.str();
}

}  // namespace normmesh
