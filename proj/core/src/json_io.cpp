#include "ikep/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ikep {

namespace {

using nlohmann::json;

json bound_to_json(const Bound& b) {
  if (b.is_finite()) return json(b.value());
  return json("inf");
}

Bound bound_from_json(const json& j, const std::string& what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Bound::unbounded();
    throw ValidationError(what + ": expected integer or \"inf\"");
  }
  if (!j.is_number_integer()) throw ValidationError(what + ": expected integer or \"inf\"");
  return Bound::finite(j.get<std::int64_t>());
}

json gamma_body(const GammaParams& g) {
  json out;
  out["icl"] = bound_to_json(g.icl);
  json ncl = json::array(), iss = json::array(), isn = json::array();
  for (int i = 0; i < g.n; ++i) {
    ncl.push_back(bound_to_json(g.ncl[i]));
    iss.push_back(bound_to_json(g.iss[i]));
    isn.push_back(bound_to_json(g.isn[i]));
  }
  out["ncl"] = ncl;
  out["iss"] = iss;
  out["isn"] = isn;
  return out;
}

std::vector<Bound> bound_vector(const json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ValidationError(what + ": expected an array with one entry per country");
  }
  std::vector<Bound> out;
  for (const json& item : j) out.push_back(bound_from_json(item, what));
  return out;
}

GammaParams gamma_from(const json& j, int n) {
  if (!j.is_object()) throw ValidationError("gamma: expected an object");
  if (n <= 0) {
    if (!j.contains("n")) throw ValidationError("gamma: missing country count n");
    n = j.at("n").get<int>();
  }
  return GammaParams(n, bound_from_json(j.at("icl"), "icl"),
                     bound_vector(j.at("ncl"), n, "ncl"), bound_vector(j.at("iss"), n, "iss"),
                     bound_vector(j.at("isn"), n, "isn"));
}

json parse(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError(what + ": invalid JSON");
  return j;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json out;
  out["n"] = inst.country_count();
  json vertices = json::array();
  for (int v = 0; v < inst.vertex_count(); ++v) {
    vertices.push_back({{"id", v}, {"country", inst.country_of(v)}});
  }
  out["vertices"] = vertices;
  json arcs = json::array();
  for (const Arc& a : inst.arcs()) arcs.push_back({a.first, a.second});
  out["arcs"] = arcs;
  out["gamma"] = gamma_body(inst.gamma());
  return out.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json j = parse(text, "instance");
  int n = j.at("n").get<int>();
  const json& vertices = j.at("vertices");
  std::vector<int> countries(vertices.size(), -1);
  for (const json& v : vertices) {
    int id = v.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(vertices.size()) || countries[id] != -1) {
      throw ValidationError("instance: vertex ids must be dense and unique");
    }
    countries[id] = v.at("country").get<int>();
  }
  std::vector<Arc> arcs;
  for (const json& a : j.at("arcs")) {
    if (!a.is_array() || a.size() != 2) throw ValidationError("instance: arc must be [u,v]");
    arcs.push_back({a[0].get<int>(), a[1].get<int>()});
  }
  return Instance(static_cast<int>(vertices.size()), std::move(countries), std::move(arcs),
                  gamma_from(j.at("gamma"), n));
}

std::string gamma_to_json(const GammaParams& g) {
  json out = gamma_body(g);
  out["n"] = g.n;
  return out.dump(2) + "\n";
}

GammaParams gamma_from_json(const std::string& text) {
  return gamma_from(parse(text, "gamma"), 0);
}

std::string gen_config_to_json(const GenConfig& cfg) {
  json out;
  out["country_sizes"] = cfg.country_sizes;
  out["arc_probability_national"] = cfg.arc_probability_national;
  out["arc_probability_international"] = cfg.arc_probability_international;
  out["gamma"] = gamma_body(cfg.gamma);
  out["seed"] = cfg.seed;
  return out.dump(2) + "\n";
}

namespace {

GenConfig gen_config_from(const json& j) {
  GenConfig cfg;
  if (j.contains("country_sizes")) {
    cfg.country_sizes = j.at("country_sizes").get<std::vector<int>>();
  } else if (j.contains("ratio")) {
    const json& r = j.at("ratio");
    cfg.country_sizes =
        sizes_from_ratio(r.at("parts").get<std::vector<int>>(), r.at("total").get<int>());
  } else {
    throw ValidationError("gen config: needs country_sizes or ratio");
  }
  cfg.arc_probability_national = j.at("arc_probability_national").get<double>();
  cfg.arc_probability_international = j.at("arc_probability_international").get<double>();
  cfg.gamma = gamma_from(j.at("gamma"), static_cast<int>(cfg.country_sizes.size()));
  cfg.seed = j.value("seed", 0ull);
  return cfg;
}

}  // namespace

GenConfig gen_config_from_json(const std::string& text) {
  return gen_config_from(parse(text, "gen config"));
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  json j = parse(text, "experiment config");
  ExperimentConfig cfg;
  int index = 0;
  for (const json& entry : j.at("corpus")) {
    if (entry.contains("file")) {
      std::string path = entry.at("file").get<std::string>();
      std::string id = entry.value("id", path);
      cfg.instances.emplace_back(id, instance_from_json(read_file(path)));
    } else {
      char id[32];
      std::snprintf(id, sizeof(id), "gen-%03d", index);
      cfg.instances.emplace_back(entry.value("id", std::string(id)),
                                 gen_instance(gen_config_from(entry)));
    }
    index++;
  }
  if (j.contains("mechanisms")) {
    cfg.mechanisms = j.at("mechanisms").get<std::vector<std::string>>();
  }
  cfg.order_runs_per_instance = j.value("order_runs_per_instance", 5);
  if (j.contains("sweep")) {
    int n = cfg.instances.empty() ? 0 : cfg.instances.front().second.country_count();
    for (const json& point : j.at("sweep")) {
      cfg.sweep.push_back({point.at("tag").get<std::string>(),
                           gamma_from(point.at("gamma"), n)});
    }
  }
  cfg.seed = j.value("seed", 0ull);
  cfg.workers = j.value("workers", 0);
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
}

}  // namespace ikep
