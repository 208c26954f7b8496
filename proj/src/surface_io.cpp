#include "systole/surface_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "systole/error.hpp"

namespace systole {

using ordered_json = nlohmann::ordered_json;

SurfaceSpec parse_spec(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("surface spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::parse, "surface spec must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "pants" && key != "gluings" && key != "lengths" && key != "labels") {
      throw Error(Errc::parse, "unknown key '" + key + "' in surface spec");
    }
  }
  try {
    SurfaceSpec spec;
    std::unordered_map<std::string, int> socket;
    for (const auto& p : doc.at("pants")) {
      if (!p.is_array() || p.size() != 3) throw Error(Errc::parse, "each pants needs exactly 3 sockets");
      std::array<std::string, 3> names;
      for (int k = 0; k < 3; ++k) {
        names[k] = p[k].get<std::string>();
        if (!socket.emplace(names[k], static_cast<int>(3 * spec.pants.size() + k)).second) {
          throw Error(Errc::invalid_spec, "duplicate socket name '" + names[k] + "'");
        }
      }
      spec.pants.push_back(names);
    }
    auto lookup = [&](const std::string& name) {
      auto it = socket.find(name);
      if (it == socket.end()) throw Error(Errc::invalid_spec, "unknown socket '" + name + "'");
      return it->second;
    };
    for (const auto& g : doc.at("gluings")) {
      spec.gluings.push_back({lookup(g.at("a").get<std::string>()), lookup(g.at("b").get<std::string>()),
                              TwistParam(g.value("twist", 0.0))});
    }
    const auto& lengths = doc.at("lengths");
    if (!lengths.is_object()) throw Error(Errc::parse, "'lengths' must be an object");
    spec.lengths.assign(3 * spec.pants.size(), -1.0);
    for (const auto& [name, value] : lengths.items()) {
      spec.lengths[lookup(name)] = value.get<double>();
    }
    for (int s = 0; s < spec.socket_count(); ++s) {
      if (spec.lengths[s] < 0.0) {
        throw Error(Errc::invalid_spec, "socket '" + spec.socket_name(s) + "' has no length");
      }
    }
    if (doc.contains("labels")) {
      for (const auto& l : doc.at("labels")) spec.labels.push_back(l.get<std::string>());
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("malformed surface spec: ") + e.what());
  }
}

std::string write_spec(const SurfaceSpec& spec) {
  ordered_json doc;
  doc["pants"] = ordered_json::array();
  for (const auto& p : spec.pants) doc["pants"].push_back({p[0], p[1], p[2]});
  doc["gluings"] = ordered_json::array();
  for (const Gluing& g : spec.gluings) {
    ordered_json item;
    item["a"] = spec.socket_name(g.a);
    item["b"] = spec.socket_name(g.b);
    item["twist"] = g.twist.value();
    doc["gluings"].push_back(item);
  }
  doc["lengths"] = ordered_json::object();
  for (int s = 0; s < spec.socket_count(); ++s) doc["lengths"][spec.socket_name(s)] = spec.lengths[s];
  if (!spec.labels.empty()) doc["labels"] = spec.labels;
  return doc.dump(2) + "\n";
}

SurfaceSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open surface spec '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

void save_spec(const SurfaceSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write '" + path + "'");
  out << write_spec(spec);
}

}  // namespace systole
