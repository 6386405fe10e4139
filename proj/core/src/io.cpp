#include "blv/io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace blv {

namespace {

using nlohmann::json;

Rational parse_entry(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_number_unsigned()) return Rational(static_cast<unsigned long>(v.get<unsigned long long>()));
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) throw std::invalid_argument(where + ": non-finite number");
    Rational q(d);  // exact binary value
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument(where + ": expected a number or a \"p/q\" string");
}

}  // namespace

ModelDocument parse_model_document(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("model document must be a JSON object");

  const bool has_dense = doc.contains("kernel");
  const bool has_sparse = doc.contains("kernel_sparse");
  if (has_dense == has_sparse)
    throw std::invalid_argument("model document needs exactly one of \"kernel\", \"kernel_sparse\"");

  int n = 0;
  std::vector<std::vector<KernelEntry>> rows;
  if (has_dense) {
    const json& k = doc.at("kernel");
    if (!k.is_array() || k.empty()) throw std::invalid_argument("\"kernel\" must be a nonempty array");
    n = static_cast<int>(k.size());
    rows.resize(n);
    for (int x = 0; x < n; ++x) {
      const json& row = k.at(x);
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("\"kernel\" row " + std::to_string(x) + " must have " +
                                    std::to_string(n) + " entries");
      for (int y = 0; y < n; ++y) {
        Rational p = parse_entry(row.at(y), "kernel[" + std::to_string(x) + "][" +
                                                std::to_string(y) + "]");
        if (p < 0)
          throw std::invalid_argument("kernel[" + std::to_string(x) + "][" + std::to_string(y) +
                                      "] is negative");
        if (p != 0) rows[x].push_back({y, p, to_double(p)});
      }
    }
  } else {
    const json& k = doc.at("kernel_sparse");
    if (!k.is_array() || k.empty())
      throw std::invalid_argument("\"kernel_sparse\" must be a nonempty array");
    int max_state = -1;
    for (const auto& triple : k) {
      if (!triple.is_array() || triple.size() != 3)
        throw std::invalid_argument("\"kernel_sparse\" entries must be [x, y, value] triples");
      int x = triple.at(0).get<int>();
      int y = triple.at(1).get<int>();
      if (x < 0 || y < 0) throw std::invalid_argument("\"kernel_sparse\" has a negative state");
      max_state = std::max({max_state, x, y});
    }
    n = max_state + 1;
    if (doc.contains("labels")) n = std::max(n, static_cast<int>(doc.at("labels").size()));
    if (doc.contains("mu")) n = std::max(n, static_cast<int>(doc.at("mu").size()));
    rows.resize(n);
    for (const auto& triple : k) {
      int x = triple.at(0).get<int>();
      int y = triple.at(1).get<int>();
      Rational p = parse_entry(triple.at(2), "kernel_sparse[" + std::to_string(x) + "," +
                                                 std::to_string(y) + "]");
      if (p <= 0) throw std::invalid_argument("sparse kernel entries must be positive");
      rows[x].push_back({y, p, to_double(p)});
    }
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& l = doc.at("labels");
    if (!l.is_array() || l.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("\"labels\" must list one label per state");
    for (const auto& v : l) {
      if (!v.is_string()) throw std::invalid_argument("\"labels\" entries must be strings");
      labels.push_back(v.get<std::string>());
    }
  } else {
    for (int x = 0; x < n; ++x) labels.push_back(std::to_string(x));
  }

  std::optional<std::vector<Rational>> mu;
  if (doc.contains("mu")) {
    const json& mj = doc.at("mu");
    if (!mj.is_array() || mj.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("\"mu\" must list one mass per state");
    std::vector<Rational> masses;
    for (int x = 0; x < n; ++x)
      masses.push_back(parse_entry(mj.at(x), "mu[" + std::to_string(x) + "]"));
    mu = std::move(masses);
  }

  ModelDocument out;
  out.model = Model::from_rows(std::move(labels), std::move(rows), std::move(mu));

  if (doc.contains("maps")) {
    const json& ms = doc.at("maps");
    if (!ms.is_array()) throw std::invalid_argument("\"maps\" must be an array");
    for (const auto& mj : ms) {
      if (!mj.is_object() || !mj.contains("name") || !mj.contains("labeling"))
        throw std::invalid_argument("each map needs \"name\" and \"labeling\"");
      std::string name = mj.at("name").get<std::string>();
      const json& lab = mj.at("labeling");
      if (!lab.is_array() || lab.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("map '" + name + "': \"labeling\" must list one block per state");
      std::vector<int> labeling;
      for (const auto& v : lab) {
        if (!v.is_number_integer())
          throw std::invalid_argument("map '" + name + "': blocks must be integers");
        labeling.push_back(v.get<int>());
      }
      std::vector<std::string> block_labels;
      if (mj.contains("block_labels")) {
        const json& bl = mj.at("block_labels");
        if (!bl.is_array())
          throw std::invalid_argument("map '" + name + "': \"block_labels\" must be an array");
        for (const auto& v : bl) {
          if (!v.is_string())
            throw std::invalid_argument("map '" + name + "': block labels must be strings");
          block_labels.push_back(v.get<std::string>());
        }
      }
      out.maps.push_back(make_factor_map(out.model, std::move(name), std::move(labeling),
                                         std::move(block_labels)));
    }
  }
  return out;
}

ModelDocument load_model_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_document(buf.str());
}

std::string serialize_model_document(const Model& m, std::span<const FactorMap> maps,
                                     int dense_limit) {
  json doc;
  doc["labels"] = m.labels();
  if (m.size() <= dense_limit) {
    json kernel = json::array();
    for (int x = 0; x < m.size(); ++x) {
      json row = json::array();
      const auto& entries = m.row(x);
      std::size_t e = 0;
      for (int y = 0; y < m.size(); ++y) {
        if (e < entries.size() && entries[e].to == y) {
          row.push_back(to_string(entries[e].p));
          ++e;
        } else {
          row.push_back("0");
        }
      }
      kernel.push_back(std::move(row));
    }
    doc["kernel"] = std::move(kernel);
  } else {
    json sparse = json::array();
    for (int x = 0; x < m.size(); ++x)
      for (const auto& e : m.row(x)) sparse.push_back({x, e.to, to_string(e.p)});
    doc["kernel_sparse"] = std::move(sparse);
  }
  json mu = json::array();
  for (int x = 0; x < m.size(); ++x) mu.push_back(to_string(m.mu(x)));
  doc["mu"] = std::move(mu);
  if (!maps.empty()) {
    json ms = json::array();
    for (const auto& map : maps) {
      json mj;
      mj["name"] = map.name;
      mj["labeling"] = map.labeling;
      mj["block_labels"] = map.block_labels;
      ms.push_back(std::move(mj));
    }
    doc["maps"] = std::move(ms);
  }
  return doc.dump(2) + "\n";
}

void save_model_document(const std::string& path, const Model& m,
                         std::span<const FactorMap> maps, int dense_limit) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_model_document(m, maps, dense_limit);
}

}  // namespace blv
