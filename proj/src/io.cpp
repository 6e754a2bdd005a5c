#include "discord/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "discord/errors.hpp"

namespace discord {

std::string current_timestamp() {
  std::time_t t = 0;
  if (const char* pinned = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(pinned, &end, 10);
    if (end == pinned || *end != '\0')
      throw InvalidInputError("SOURCE_DATE_EPOCH is not an integer");
    t = static_cast<std::time_t>(v);
  } else {
    t = std::time(nullptr);
  }
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

json manifest_to_json(const RunManifest& manifest) {
  json inputs = json::object();
  for (const auto& [key, value] : manifest.inputs) inputs[key] = value;
  return json{{"command", manifest.command},
              {"inputs", inputs},
              {"seed", manifest.seed},
              {"tool_version", manifest.tool_version},
              {"timestamp", manifest.timestamp}};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_rec(const json& value, std::ostream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in << json(key).dump() << ": ";
        dump_rec(item, os, indent, depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        os << "[]";
        return;
      }
      bool scalars_only = true;
      for (const auto& item : value)
        if (item.is_structured()) scalars_only = false;
      if (scalars_only) {
        os << "[";
        bool first = true;
        for (const auto& item : value) {
          if (!first) os << ", ";
          first = false;
          dump_rec(item, os, indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in;
        dump_rec(item, os, indent, depth + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = value.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      os << format_double(v);
      return;
    }
    default:
      os << value.dump();
      return;
  }
}

}  // namespace

void dump_json(const json& value, std::ostream& os, int indent) {
  dump_rec(value, os, indent, 0);
  os << "\n";
}

std::string dump_json(const json& value, int indent) {
  std::ostringstream os;
  dump_json(value, os, indent);
  return os.str();
}

json network_to_json(const Network& net) {
  json edges = json::array();
  for (int i = 0; i < net.n; ++i)
    for (int j = i + 1; j < net.n; ++j)
      if (net.weights(i, j) != 0.0) edges.push_back({i, j, net.weights(i, j)});
  return json{{"n", net.n}, {"edges", edges}};
}

Network network_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw InvalidInputError("network JSON: expected an object with \"n\" and \"edges\"");
  const int n = j.at("n").get<int>();
  if (n < 1) throw InvalidInputError("network JSON: n must be positive");
  Network net;
  net.n = n;
  net.weights = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw InvalidInputError("network JSON: each edge must be [i, j, w]");
    const int a = e[0].get<int>();
    const int b = e[1].get<int>();
    const double w = e[2].get<double>();
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
      throw InvalidInputError("network JSON: bad edge endpoints");
    net.weights(a, b) = w;
    net.weights(b, a) = w;
  }
  const auto violations = validate(net);
  if (!violations.empty())
    throw InvalidInputError("network JSON: " + violations.front().describe());
  return net;
}

void write_network_csv(std::ostream& os, const Network& net,
                       const RunManifest& manifest) {
  os << "# manifest: " << manifest_to_json(manifest).dump() << "\n";
  os << "i,j,w\n";
  for (int i = 0; i < net.n; ++i)
    for (int j = i + 1; j < net.n; ++j)
      if (net.weights(i, j) != 0.0)
        os << i << "," << j << "," << format_double(net.weights(i, j)) << "\n";
}

json spectrum_to_json(const Spectrum& spec) {
  json values = json::array();
  for (int l = 0; l < spec.n(); ++l) values.push_back(spec.eigenvalues(l));
  json vectors = json::array();
  for (int l = 0; l < spec.n(); ++l) {
    json column = json::array();
    for (int k = 0; k < spec.n(); ++k) column.push_back(spec.eigenvectors(k, l));
    vectors.push_back(std::move(column));
  }
  return json{{"eigenvalues", values}, {"eigenvectors", vectors}};
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spec,
                        const RunManifest& manifest) {
  os << "# manifest: " << manifest_to_json(manifest).dump() << "\n";
  os << "ell,lambda";
  for (int k = 0; k < spec.n(); ++k) os << ",u" << k;
  os << "\n";
  for (int l = 0; l < spec.n(); ++l) {
    os << (l + 1) << "," << format_double(spec.eigenvalues(l));
    for (int k = 0; k < spec.n(); ++k)
      os << "," << format_double(spec.eigenvectors(k, l));
    os << "\n";
  }
}

Profile read_profile_csv(std::istream& is) {
  std::vector<double> values;
  std::vector<long> nodes;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.empty()) continue;

    char* end = nullptr;
    const std::string& last = fields.back();
    const double v = std::strtod(last.c_str(), &end);
    if (end == last.c_str() || *end != '\0') {
      if (values.empty()) continue;  // header line
      throw InvalidInputError("profile CSV: unparsable value at line " +
                              std::to_string(line_no));
    }
    if (fields.size() == 2) {
      const long node = std::strtol(fields[0].c_str(), &end, 10);
      if (end == fields[0].c_str() || *end != '\0')
        throw InvalidInputError("profile CSV: unparsable node index at line " +
                                std::to_string(line_no));
      nodes.push_back(node);
    } else if (fields.size() != 1) {
      throw InvalidInputError("profile CSV: expected 1 or 2 columns at line " +
                              std::to_string(line_no));
    }
    values.push_back(v);
  }
  if (values.empty()) throw InvalidInputError("profile CSV: no values found");
  if (!nodes.empty()) {
    if (nodes.size() != values.size())
      throw InvalidInputError("profile CSV: mixed 1- and 2-column rows");
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (nodes[k] != static_cast<long>(k))
        throw InvalidInputError("profile CSV: node indices must be 0,1,2,... in order");
  }
  Profile f(static_cast<int>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) f(static_cast<int>(k)) = values[k];
  return f;
}

Profile read_profile_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInputError("cannot open profile CSV: " + path);
  return read_profile_csv(is);
}

std::vector<WeightedEdge> read_edges_csv(std::istream& is) {
  std::vector<WeightedEdge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.empty()) continue;
    if (fields.size() != 2 && fields.size() != 3)
      throw InvalidInputError("edges CSV: expected 2 or 3 columns at line " +
                              std::to_string(line_no));
    char* end = nullptr;
    const long i = std::strtol(fields[0].c_str(), &end, 10);
    if (end == fields[0].c_str() || *end != '\0') {
      if (edges.empty() && line_no <= 2) continue;  // header line
      throw InvalidInputError("edges CSV: unparsable node index at line " +
                              std::to_string(line_no));
    }
    const long j = std::strtol(fields[1].c_str(), &end, 10);
    if (end == fields[1].c_str() || *end != '\0')
      throw InvalidInputError("edges CSV: unparsable node index at line " +
                              std::to_string(line_no));
    double w = 1.0;
    if (fields.size() == 3) {
      w = std::strtod(fields[2].c_str(), &end);
      if (end == fields[2].c_str() || *end != '\0')
        throw InvalidInputError("edges CSV: unparsable weight at line " +
                                std::to_string(line_no));
    }
    edges.push_back({static_cast<int>(i), static_cast<int>(j), w});
  }
  return edges;
}

std::vector<WeightedEdge> read_edges_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInputError("cannot open edges CSV: " + path);
  return read_edges_csv(is);
}

void write_solve_csv(std::ostream& os, const Profile& f, const Profile& a_star,
                     const Profile& payoffs, const RunManifest& manifest) {
  os << "# manifest: " << manifest_to_json(manifest).dump() << "\n";
  os << "node,f,a_star,payoff\n";
  for (int i = 0; i < f.size(); ++i) {
    os << i << "," << format_double(f(i)) << "," << format_double(a_star(i))
       << "," << format_double(payoffs(i)) << "\n";
  }
}

Network load_network_file(const std::string& path) {
  return network_from_json(read_json_file(path));
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInputError("cannot open file: " + path);
  json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("cannot parse JSON file " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidInputError("cannot open file for writing: " + path);
  os << content;
  if (!os) throw InvalidInputError("failed writing file: " + path);
}

}  // namespace discord
