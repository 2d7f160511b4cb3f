#include "afc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "afc/afc.hpp"
#include "afc/errors.hpp"
#include "afc/estimator.hpp"
#include "afc/graph_gen.hpp"
#include "afc/metrics.hpp"
#include "afc/reward.hpp"
#include "afc/robust.hpp"
#include "afc/version.hpp"

namespace afc {

namespace {

using nlohmann::json;
using Section = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::map<std::string, Section> read_sections(std::istream& in,
                                             const std::string& name) {
  std::map<std::string, Section> sections;
  std::string current = "";
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(name + ":" + std::to_string(line_no) +
                          ": malformed section header");
      }
      current = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return sections;
}

class ConfigReader {
 public:
  ConfigReader(std::map<std::string, Section> sections, std::string name)
      : sections_(std::move(sections)), name_(std::move(name)) {}

  std::optional<std::string> find(const std::string& section,
                                  const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) {
      return std::nullopt;
    }
    const auto k = s->second.find(key);
    if (k == s->second.end()) {
      return std::nullopt;
    }
    return k->second;
  }

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    return find(section, key).value_or(fallback);
  }

  double get_double(const std::string& section, const std::string& key,
                    double fallback) const {
    const auto raw = find(section, key);
    if (!raw) {
      return fallback;
    }
    try {
      return std::stod(*raw);
    } catch (...) {
      throw ConfigError(name_ + ": bad number for " + section + "." + key);
    }
  }

  long long get_int(const std::string& section, const std::string& key,
                    long long fallback) const {
    const auto raw = find(section, key);
    if (!raw) {
      return fallback;
    }
    try {
      return std::stoll(*raw);
    } catch (...) {
      throw ConfigError(name_ + ": bad integer for " + section + "." + key);
    }
  }

  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const {
    const auto raw = find(section, key);
    if (!raw) {
      return fallback;
    }
    if (*raw == "true" || *raw == "1" || *raw == "yes" || *raw == "on") {
      return true;
    }
    if (*raw == "false" || *raw == "0" || *raw == "no" || *raw == "off") {
      return false;
    }
    throw ConfigError(name_ + ": bad boolean for " + section + "." + key);
  }

 private:
  std::map<std::string, Section> sections_;
  std::string name_;
};

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& name) {
  const ConfigReader reader(read_sections(in, name), name);
  ExperimentConfig config;

  const std::string source = reader.get_string("graph", "source", "er");
  if (source == "er") {
    config.graph.kind = GraphSourceSpec::Kind::kEr;
    config.graph.n = static_cast<int>(reader.get_int("graph", "n", 100));
    config.graph.er_p = reader.get_double("graph", "p", 0.08);
  } else if (source == "ws") {
    config.graph.kind = GraphSourceSpec::Kind::kWs;
    config.graph.n = static_cast<int>(reader.get_int("graph", "n", 100));
    config.graph.ws_ring_degree =
        static_cast<int>(reader.get_int("graph", "ring_degree", 6));
    config.graph.ws_rewire_p = reader.get_double("graph", "rewire_p", 0.10);
  } else if (source == "file") {
    config.graph.kind = GraphSourceSpec::Kind::kFile;
    const std::string path = reader.get_string("graph", "path", "");
    if (path.empty()) {
      throw ConfigError(name + ": graph.path is required for source=file");
    }
    config.graph.path = path;
    const std::string format = reader.get_string("graph", "format", "gml");
    if (format == "gml") {
      config.graph.format = GraphFormat::kGmlSubset;
    } else if (format == "edgelist") {
      config.graph.format = GraphFormat::kEdgeList;
    } else {
      throw ConfigError(name + ": unknown graph.format '" + format + "'");
    }
    config.graph.weighted = reader.get_bool("graph", "weighted", true);
  } else {
    throw ConfigError(name + ": unknown graph.source '" + source + "'");
  }

  const std::string mode =
      reader.get_string("model", "mode", "edge_bernoulli");
  if (mode == "edge_bernoulli") {
    config.model.mode = RealizationMode::kEdgeBernoulli;
  } else if (mode == "weight_resample") {
    config.model.mode = RealizationMode::kWeightResample;
  } else if (mode == "composite") {
    config.model.mode = RealizationMode::kComposite;
  } else {
    throw ConfigError(name + ": unknown model.mode '" + mode + "'");
  }
  config.model.p_on = reader.get_double("model", "p_on", 0.85);
  config.model.alpha = reader.get_double("model", "alpha", 0.15);
  config.model.k_min = static_cast<int>(reader.get_int("model", "k_min", 5));
  config.model.rho_mu = reader.get_double("model", "rho_mu", 0.0);
  config.model.rho_sigma = reader.get_double("model", "rho_sigma", 0.0);
  config.model.w_max = reader.get_double("model", "w_max", 0.0);
  if (const auto r = reader.find("model", "r_hop")) {
    config.model.r_hop = std::stoi(*r);
  }

  config.samples_per_row =
      static_cast<int>(reader.get_int("estimate", "samples_per_row", 60));
  config.seed =
      static_cast<std::uint64_t>(reader.get_int("estimate", "seed", 1));
  config.stabilize = reader.get_bool("estimate", "stabilize", true);
  config.stabilize_floor =
      reader.get_double("estimate", "stabilize_floor", 1e-6);

  config.run_baseline = reader.get_bool("analyses", "baseline", true);
  config.run_robust = reader.get_bool("analyses", "robust", false);
  config.run_reward = reader.get_bool("analyses", "reward", false);
  config.run_constrained = reader.get_bool("analyses", "constrained", false);

  config.robust.delta_rel = reader.get_double("robust", "delta_rel", 0.50);
  config.robust.leak_floor = reader.get_double("robust", "r_floor", 0.05);
  config.robust.n_samples =
      static_cast<int>(reader.get_int("robust", "n_samples", 100));
  config.robust.top_report =
      static_cast<int>(reader.get_int("robust", "top_report", 5));
  if (const auto metrics = reader.find("robust", "metrics")) {
    config.robust.use_kl = false;
    config.robust.use_w1 = false;
    for (const std::string& m : split_list(*metrics)) {
      if (m == "kl") {
        config.robust.use_kl = true;
      } else if (m == "w1") {
        config.robust.use_w1 = true;
      } else {
        throw ConfigError(name + ": unknown robust metric '" + m + "'");
      }
    }
  }
  if (const auto pairs = reader.find("robust", "certificate_pairs")) {
    for (const std::string& item : split_list(*pairs)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw ConfigError(name + ": certificate pairs use the form u:v");
      }
      config.robust.certificate_pairs.emplace_back(
          std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    }
  }

  config.reward.n_hubs = static_cast<int>(reader.get_int("reward", "hubs", 3));
  if (const auto levels = reader.find("reward", "levels")) {
    config.reward.levels.clear();
    for (const std::string& level : split_list(*levels)) {
      config.reward.levels.push_back(std::stod(level));
    }
  }
  config.reward.beta = reader.get_double("reward", "beta", 0.60);
  config.reward.topk_k =
      static_cast<int>(reader.get_int("reward", "topk_k", 3));

  config.constrained.pool_size =
      static_cast<int>(reader.get_int("constrained", "pool_size", 8));
  config.constrained.k = static_cast<int>(reader.get_int("constrained", "k", 3));
  const std::string cmode =
      reader.get_string("constrained", "mode", "fallback");
  if (cmode == "hard") {
    config.constrained.mode = ConstraintMode::kHard;
  } else if (cmode == "fallback") {
    config.constrained.mode = ConstraintMode::kFallback;
  } else {
    throw ConfigError(name + ": unknown constrained.mode '" + cmode + "'");
  }

  config.initial = reader.get_string("initial", "s", "uniform");
  config.topk_report =
      static_cast<int>(reader.get_int("output", "topk", 10));
  config.emit_svg = reader.get_bool("output", "svg", false);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path.string());
  }
  return parse_config(in, path.filename().string());
}

namespace {

json config_to_json(const ExperimentConfig& config) {
  json graph;
  switch (config.graph.kind) {
    case GraphSourceSpec::Kind::kEr:
      graph = {{"source", "er"}, {"n", config.graph.n}, {"p", config.graph.er_p}};
      break;
    case GraphSourceSpec::Kind::kWs:
      graph = {{"source", "ws"},
               {"n", config.graph.n},
               {"ring_degree", config.graph.ws_ring_degree},
               {"rewire_p", config.graph.ws_rewire_p}};
      break;
    case GraphSourceSpec::Kind::kFile:
      graph = {{"source", "file"},
               {"path", config.graph.path.string()},
               {"format", config.graph.format == GraphFormat::kGmlSubset
                              ? "gml"
                              : "edgelist"},
               {"weighted", config.graph.weighted}};
      break;
  }

  json model = {
      {"mode", config.model.mode == RealizationMode::kEdgeBernoulli
                   ? "edge_bernoulli"
                   : (config.model.mode == RealizationMode::kWeightResample
                          ? "weight_resample"
                          : "composite")},
      {"p_on", config.model.p_on},
      {"alpha", config.model.alpha},
      {"k_min", config.model.k_min},
      {"rho_mu", config.model.rho_mu},
      {"rho_sigma", config.model.rho_sigma},
      {"w_max", config.model.w_max},
  };
  if (config.model.r_hop) {
    model["r_hop"] = *config.model.r_hop;
  }

  json robust = {{"delta_rel", config.robust.delta_rel},
                 {"r_floor", config.robust.leak_floor},
                 {"n_samples", config.robust.n_samples},
                 {"use_kl", config.robust.use_kl},
                 {"use_w1", config.robust.use_w1},
                 {"top_report", config.robust.top_report}};
  json pairs = json::array();
  for (const auto& [u, v] : config.robust.certificate_pairs) {
    pairs.push_back({u, v});
  }
  robust["certificate_pairs"] = pairs;

  return json{
      {"graph", graph},
      {"model", model},
      {"estimate",
       {{"samples_per_row", config.samples_per_row},
        {"seed", config.seed},
        {"stabilize", config.stabilize},
        {"stabilize_floor", config.stabilize_floor}}},
      {"analyses",
       {{"baseline", config.run_baseline},
        {"robust", config.run_robust},
        {"reward", config.run_reward},
        {"constrained", config.run_constrained}}},
      {"robust", robust},
      {"reward",
       {{"hubs", config.reward.n_hubs},
        {"levels", config.reward.levels},
        {"beta", config.reward.beta},
        {"topk_k", config.reward.topk_k}}},
      {"constrained",
       {{"pool_size", config.constrained.pool_size},
        {"k", config.constrained.k},
        {"mode",
         config.constrained.mode == ConstraintMode::kHard ? "hard"
                                                          : "fallback"}}},
      {"initial", config.initial},
      {"output",
       {{"topk", config.topk_report}, {"svg", config.emit_svg}}},
  };
}

ExperimentConfig config_from_json(const json& j) {
  // Rebuild via the text form so defaults stay in one place.
  std::stringstream text;
  text << std::setprecision(17);
  const json& graph = j.at("graph");
  text << "[graph]\n";
  text << "source = " << graph.at("source").get<std::string>() << "\n";
  if (graph.contains("n")) {
    text << "n = " << graph.at("n").get<long long>() << "\n";
  }
  if (graph.contains("p")) {
    text << "p = " << graph.at("p").get<double>() << "\n";
  }
  if (graph.contains("ring_degree")) {
    text << "ring_degree = " << graph.at("ring_degree").get<int>() << "\n";
    text << "rewire_p = " << graph.at("rewire_p").get<double>() << "\n";
  }
  if (graph.contains("path")) {
    text << "path = " << graph.at("path").get<std::string>() << "\n";
    text << "format = " << graph.at("format").get<std::string>() << "\n";
    text << "weighted = " << (graph.at("weighted").get<bool>() ? "true" : "false")
         << "\n";
  }

  const json& model = j.at("model");
  text << "[model]\n";
  text << "mode = " << model.at("mode").get<std::string>() << "\n";
  text << "p_on = " << model.at("p_on").get<double>() << "\n";
  text << "alpha = " << model.at("alpha").get<double>() << "\n";
  text << "k_min = " << model.at("k_min").get<int>() << "\n";
  text << "rho_mu = " << model.at("rho_mu").get<double>() << "\n";
  text << "rho_sigma = " << model.at("rho_sigma").get<double>() << "\n";
  text << "w_max = " << model.at("w_max").get<double>() << "\n";
  if (model.contains("r_hop")) {
    text << "r_hop = " << model.at("r_hop").get<int>() << "\n";
  }

  const json& estimate = j.at("estimate");
  text << "[estimate]\n";
  text << "samples_per_row = " << estimate.at("samples_per_row").get<long long>()
       << "\n";
  text << "seed = " << estimate.at("seed").get<std::uint64_t>() << "\n";
  text << "stabilize = "
       << (estimate.at("stabilize").get<bool>() ? "true" : "false") << "\n";
  text << "stabilize_floor = " << estimate.at("stabilize_floor").get<double>()
       << "\n";

  const json& analyses = j.at("analyses");
  text << "[analyses]\n";
  for (const char* key : {"baseline", "robust", "reward", "constrained"}) {
    text << key << " = " << (analyses.at(key).get<bool>() ? "true" : "false")
         << "\n";
  }

  const json& robust = j.at("robust");
  text << "[robust]\n";
  text << "delta_rel = " << robust.at("delta_rel").get<double>() << "\n";
  text << "r_floor = " << robust.at("r_floor").get<double>() << "\n";
  text << "n_samples = " << robust.at("n_samples").get<int>() << "\n";
  text << "top_report = " << robust.at("top_report").get<int>() << "\n";
  std::string metrics;
  if (robust.at("use_kl").get<bool>()) {
    metrics += "kl";
  }
  if (robust.at("use_w1").get<bool>()) {
    metrics += metrics.empty() ? "w1" : ",w1";
  }
  if (!metrics.empty()) {
    text << "metrics = " << metrics << "\n";
  }
  if (!robust.at("certificate_pairs").empty()) {
    text << "certificate_pairs = ";
    bool first = true;
    for (const auto& pair : robust.at("certificate_pairs")) {
      if (!first) {
        text << ", ";
      }
      text << pair.at(0).get<int>() << ":" << pair.at(1).get<int>();
      first = false;
    }
    text << "\n";
  }

  const json& reward = j.at("reward");
  text << "[reward]\n";
  text << "hubs = " << reward.at("hubs").get<int>() << "\n";
  text << "levels = ";
  bool first = true;
  for (const auto& level : reward.at("levels")) {
    if (!first) {
      text << ",";
    }
    text << level.get<double>();
    first = false;
  }
  text << "\n";
  text << "beta = " << reward.at("beta").get<double>() << "\n";
  text << "topk_k = " << reward.at("topk_k").get<int>() << "\n";

  const json& constrained = j.at("constrained");
  text << "[constrained]\n";
  text << "pool_size = " << constrained.at("pool_size").get<int>() << "\n";
  text << "k = " << constrained.at("k").get<int>() << "\n";
  text << "mode = " << constrained.at("mode").get<std::string>() << "\n";

  text << "[initial]\ns = " << j.at("initial").get<std::string>() << "\n";
  const json& output = j.at("output");
  text << "[output]\n";
  text << "topk = " << output.at("topk").get<int>() << "\n";
  text << "svg = " << (output.at("svg").get<bool>() ? "true" : "false")
       << "\n";

  return parse_config(text, "<manifest>");
}

}  // namespace

ExperimentConfig config_from_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) {
    throw ConfigError("cannot open manifest " + manifest.string());
  }
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("bad manifest JSON: " + std::string(e.what()));
  }
  return config_from_json(j.at("config"));
}

namespace {

BaseTopology build_graph(const GraphSourceSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GraphSourceSpec::Kind::kEr:
      return erdos_renyi(spec.n, spec.er_p, seed);
    case GraphSourceSpec::Kind::kWs:
      return watts_strogatz(spec.n, spec.ws_ring_degree, spec.ws_rewire_p,
                            seed);
    case GraphSourceSpec::Kind::kFile:
      return ingest_graph(spec.path, spec.format, spec.weighted);
  }
  throw ConfigError("unreachable graph source");
}

Eigen::VectorXd build_initial(const std::string& spec, int n) {
  if (spec == "uniform" || spec.empty()) {
    return uniform_initial(n);
  }
  if (spec.rfind("point:", 0) == 0) {
    const int v = std::stoi(spec.substr(6));
    if (v < 0 || v >= n) {
      throw ConfigError("initial point mass out of range");
    }
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    s(v) = 1.0;
    return s;
  }
  throw ConfigError("unknown initial distribution spec '" + spec + "'");
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

std::vector<int> top_indices(const Eigen::VectorXd& v, int count) {
  std::vector<int> order(v.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (v(a) != v(b)) {
      return v(a) > v(b);
    }
    return a < b;
  });
  order.resize(std::min<std::size_t>(order.size(), count));
  return order;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string csv_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

// Minimal standalone bar chart for the top-valued nodes.
std::string bar_chart_svg(const std::vector<int>& nodes,
                          const Eigen::VectorXd& values,
                          const std::vector<std::string>& labels) {
  const int width = 640, height = 320, margin = 40;
  const int bars = static_cast<int>(nodes.size());
  double max_value = 1e-300;
  for (int v : nodes) {
    max_value = std::max(max_value, values(v));
  }
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  const double band = static_cast<double>(width - 2 * margin) / bars;
  for (int i = 0; i < bars; ++i) {
    const double h = (height - 2 * margin) * values(nodes[i]) / max_value;
    const double x = margin + i * band;
    svg << "  <rect x=\"" << x + band * 0.1 << "\" y=\""
        << height - margin - h << "\" width=\"" << band * 0.8
        << "\" height=\"" << h << "\" fill=\"#4878a8\"/>\n";
    svg << "  <text x=\"" << x + band * 0.5 << "\" y=\"" << height - margin / 2
        << "\" font-size=\"11\" text-anchor=\"middle\">" << labels[nodes[i]]
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void run_experiment(const ExperimentConfig& config,
                    const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  using clock = std::chrono::steady_clock;
  fs::create_directories(out_dir);
  fs::create_directories(out_dir / "plotdata");

  json manifest;
  manifest["library_version"] = kVersion;
  manifest["config"] = config_to_json(config);
  json timings;

  try {
    const auto t0 = clock::now();
    const BaseTopology base = build_graph(config.graph, config.seed);
    const int n = base.node_count();
    config.model.validate(base);
    const Eigen::VectorXd s = build_initial(config.initial, n);

    EstimateOptions options;
    options.samples_per_row = config.samples_per_row;
    options.master_seed = config.seed;
    options.stabilize = config.stabilize;
    options.stabilize_floor = config.stabilize_floor;

    const EstimationResult estimated = estimate_kernel(config.model, base, options);
    const AmcKernel& kernel = estimated.kernel;
    const std::uint64_t kernel_hash = kernel.content_hash();
    const auto t_kernel = clock::now();
    timings["kernel_seconds"] =
        std::chrono::duration<double>(t_kernel - t0).count();

    {
      std::ostringstream csv;
      write_kernel_csv(kernel, csv);
      write_text(out_dir / "kernel.csv", csv.str());
      json envelope;
      envelope["n"] = n;
      envelope["model"] = manifest["config"]["model"];
      envelope["seed"] = config.seed;
      envelope["samples_per_row"] = config.samples_per_row;
      envelope["stabilization"] = {
          {"enabled", config.stabilize},
          {"floor", config.stabilize_floor},
          {"rows", estimated.stabilized_rows}};
      envelope["kernel_hash"] = kernel_hash;
      envelope["csv"] = "kernel.csv";
      write_json(out_dir / "kernel.json", envelope);
    }

    if (config.run_baseline) {
      const AfcProfile profile = afc(kernel, s);
      json out;
      out["kernel_hash"] = kernel_hash;
      out["b"] = vector_to_json(profile.b);
      out["mu"] = vector_to_json(profile.mu);
      out["expected_T"] = profile.expected_steps;
      write_json(out_dir / "afc.json", out);

      const std::vector<int> top = top_indices(profile.b, config.topk_report);
      std::ostringstream topcsv;
      topcsv << "rank,node,label,b\n";
      for (std::size_t r = 0; r < top.size(); ++r) {
        topcsv << (r + 1) << ',' << top[r] << ',' << base.label(top[r]) << ','
               << csv_double(profile.b(top[r])) << '\n';
      }
      write_text(out_dir / "topk.csv", topcsv.str());

      std::ostringstream bar;
      bar << "node,value\n";
      for (int v : top) {
        bar << v << ',' << csv_double(profile.b(v)) << '\n';
      }
      write_text(out_dir / "plotdata" / "top10_afc.csv", bar.str());
      if (config.emit_svg) {
        write_text(out_dir / "plotdata" / "top10_afc.svg",
                   bar_chart_svg(top, profile.b, base.labels()));
      }
    }
    const auto t_baseline = clock::now();
    timings["baseline_seconds"] =
        std::chrono::duration<double>(t_baseline - t_kernel).count();

    if (config.run_robust) {
      const AfcProfile nominal = afc(kernel, s);
      UncertaintySet uset = UncertaintySet::relative(
          kernel, config.robust.delta_rel, config.robust.leak_floor);
      json out;
      out["kernel_hash"] = kernel_hash;
      out["delta_rel"] = config.robust.delta_rel;
      out["r_floor"] = config.robust.leak_floor;
      out["n_samples"] = config.robust.n_samples;
      out["nominal_b"] = vector_to_json(nominal.b);
      json nominal_top = json::array();
      for (int v : top_indices(nominal.b, config.robust.top_report)) {
        nominal_top.push_back(v);
      }
      out["nominal_top"] = nominal_top;

      const std::optional<GroundMetric> ground =
          config.robust.use_w1
              ? std::optional<GroundMetric>(shortest_path_ground_metric(base))
              : std::nullopt;
      auto report_metric = [&](Discrepancy d, const char* key) {
        const AdversarialResult worst =
            adversarial_search(uset, s, d, config.robust.n_samples,
                               config.seed, ground ? &*ground : nullptr);
        json r;
        r["discrepancy"] = worst.discrepancy;
        r["sample_index"] = worst.sample_index;
        r["b"] = vector_to_json(worst.worst_profile.b);
        r["min_leak"] = worst.worst_kernel.min_leak();
        json top = json::array();
        for (int v : top_indices(worst.worst_profile.b,
                                 config.robust.top_report)) {
          top.push_back(v);
        }
        r["top"] = top;
        out[key] = r;
      };
      if (config.robust.use_kl) {
        report_metric(Discrepancy::kKl, "kl");
      }
      if (config.robust.use_w1) {
        report_metric(Discrepancy::kW1, "w1");
      }

      json certificates = json::array();
      for (const auto& [u, v] : config.robust.certificate_pairs) {
        const VisitGapResult r = visit_gap(uset, s, u, v);
        certificates.push_back(
            {{"u", u},
             {"v", v},
             {"gap", r.gap},
             {"bound", r.bound},
             {"certificate",
              r.certificate == GapCertificate::kRobustFirst
                  ? "robust_u"
                  : (r.certificate == GapCertificate::kRobustSecond
                         ? "robust_v"
                         : "inconclusive")}});
      }
      out["certificates"] = certificates;
      write_json(out_dir / "robust.json", out);
    }
    const auto t_robust = clock::now();
    timings["robust_seconds"] =
        std::chrono::duration<double>(t_robust - t_baseline).count();

    if (config.run_reward) {
      const Eigen::VectorXd f = reward_f_from_hubs(
          base, config.reward.n_hubs, config.reward.levels, config.reward.beta);
      const double b_f = reward_afc(kernel, s, f);
      const Eigen::VectorXd psi_switch =
          transition_psi(kernel, switching_reward().eta);
      const Eigen::VectorXd psi_improve =
          transition_psi(kernel, improvement_reward(f).eta);
      const Eigen::VectorXd gamma = Eigen::VectorXd::Ones(n);
      const Eigen::VectorXd psi_topk = estimate_psi(
          ValuedTopkReward{config.reward.topk_k, gamma}, config.model, base,
          config.samples_per_row, config.seed);

      json out;
      out["kernel_hash"] = kernel_hash;
      out["hubs"] = config.reward.n_hubs;
      out["beta"] = config.reward.beta;
      out["f"] = vector_to_json(f);
      out["b_f"] = b_f;
      out["switching_intensity"] = reward_afc(kernel, s, psi_switch);
      // Convention: an "improvement" step contributes max(f(next)-f(cur), 0),
      // so flat moves count zero.
      out["improvement"] = reward_afc(kernel, s, psi_improve);
      out["improvement_convention"] = "max(f(next)-f(current),0)";
      out["valued_topk"] = {{"k", config.reward.topk_k},
                            {"gamma", "ones"},
                            {"value", reward_afc(kernel, s, psi_topk)}};
      out["psi"] = {{"switching", vector_to_json(psi_switch)},
                    {"improvement", vector_to_json(psi_improve)},
                    {"valued_topk", vector_to_json(psi_topk)}};
      write_json(out_dir / "reward.json", out);
    }
    const auto t_reward = clock::now();
    timings["reward_seconds"] =
        std::chrono::duration<double>(t_reward - t_robust).count();

    if (config.run_constrained) {
      const TargetPool pool =
          enumerate_clique_pool(base, config.constrained.pool_size,
                                config.constrained.mode ==
                                    ConstraintMode::kFallback);
      const ConstrainedKernel constrained = build_constrained_kernel(
          config.model, base, pool, config.constrained.k,
          config.constrained.mode, options);
      const PoolStatistics stats = pool_statistics(constrained, s, pool);

      json out;
      out["kernel_hash"] = kernel_hash;
      out["constrained_kernel_hash"] = constrained.kernel.content_hash();
      out["mode"] = config.constrained.mode == ConstraintMode::kHard
                        ? "hard"
                        : "fallback";
      out["k"] = config.constrained.k;
      json primitives = json::array();
      for (const auto& primitive : pool.primitives) {
        primitives.push_back(primitive);
      }
      out["pool"] = pool.pool;
      out["primitives"] = primitives;
      out["pool_truncated"] = pool.truncated;
      if (pool.fallback) {
        out["fallback_representative"] = pool.fallback->representative;
        out["fallback_reserve"] = pool.fallback->reserve;
      }
      out["xi"] = vector_to_json(stats.feasibility);
      out["m_W"] = stats.pool_mass;
      out["within_pool"] = vector_to_json(stats.within_pool);
      out["censored"] = vector_to_json(stats.censored);
      out["censoring_mass"] = stats.censoring_mass;
      out["fallback_activation_rate"] = stats.mean_fallback_rate;
      write_json(out_dir / "constrained.json", out);
    }
    const auto t_constrained = clock::now();
    timings["constrained_seconds"] =
        std::chrono::duration<double>(t_constrained - t_reward).count();

    manifest["kernel_hash"] = kernel_hash;
    manifest["graph"] = {{"nodes", n},
                         {"edges", base.edges().size()}};
    manifest["timings"] = timings;
    manifest["status"] = "ok";
    write_json(out_dir / "manifest.json", manifest);
  } catch (...) {
    manifest["status"] = "failed";
    manifest["timings"] = timings;
    write_json(out_dir / "manifest.json", manifest);
    write_text(out_dir / "FAILED", "experiment failed; see manifest.json\n");
    throw;
  }
}

}  // namespace afc
