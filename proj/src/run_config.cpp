#include "specdens/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <stdexcept>

#include "specdens/step_function.hpp"
#include "vendor/json.hpp"

namespace specdens {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument("unknown config key \"" + it.key() +
                                  "\" in " + where);
  }
}

void require_grid(const std::vector<double>& g, const std::string& name) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0))
      throw std::invalid_argument(name + " entries must be positive");
    if (i > 0 && g[i] <= g[i - 1])
      throw std::invalid_argument(name + " must be strictly increasing");
  }
}

void require_window(const std::vector<double>& w, const std::string& name) {
  if (w.empty()) return;
  if (w.size() != 2 || !(w[0] > 0.0) || !(w[1] > w[0]))
    throw std::invalid_argument(name + " must be {lo, hi} with 0 < lo < hi");
}

}  // namespace

void RunConfig::validate() const {
  static const std::set<std::string> kinds = {
      "cycle", "torus", "cayley-table", "complex-file", "matrix-file"};
  if (!kinds.count(instance.kind))
    throw std::invalid_argument("unknown instance kind \"" + instance.kind +
                                "\"");
  const bool is_cover = instance.kind != "matrix-file";
  if (is_cover && instance.size < 2)
    throw std::invalid_argument("cover quotient size must be >= 2");
  if (instance.rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (instance.degree < 0) throw std::invalid_argument("degree must be >= 0");
  if (instance.kind == "cayley-table") {
    if (instance.labels.empty())
      throw std::invalid_argument("cayley-table needs generator labels");
    for (const auto& g : instance.labels)
      if (static_cast<int>(g.size()) != instance.rank)
        throw std::invalid_argument("generator width must equal rank");
  }
  if (instance.kind == "complex-file" || instance.kind == "matrix-file") {
    if (instance.path.empty())
      throw std::invalid_argument(instance.kind + " needs a path");
    if (!std::filesystem::exists(instance.path))
      throw std::invalid_argument("referenced file does not exist: " +
                                  instance.path);
  }
  if (instance.format != "dense" && instance.format != "triplets")
    throw std::invalid_argument("matrix format must be dense or triplets");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  require_grid(profiles.y_grid, "profiles.y_grid");
  require_grid(profiles.t_grid, "profiles.t_grid");
  if (certify.states < 0)
    throw std::invalid_argument("certify.states must be >= 0");
  require_grid(certify.t_grid, "certify.t_grid");
  if (certify.ultra_points < 1)
    throw std::invalid_argument("certify.ultra_points must be >= 1");
  if (!(certify.sandwich_eps > 0.0))
    throw std::invalid_argument("certify.sandwich_eps must be positive");

  for (int n : scaling.sizes)
    if (n < 2) throw std::invalid_argument("scaling sizes must be >= 2");
  if (scaling.degree < 0)
    throw std::invalid_argument("scaling.degree must be >= 0");
  require_window(scaling.fit_window, "scaling.fit_window");
  if (!is_sentinel(scaling.p) && !(scaling.p >= 2.0))
    throw std::invalid_argument("scaling.p must be >= 2 or \"inf\"");
  if (scaling.sample_budget < 1)
    throw std::invalid_argument("scaling.sample_budget must be >= 1");

  if (continuum.n < 1) throw std::invalid_argument("continuum.n must be >= 1");
  require_grid(continuum.grid, "continuum.grid");
  for (double b : continuum.box)
    if (!(b > 0.0))
      throw std::invalid_argument("continuum.box entries must be positive");
  require_window(continuum.window, "continuum.window");
  if (continuum.budget < 10'000)
    throw std::invalid_argument("continuum.budget must be at least 10^4");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  check_keys(j,
             {"instance", "seed", "jobs", "out", "profiles", "certify",
              "scaling", "continuum"},
             "the top level");
  RunConfig cfg;
  if (j.contains("instance")) {
    const json& ji = j["instance"];
    check_keys(ji, {"kind", "size", "rank", "degree", "labels", "path",
                    "format"},
               "instance");
    cfg.instance.kind = ji.value("kind", cfg.instance.kind);
    cfg.instance.size = ji.value("size", cfg.instance.size);
    cfg.instance.rank = ji.value("rank", cfg.instance.rank);
    cfg.instance.degree = ji.value("degree", cfg.instance.degree);
    if (ji.contains("labels"))
      cfg.instance.labels =
          ji["labels"].get<std::vector<std::vector<int>>>();
    cfg.instance.path = ji.value("path", cfg.instance.path);
    cfg.instance.format = ji.value("format", cfg.instance.format);
  }
  cfg.seed = j.value("seed", cfg.seed);
  cfg.jobs = j.value("jobs", cfg.jobs);
  cfg.out = j.value("out", cfg.out);
  if (j.contains("profiles")) {
    const json& jp = j["profiles"];
    check_keys(jp, {"y_grid", "t_grid"}, "profiles");
    if (jp.contains("y_grid"))
      cfg.profiles.y_grid = jp["y_grid"].get<std::vector<double>>();
    if (jp.contains("t_grid"))
      cfg.profiles.t_grid = jp["t_grid"].get<std::vector<double>>();
  }
  if (j.contains("certify")) {
    const json& jc = j["certify"];
    check_keys(jc, {"states", "corrupt", "t_grid", "ultra_points",
                    "sandwich_eps", "checks"},
               "certify");
    cfg.certify.states = jc.value("states", cfg.certify.states);
    cfg.certify.corrupt = jc.value("corrupt", cfg.certify.corrupt);
    if (jc.contains("t_grid"))
      cfg.certify.t_grid = jc["t_grid"].get<std::vector<double>>();
    cfg.certify.ultra_points =
        jc.value("ultra_points", cfg.certify.ultra_points);
    cfg.certify.sandwich_eps =
        jc.value("sandwich_eps", cfg.certify.sandwich_eps);
    if (jc.contains("checks"))
      cfg.certify.checks = jc["checks"].get<std::vector<std::string>>();
  }
  if (j.contains("scaling")) {
    const json& js = j["scaling"];
    check_keys(js, {"sizes", "degree", "fit_window", "k_candidates", "p",
                    "sample_budget"},
               "scaling");
    if (js.contains("sizes"))
      cfg.scaling.sizes = js["sizes"].get<std::vector<int>>();
    cfg.scaling.degree = js.value("degree", cfg.scaling.degree);
    if (js.contains("fit_window"))
      cfg.scaling.fit_window = js["fit_window"].get<std::vector<double>>();
    if (js.contains("k_candidates"))
      cfg.scaling.k_candidates = js["k_candidates"].get<std::vector<int>>();
    if (js.contains("p")) {
      if (js["p"].is_string()) {
        if (js["p"].get<std::string>() != "inf")
          throw std::invalid_argument("scaling.p string form must be \"inf\"");
        cfg.scaling.p = kPlusInf;
      } else {
        cfg.scaling.p = js["p"].get<double>();
      }
    }
    cfg.scaling.sample_budget =
        js.value("sample_budget", cfg.scaling.sample_budget);
  }
  if (j.contains("continuum")) {
    const json& jn = j["continuum"];
    check_keys(jn, {"n", "symbol", "grid", "budget", "box", "window",
                    "k_candidates"},
               "continuum");
    cfg.continuum.n = jn.value("n", cfg.continuum.n);
    if (jn.contains("symbol")) {
      cfg.continuum.symbol.clear();
      for (const json& jt : jn["symbol"]) {
        check_keys(jt, {"powers", "coeff"}, "continuum.symbol");
        PolynomialSymbol::Term t;
        t.powers = jt.at("powers").get<std::vector<int>>();
        t.coeff = jt.at("coeff").get<double>();
        cfg.continuum.symbol.push_back(std::move(t));
      }
    }
    if (jn.contains("grid"))
      cfg.continuum.grid = jn["grid"].get<std::vector<double>>();
    cfg.continuum.budget = jn.value("budget", cfg.continuum.budget);
    if (jn.contains("box"))
      cfg.continuum.box = jn["box"].get<std::vector<double>>();
    if (jn.contains("window"))
      cfg.continuum.window = jn["window"].get<std::vector<double>>();
    if (jn.contains("k_candidates"))
      cfg.continuum.k_candidates =
          jn["k_candidates"].get<std::vector<int>>();
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["instance"] = {{"kind", cfg.instance.kind},
                   {"size", cfg.instance.size},
                   {"rank", cfg.instance.rank},
                   {"degree", cfg.instance.degree},
                   {"labels", cfg.instance.labels},
                   {"path", cfg.instance.path},
                   {"format", cfg.instance.format}};
  j["seed"] = cfg.seed;
  j["jobs"] = cfg.jobs;
  j["out"] = cfg.out;
  j["profiles"] = {{"y_grid", cfg.profiles.y_grid},
                   {"t_grid", cfg.profiles.t_grid}};
  j["certify"] = {{"states", cfg.certify.states},
                  {"corrupt", cfg.certify.corrupt},
                  {"t_grid", cfg.certify.t_grid},
                  {"ultra_points", cfg.certify.ultra_points},
                  {"sandwich_eps", cfg.certify.sandwich_eps},
                  {"checks", cfg.certify.checks}};
  json jp;
  if (is_sentinel(cfg.scaling.p))
    jp = "inf";
  else
    jp = cfg.scaling.p;
  j["scaling"] = {{"sizes", cfg.scaling.sizes},
                  {"degree", cfg.scaling.degree},
                  {"fit_window", cfg.scaling.fit_window},
                  {"k_candidates", cfg.scaling.k_candidates},
                  {"p", jp},
                  {"sample_budget", cfg.scaling.sample_budget}};
  json jsym = json::array();
  for (const auto& t : cfg.continuum.symbol)
    jsym.push_back({{"powers", t.powers}, {"coeff", t.coeff}});
  j["continuum"] = {{"n", cfg.continuum.n},
                    {"symbol", jsym},
                    {"grid", cfg.continuum.grid},
                    {"budget", cfg.continuum.budget},
                    {"box", cfg.continuum.box},
                    {"window", cfg.continuum.window},
                    {"k_candidates", cfg.continuum.k_candidates}};
  return j.dump(2) + "\n";
}

}  // namespace specdens
