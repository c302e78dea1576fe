#include "pstraj/search/config.hpp"

#include <cmath>

#include "pstraj/error.hpp"

namespace pstraj::search {

std::string_view mode_name(SearchMode m) noexcept { return m == SearchMode::Funsearch ? "funsearch" : "eoh"; }

std::optional<SearchMode> parse_mode(std::string_view name) noexcept {
  if (name == "funsearch") return SearchMode::Funsearch;
  if (name == "eoh") return SearchMode::Eoh;
  return std::nullopt;
}

std::string_view registration_name(Registration r) noexcept {
  return r == Registration::BehaveSim ? "behavesim" : "parent_island";
}

std::optional<Registration> parse_registration(std::string_view name) noexcept {
  if (name == "behavesim") return Registration::BehaveSim;
  if (name == "parent_island") return Registration::ParentIsland;
  return std::nullopt;
}

FingerprintSet default_search_fingerprint() { return fingerprint_for_prefix(fixtures::builtin_registry(), "tsp12_"); }

SearchConfig default_search_config() {
  SearchConfig cfg;
  cfg.fingerprint = default_search_fingerprint();
  return cfg;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::BadConfig, what); }

template <class T>
void read(const Json& j, const char* name, T& out) {
  const auto it = j.find(name);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("search config field '") + name + "' has the wrong type");
  }
}

Json generator_json(const GeneratorConfig& g) {
  if (const auto* m = std::get_if<MutatorConfig>(&g)) return {{"mutator", {{"seed", m->seed}}}};
  const auto& l = std::get<LlmConfig>(g);
  return {{"llm_http",
           {{"base_url", l.base_url},
            {"path", l.path},
            {"model", l.model},
            {"api_key_env", l.api_key_env},
            {"max_retries", l.max_retries},
            {"timeout_s", l.timeout_s}}}};
}

GeneratorConfig generator_from(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("generator must be {\"mutator\": {...}} or {\"llm_http\": {...}}");
  if (j.contains("mutator")) {
    MutatorConfig m;
    read(j["mutator"], "seed", m.seed);
    return m;
  }
  if (j.contains("llm_http")) {
    const Json& l = j["llm_http"];
    LlmConfig c;
    read(l, "base_url", c.base_url);
    read(l, "path", c.path);
    read(l, "model", c.model);
    read(l, "api_key_env", c.api_key_env);
    read(l, "max_retries", c.max_retries);
    read(l, "timeout_s", c.timeout_s);
    return c;
  }
  bad("generator must be {\"mutator\": {...}} or {\"llm_http\": {...}}");
}

}  // namespace

void validate_search_config(const SearchConfig& cfg) {
  if (!(cfg.p_s1 >= 0.0 && cfg.p_s1 <= 1.0)) bad("p_s1 must lie in [0, 1]");
  if (cfg.n_isl == 0) bad("n_isl must be positive");
  if (cfg.n_init == 0) bad("n_init must be positive");
  if (!(cfg.cluster_temp > 0.0) || !std::isfinite(cfg.cluster_temp)) bad("cluster_temp must be positive");
  if (!(cfg.length_temp > 0.0) || !std::isfinite(cfg.length_temp)) bad("length_temp must be positive");
  if (cfg.population_size == 0) bad("population_size must be positive");
  if (cfg.parent_count == 0 || cfg.parent_count > 5) bad("parent_count must lie in 1..5");
  if (cfg.offspring_per_prompt == 0) bad("offspring_per_prompt must be positive");
  if (!(cfg.timeout_s > 0.0)) bad("timeout_s must be positive");
  if (cfg.init_depth == 0 || cfg.init_depth > cfg.max_depth) bad("init_depth must lie in 1..max_depth");
  if (cfg.prototype_cap < 2) bad("prototype_cap must be at least 2");
  if (const auto* l = std::get_if<LlmConfig>(&cfg.generator)) {
    if (l->base_url.empty()) bad("generator.llm_http.base_url is empty");
    if (l->api_key_env.empty()) bad("generator.llm_http.api_key_env is empty");
  }
  try {
    validate_fingerprint(cfg.fingerprint);
  } catch (const Error& e) {
    bad(std::string("fingerprint: ") + e.what());
  }
}

Json to_json(const SearchConfig& cfg) {
  return {{"mode", mode_name(cfg.mode)},
          {"seed", cfg.seed},
          {"n_isl", cfg.n_isl},
          {"n_init", cfg.n_init},
          {"p_s1", cfg.p_s1},
          {"restart_period_evals", cfg.restart_period_evals},
          {"eval_budget", cfg.eval_budget},
          {"cluster_temp", cfg.cluster_temp},
          {"length_temp", cfg.length_temp},
          {"generator", generator_json(cfg.generator)},
          {"fingerprint", to_json(cfg.fingerprint)},
          {"population_size", cfg.population_size},
          {"parent_count", cfg.parent_count},
          {"offspring_per_prompt", cfg.offspring_per_prompt},
          {"timeout_s", cfg.timeout_s},
          {"checkpoint_period", cfg.checkpoint_period},
          {"registration", registration_name(cfg.registration)},
          {"linkage", linkage_name(cfg.linkage)},
          {"init_depth", cfg.init_depth},
          {"max_depth", cfg.max_depth},
          {"prototype_cap", cfg.prototype_cap}};
}

SearchConfig search_config_from_json(const Json& j) {
  if (!j.is_object()) bad("search config must be a JSON object");
  SearchConfig cfg;
  if (j.contains("mode")) {
    std::string name;
    read(j, "mode", name);
    const auto m = parse_mode(name);
    if (!m) bad("mode must be 'funsearch' or 'eoh', got '" + name + "'");
    cfg.mode = *m;
  }
  read(j, "seed", cfg.seed);
  read(j, "n_isl", cfg.n_isl);
  read(j, "n_init", cfg.n_init);
  read(j, "p_s1", cfg.p_s1);
  read(j, "restart_period_evals", cfg.restart_period_evals);
  read(j, "eval_budget", cfg.eval_budget);
  read(j, "cluster_temp", cfg.cluster_temp);
  read(j, "length_temp", cfg.length_temp);
  if (j.contains("generator")) cfg.generator = generator_from(j["generator"]);
  if (j.contains("fingerprint")) {
    try {
      cfg.fingerprint = fingerprint_from_json(j["fingerprint"]);
    } catch (const Error& e) {
      bad(std::string("fingerprint: ") + e.what());
    }
  } else {
    cfg.fingerprint = default_search_fingerprint();
  }
  read(j, "population_size", cfg.population_size);
  read(j, "parent_count", cfg.parent_count);
  read(j, "offspring_per_prompt", cfg.offspring_per_prompt);
  read(j, "timeout_s", cfg.timeout_s);
  read(j, "checkpoint_period", cfg.checkpoint_period);
  if (j.contains("registration")) {
    std::string name;
    read(j, "registration", name);
    const auto r = parse_registration(name);
    if (!r) bad("registration must be 'behavesim' or 'parent_island', got '" + name + "'");
    cfg.registration = *r;
  }
  if (j.contains("linkage")) {
    std::string name;
    read(j, "linkage", name);
    const auto l = parse_linkage(name);
    if (!l) bad("linkage must be average, complete or single, got '" + name + "'");
    cfg.linkage = *l;
  }
  read(j, "init_depth", cfg.init_depth);
  read(j, "max_depth", cfg.max_depth);
  read(j, "prototype_cap", cfg.prototype_cap);
  validate_search_config(cfg);
  return cfg;
}

}  // namespace pstraj::search
