#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pstraj/behavesim.hpp"
#include "pstraj/cluster.hpp"
#include "pstraj/json_io.hpp"

namespace pstraj::search {

enum class SearchMode { Funsearch, Eoh };

std::string_view mode_name(SearchMode m) noexcept;
std::optional<SearchMode> parse_mode(std::string_view name) noexcept;

/// Where a newly evaluated candidate goes in the island database.
/// ParentIsland is the classic rule (the better parent's island) and exists
/// as the comparison baseline for behavior-driven placement.
enum class Registration { BehaveSim, ParentIsland };

std::string_view registration_name(Registration r) noexcept;
std::optional<Registration> parse_registration(std::string_view name) noexcept;

struct MutatorConfig {
  std::uint64_t seed = 0;
};

/// Chat-completions style endpoint. The bearer token is read from the
/// environment variable named by api_key_env, never from the config file.
struct LlmConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-5-nano";
  std::string api_key_env = "PSTRAJ_LLM_API_KEY";
  std::size_t max_retries = 3;
  double timeout_s = 120.0;
};

using GeneratorConfig = std::variant<MutatorConfig, LlmConfig>;

struct SearchConfig {
  SearchMode mode = SearchMode::Funsearch;
  std::uint64_t seed = 0;

  std::size_t n_isl = 10;
  std::size_t n_init = 100;
  double p_s1 = 0.5;
  std::size_t restart_period_evals = 500;
  /// Evaluations after initialization; the initial population is extra.
  std::size_t eval_budget = 300;
  double cluster_temp = 0.1;
  double length_temp = 1.0;
  GeneratorConfig generator = MutatorConfig{};
  FingerprintSet fingerprint;

  std::size_t population_size = 20;
  std::size_t parent_count = 2;
  std::size_t offspring_per_prompt = 2;

  double timeout_s = 50.0;
  std::size_t checkpoint_period = 100;
  Registration registration = Registration::BehaveSim;
  Linkage linkage = Linkage::Average;
  std::size_t init_depth = 4;
  std::size_t max_depth = kDefaultMaxDepth;
  /// Members sampled per island when measuring intra/inter distances.
  std::size_t prototype_cap = 50;
};

/// Every tsp12_ fixture from city 0, on the shared built-in registry.
FingerprintSet default_search_fingerprint();

/// Defaults with the fingerprint filled in.
SearchConfig default_search_config();

/// Throws BadConfig naming the offending field.
void validate_search_config(const SearchConfig& cfg);

Json to_json(const SearchConfig& cfg);
/// Missing fields keep their defaults. Throws BadConfig.
SearchConfig search_config_from_json(const Json& j);

}  // namespace pstraj::search
