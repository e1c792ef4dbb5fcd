#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sliceadm/errors.hpp"
#include "sliceadm/instance.hpp"
#include "sliceadm/opportunity_cost.hpp"
#include "sliceadm/oracle.hpp"
#include "sliceadm/strategy.hpp"

namespace sliceadm::cli {

/// Validation failure with one message per offending field.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

struct CatalogItem {
  std::vector<double> bundle;  // fractions of the maximal pool
  int period = 1;
  double payment = 0.0;
  double weight = 0.0;  // unnormalized arrival weight per period

  friend bool operator==(const CatalogItem&, const CatalogItem&) = default;
};

struct LearnerConfig {
  int i_max = 50;
  std::optional<double> gamma;
  double gamma_relative = 1e-2;
  std::int64_t n_samples = 2000;

  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

struct OcConfig {
  OcMethod method = OcMethod::monte_carlo;
  std::int64_t n_samples = 2000;
  PaymentVariant payment_variant = PaymentVariant::literal;
  int bucket_width = 1;

  friend bool operator==(const OcConfig&, const OcConfig&) = default;
};

struct Config {
  std::size_t resource_dimension = 1;
  int resolution = 100;
  std::vector<double> initial_pool;
  std::vector<CatalogItem> catalog;
  double null_weight = 0.0;
  double beta = 0.9;
  std::vector<double> own_revenue_rates;
  ContractMode mode = ContractMode::non_expiring;
  int t_max = 1;
  LearnerConfig learner;
  OcConfig oc;
  std::uint64_t oracle_state_budget = 1'000'000;
  std::uint64_t seed = 0;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Parses and validates; throws ConfigError listing every problem found.
Config parse_config(const nlohmann::json& j);
nlohmann::json emit_config(const Config& config);

/// Reads a config file. Throws std::ios_base::failure when unreadable and
/// ConfigError when the content is invalid.
Config load_config(const std::string& path);

Instance to_instance(const Config& config);
OcTableSettings table_settings(const Config& config);
LearnerSettings learner_settings(const Config& config);

/// FNV-1a over the canonical emitted config, as 16 hex digits.
std::string config_hash(const Config& config);

}  // namespace sliceadm::cli
