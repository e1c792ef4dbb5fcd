#include "cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sliceadm/errors.hpp"

namespace sliceadm::cli {

using nlohmann::json;

namespace {

std::string join_messages(const std::vector<std::string>& messages) {
  std::string out = "invalid config:";
  for (const auto& m : messages) out += "\n  " + m;
  return out;
}

/// Collects one message per invalid field instead of stopping at the first.
class FieldReader {
 public:
  explicit FieldReader(std::vector<std::string>& errors) : errors_(errors) {}

  void fail(const std::string& field, const std::string& message) {
    errors_.push_back(field + ": " + message);
  }

  const json* find(const json& obj, const std::string& field, const char* key, bool required) {
    if (obj.is_object() && obj.contains(key) && !obj.at(key).is_null()) return &obj.at(key);
    if (required) fail(field, "is required");
    return nullptr;
  }

  template <class Int>
  std::optional<Int> integer(const json& obj, const std::string& field, const char* key,
                             bool required, Int min_value) {
    const json* v = find(obj, field, key, required);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      fail(field, "must be an integer");
      return std::nullopt;
    }
    if constexpr (std::is_unsigned_v<Int>) {
      if (v->is_number_unsigned() || v->get<std::int64_t>() >= 0) {
        const Int x = v->get<Int>();
        if (x >= min_value) return x;
      }
    } else {
      const auto x = v->get<std::int64_t>();
      if (x >= static_cast<std::int64_t>(min_value)) return static_cast<Int>(x);
    }
    fail(field, "must be >= " + std::to_string(min_value) + ", got " + v->dump());
    return std::nullopt;
  }

  std::optional<double> number(const json& obj, const std::string& field, const char* key,
                               bool required) {
    const json* v = find(obj, field, key, required);
    if (!v) return std::nullopt;
    if (!v->is_number() || !std::isfinite(v->get<double>())) {
      fail(field, "must be a finite number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::vector<double>> numbers(const json& obj, const std::string& field,
                                             const char* key, bool required,
                                             std::size_t expected_size) {
    const json* v = find(obj, field, key, required);
    if (!v) return std::nullopt;
    if (!v->is_array()) {
      fail(field, "must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& x : *v) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        fail(field, "must contain only finite numbers");
        return std::nullopt;
      }
      out.push_back(x.get<double>());
    }
    if (expected_size && out.size() != expected_size) {
      fail(field, "must have " + std::to_string(expected_size) + " components, got " +
                      std::to_string(out.size()));
      return std::nullopt;
    }
    return out;
  }

  std::optional<std::string> string(const json& obj, const std::string& field, const char* key,
                                    bool required) {
    const json* v = find(obj, field, key, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(field, "must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

 private:
  std::vector<std::string>& errors_;
};

bool representable(double x, int resolution) {
  const double scaled = x * resolution;
  return std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, scaled);
}

void check_fractions(FieldReader& r, const std::string& field, const std::vector<double>& v,
                     int resolution) {
  for (double x : v) {
    if (x < 0.0 || x > 1.0) {
      r.fail(field, "components must lie in [0,1]");
      return;
    }
    if (!representable(x, resolution)) {
      r.fail(field, "component " + json(x).dump() + " is not a multiple of 1/" +
                        std::to_string(resolution));
      return;
    }
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : Error(join_messages(messages)), messages_(std::move(messages)) {}

Config parse_config(const json& j) {
  std::vector<std::string> errors;
  FieldReader r(errors);
  Config c;
  if (!j.is_object()) throw ConfigError({"config: must be a JSON object"});

  if (auto v = r.integer<std::size_t>(j, "resource_dimension", "resource_dimension", true, 1)) {
    c.resource_dimension = *v;
  }
  if (auto v = r.integer<int>(j, "resolution", "resolution", false, 1)) c.resolution = *v;
  const std::size_t n = c.resource_dimension;

  if (auto v = r.numbers(j, "initial_pool", "initial_pool", false, n)) {
    c.initial_pool = *v;
    check_fractions(r, "initial_pool", c.initial_pool, c.resolution);
  } else {
    c.initial_pool.assign(n, 1.0);
  }

  if (const json* cat = r.find(j, "catalog", "catalog", true)) {
    if (!cat->is_array() || cat->empty()) {
      r.fail("catalog", "must be a non-empty array");
    } else {
      for (std::size_t i = 0; i < cat->size(); ++i) {
        const json& e = (*cat)[i];
        const std::string at = "catalog[" + std::to_string(i) + "]";
        CatalogItem item;
        if (auto b = r.numbers(e, at + ".bundle", "bundle", true, n)) {
          item.bundle = *b;
          check_fractions(r, at + ".bundle", item.bundle, c.resolution);
          if (std::all_of(item.bundle.begin(), item.bundle.end(), [](double x) { return x == 0.0; })) {
            r.fail(at + ".bundle", "must be non-zero (the null contract is implicit)");
          }
        }
        if (auto p = r.integer<int>(e, at + ".period", "period", true, 1)) item.period = *p;
        if (auto p = r.number(e, at + ".payment", "payment", true)) {
          item.payment = *p;
          if (*p <= 0.0) r.fail(at + ".payment", "must be > 0 for a non-null bundle");
        }
        if (auto w = r.number(e, at + ".weight", "weight", true)) {
          item.weight = *w;
          if (*w < 0.0) r.fail(at + ".weight", "must be >= 0");
        }
        c.catalog.push_back(std::move(item));
      }
    }
  }
  if (auto v = r.number(j, "null_weight", "null_weight", false)) {
    c.null_weight = *v;
    if (*v < 0.0) r.fail("null_weight", "must be >= 0");
  }

  if (auto v = r.number(j, "beta", "beta", true)) {
    c.beta = *v;
    if (!(*v > 0.0 && *v < 1.0)) r.fail("beta", "must lie in the open interval (0,1), got " + json(*v).dump());
  }
  if (auto v = r.numbers(j, "own_revenue_rates", "own_revenue_rates", true, n)) {
    c.own_revenue_rates = *v;
    if (std::any_of(v->begin(), v->end(), [](double x) { return x < 0.0; })) {
      r.fail("own_revenue_rates", "must be >= 0");
    }
  }
  if (auto v = r.string(j, "mode", "mode", false)) {
    if (*v == "non-expiring") {
      c.mode = ContractMode::non_expiring;
    } else if (*v == "expiring") {
      c.mode = ContractMode::expiring;
    } else {
      r.fail("mode", "must be \"non-expiring\" or \"expiring\"");
    }
  }
  if (auto v = r.integer<int>(j, "t_max", "t_max", true, 1)) c.t_max = *v;

  static const json kEmpty = json::object();
  const json* learner = r.find(j, "learner", "learner", false);
  const json& l = learner ? *learner : kEmpty;
  if (auto v = r.integer<int>(l, "learner.i_max", "i_max", false, 1)) c.learner.i_max = *v;
  if (auto v = r.number(l, "learner.gamma", "gamma", false)) {
    c.learner.gamma = *v;
    if (*v <= 0.0) r.fail("learner.gamma", "must be > 0");
  }
  if (auto v = r.number(l, "learner.gamma_relative", "gamma_relative", false)) {
    c.learner.gamma_relative = *v;
    if (*v <= 0.0) r.fail("learner.gamma_relative", "must be > 0");
  }
  if (auto v = r.integer<std::int64_t>(l, "learner.n_samples", "n_samples", false, 1)) {
    c.learner.n_samples = *v;
  }

  const json* oc = r.find(j, "oc", "oc", false);
  const json& o = oc ? *oc : kEmpty;
  if (auto v = r.string(o, "oc.method", "method", false)) {
    try {
      c.oc.method = parse_oc_method(*v);
    } catch (const InvalidModel&) {
      r.fail("oc.method", "must be one of monte-carlo, enumeration, closed-form-2step");
    }
  }
  if (auto v = r.integer<std::int64_t>(o, "oc.n_samples", "n_samples", false, 1)) c.oc.n_samples = *v;
  if (auto v = r.string(o, "oc.payment_variant", "payment_variant", false)) {
    try {
      c.oc.payment_variant = parse_payment_variant(*v);
    } catch (const InvalidModel&) {
      r.fail("oc.payment_variant", "must be literal or remaining-horizon");
    }
  }
  if (auto v = r.integer<int>(o, "oc.bucket_width", "bucket_width", false, 1)) c.oc.bucket_width = *v;

  const json* oracle = r.find(j, "oracle", "oracle", false);
  if (auto v = r.integer<std::uint64_t>(oracle ? *oracle : kEmpty, "oracle.state_budget",
                                        "state_budget", false, 1)) {
    c.oracle_state_budget = *v;
  }
  if (auto v = r.integer<std::uint64_t>(j, "seed", "seed", false, 0)) c.seed = *v;

  if (errors.empty()) {
    double total = c.null_weight;
    for (const auto& e : c.catalog) total += e.weight;
    if (!(total > 0.0)) r.fail("catalog[].weight", "arrival weights (with null_weight) sum to zero");
    if (c.oc.method == OcMethod::closed_form_two_step &&
        (c.t_max != 2 || c.mode != ContractMode::non_expiring)) {
      r.fail("oc.method", "closed-form-2step needs mode non-expiring and t_max = 2");
    }
  }
  if (errors.empty()) {
    try {
      to_instance(c);
    } catch (const InvalidModel& e) {
      r.fail("catalog", e.what());
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

json emit_config(const Config& c) {
  json catalog = json::array();
  for (const auto& e : c.catalog) {
    catalog.push_back(
        {{"bundle", e.bundle}, {"period", e.period}, {"payment", e.payment}, {"weight", e.weight}});
  }
  json learner{{"i_max", c.learner.i_max},
               {"gamma_relative", c.learner.gamma_relative},
               {"n_samples", c.learner.n_samples}};
  if (c.learner.gamma) learner["gamma"] = *c.learner.gamma;
  return {{"resource_dimension", c.resource_dimension},
          {"resolution", c.resolution},
          {"initial_pool", c.initial_pool},
          {"catalog", std::move(catalog)},
          {"null_weight", c.null_weight},
          {"beta", c.beta},
          {"own_revenue_rates", c.own_revenue_rates},
          {"mode", c.mode == ContractMode::non_expiring ? "non-expiring" : "expiring"},
          {"t_max", c.t_max},
          {"learner", std::move(learner)},
          {"oc",
           {{"method", to_string(c.oc.method)},
            {"n_samples", c.oc.n_samples},
            {"payment_variant", to_string(c.oc.payment_variant)},
            {"bucket_width", c.oc.bucket_width}}},
          {"oracle", {{"state_budget", c.oracle_state_budget}}},
          {"seed", c.seed}};
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: not valid JSON: ") + e.what()});
  }
  return parse_config(j);
}

Instance to_instance(const Config& c) {
  ResourceSpace space(c.resource_dimension, c.resolution);
  std::vector<CatalogEntry> entries;
  std::vector<double> weights;
  for (const auto& e : c.catalog) {
    entries.push_back(CatalogEntry{space.from_fractions(e.bundle), e.period, e.payment});
    weights.push_back(e.weight);
  }
  Catalog catalog(std::move(entries));
  Instance inst{space,
                space.from_fractions(c.initial_pool),
                catalog,
                RequestDistribution(catalog, std::move(weights), c.null_weight),
                EconomicParams{c.beta, c.own_revenue_rates},
                c.mode,
                c.t_max};
  inst.validate();
  return inst;
}

OcTableSettings table_settings(const Config& c) {
  OcTableSettings s;
  s.method = c.oc.method;
  s.n_samples = c.oc.n_samples;
  s.seed = c.seed;
  s.variant = c.oc.payment_variant;
  s.bucket_width = c.oc.bucket_width;
  return s;
}

LearnerSettings learner_settings(const Config& c) {
  LearnerSettings s;
  s.i_max = c.learner.i_max;
  s.gamma = c.learner.gamma;
  s.gamma_relative = c.learner.gamma_relative;
  s.table = table_settings(c);
  s.table.n_samples = c.learner.n_samples;
  return s;
}

std::string config_hash(const Config& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : emit_config(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sliceadm::cli
