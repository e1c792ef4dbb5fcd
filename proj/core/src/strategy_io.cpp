#include "sliceadm/strategy_io.hpp"

#include "sliceadm/errors.hpp"

namespace sliceadm {

using nlohmann::json;

namespace {

json units_json(const ResourceVector& v) { return json(std::vector<int>(v.units().begin(), v.units().end())); }

ResourceVector units_from(const json& j) {
  return ResourceVector(j.get<std::vector<ResourceVector::Unit>>());
}

std::string_view mode_name(ContractMode m) {
  return m == ContractMode::non_expiring ? "non-expiring" : "expiring";
}

ContractMode mode_from(const std::string& s) {
  if (s == "non-expiring") return ContractMode::non_expiring;
  if (s == "expiring") return ContractMode::expiring;
  throw MalformedDocument("unknown mode '" + s + "'");
}

StrategyKind kind_from(const std::string& s) {
  for (auto k : {StrategyKind::always_accept, StrategyKind::never_accept,
                 StrategyKind::price_threshold, StrategyKind::oc_optimal}) {
    if (to_string(k) == s) return k;
  }
  throw MalformedDocument("unknown strategy kind '" + s + "'");
}

json strategy_node(const Strategy& s) {
  json node{{"kind", to_string(s.kind())}, {"threshold", s.threshold()}};
  if (s.kind() != StrategyKind::oc_optimal) {
    node["horizon"] = nullptr;
    node["mode"] = nullptr;
    node["resolution"] = nullptr;
    return node;
  }
  const OcTable& table = *s.table();
  node["horizon"] = table.scope().horizon;
  node["mode"] = mode_name(table.scope().mode);
  node["resolution"] = table.scope().resolution;

  const auto& st = table.settings();
  json entries = json::array();
  for (const auto& [key, est] : table.entries()) {
    json ledger = json::array();
    for (const auto& [bucket, bundle] : key.state.ledger) {
      ledger.push_back(json::array({bucket, units_json(bundle)}));
    }
    entries.push_back({{"t", key.state.time},
                       {"pool", units_json(key.state.idle_pool)},
                       {"ledger", std::move(ledger)},
                       {"bundle", units_json(key.bundle)},
                       {"period", key.period},
                       {"value", est.value},
                       {"std_error", est.std_error},
                       {"sample_count", est.sample_count},
                       {"method", to_string(est.method)}});
  }
  node["oc_table"] = {{"iteration", table.iteration()},
                      {"method", to_string(st.method)},
                      {"n_samples", st.n_samples},
                      {"seed", st.seed},
                      {"payment_variant", to_string(st.variant)},
                      {"bucket_width", st.bucket_width},
                      {"leaf_budget", st.leaf_budget},
                      {"entries", std::move(entries)},
                      {"base_strategy", strategy_node(*table.base())}};
  return node;
}

Strategy strategy_from_node(const json& node) {
  if (!node.is_object() || !node.contains("kind")) {
    throw MalformedDocument("strategy node must be an object with a 'kind'");
  }
  const StrategyKind kind = kind_from(node.at("kind").get<std::string>());
  switch (kind) {
    case StrategyKind::always_accept: return Strategy::always_accept();
    case StrategyKind::never_accept: return Strategy::never_accept();
    case StrategyKind::price_threshold:
      return Strategy::price_threshold(node.at("threshold").get<double>());
    case StrategyKind::oc_optimal: break;
  }
  const json& t = node.at("oc_table");
  TableScope scope{node.at("horizon").get<int>(), mode_from(node.at("mode").get<std::string>()),
                   node.at("resolution").get<int>()};
  OcTableSettings settings;
  settings.method = parse_oc_method(t.at("method").get<std::string>());
  settings.n_samples = t.at("n_samples").get<std::int64_t>();
  settings.seed = t.at("seed").get<std::uint64_t>();
  settings.variant = parse_payment_variant(t.at("payment_variant").get<std::string>());
  settings.bucket_width = t.at("bucket_width").get<int>();
  settings.leaf_budget = t.at("leaf_budget").get<std::uint64_t>();
  auto base = std::make_shared<const Strategy>(strategy_from_node(t.at("base_strategy")));
  auto table = std::make_shared<OcTable>(scope, settings, std::move(base),
                                         t.at("iteration").get<int>());
  for (const auto& e : t.at("entries")) {
    OcKey key;
    key.state.time = e.at("t").get<int>();
    key.state.idle_pool = units_from(e.at("pool"));
    for (const auto& item : e.at("ledger")) {
      key.state.ledger.emplace_back(item.at(0).get<int>(), units_from(item.at(1)));
    }
    key.bundle = units_from(e.at("bundle"));
    key.period = e.at("period").get<int>();
    OcEstimate est{e.at("value").get<double>(), e.at("std_error").get<double>(),
                   e.at("sample_count").get<std::int64_t>(),
                   parse_oc_method(e.at("method").get<std::string>())};
    table->insert(key, est);
  }
  return Strategy::oc_optimal(std::move(table));
}

}  // namespace

json to_json(const ConvergenceReport& report) {
  json iterations = json::array();
  for (const auto& it : report.iterations) {
    iterations.push_back({{"iteration", it.iteration},
                          {"oc_at_initial", it.oc_at_initial},
                          {"metric", it.metric ? json(*it.metric) : json(nullptr)}});
  }
  return {{"gamma", report.gamma},
          {"converged", report.converged},
          {"converged_at", report.converged_at ? json(*report.converged_at) : json(nullptr)},
          {"iterations", std::move(iterations)}};
}

ConvergenceReport convergence_from_json(const json& j) {
  ConvergenceReport r;
  r.gamma = j.at("gamma").get<double>();
  r.converged = j.at("converged").get<bool>();
  if (!j.at("converged_at").is_null()) r.converged_at = j.at("converged_at").get<int>();
  for (const auto& it : j.at("iterations")) {
    IterationRecord rec;
    rec.iteration = it.at("iteration").get<int>();
    rec.oc_at_initial = it.at("oc_at_initial").get<std::vector<double>>();
    if (!it.at("metric").is_null()) rec.metric = it.at("metric").get<double>();
    r.iterations.push_back(std::move(rec));
  }
  return r;
}

json serialize_strategy(const Strategy& strategy, const ConvergenceReport* history) {
  json doc = strategy_node(strategy);
  doc["schema_version"] = kStrategySchemaVersion;
  doc["convergence_history"] = history ? to_json(*history) : json(nullptr);
  return doc;
}

StrategyDocument deserialize_strategy(const json& document) {
  if (!document.is_object() || document.empty()) {
    throw MalformedDocument("strategy document is empty or not an object");
  }
  if (!document.contains("schema_version")) {
    throw MalformedDocument("strategy document has no schema_version");
  }
  const json& version = document.at("schema_version");
  if (!version.is_string() || version.get<std::string>() != kStrategySchemaVersion) {
    throw SchemaVersionError("unsupported strategy schema version " + version.dump() +
                             ", expected \"" + kStrategySchemaVersion + "\"");
  }
  try {
    StrategyDocument out{strategy_from_node(document), std::nullopt};
    if (document.contains("convergence_history") && !document["convergence_history"].is_null()) {
      out.history = convergence_from_json(document["convergence_history"]);
    }
    return out;
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("malformed strategy document: ") + e.what());
  } catch (const InvalidModel& e) {
    throw MalformedDocument(std::string("malformed strategy document: ") + e.what());
  }
}

bool equivalent(const Strategy& a, const Strategy& b) {
  if (a.kind() != b.kind() || a.threshold() != b.threshold()) return false;
  if (a.kind() != StrategyKind::oc_optimal) return true;
  const OcTable& ta = *a.table();
  const OcTable& tb = *b.table();
  return ta.scope() == tb.scope() && ta.settings() == tb.settings() &&
         ta.iteration() == tb.iteration() && ta.entries() == tb.entries() &&
         equivalent(*ta.base(), *tb.base());
}

}  // namespace sliceadm
