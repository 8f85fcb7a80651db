#include "cocyclelab/report.hpp"

#include <cmath>
#include <sstream>

#include "cocyclelab/util.hpp"

namespace cocyclelab {

json report_skeleton(const std::string& command, const std::string& digest,
                     const json& parameters) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["spec_digest"] = digest;
  j["parameters"] = parameters;
  j["results"] = json::object();
  return j;
}

void report_finalize(json& report, double wall_ms) { report["wall_time_ms"] = wall_ms; }

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * depth), ' ');
  const std::string pad_in(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(v, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_g17(v) : "null";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json_17(const json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

json to_json(const Mat2& m) {
  return json{{"m00", m.m00}, {"m01", m.m01}, {"m10", m.m10}, {"m11", m.m11}, {"det", m.det}};
}

json to_json(const ProjectiveArc& a) {
  return json{{"center", a.center}, {"half_width", a.half_width}};
}

json to_json(const SymbolSequence& x) {
  return json{{"left_period", x.left_period()},
              {"core", x.core()},
              {"core_start", x.core_start()},
              {"right_period", x.right_period()},
              {"display", x.to_string()}};
}

json to_json(const ExponentReport& r) {
  const char* method = r.method == ExponentMethod::PeriodicExact ? "periodic-exact"
                       : r.method == ExponentMethod::FiniteTime  ? "finite-time"
                                                                 : "sampled";
  json j{{"lambda_plus", r.lambda_plus},
         {"lambda_minus", r.lambda_minus},
         {"method", method},
         {"horizon", r.horizon}};
  if (r.method == ExponentMethod::Sampled) {
    j["trials"] = r.trials;
    j["spread"] = r.spread;
  }
  return j;
}

json to_json(const GapScanReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"period", row.orbit.period()},
                        {"word", word_to_string(row.orbit.word())},
                        {"lambda_plus", row.lambda_plus}});
  json j{{"max_period", r.max_period},
         {"tau", r.tau},
         {"min_lambda_plus", r.min_lambda_plus},
         {"min_gap", r.min_gap},
         {"verdict", r.verdict == GapVerdict::Holds ? "gap-holds" : "violated"},
         {"orbits", rows}};
  if (r.witness) j["witness"] = word_to_string(r.witness->word());
  return j;
}

json to_json(const DominationReport& r) {
  return json{{"log_c_fit", r.log_c_fit},
              {"tau_fit", r.tau_fit},
              {"max_residual", r.max_residual},
              {"pass", r.pass}};
}

json to_json(const BunchingReport& r) {
  return json{{"alpha", r.alpha}, {"margin", r.margin}, {"bunched", r.bunched}};
}

json to_json(const HolderReport& r) {
  return json{{"alpha", r.alpha}, {"constant", r.constant}};
}

json to_json(const HolonomyResult& r) {
  return json{{"matrix", to_json(r.matrix)},
              {"n_used", r.n_used},
              {"error_bound", r.error_bound},
              {"side", r.side == HolonomySide::Stable ? "stable" : "unstable"}};
}

json to_json(const UHVerdict& v) {
  json j;
  j["status"] = v.status == UHStatus::Certified    ? "certified"
                : v.status == UHStatus::Falsified  ? "falsified"
                                                   : "inconclusive";
  j["search_horizon"] = v.search_horizon;
  if (v.tau_probe > 0) j["tau_probe"] = v.tau_probe;
  if (v.certificate) {
    const auto& c = *v.certificate;
    json arcs_f = json::array(), arcs_b = json::array();
    for (const auto& a : c.forward) arcs_f.push_back(to_json(a));
    for (const auto& a : c.backward) arcs_b.push_back(to_json(a));
    json cert{{"forward_cones", arcs_f}, {"backward_cones", arcs_b},
              {"c", c.c},               {"tau", c.tau},
              {"margin", c.margin},     {"gamma", c.gamma},
              {"word_length", c.word_length}, {"recoded", c.recoded}};
    if (c.recoded) {
      json words = json::array();
      for (const auto& w : c.context_words) words.push_back(word_to_string(w));
      cert["context_words"] = words;
    }
    j["certificate"] = cert;
  }
  if (v.witness) {
    j["witness"] = json{{"point", to_json(v.witness->point)},
                        {"steps", v.witness->steps},
                        {"log_norm", v.witness->log_norm},
                        {"norm", std::exp(v.witness->log_norm)}};
  }
  return j;
}

json to_json(const TransferReport& r) {
  return json{{"n0", r.n0},
              {"n1", r.n1},
              {"eps", r.eps},
              {"log_norm_x", r.log_norm_x},
              {"connecting_word", word_to_string(r.connecting)},
              {"orbit_word", word_to_string(r.orbit_word)},
              {"factor_norms", r.factor_norms},
              {"log_c", r.log_c},
              {"identity_residual", r.identity_residual},
              {"holonomy_error_budget", r.holonomy_error_budget},
              {"log_bound_product", r.log_bound_product},
              {"lambda_plus_p", r.lambda_plus_p},
              {"exponent_bound", r.exponent_bound},
              {"eps_bound", r.eps_bound},
              {"bound_holds", r.bound_holds}};
}

json to_json(const NotUhReport& r) {
  return json{{"n_max", r.n_max},
              {"max_norm_deviation", r.max_norm_deviation},
              {"norms", r.norms},
              {"probe_taus", r.probe_taus},
              {"all_probes_falsified", r.all_probes_falsified},
              {"pass", r.pass}};
}

json to_json(const ConeStepReport& r) {
  json j{{"return_time", r.return_time},
         {"inclusion_slack", r.inclusion_slack},
         {"log_growth", r.log_growth},
         {"log_growth_required", r.log_growth_required},
         {"tan_gamma", r.tan_gamma},
         {"tan_gamma_bound", r.tan_gamma_bound},
         {"chain_value", r.chain_value},
         {"pass", r.pass}};
  if (r.k_here) j["k_here"] = *r.k_here;
  if (r.k_next) j["k_next"] = *r.k_next;
  if (!r.failing.empty()) j["failing"] = r.failing;
  return j;
}

json to_json(const ExponentBoundReport& r) {
  json deep = json::array();
  for (auto [m, lp] : r.deep_zero_family)
    deep.push_back(json{{"m", m}, {"lambda_plus", lp}});
  return json{{"gap", to_json(r.gap)},
              {"gap_pass", r.gap_pass},
              {"deep_zero_family", deep},
              {"deep_zero_pass", r.deep_zero_pass},
              {"tracked_points", r.tracked_points},
              {"tracked_pass", r.tracked_pass},
              {"worst_track_margin", r.worst_track_margin},
              {"track_pass", r.track_pass},
              {"off_v_pass", r.off_v_pass},
              {"pass", r.pass}};
}

json to_json(const K0Scan& r) {
  json ineqs = json::array();
  for (std::size_t i = 0; i < r.names.size(); ++i)
    ineqs.push_back(json{{"inequality", r.names[i]},
                         {"first_k_holding", r.first_k_holding[i]}});
  return json{{"k0", r.k0},
              {"inequalities", ineqs},
              {"monotone_up_to", r.k_max},
              {"monotone", r.monotone}};
}

std::string gap_scan_csv(const GapScanReport& r) {
  std::ostringstream os;
  os << "period,word,lambda_plus\n";
  for (const auto& row : r.rows) {
    os << row.orbit.period() << ",";
    for (Symbol s : row.orbit.word()) os << s;
    os << "," << format_g17(row.lambda_plus) << "\n";
  }
  return os.str();
}

}  // namespace cocyclelab
