#include "larmor/harness/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "larmor/version.hpp"

namespace larmor::harness {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::string& sweep_csv_header() {
  static const std::string h =
      "index,N,intensity_Wcm2,p_r,p_phi_rad,omega_au,F_au,gamma,p0,r0,dphi_c,dphi_d,dphi_total,tau_si_as,tau_eh_as,"
      "xi_so,under_barrier_c,weight,converged,status";
  return h;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << sweep_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.index << ',' << opt(r.N) << ',' << opt(r.intensity_wcm2) << ',' << opt(r.p_r) << ',' << opt(r.p_phi) << ','
        << format_double(r.omega) << ',' << format_double(r.field) << ',' << opt(r.gamma) << ',' << opt(r.p0) << ','
        << opt(r.r0) << ',' << opt(r.dphi_c) << ',' << opt(r.dphi_d) << ',' << opt(r.dphi_total) << ','
        << opt(r.tau_si_as) << ',' << opt(r.tau_eh_as) << ',' << opt(r.xi_so) << ',' << opt(r.under_barrier_c) << ','
        << opt(r.weight) << ',' << (r.converged ? 1 : 0) << ',' << quote(r.status) << '\n';
  }
}

json row_to_json(const SweepRow& r) {
  return {{"index", r.index},
          {"N", opt_json(r.N)},
          {"intensity_Wcm2", opt_json(r.intensity_wcm2)},
          {"p_r", opt_json(r.p_r)},
          {"p_phi_rad", opt_json(r.p_phi)},
          {"omega_au", r.omega},
          {"F_au", r.field},
          {"gamma", opt_json(r.gamma)},
          {"p0", opt_json(r.p0)},
          {"r0", opt_json(r.r0)},
          {"dphi_c", opt_json(r.dphi_c)},
          {"dphi_d", opt_json(r.dphi_d)},
          {"dphi_total", opt_json(r.dphi_total)},
          {"tau_si_as", opt_json(r.tau_si_as)},
          {"tau_eh_as", opt_json(r.tau_eh_as)},
          {"xi_so", opt_json(r.xi_so)},
          {"under_barrier_c", opt_json(r.under_barrier_c)},
          {"weight", opt_json(r.weight)},
          {"converged", r.converged},
          {"status", r.status}};
}

SweepRow row_from_json(const json& j) {
  SweepRow r;
  r.index = j.at("index").get<std::size_t>();
  r.N = opt_from(j, "N");
  r.intensity_wcm2 = opt_from(j, "intensity_Wcm2");
  r.p_r = opt_from(j, "p_r");
  r.p_phi = opt_from(j, "p_phi_rad");
  r.omega = j.at("omega_au").get<double>();
  r.field = j.at("F_au").get<double>();
  r.gamma = opt_from(j, "gamma");
  r.p0 = opt_from(j, "p0");
  r.r0 = opt_from(j, "r0");
  r.dphi_c = opt_from(j, "dphi_c");
  r.dphi_d = opt_from(j, "dphi_d");
  r.dphi_total = opt_from(j, "dphi_total");
  r.tau_si_as = opt_from(j, "tau_si_as");
  r.tau_eh_as = opt_from(j, "tau_eh_as");
  r.xi_so = opt_from(j, "xi_so");
  r.under_barrier_c = opt_from(j, "under_barrier_c");
  r.weight = opt_from(j, "weight");
  r.converged = j.at("converged").get<bool>();
  r.status = j.at("status").get<std::string>();
  return r;
}

json result_to_json(const SweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row_to_json(row));
  json trace = json::array();
  for (const auto& s : r.trace) trace.push_back({s.tau, s.w});
  return {{"sweep", to_string(r.kind)}, {"config_hash", r.config_hash}, {"rows", rows},
          {"trace", trace},           {"summary", r.summary},        {"seconds", r.seconds}};
}

SweepResult result_from_json(const json& j) {
  SweepResult r;
  r.kind = sweep_kind_from_string(j.at("sweep").get<std::string>());
  r.config_hash = j.at("config_hash").get<std::string>();
  for (const auto& row : j.at("rows")) r.rows.push_back(row_from_json(row));
  for (const auto& s : j.at("trace")) r.trace.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
  r.summary = j.at("summary");
  r.seconds = j.at("seconds").get<double>();
  return r;
}

json run_metadata(const RunConfig& cfg, const SweepResult& r) {
  json notes = json::array();
  if (cfg.sweep == SweepKind::Momentum) {
    notes.push_back("ionisation weights from the ARM exponent of the cos4 pulse; angular shift w*tau_SI from the "
                    "envelope-free pulse");
    notes.push_back("envelope correction of the reference angle not included (envelope-free offset)");
  }
  json failures = json::array();
  for (const auto& row : r.rows)
    if (row.failed()) failures.push_back({{"index", row.index}, {"status", row.status}});
  return {{"version", version()},
          {"config", cfg.raw},
          {"config_hash", r.config_hash},
          {"sweep", to_string(r.kind)},
          {"tolerances", tolerances_to_json(cfg.phase)},
          {"channels",
           {{"lower", atomic::channel_to_json(cfg.channels.lower())},
            {"upper", atomic::channel_to_json(cfg.channels.upper())},
            {"splitting_hartree", cfg.channels.splitting()}}},
          {"timings", {{"compute_seconds", r.seconds}, {"from_cache", r.from_cache}}},
          {"rows", r.rows.size()},
          {"failures", failures},
          {"summary", r.summary},
          {"notes", notes}};
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void emit_outputs(const RunConfig& cfg, const SweepResult& r, const std::string& dir) {
  std::ostringstream csv;
  if (r.kind == SweepKind::PumpProbe) pumpprobe::write_trace(csv, r.trace);
  else write_sweep_csv(csv, r.rows);
  const fs::path base = fs::path(dir) / cfg.output_name;
  write_file_atomic(base.string() + ".csv", csv.str());
  write_file_atomic(base.string() + ".json", run_metadata(cfg, r).dump(2) + "\n");
}

}  // namespace larmor::harness
