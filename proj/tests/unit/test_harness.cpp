#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>
#include <stdexcept>

#include "larmor/clock.hpp"
#include "larmor/harness/cache.hpp"
#include "larmor/harness/config.hpp"
#include "larmor/harness/output.hpp"
#include "larmor/harness/spectrum.hpp"
#include "larmor/harness/sweep.hpp"
#include "larmor/saddle.hpp"
#include "larmor/units.hpp"
#include "support.hpp"

using namespace larmor;
using namespace larmor::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("larmor_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

json wavelength_config() {
  return json::parse(R"({
    "pulse": {"intensity_Wcm2": 2.5e14},
    "channels": {"preset": "krypton"},
    "sweep": {"type": "wavelength", "N": [5, 8, 11, 14]}
  })");
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream ss;
  write_sweep_csv(ss, r.rows);
  return ss.str();
}

MomentumGridSpec ridge_grid(double p0, double half_width_deg, int nphi, int nr) {
  MomentumGridSpec g;
  g.p_r = {0.6 * p0, 1.4 * p0, nr};
  g.p_phi = {-half_width_deg * units::kPi / 180, half_width_deg * units::kPi / 180, nphi};
  return g;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("wavelength sweep derives w from N") {
    const RunConfig c = parse_config(wavelength_config());
    CHECK(c.sweep == SweepKind::Wavelength);
    CHECK(c.N_values.size() == 4);
    CHECK(std::abs(c.pulse.field - 0.0844015) < 1e-6);
    RunOptions ro;
    ro.use_cache = false;
    ro.cache_dir = scratch("wl").string();
    const auto res = run_sweep(c, ro);
    for (const auto& row : res.rows) CHECK(std::abs(row.omega - c.channels.lower().ip / *row.N) < 1e-15);
  }
  SUBCASE("pulse variants") {
    const auto p = pulse_from_json(json::parse(R"({"F_au": 0.05, "wavelength_nm": 800, "envelope": "cos4", "helicity": "left"})"));
    CHECK(p.field == 0.05);
    CHECK(std::abs(p.omega - 0.056954) < 1e-6);
    CHECK(p.envelope == pulse::Envelope::Cos4);
    CHECK(p.helicity == pulse::Helicity::Left);
    CHECK_THROWS_AS(pulse_from_json(json::parse(R"({"omega_au": 0.05})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"pulse": {"F_au": 0.05}, "sweep": {"type": "single"}})")),
                    std::invalid_argument);
  }
  SUBCASE("grids and sweeps") {
    const auto c = parse_config(json::parse(R"({"pulse": {"F_au": 0.05, "omega_au": 0.0465},
      "sweep": {"type": "momentum", "p_r": {"min": 0.5, "max": 1.5, "count": 11},
                "p_phi_deg": {"min": -90, "max": 90, "count": 5}}})"));
    CHECK(c.momentum.p_r.values().size() == 11);
    CHECK(c.momentum.p_phi.values().front() == doctest::Approx(-units::kPi / 2));
    CHECK(c.momentum.phase_threshold == 0.5);
    CHECK_THROWS_AS(sweep_kind_from_string("helix"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"pulse": {"F_au": 0.05, "omega_au": 0.05},
      "sweep": {"type": "wavelength", "N": [5, -1]}})")),
                    std::invalid_argument);
  }
  SUBCASE("channel sources") {
    const auto h = channels_from_json(json::parse(R"({"preset": "hydrogen"})"));
    CHECK(h.mean_ip() == doctest::Approx(0.5));
    CHECK(h.splitting() == doctest::Approx(0.02444));
    const auto kr = channels_from_json(json("kr_channels.json"), LARMOR_TEST_DATA);
    CHECK(kr.lower().quadrupole == doctest::Approx(4.444));
    CHECK_THROWS(channels_from_json(json("missing.json"), LARMOR_TEST_DATA));
    CHECK_THROWS_AS(channels_from_json(json::parse(R"({"preset": "xenon"})")), std::invalid_argument);
  }
  SUBCASE("tolerance overrides") {
    json j = wavelength_config();
    apply_tolerance_override(j, "r_min=0.2");
    apply_tolerance_override(j, "quad_tol=1e-11");
    const auto c = parse_config(j);
    CHECK(c.phase.r_min == 0.2);
    CHECK(c.phase.tol.quad_tol == 1e-11);
    CHECK_THROWS_AS(apply_tolerance_override(j, "bogus=1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_tolerance_override(j, "r_min=abc"), std::invalid_argument);
    CHECK_THROWS_AS(apply_tolerance_override(j, "r_min"), std::invalid_argument);
  }
  SUBCASE("configs shipped with the project load") {
    for (const char* name : {"kr_wavelength_sweep.json", "kr_intensity_sweep.json", "hydrogen_spectrum.json",
                             "kr_pumpprobe.json", "kr_single.json"})
      CHECK_NOTHROW(load_config(std::string(LARMOR_TEST_CONFIGS) + "/" + name));
  }
}

TEST_CASE("sweep determinism, concurrency and caching") {
  const fs::path dir = scratch("cache");
  RunConfig c = parse_config(wavelength_config());
  RunOptions fresh;
  fresh.use_cache = false;
  fresh.cache_dir = dir.string();
  fresh.threads = 1;
  const auto a = run_sweep(c, fresh);
  fresh.threads = 3;
  const auto b = run_sweep(c, fresh);
  CHECK(csv_of(a) == csv_of(b));
  CHECK_FALSE(a.from_cache);

  RunOptions cached = fresh;
  cached.use_cache = true;
  const auto hit = run_sweep(c, cached);
  CHECK(hit.from_cache);
  CHECK(csv_of(hit) == csv_of(a));
  CHECK(hit.config_hash == a.config_hash);

  // the hash ignores output placement but not physics
  RunConfig moved = c;
  moved.output_dir = "elsewhere";
  moved.raw["output"] = {{"dir", "elsewhere"}};
  CHECK(config_hash(moved) == config_hash(c));
  RunConfig other = parse_config([] {
    json j = wavelength_config();
    j["sweep"]["N"] = json::array({5, 8});
    return j;
  }());
  CHECK(config_hash(other) != config_hash(c));

  // corrupt entries are recomputed
  std::ofstream(ResultCache(dir.string()).path_for(a.config_hash)) << "{not json";
  const auto again = run_sweep(c, cached);
  CHECK_FALSE(again.from_cache);
  CHECK(csv_of(again) == csv_of(a));
}

TEST_CASE("sweep rows") {
  RunOptions ro;
  ro.use_cache = false;
  ro.cache_dir = scratch("rows").string();
  const RunConfig c = parse_config(wavelength_config());
  const auto res = run_sweep(c, ro);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.exit_code() == 0);
  const double dE = c.channels.splitting();
  for (const auto& r : res.rows) {
    REQUIRE(r.dphi_c);
    CHECK(std::abs(*r.tau_si_as - units::au_to_as(-*r.dphi_c / dE)) <= 1e-12 * std::abs(*r.tau_si_as));
    CHECK(std::abs(*r.tau_eh_as - units::au_to_as(-*r.dphi_d / dE)) <= 1e-12 * std::abs(*r.tau_eh_as));
    CHECK(*r.dphi_total == doctest::Approx(*r.dphi_c + *r.dphi_d));
    CHECK(r.converged);
  }
  // the wavelength trend (photon number N from 14 down to 5)
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    CHECK(*res.rows[i].tau_si_as < *res.rows[i - 1].tau_si_as);
    CHECK(*res.rows[i].r0 > *res.rows[i - 1].r0);
  }
}

TEST_CASE("per-point failures become null rows") {
  json j = wavelength_config();
  apply_tolerance_override(j, "r_min=50");
  RunOptions ro;
  ro.use_cache = false;
  ro.cache_dir = scratch("fail").string();
  const auto res = run_sweep(parse_config(j), ro);
  CHECK(res.failures() == res.rows.size());
  CHECK(res.exit_code() == 2);
  for (const auto& r : res.rows) {
    CHECK_FALSE(r.dphi_c.has_value());
    CHECK_FALSE(r.tau_si_as.has_value());
    CHECK(r.status.find("r_min") != std::string::npos);
  }
  const std::string csv = csv_of(res);
  CHECK(csv.find(",,,,,,") != std::string::npos);
}

TEST_CASE("output files") {
  const fs::path dir = scratch("out");
  RunConfig c = parse_config(wavelength_config());
  c.output_name = "wl";
  RunOptions ro;
  ro.cache_dir = (dir / ".cache").string();
  const auto res = run_sweep(c, ro);
  emit_outputs(c, res, dir.string());
  std::ifstream csv(dir / "wl.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == sweep_csv_header());
  std::ifstream meta_in(dir / "wl.json");
  const json meta = json::parse(meta_in);
  for (const char* key : {"version", "config", "config_hash", "tolerances", "timings", "channels"})
    CHECK(meta.contains(key));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().string().find(".tmp.") == std::string::npos);

  const SweepResult back = result_from_json(result_to_json(res));
  CHECK(csv_of(back) == csv_of(res));
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("ionisation weights") {
  const pulse::PulseSpec s(0.05, 0.02);
  const auto ch = atomic::krypton_pair().lower();
  const double p0 = saddle::characteristic_momentum(s, ch.ip);
  SUBCASE("radial ridge at p0 for the flat pulse") {
    const int n = 201;
    const double lo = 0.5 * p0, hi = 1.5 * p0, step = (hi - lo) / (n - 1);
    std::vector<double> w;
    for (int i = 0; i < n; ++i) w.push_back(arm_weight(s, ch, {lo + i * step, 0.0}, false));
    const auto k = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    CHECK(std::abs(lo + k * step - p0) <= step);
    for (std::size_t i = 1; i <= k; ++i) CHECK(w[i] > w[i - 1]);
    for (std::size_t i = k + 1; i < w.size(); ++i) CHECK(w[i] < w[i - 1]);
  }
  SUBCASE("flat pulse weights are angle independent") {
    CHECK(arm_weight(s, ch, Vec2::polar(p0, 0.0)) == doctest::Approx(arm_weight(s, ch, Vec2::polar(p0, 1.1))));
  }
}

TEST_CASE("spectrum map and offset angle") {
  const auto pair = split_channel(atomic::channel_from_json(
      json::parse(R"({"L": 0, "J2": 1, "MJ2": 1, "Ip_hartree": 0.5, "Q": 1.0, "R2_au": 0.0})")));
  const pulse::PulseSpec s(0.05, 0.0465, pulse::Envelope::Cos4);
  const double p0 = saddle::characteristic_momentum(s.with_envelope(pulse::Envelope::Flat), pair.mean_ip());
  const auto grid = ridge_grid(p0, 40.0, 41, 15);
  SpectrumOptions opt;
  const SpectrumMap m = spectrum_map(s, pair, grid, opt);
  CHECK(*std::max_element(m.weight.begin(), m.weight.end()) == 1.0);
  for (double w : m.weight) CHECK((std::isfinite(w) && w >= 0.0));
  CHECK(m.weight_envelope == pulse::Envelope::Cos4);

  SpectrumOptions ref = opt;
  ref.core_potential = false;
  const SpectrumMap r = spectrum_map(s, pair, grid, ref);
  CHECK(offset_angle(r, r) == 0.0);
  const double right = offset_angle(m, r);
  CHECK(right > 0.0);
  const double left = offset_angle(s.with_helicity(pulse::Helicity::Left), pair, grid, opt);
  CHECK(std::abs(left + right) < 1e-9);

  SpectrumMap flat = m;
  std::fill(flat.weight.begin(), flat.weight.end(), 1.0);
  CHECK_THROWS_AS(spectrum_peak(flat), std::domain_error);
  MomentumGridSpec bad = grid;
  bad.p_r.min = -0.1;
  CHECK_THROWS_AS(spectrum_map(s, pair, bad, opt), std::invalid_argument);
}

TEST_CASE("offset angle tracks w |tau_SI| across an intensity scan") {
  const auto pair = atomic::krypton_pair();
  const double w = 0.019;  // 2400 nm
  double tau_min = INFINITY, tau_max = -INFINITY;
  for (double I : {1.0e14, 1.25e14, 1.5e14, 1.75e14, 2.0e14}) {
    const pulse::PulseSpec s(pulse::intensity_to_field(I), w);
    CHECK(saddle::keldysh_gamma(s, pair.lower().ip) < 0.4);
    const double p0 = saddle::characteristic_momentum(s, pair.mean_ip());
    const double offset = offset_angle(s, pair, ridge_grid(p0, 20.0, 41, 9));
    const double tau = radial_ionisation_delay(s, pair, p0);
    tau_min = std::min(tau_min, tau);
    tau_max = std::max(tau_max, tau);
    CHECK(std::abs(offset / clock::attoclock_offset(tau, w) - 1.0) < 0.10);
  }
  CHECK((tau_max - tau_min) / tau_min < 0.05);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
