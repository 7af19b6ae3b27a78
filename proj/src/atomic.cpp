#include "larmor/atomic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>
#include "json.hpp"

#include "larmor/units.hpp"

namespace larmor::atomic {

namespace {

using angular::clebsch_gordan;
using angular::legendre_p;
using angular::wigner3j;

double sto_norm(const StoTerm& t) {
  return std::pow(2.0 * t.exponent, t.principal + 0.5) / std::sqrt(boost::math::factorial<double>(2 * t.principal));
}

// Gamma(a, x) for integer a, including a <= 0 through the downward recurrence
// Gamma(a, x) = (Gamma(a + 1, x) - x^a e^-x) / a from Gamma(0, x) = E1(x).
double upper_gamma_int(int a, double x) {
  if (a >= 1) return boost::math::tgamma(static_cast<double>(a), x);
  double g = boost::math::expint(1, x);
  for (int k = 0; k > a; --k) g = (g - std::pow(x, k - 1) * std::exp(-x)) / (k - 1);
  return g;
}

double lower_gamma_int(int a, double x) { return boost::math::tgamma_lower(static_cast<double>(a), x); }

void check_terms(const std::vector<StoTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("STO expansion has no terms");
  for (const auto& t : terms) {
    if (!(t.exponent > 0.0)) throw std::invalid_argument("STO exponent must be positive");
    if (t.principal < 1) throw std::invalid_argument("STO principal index must be >= 1");
  }
}

double raw_norm(const std::vector<StoTerm>& terms) {
  double n = 0.0;
  for (const auto& p : terms)
    for (const auto& q : terms) {
      const double k = p.exponent + q.exponent;
      const int a = p.principal + q.principal + 1;
      n += p.coefficient * q.coefficient * sto_norm(p) * sto_norm(q) * boost::math::tgamma(double(a)) /
           std::pow(k, a);
    }
  return n;
}

}  // namespace

// --- StoOrbital -------------------------------------------------------------

StoOrbital::StoOrbital(std::vector<StoTerm> terms) : terms_(std::move(terms)) {
  check_terms(terms_);
  input_norm_ = raw_norm(terms_);
  if (!(input_norm_ > 0.0)) throw std::invalid_argument("STO density has non-positive norm");
  const double scale = 1.0 / std::sqrt(input_norm_);
  for (auto& t : terms_) t.coefficient *= scale;
  if (std::abs(raw_norm(terms_) - 1.0) > 1e-8) throw std::runtime_error("STO renormalisation failed");
}

double StoOrbital::radial_value(double r) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.coefficient * sto_norm(t) * std::pow(r, t.principal - 1) * std::exp(-t.exponent * r);
  return v;
}

double StoOrbital::expectation_power(int k) const {
  double v = 0.0;
  for (const auto& p : terms_)
    for (const auto& q : terms_) {
      const int a = p.principal + q.principal + 1 + k;
      if (a <= 0) throw std::domain_error("divergent radial expectation value");
      const double kk = p.exponent + q.exponent;
      v += p.coefficient * q.coefficient * sto_norm(p) * sto_norm(q) * boost::math::tgamma(double(a)) / std::pow(kk, a);
    }
  return v;
}

double radial_moment(const std::vector<StoTerm>& terms, int L, double r) {
  if (!(r > 0.0)) throw std::domain_error("radial_moment requires r > 0");
  if (L < 0) throw std::domain_error("multipole order must be non-negative");
  check_terms(terms);
  double inner = 0.0;
  double outer = 0.0;
  for (const auto& p : terms)
    for (const auto& q : terms) {
      const double cc = p.coefficient * q.coefficient * sto_norm(p) * sto_norm(q);
      const double k = p.exponent + q.exponent;
      const int s = p.principal + q.principal;
      // int_0^r r'^(s+L) e^(-k r') dr'  and  int_r^inf r'^(s-L-1) e^(-k r') dr'
      const int a_in = s + L + 1;
      const int a_out = s - L;
      inner += cc * lower_gamma_int(a_in, k * r) / std::pow(k, a_in);
      outer += cc * upper_gamma_int(a_out, k * r) / std::pow(k, a_out);
    }
  return inner / std::pow(r, L + 1) + std::pow(r, L) * outer;
}

double radial_moment(const StoOrbital& orbital, int L, double r) { return radial_moment(orbital.terms(), L, r); }

// --- channels ---------------------------------------------------------------

void ChannelSpec::validate() const {
  if (!L.is_integer() || L.twice < 0) throw std::invalid_argument("channel L must be a non-negative integer");
  if (J.twice != L.twice + 1 && J.twice != L.twice - 1) throw std::invalid_argument("channel J must be L +- 1/2");
  if (J.twice < 0) throw std::invalid_argument("channel J must be non-negative");
  if (!angular::valid_projection(J, MJ)) throw std::invalid_argument("channel M_J invalid for J");
  if (!(ip > 0.0)) throw std::invalid_argument("ionisation potential must be positive");
}

double ChannelSpec::kappa() const { return std::sqrt(2.0 * ip); }

ChannelPair::ChannelPair(ChannelSpec lower, ChannelSpec upper)
    : lower_(std::move(lower)), upper_(std::move(upper)), splitting_(upper_.ip - lower_.ip) {
  lower_.validate();
  upper_.validate();
  if (!(splitting_ > 0.0)) throw std::invalid_argument("upper channel must have the larger ionisation potential");
}

ChannelPair krypton_pair(int mj_twice) {
  ChannelSpec lower{HalfInt::integer(1), HalfInt::from_twice(3), HalfInt::from_twice(mj_twice), 0.5145, 1.0, 4.444};
  ChannelSpec upper{HalfInt::integer(1), HalfInt::from_twice(1), HalfInt::from_twice(mj_twice), 0.5145 + 0.02444,
                    1.0, 4.444};
  return {lower, upper};
}

// --- multipoles -------------------------------------------------------------

Multipoles Multipoles::asymptotic(std::map<int, double> moments) { return Multipoles{std::move(moments)}; }

Multipoles Multipoles::asymptotic(const ChannelSpec& ch) { return asymptotic({{0, ch.charge}, {1, ch.quadrupole}}); }

Multipoles Multipoles::orbital(StoOrbital orbital, double charge) { return Multipoles{Orbital{std::move(orbital), charge}}; }

double Multipoles::value(int lprime, double r) const {
  if (!(r > 0.0)) throw std::domain_error("multipole evaluation requires r > 0");
  if (const auto* m = std::get_if<std::map<int, double>>(&source_)) {
    auto it = m->find(lprime);
    if (it == m->end()) return 0.0;
    return it->second / std::pow(r, 2 * lprime + 1);
  }
  const auto& o = std::get<Orbital>(source_);
  const double v = radial_moment(o.orbital, 2 * lprime, r);
  return lprime == 0 ? o.charge * v : v;
}

double Multipoles::constant(int lprime) const {
  if (const auto* m = std::get_if<std::map<int, double>>(&source_)) {
    auto it = m->find(lprime);
    return it == m->end() ? 0.0 : it->second;
  }
  const auto& o = std::get<Orbital>(source_);
  // r^(2L'+1) R_{2L'}(r) -> <r^{2L'}> as r -> inf
  return lprime == 0 ? o.charge : o.orbital.expectation_power(2 * lprime);
}

double multipole_coefficient(const ChannelSpec& ch, int lprime) {
  ch.validate();
  if (lprime < 0) throw std::domain_error("multipole order must be non-negative");
  const HalfInt L = ch.L;
  const HalfInt K = HalfInt::integer(2 * lprime);
  const HalfInt zero{};
  const double parity = wigner3j(L, K, L, zero, zero, zero);
  if (parity == 0.0) return 0.0;
  double sum = 0.0;
  for (int ml = -L.twice; ml <= L.twice; ml += 2) {
    const HalfInt ML = HalfInt::from_twice(ml);
    for (int ms : {-1, 1}) {
      const HalfInt MS = HalfInt::from_twice(ms);
      const double c = clebsch_gordan(L, ML, HalfInt::from_twice(1), MS, ch.J, ch.MJ);
      if (c == 0.0) continue;
      const double sign = ((ml / 2) % 2 == 0) ? 1.0 : -1.0;
      sum += sign * c * c * wigner3j(L, K, L, ML, zero, -ML);
    }
  }
  return (L.twice + 1) * sum * parity;
}

double channel_potential_term(const ChannelSpec& ch, const Multipoles& m, int lprime, double r, double theta) {
  if (!(r > 0.0)) throw std::domain_error("channel_potential requires r > 0");
  const double coeff = multipole_coefficient(ch, lprime);
  if (coeff == 0.0) return 0.0;
  return coeff * legendre_p(2 * lprime, std::cos(theta)) * m.value(lprime, r);
}

double channel_potential(const ChannelSpec& ch, const Multipoles& m, double r, double theta) {
  if (!(r > 0.0)) throw std::domain_error("channel_potential requires r > 0");
  double v = 0.0;
  for (int lp = 0; lp <= ch.L.twice / 2; ++lp) v += channel_potential_term(ch, m, lp, r, theta);
  return v;
}

double channel_potential_unrestricted(const ChannelSpec& ch, const Multipoles& m, double r, double theta,
                                      double phi) {
  if (!(r > 0.0)) throw std::domain_error("channel_potential requires r > 0");
  ch.validate();
  const HalfInt L = ch.L;
  const HalfInt zero{};
  const HalfInt half = HalfInt::from_twice(1);
  std::complex<double> v = 0.0;
  for (int lp = 0; lp <= L.twice / 2; ++lp) {
    const HalfInt K = HalfInt::integer(2 * lp);
    const double parity = wigner3j(L, K, L, zero, zero, zero);
    if (parity == 0.0) continue;
    const double radial = m.value(lp, r);
    const double norm = std::sqrt(4.0 * units::kPi / (4 * lp + 1));
    for (int ml = -L.twice; ml <= L.twice; ml += 2) {
      for (int ms : {-1, 1}) {
        const HalfInt ML = HalfInt::from_twice(ml);
        const HalfInt MS = HalfInt::from_twice(ms);
        const double c_right = clebsch_gordan(L, ML, half, MS, ch.J, ch.MJ);
        for (int mk = -K.twice; mk <= K.twice; mk += 2) {
          const HalfInt MK = HalfInt::from_twice(mk);
          const HalfInt MLp = ML + MK;
          if (std::abs(MLp.twice) > L.twice) continue;
          const double c_left = clebsch_gordan(L, MLp, half, MS, ch.J, ch.MJ);
          if (c_left == 0.0 || c_right == 0.0) continue;
          const double sign = ((MLp.twice / 2) % 2 == 0) ? 1.0 : -1.0;
          const double threej = wigner3j(L, K, L, ML, MK, -MLp);
          const auto y = std::conj(boost::math::spherical_harmonic(2 * lp, mk / 2, theta, phi));
          v += sign * c_left * c_right * norm * threej * parity * y * radial;
        }
      }
    }
  }
  return (L.twice + 1) * v.real();
}

namespace {

void require_p_shell_pair(const ChannelPair& pair) {
  const auto& a = pair.lower();
  const auto& b = pair.upper();
  if (a.L.twice != 2 || b.L.twice != 2 || a.J.twice != 3 || b.J.twice != 1)
    throw std::invalid_argument("potential_difference needs a p-shell pair (J = 3/2, 1/2)");
  if (a.MJ != b.MJ || std::abs(a.MJ.twice) != 1)
    throw std::invalid_argument("potential_difference needs both channels at M_J = +-1/2");
  if (std::abs(a.quadrupole - b.quadrupole) > 1e-12)
    throw std::invalid_argument("potential_difference needs equal <R_2> in both channels");
}

}  // namespace

double potential_difference(const ChannelPair& pair, const Multipoles& m, double r, double theta) {
  if (!(r > 0.0)) throw std::domain_error("potential_difference requires r > 0");
  require_p_shell_pair(pair);
  return 0.2 * legendre_p(2, std::cos(theta)) * m.value(1, r);
}

double potential_difference(const ChannelPair& pair, double r, double theta) {
  return potential_difference(pair, Multipoles::asymptotic(pair.lower()), r, theta);
}

std::complex<double> potential_difference_inplane(const ChannelPair& pair, std::complex<double> r) {
  require_p_shell_pair(pair);
  // P_2(0) = -1/2
  return -0.1 * pair.lower().quadrupole / (r * r * r);
}

// --- file formats -----------------------------------------------------------

std::vector<StoTerm> parse_sto_table(std::istream& in) {
  std::vector<StoTerm> terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    StoTerm t{};
    if (!(ls >> t.coefficient)) continue;  // blank line
    if (!(ls >> t.exponent >> t.principal))
      throw std::runtime_error("STO table line " + std::to_string(lineno) + ": expected `c kappa n`");
    std::string extra;
    if (ls >> extra) throw std::runtime_error("STO table line " + std::to_string(lineno) + ": trailing fields");
    terms.push_back(t);
  }
  check_terms(terms);
  return terms;
}

std::vector<StoTerm> load_sto_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open STO table " + path);
  return parse_sto_table(in);
}

ChannelSpec channel_from_json(const nlohmann::json& j) {
  ChannelSpec ch;
  ch.L = HalfInt::integer(j.at("L").get<int>());
  ch.J = HalfInt::from_twice(j.at("J2").get<int>());
  ch.MJ = HalfInt::from_twice(j.at("MJ2").get<int>());
  ch.ip = j.at("Ip_hartree").get<double>();
  ch.charge = j.value("Q", 1.0);
  ch.quadrupole = j.value("R2_au", 0.0);
  ch.validate();
  return ch;
}

nlohmann::json channel_to_json(const ChannelSpec& ch) {
  return {{"L", ch.L.twice / 2}, {"J2", ch.J.twice},   {"MJ2", ch.MJ.twice},
          {"Ip_hartree", ch.ip}, {"Q", ch.charge},     {"R2_au", ch.quadrupole}};
}

ChannelPair channel_pair_from_json(const nlohmann::json& j) {
  return {channel_from_json(j.at("lower")), channel_from_json(j.at("upper"))};
}

ChannelPair load_channel_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel file " + path);
  return channel_pair_from_json(nlohmann::json::parse(in));
}

}  // namespace larmor::atomic
