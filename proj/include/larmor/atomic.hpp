#pragma once

// Radial structure of the singly charged ion and the channel-resolved core
// potentials V_{L J M_J}(r, theta) seen by the departing electron.
//
// Potentials follow the sign convention of the phase integrals: V > 0 is
// attractive, so the Coulomb tail is +Q/r.

#include <complex>
#include <istream>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "larmor/angular.hpp"

namespace larmor::atomic {

using angular::HalfInt;

/// c * N(n, kappa) r^(n-1) exp(-kappa r), N the STO normalisation.
struct StoTerm {
  double coefficient;
  double exponent;  // kappa > 0, inverse bohr
  int principal;    // n >= 1
};

/// Radial function of one hole orbital as a normalised STO expansion.
class StoOrbital {
 public:
  /// Validates the terms and rescales the coefficients so the density
  /// integrates to one (checked afterwards to 1e-8).
  explicit StoOrbital(std::vector<StoTerm> terms);

  const std::vector<StoTerm>& terms() const { return terms_; }
  /// norm of the terms as supplied, before rescaling
  double input_norm() const { return input_norm_; }
  double radial_value(double r) const;
  /// <r^k> over the normalised density
  double expectation_power(int k) const;

 private:
  std::vector<StoTerm> terms_;
  double input_norm_ = 1.0;
};

/// R_L(r) = r^-(L+1) int_0^r r'^(2+L) |R|^2 dr' + r^L int_r^inf r'^(1-L) |R|^2 dr'
/// assembled from lower/upper incomplete gamma functions of the pairwise
/// exponents. Throws std::domain_error for r <= 0.
double radial_moment(const std::vector<StoTerm>& terms, int L, double r);
double radial_moment(const StoOrbital& orbital, int L, double r);

struct ChannelSpec {
  HalfInt L = HalfInt::integer(1);
  HalfInt J = HalfInt::from_twice(3);
  HalfInt MJ = HalfInt::from_twice(1);
  double ip = 0.5;           // hartree
  double charge = 1.0;       // Q
  double quadrupole = 0.0;   // <R_2> in the asymptotic form <R_2>/r^3

  void validate() const;
  double kappa() const;
};

class ChannelPair {
 public:
  /// lower is the J = L + 1/2 ground state of the ion, upper the spin-orbit
  /// partner; upper.ip must exceed lower.ip.
  ChannelPair(ChannelSpec lower, ChannelSpec upper);

  const ChannelSpec& lower() const { return lower_; }
  const ChannelSpec& upper() const { return upper_; }
  double splitting() const { return splitting_; }
  double mean_ip() const { return 0.5 * (lower_.ip + upper_.ip); }

 private:
  ChannelSpec lower_;
  ChannelSpec upper_;
  double splitting_;
};

/// Krypton 4p^-1 pair: P_{3/2} (Ip 0.5145) and P_{1/2} (Ip + 0.02444), <R_2> = 4.444.
ChannelPair krypton_pair(int mj_twice = 1);

/// Source of the multipole radial functions R_{2L'}(r).
class Multipoles {
 public:
  /// R_{2L'}(r) = m[L'] / r^(2L'+1); m[0] is the core charge.
  static Multipoles asymptotic(std::map<int, double> moments);
  static Multipoles asymptotic(const ChannelSpec& ch);
  /// R_{2L'}(r) from the STO density; the monopole is scaled by the charge.
  static Multipoles orbital(StoOrbital orbital, double charge = 1.0);

  double value(int lprime, double r) const;
  bool is_asymptotic() const { return std::holds_alternative<std::map<int, double>>(source_); }
  double constant(int lprime) const;

 private:
  struct Orbital {
    StoOrbital orbital;
    double charge;
  };
  explicit Multipoles(std::variant<std::map<int, double>, Orbital> s) : source_(std::move(s)) {}
  std::variant<std::map<int, double>, Orbital> source_;
};

/// Angular weight of the L' multipole in V_{L J M_J}:
/// (2L+1) sum_{M_L,M_S} (-1)^M_L |C|^2 (L 2L' L; M_L 0 -M_L)(L 2L' L; 0 0 0).
double multipole_coefficient(const ChannelSpec& ch, int lprime);

/// V_{L J M_J}(r, theta) = sum_{L'=0}^{L} coefficient(L') P_{2L'}(cos theta) R_{2L'}(r).
double channel_potential(const ChannelSpec& ch, const Multipoles& m, double r, double theta);
/// Only the L' term of channel_potential.
double channel_potential_term(const ChannelSpec& ch, const Multipoles& m, int lprime, double r, double theta);

/// Same potential from the sum over all M_L, M_L', M_S and M_{2L'} with the
/// spherical harmonics Y*_{2L' M}(theta, phi), before M_{2L'} = 0 is imposed.
double channel_potential_unrestricted(const ChannelSpec& ch, const Multipoles& m, double r, double theta,
                                      double phi);

/// V_{1,3/2,M_J} - V_{1,1/2,M_J} = (1/5) P_2(cos theta) R_2(r), |M_J| = 1/2.
/// Requires a p-shell pair with equal <R_2>; throws std::invalid_argument otherwise.
double potential_difference(const ChannelPair& pair, double r, double theta);
double potential_difference(const ChannelPair& pair, const Multipoles& m, double r, double theta);
/// In-plane (theta = pi/2) asymptotic form at complex radius, used on complex trajectories.
std::complex<double> potential_difference_inplane(const ChannelPair& pair, std::complex<double> r);

// --- file formats -----------------------------------------------------------

/// Text table, one `c kappa n` record per line, '#' starts a comment.
std::vector<StoTerm> parse_sto_table(std::istream& in);
std::vector<StoTerm> load_sto_table(const std::string& path);

/// {L, J2, MJ2, Ip_hartree, Q, R2_au}
ChannelSpec channel_from_json(const nlohmann::json& j);
nlohmann::json channel_to_json(const ChannelSpec& ch);
/// {"lower": {...}, "upper": {...}}
ChannelPair channel_pair_from_json(const nlohmann::json& j);
ChannelPair load_channel_pair(const std::string& path);

}  // namespace larmor::atomic
