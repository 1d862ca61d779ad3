#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rgpert/perturb.hpp"

namespace rgpert {

/// Autonomous vector field d(cA_k)/dt = field[k]. The polynomials live in
/// the table context; their amplitude symbols are read as the renormalized
/// amplitudes (rendered cA1, ...).
struct RGSystem {
	ODESystemSpec spec;
	ContextPtr ctx;
	std::vector<MultiPoly> field;

	/// One "d<sym>/dt = <poly>" line per amplitude.
	std::string render() const;
};

/// Secular coefficients at t = 0, amplitudes read as renormalized.
struct RenExpansion {
	ODESystemSpec spec;
	ContextPtr ctx;
	std::vector<HarmonicSeries> components;
};

/// cA_k(eps, t, A) for every amplitude.
std::vector<MultiPoly> renormalized_amplitudes(const SecularTable& table);
RGSystem derive_rg(const SecularTable& table);
RenExpansion renormalized_expansion(const SecularTable& table);
/// A_k(eps, t, cA): the defining coefficient at -t.
std::vector<MultiPoly> invert_amplitudes(const SecularTable& table);

/// The derivation f -> sum_k field_k df/dcA_k.
Derivation rg_derivation(const RGSystem& rg);

// ---- polar form ---------------------------------------------------------

/// (plus, minus) amplitude indices, 0-based.
using PolarPairs = std::vector<std::pair<std::size_t, std::size_t>>;

class PolarPairingError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// c * eps^e * prod R_p^{r_p} * params * (cos|sin)(angle . (t, theta_1..)).
/// The first nonzero angle entry is positive; sin terms never have a zero
/// angle.
struct TrigKey {
	int eps = 0;
	std::vector<int> R;
	std::vector<int> params;
	bool is_sin = false;
	std::vector<int> angle;
	auto operator<=>(const TrigKey&) const = default;
};

class TrigPoly {
public:
	TrigPoly() = default;
	TrigPoly(std::size_t n_pairs, std::size_t n_params) : n_pairs_(n_pairs), n_params_(n_params) {}

	/// Adds c*eps^e*R^r*p^q*cos(angle) (or sin), normalizing the sign of
	/// the angle.
	void add(int eps, std::vector<int> R, std::vector<int> params, bool is_sin, std::vector<int> angle,
	         const Rational& c);
	const std::map<TrigKey, Rational>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	std::size_t pair_count() const { return n_pairs_; }
	std::size_t param_count() const { return n_params_; }
	TrigPoly truncated(int max_eps) const;

	friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.terms_ == b.terms_; }
	TrigPoly& operator-=(const TrigPoly& o);

	double evaluate(double eps, const std::vector<double>& R, const std::vector<double>& theta,
	                const std::vector<double>& params, double t = 0) const;

	/// R, theta names; the angle entry for t uses "t".
	std::string str(const std::vector<std::string>& R_names, const std::vector<std::string>& theta_names,
	                const std::vector<std::string>& param_names) const;

private:
	std::size_t n_pairs_ = 0;
	std::size_t n_params_ = 0;
	std::map<TrigKey, Rational> terms_;
};

struct PolarSystem {
	PolarPairs pairs;
	std::vector<std::string> param_names;
	std::vector<TrigPoly> dR;
	std::vector<TrigPoly> dtheta;

	std::vector<std::string> R_names() const;
	std::vector<std::string> theta_names() const;
	std::string render() const;
};

/// Parse "1:2,3:4" (1-based) into pairs.
PolarPairs parse_polar_pairs(const std::string& text, std::size_t amplitude_count);

/// Throws PolarPairingError when the pairing symmetry fails or the pairs
/// do not cover every amplitude exactly once.
void check_polar_pairing(const RGSystem& rg, const PolarPairs& pairs);

PolarSystem polar_transform(const RGSystem& rg, const PolarPairs& pairs);

/// Real and imaginary parts of sum_m s_m(cA -> R e^{+-i theta}) e^{imt} e^{i extra.theta}.
std::pair<TrigPoly, TrigPoly> polar_parts(const HarmonicSeries& s, const PolarPairs& pairs,
                                          const std::vector<int>& extra_angle = {});

} // namespace rgpert
