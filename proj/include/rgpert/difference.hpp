#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgpert/verify.hpp"

namespace rgpert {

/// Finite Laurent polynomial sum_l c_l z^l over Q(i). Zero coefficients are
/// never stored.
class LaurentPoly {
public:
	LaurentPoly() = default;
	explicit LaurentPoly(const std::vector<std::pair<int, GaussianRational>>& coeffs);

	const std::map<int, GaussianRational>& coeffs() const { return c_; }
	GaussianRational at(int l) const;
	void add(int l, const GaussianRational& v);
	bool is_zero() const { return c_.empty(); }
	/// U(z) == U(-z): no odd powers.
	bool is_even() const;
	/// max |l| over the support; 0 for the zero polynomial.
	int reach() const;

	/// z -> -z
	LaurentPoly reflected() const;
	/// z -> 1/z
	LaurentPoly inverted() const;
	LaurentPoly& operator*=(const GaussianRational& c);

	friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
	friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
	friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
	LaurentPoly pow(unsigned n) const;

	std::complex<double> evaluate(std::complex<double> z) const;
	std::string str(const std::string& var = "z") const;

private:
	std::map<int, GaussianRational> c_;
};

/// g_0..g_K as dense coefficient vectors in u (index = power), and the
/// constants N_0..N_{floor(K/2)}.
struct GkTable {
	std::vector<std::vector<Rational>> g;
	std::vector<Rational> N;
};

/// Solves g_k(u+1) - g_k(u-1) = g_{k-1}(u), g_0 = 1, g_k(0) = 0.
GkTable gk_poly(int K);
/// u/(2 k!) * prod_{i=0}^{k-2} ((u-k)/2 + 1 + i): the Gamma-ratio form.
std::vector<Rational> gk_closed_form(int k);
/// binom(2k,k) / (4^k (2k+1)).
Rational n_const(int k);
Rational eval_upoly(const std::vector<Rational>& p, const Rational& u);

/// h_k(z) = prod_{i=1}^k 2U((-1)^{i-1}/z); C_{k,j} is its z^j coefficient.
LaurentPoly ckj_coeffs(const LaurentPoly& two_u, int k);

class WindowError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// 2U, truncation order and window, with the context of the window
/// amplitudes. Time is measured as u = t/pi (rendered "u").
struct DifferenceProblem {
	std::string name;
	LaurentPoly two_u;
	int order = 0;
	int window = 0;
	ContextPtr ctx;

	/// Variable index of A_m; throws WindowError outside the window.
	std::size_t amplitude_var(int m) const;
	/// Largest |m| whose truncated coefficient sees every contributing A.
	int reliable_radius() const { return window - order * two_u.reach(); }
};

DifferenceProblem difference_problem(const LaurentPoly& two_u, int K, int W, std::string name = "difference");
DifferenceProblem difference_problem(const ODESystemSpec& spec);

/// P_m(eps, u, A) = sum_j A_{m+j} sum_k eps^k (-1)^{mk} g_k(u) C_{k,j}.
/// Throws WindowError when |m| + K*reach(U) > W.
MultiPoly secular_pm(const DifferenceProblem& prob, int m);

/// Theta(eps, z) = sum_k (-1)^k N_k (eps U(z))^{2k+1}, held as a series
/// over z-exponents with eps-polynomial entries.
struct ThetaSeries {
	HarmonicSeries series;
};
ThetaSeries theta_series(const DifferenceProblem& prob);
/// sinh(Theta) as the same kind of series; equals eps*U(z) mod eps^{K+1}.
HarmonicSeries theta_sinh(const DifferenceProblem& prob, const ThetaSeries& theta);

/// Resummed amplitude sum_j A_{m+j} [z^j] exp((-1)^m Theta(eps, 1/z) u).
/// Throws std::invalid_argument for odd U and WindowError as secular_pm.
MultiPoly closed_form_amplitude(const DifferenceProblem& prob, int m);

/// Functional relation, difference equation for Y, and the generating
/// series derivative. The last is not applicable for odd U.
std::vector<CheckReport> check_difference_identities(const DifferenceProblem& prob);

/// How U behaves on the unit circle (sampled). sinh Theta = eps U, so
/// Theta(eps, e^{it}) is purely imaginary exactly when eps U(e^{it}) is
/// imaginary with modulus at most 1.
struct StabilityInfo {
	enum class Phase { zero, real, imaginary, mixed };
	double max_abs_u = 0;
	Phase phase = Phase::zero;
	std::string describe() const;
};
StabilityInfo stability_info(const LaurentPoly& two_u);

/// "cA_m = ..." lines for |m| <= reliable_radius().
std::string render_amplitudes(const DifferenceProblem& prob);

} // namespace rgpert
