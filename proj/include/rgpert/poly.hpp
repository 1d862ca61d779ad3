#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "rgpert/gaussian_rational.hpp"

namespace rgpert {

/// Ordered indeterminates of a polynomial ring: eps, time, shift, then the
/// amplitude symbols, then the parameters. eps is truncated at eps_order
/// (eps^(K+1) == 0); parameters are never truncated.
class PolyContext {
public:
	static constexpr std::size_t eps = 0;
	static constexpr std::size_t time = 1;
	static constexpr std::size_t shift = 2;

	PolyContext(std::vector<std::string> amplitudes, std::vector<std::string> params, int eps_order,
	            std::string time_name = "t", std::string shift_name = "s");

	std::size_t size() const { return names_.size(); }
	std::size_t amplitude_count() const { return n_amp_; }
	std::size_t param_count() const { return names_.size() - 3 - n_amp_; }
	std::size_t amplitude(std::size_t k) const { return 3 + k; }
	std::size_t param(std::size_t k) const { return 3 + n_amp_ + k; }
	bool is_amplitude(std::size_t var) const { return var >= 3 && var < 3 + n_amp_; }
	bool is_param(std::size_t var) const { return var >= 3 + n_amp_; }

	int eps_order() const { return eps_order_; }
	const std::string& name(std::size_t var) const { return names_.at(var); }
	const std::vector<std::string>& names() const { return names_; }
	std::vector<std::string> amplitude_names() const;
	std::vector<std::string> param_names() const;
	std::optional<std::size_t> find(std::string_view name) const;

	/// Names with every amplitude symbol X replaced by cX; used when a
	/// polynomial is read in renormalized amplitudes.
	std::vector<std::string> renormalized_names() const;

	friend bool operator==(const PolyContext& a, const PolyContext& b)
	{
		return a.eps_order_ == b.eps_order_ && a.n_amp_ == b.n_amp_ && a.names_ == b.names_;
	}

private:
	std::vector<std::string> names_;
	std::size_t n_amp_;
	int eps_order_;
};

using ContextPtr = std::shared_ptr<const PolyContext>;

ContextPtr make_context(std::vector<std::string> amplitudes, std::vector<std::string> params, int eps_order,
                        std::string time_name = "t", std::string shift_name = "s");

bool same_context(const ContextPtr& a, const ContextPtr& b);

using Exponents = boost::container::small_vector<std::uint16_t, 14>;

/// Graded lexicographic order with eps first: eps exponent, then total
/// degree of the remaining variables, then lexicographic (earlier variable
/// with larger exponent first).
struct MonomialOrder {
	bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial over Q(i) with eps-truncation. Stored terms are never
/// zero and never exceed the context's eps order.
class MultiPoly {
public:
	using TermMap = std::map<Exponents, GaussianRational, MonomialOrder>;

	explicit MultiPoly(ContextPtr ctx);

	static MultiPoly constant(ContextPtr ctx, const GaussianRational& c);
	static MultiPoly variable(ContextPtr ctx, std::size_t var, unsigned power = 1);
	static MultiPoly monomial(ContextPtr ctx, Exponents exps, const GaussianRational& c);

	const ContextPtr& context() const { return ctx_; }
	const TermMap& terms() const { return terms_; }
	std::size_t size() const { return terms_.size(); }
	bool is_zero() const { return terms_.empty(); }
	bool is_constant() const;
	/// Coefficient of the empty monomial.
	GaussianRational constant_term() const;
	GaussianRational coefficient_of(const Exponents& exps) const;

	/// Adds c * monomial; drops it when it exceeds the truncation order.
	void add_term(const Exponents& exps, const GaussianRational& c);

	MultiPoly& operator+=(const MultiPoly& o);
	MultiPoly& operator-=(const MultiPoly& o);
	MultiPoly& operator*=(const MultiPoly& o) { return *this = mul(*this, o); }
	MultiPoly& operator*=(const GaussianRational& c);
	MultiPoly operator-() const;

	friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
	friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
	friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return mul(a, b); }
	friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
	friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
	friend bool operator==(const MultiPoly& a, const MultiPoly& b);
	friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

	/// Product truncated at eps^max_eps (defaults to the context order).
	static MultiPoly mul(const MultiPoly& a, const MultiPoly& b, int max_eps = -1);
	MultiPoly pow(unsigned n) const;

	int degree(std::size_t var) const;
	/// Smallest exponent of var among the terms; -1 for the zero polynomial.
	int min_degree(std::size_t var) const;

	/// Terms with var^power, with var removed.
	MultiPoly coefficient(std::size_t var, unsigned power) const;
	/// The eps^k part, eps kept.
	MultiPoly eps_part(int k) const;
	MultiPoly truncated(int max_eps) const;

	MultiPoly diff(std::size_t var) const;
	/// Antiderivative with zero constant term.
	MultiPoly antidiff(std::size_t var) const;
	MultiPoly diff_t() const { return diff(PolyContext::time); }
	MultiPoly antidiff_t() const { return antidiff(PolyContext::time); }

	/// Simultaneous substitution var -> image, expanded and truncated.
	MultiPoly substitute(const std::vector<std::pair<std::size_t, MultiPoly>>& bindings) const;

	/// Reinterpret in another context of the same shape (names may differ).
	MultiPoly with_context(ContextPtr ctx) const;

	/// Swap two variables.
	MultiPoly swap_variables(std::size_t a, std::size_t b) const;
	/// Complex-conjugate every coefficient.
	MultiPoly conj() const;

	/// Numeric value with one complex value per context variable.
	std::complex<double> evaluate(std::span<const std::complex<double>> values) const;

	std::string str() const;
	std::string str(const std::vector<std::string>& names) const;

private:
	void check_context(const MultiPoly& o) const;

	ContextPtr ctx_;
	TermMap terms_;
};

/// The unique polynomial P with dP/dt + c*P = rhs (c != 0), computed as
/// P = (1/c) * sum_k (-1/c)^k d^k rhs/dt^k. Throws std::domain_error for c == 0.
MultiPoly resolve_shift(const GaussianRational& c, const MultiPoly& rhs);

/// Numeric evaluation by symbol name; every variable that occurs must be
/// bound (eps and t are given separately). Throws std::invalid_argument
/// for an unbound symbol.
std::complex<double> eval_complex(const MultiPoly& p, const std::map<std::string, std::complex<double>>& point,
                                  double eps, double t);

/// Variable bindings for substitute(): image of each amplitude symbol.
std::vector<std::pair<std::size_t, MultiPoly>> amplitude_bindings(const ContextPtr& ctx,
                                                                  const std::vector<MultiPoly>& images);

} // namespace rgpert
