#pragma once

#include <functional>
#include <map>
#include <string>

#include "rgpert/poly.hpp"

namespace rgpert {

/// Finite sum sum_m P_m * e^{imt}. Entries are never the zero polynomial.
/// The same type holds Laurent polynomials in any formal variable z when
/// the caller reads m as the z-exponent.
class HarmonicSeries {
public:
	using EntryMap = std::map<int, MultiPoly>;

	explicit HarmonicSeries(ContextPtr ctx);
	static HarmonicSeries single(int m, MultiPoly p);

	const ContextPtr& context() const { return ctx_; }
	const EntryMap& entries() const { return entries_; }
	bool is_zero() const { return entries_.empty(); }
	std::size_t size() const { return entries_.size(); }

	/// Coefficient of e^{imt}; zero polynomial when absent.
	MultiPoly at(int m) const;
	void add(int m, const MultiPoly& p);
	void set(int m, MultiPoly p);

	HarmonicSeries& operator+=(const HarmonicSeries& o);
	HarmonicSeries& operator-=(const HarmonicSeries& o);
	HarmonicSeries& operator*=(const GaussianRational& c);
	friend HarmonicSeries operator+(HarmonicSeries a, const HarmonicSeries& b) { return a += b; }
	friend HarmonicSeries operator-(HarmonicSeries a, const HarmonicSeries& b) { return a -= b; }
	friend HarmonicSeries operator*(HarmonicSeries a, const GaussianRational& c) { return a *= c; }
	friend bool operator==(const HarmonicSeries& a, const HarmonicSeries& b) { return a.entries_ == b.entries_; }

	/// Every entry multiplied by p.
	HarmonicSeries scaled(const MultiPoly& p, int max_eps = -1) const;
	/// m -> m + d.
	HarmonicSeries shifted(int d) const;
	/// Apply f to each entry (zero results dropped).
	HarmonicSeries map(const std::function<MultiPoly(int, const MultiPoly&)>& f) const;

	HarmonicSeries eps_part(int k) const;
	HarmonicSeries truncated(int max_eps) const;

	/// d/dt of sum_m P_m e^{imt}: entries (dP_m/dt + i m P_m).
	HarmonicSeries diff_t() const;

	/// Smallest eps exponent in entry m; -1 when the entry is empty.
	int min_order(int m) const;

	std::string str(const std::string& basis = "E") const;

private:
	ContextPtr ctx_;
	EntryMap entries_;
};

/// Convolution over harmonic indices, truncated at eps^max_eps.
HarmonicSeries hs_mul(const HarmonicSeries& x, const HarmonicSeries& y, int max_eps = -1);

} // namespace rgpert
