#include "rgpert/harmonic_series.hpp"

#include <stdexcept>

namespace rgpert {

HarmonicSeries::HarmonicSeries(ContextPtr ctx) : ctx_(std::move(ctx))
{
	if (!ctx_)
		throw std::invalid_argument("null series context");
}

HarmonicSeries HarmonicSeries::single(int m, MultiPoly p)
{
	HarmonicSeries s(p.context());
	s.set(m, std::move(p));
	return s;
}

MultiPoly HarmonicSeries::at(int m) const
{
	auto it = entries_.find(m);
	return it == entries_.end() ? MultiPoly(ctx_) : it->second;
}

void HarmonicSeries::add(int m, const MultiPoly& p)
{
	if (!same_context(ctx_, p.context()))
		throw std::invalid_argument("series context mismatch");
	if (p.is_zero())
		return;
	auto it = entries_.find(m);
	if (it == entries_.end()) {
		entries_.emplace(m, p);
		return;
	}
	it->second += p;
	if (it->second.is_zero())
		entries_.erase(it);
}

void HarmonicSeries::set(int m, MultiPoly p)
{
	if (!same_context(ctx_, p.context()))
		throw std::invalid_argument("series context mismatch");
	if (p.is_zero())
		entries_.erase(m);
	else
		entries_.insert_or_assign(m, std::move(p));
}

HarmonicSeries& HarmonicSeries::operator+=(const HarmonicSeries& o)
{
	for (const auto& [m, p] : o.entries_)
		add(m, p);
	return *this;
}

HarmonicSeries& HarmonicSeries::operator-=(const HarmonicSeries& o)
{
	for (const auto& [m, p] : o.entries_)
		add(m, -p);
	return *this;
}

HarmonicSeries& HarmonicSeries::operator*=(const GaussianRational& c)
{
	if (c.is_zero())
		entries_.clear();
	for (auto& [m, p] : entries_)
		p *= c;
	return *this;
}

HarmonicSeries HarmonicSeries::scaled(const MultiPoly& q, int max_eps) const
{
	HarmonicSeries r(ctx_);
	for (const auto& [m, p] : entries_)
		r.set(m, MultiPoly::mul(p, q, max_eps));
	return r;
}

HarmonicSeries HarmonicSeries::shifted(int d) const
{
	HarmonicSeries r(ctx_);
	for (const auto& [m, p] : entries_)
		r.entries_.emplace(m + d, p);
	return r;
}

HarmonicSeries HarmonicSeries::map(const std::function<MultiPoly(int, const MultiPoly&)>& f) const
{
	HarmonicSeries r(ctx_);
	for (const auto& [m, p] : entries_)
		r.set(m, f(m, p));
	return r;
}

HarmonicSeries HarmonicSeries::eps_part(int k) const
{
	return map([k](int, const MultiPoly& p) { return p.eps_part(k); });
}

HarmonicSeries HarmonicSeries::truncated(int max_eps) const
{
	return map([max_eps](int, const MultiPoly& p) { return p.truncated(max_eps); });
}

HarmonicSeries HarmonicSeries::diff_t() const
{
	return map([](int m, const MultiPoly& p) { return p.diff_t() + p * GaussianRational(0, m); });
}

int HarmonicSeries::min_order(int m) const
{
	auto it = entries_.find(m);
	return it == entries_.end() ? -1 : it->second.min_degree(PolyContext::eps);
}

std::string HarmonicSeries::str(const std::string& basis) const
{
	if (entries_.empty())
		return "0";
	std::string out;
	for (const auto& [m, p] : entries_) {
		if (!out.empty())
			out += " + ";
		out += "(" + p.str() + ")";
		if (m != 0)
			out += "*" + basis + "^" + std::to_string(m);
	}
	return out;
}

HarmonicSeries hs_mul(const HarmonicSeries& x, const HarmonicSeries& y, int max_eps)
{
	if (!same_context(x.context(), y.context()))
		throw std::invalid_argument("series context mismatch");
	HarmonicSeries r(x.context());
	for (const auto& [mx, px] : x.entries())
		for (const auto& [my, py] : y.entries())
			r.add(mx + my, MultiPoly::mul(px, py, max_eps));
	return r;
}

} // namespace rgpert
