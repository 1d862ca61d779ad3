#include "rgpert/perturb.hpp"

#include <set>
#include <stdexcept>

namespace rgpert {

namespace {

MultiPoly eps_var(const ContextPtr& ctx)
{
	return MultiPoly::variable(ctx, PolyContext::eps);
}

MultiPoly t_power_over_factorial(const ContextPtr& ctx, unsigned k)
{
	Rational f = 1;
	for (unsigned j = 2; j <= k; ++j)
		f *= j;
	return MultiPoly::variable(ctx, PolyContext::time, k) * GaussianRational(Rational(1) / f);
}

/// (d/dt + i m)^q applied to p.
MultiPoly shifted_derivative(const MultiPoly& p, int m, int q, const Derivation& D)
{
	MultiPoly r = p;
	for (int k = 0; k < q; ++k)
		r = D(r) + r * GaussianRational(0, m);
	return r;
}

std::set<int> harmonic_union(const std::vector<HarmonicSeries>& series)
{
	std::set<int> out;
	for (const auto& s : series)
		for (const auto& [m, p] : s.entries())
			out.insert(m);
	return out;
}

void check_class(const ODESystemSpec& spec, SpecClass cls)
{
	if (spec.cls != cls)
		throw std::invalid_argument("expected a " + to_string(cls) + " spec, got " + to_string(spec.cls));
}

SecularTable initial_table(const ODESystemSpec& spec)
{
	SecularTable table;
	table.spec = spec;
	table.ctx = table_context(spec);
	const auto& ctx = table.ctx;
	const std::size_t n = spec.dimension();
	table.components.assign(n, HarmonicSeries(ctx));
	auto A = [&](std::size_t k) { return MultiPoly::variable(ctx, ctx->amplitude(k)); };

	switch (spec.cls) {
	case SpecClass::semisimple:
		for (std::size_t j = 0; j < n; ++j)
			table.components[j].set(spec.frequencies[j], A(j));
		break;
	case SpecClass::nilpotent: {
		MultiPoly g(ctx);
		for (std::size_t k = 0; k < n; ++k)
			g += A(k) * t_power_over_factorial(ctx, static_cast<unsigned>(k));
		for (std::size_t j = 0; j < n; ++j, g = g.diff_t())
			table.components[j].set(spec.nil_m, g);
		break;
	}
	case SpecClass::scalar: {
		std::size_t base = 0;
		for (const auto& f : spec.factors) {
			MultiPoly h(ctx);
			for (int j = 0; j < f.n; ++j)
				h += A(base + static_cast<std::size_t>(j)) * t_power_over_factorial(ctx, static_cast<unsigned>(j));
			base += static_cast<std::size_t>(f.n);
			for (std::size_t q = 0; q < n; ++q)
				table.components[q].add(f.m, shifted_derivative(h, f.m, static_cast<int>(q),
				                                                [](const MultiPoly& p) { return p.diff_t(); }));
		}
		break;
	}
	case SpecClass::difference:
		throw std::invalid_argument("the difference class has its own engine");
	}
	return table;
}

SecularTable run_engine(const ODESystemSpec& spec)
{
	SecularTable table = initial_table(spec);
	const auto& ctx = table.ctx;
	const MultiPoly eps = eps_var(ctx);
	const Derivation dt = [](const MultiPoly& p) { return p.diff_t(); };
	for (int k = 1; k <= spec.order; ++k) {
		auto V = evaluate_forcing(spec, ctx, table.components, k - 1);
		std::vector<HarmonicSeries> R;
		for (const auto& v : V)
			R.push_back(v.eps_part(k - 1).scaled(eps));
		for (int m : harmonic_union(R)) {
			std::vector<MultiPoly> rhs;
			for (const auto& r : R)
				rhs.push_back(r.at(m));
			auto sol = solve_linear_step(spec, m, rhs);
			if (spec.cls == SpecClass::scalar) {
				for (std::size_t q = 0; q < table.components.size(); ++q)
					table.components[q].add(m, shifted_derivative(sol[0], m, static_cast<int>(q), dt));
			} else {
				for (std::size_t j = 0; j < sol.size(); ++j)
					table.components[j].add(m, sol[j]);
			}
		}
	}
	table.refresh_metadata();
	return table;
}

} // namespace

MultiPoly SecularTable::amplitude_coefficient(std::size_t k) const
{
	switch (spec.cls) {
	case SpecClass::semisimple:
		return components.at(k).at(spec.frequencies.at(k));
	case SpecClass::nilpotent:
		return components.at(k).at(spec.nil_m);
	case SpecClass::scalar: {
		auto [r, j] = spec.scalar_slot(k);
		MultiPoly p = components.at(0).at(spec.factors[r].m);
		for (std::size_t q = 0; q < j; ++q)
			p = p.diff_t();
		return p;
	}
	case SpecClass::difference:
		break;
	}
	throw std::logic_error("amplitude_coefficient: not defined for the difference class");
}

bool SecularTable::is_resonant(std::size_t component, int m) const
{
	for (const auto& [j, h] : resonant)
		if (j == component && h == m)
			return true;
	return false;
}

void SecularTable::refresh_metadata()
{
	resonant.clear();
	switch (spec.cls) {
	case SpecClass::semisimple:
		for (std::size_t j = 0; j < spec.frequencies.size(); ++j)
			resonant.emplace_back(j, spec.frequencies[j]);
		break;
	case SpecClass::nilpotent:
		for (std::size_t j = 0; j < spec.dimension(); ++j)
			resonant.emplace_back(j, spec.nil_m);
		break;
	case SpecClass::scalar:
		for (const auto& f : spec.factors)
			resonant.emplace_back(0, f.m);
		break;
	case SpecClass::difference:
		break;
	}
	min_order.clear();
	for (std::size_t j = 0; j < components.size(); ++j)
		for (const auto& [m, p] : components[j].entries())
			min_order[{j, m}] = p.min_degree(PolyContext::eps);
}

ContextPtr table_context(const ODESystemSpec& spec)
{
	return make_context(spec.amplitude_names, spec.params, spec.order);
}

SecularTable expand_semisimple(const ODESystemSpec& spec)
{
	check_class(spec, SpecClass::semisimple);
	return run_engine(spec);
}

SecularTable expand_nilpotent(const ODESystemSpec& spec)
{
	check_class(spec, SpecClass::nilpotent);
	return run_engine(spec);
}

SecularTable expand_scalar(const ODESystemSpec& spec)
{
	check_class(spec, SpecClass::scalar);
	return run_engine(spec);
}

SecularTable expand(const ODESystemSpec& spec)
{
	switch (spec.cls) {
	case SpecClass::semisimple:
		return expand_semisimple(spec);
	case SpecClass::nilpotent:
		return expand_nilpotent(spec);
	case SpecClass::scalar:
		return expand_scalar(spec);
	case SpecClass::difference:
		break;
	}
	throw std::invalid_argument("expand: the difference class has its own engine");
}

std::vector<MultiPoly> solve_linear_step(const ODESystemSpec& spec, int m, const std::vector<MultiPoly>& R)
{
	auto solve = [](const GaussianRational& c, const MultiPoly& rhs) {
		return c.is_zero() ? rhs.antidiff_t() : resolve_shift(c, rhs);
	};
	switch (spec.cls) {
	case SpecClass::semisimple: {
		if (R.size() != spec.frequencies.size())
			throw std::invalid_argument("solve_linear_step: wrong number of components");
		std::vector<MultiPoly> out;
		for (std::size_t j = 0; j < R.size(); ++j)
			out.push_back(solve(GaussianRational(0, m - spec.frequencies[j]), R[j]));
		return out;
	}
	case SpecClass::nilpotent: {
		if (R.size() != spec.dimension())
			throw std::invalid_argument("solve_linear_step: wrong number of components");
		const GaussianRational c(0, m - spec.nil_m);
		std::vector<MultiPoly> out(R.size(), MultiPoly(R.front().context()));
		for (std::size_t j = R.size(); j-- > 0;) {
			MultiPoly rhs = R[j];
			if (j + 1 < R.size())
				rhs += out[j + 1];
			out[j] = solve(c, rhs);
		}
		return out;
	}
	case SpecClass::scalar: {
		if (R.size() != 1)
			throw std::invalid_argument("solve_linear_step: the scalar class takes one right-hand side");
		MultiPoly p = R[0];
		int resonant_n = 0;
		for (const auto& f : spec.factors) {
			if (f.m == m) {
				resonant_n = f.n;
				continue;
			}
			for (int k = 0; k < f.n; ++k)
				p = resolve_shift(GaussianRational(0, m - f.m), p);
		}
		for (int k = 0; k < resonant_n; ++k)
			p = p.antidiff_t();
		return {p};
	}
	case SpecClass::difference:
		break;
	}
	throw std::invalid_argument("solve_linear_step: unsupported class");
}

std::vector<HarmonicSeries> evaluate_forcing(const ODESystemSpec& spec, const ContextPtr& ctx,
                                             const std::vector<HarmonicSeries>& comps, int max_eps)
{
	const int cap = max_eps < 0 ? ctx->eps_order() : std::min(max_eps, ctx->eps_order());
	auto vctx = state_context(spec);
	auto V = expand_forcing(spec, vctx);
	const std::size_t n = comps.size();
	if (n != vctx->amplitude_count())
		throw std::invalid_argument("evaluate_forcing: wrong number of state series");
	if (ctx->param_count() != vctx->param_count())
		throw std::invalid_argument("evaluate_forcing: parameter mismatch");

	std::vector<std::vector<HarmonicSeries>> powers(n);
	auto power = [&](std::size_t k, unsigned e) -> const HarmonicSeries& {
		auto& cache = powers[k];
		if (cache.empty())
			cache.push_back(HarmonicSeries::single(0, MultiPoly::constant(ctx, 1)));
		while (cache.size() <= e)
			cache.push_back(hs_mul(cache.back(), comps[k], cap));
		return cache[e];
	};
	std::map<std::vector<unsigned>, HarmonicSeries> products;
	auto product = [&](const std::vector<unsigned>& exps) -> const HarmonicSeries& {
		auto it = products.find(exps);
		if (it != products.end())
			return it->second;
		HarmonicSeries r = HarmonicSeries::single(0, MultiPoly::constant(ctx, 1));
		for (std::size_t k = 0; k < n; ++k)
			if (exps[k])
				r = hs_mul(r, power(k, exps[k]), cap);
		return products.emplace(exps, std::move(r)).first->second;
	};

	std::vector<HarmonicSeries> out;
	for (const auto& v : V) {
		HarmonicSeries acc(ctx);
		for (const auto& [h, poly] : v.entries()) {
			for (const auto& [e, c] : poly.terms()) {
				if (e[PolyContext::eps] > cap)
					continue;
				std::vector<unsigned> exps(n);
				for (std::size_t k = 0; k < n; ++k)
					exps[k] = e[vctx->amplitude(k)];
				Exponents x(ctx->size(), 0);
				x[PolyContext::eps] = e[PolyContext::eps];
				for (std::size_t k = 0; k < ctx->param_count(); ++k)
					x[ctx->param(k)] = e[vctx->param(k)];
				MultiPoly coeff = MultiPoly::monomial(ctx, x, c);
				acc += product(exps).scaled(coeff, cap).shifted(h);
			}
		}
		out.push_back(std::move(acc));
	}
	return out;
}

std::vector<HarmonicSeries> governing_residual(const ODESystemSpec& spec, const ContextPtr& ctx,
                                               const std::vector<HarmonicSeries>& comps, const Derivation& D)
{
	const MultiPoly eps = eps_var(ctx);
	std::vector<HarmonicSeries> forcing;
	for (const auto& v : evaluate_forcing(spec, ctx, comps))
		forcing.push_back(v.scaled(eps));
	const std::size_t n = comps.size();
	std::vector<HarmonicSeries> out(n, HarmonicSeries(ctx));
	const auto harmonics = harmonic_union(comps);
	std::set<int> all = harmonics;
	for (int m : harmonic_union(forcing))
		all.insert(m);

	switch (spec.cls) {
	case SpecClass::semisimple:
		for (std::size_t j = 0; j < n; ++j)
			for (int m : all) {
				MultiPoly q = comps[j].at(m);
				out[j].add(m, D(q) + q * GaussianRational(0, m - spec.frequencies[j]) - forcing[j].at(m));
			}
		break;
	case SpecClass::nilpotent:
		for (std::size_t j = 0; j < n; ++j)
			for (int m : all) {
				MultiPoly q = comps[j].at(m);
				MultiPoly r = D(q) + q * GaussianRational(0, m - spec.nil_m) - forcing[j].at(m);
				if (j + 1 < n)
					r -= comps[j + 1].at(m);
				out[j].add(m, r);
			}
		break;
	case SpecClass::scalar:
		for (int m : all) {
			for (std::size_t q = 0; q + 1 < n; ++q)
				out[q].add(m, shifted_derivative(comps[q].at(m), m, 1, D) - comps[q + 1].at(m));
			MultiPoly lhs = comps[0].at(m);
			for (const auto& f : spec.factors)
				lhs = shifted_derivative(lhs, m - f.m, f.n, D);
			out[n - 1].add(m, lhs - forcing[0].at(m));
		}
		break;
	case SpecClass::difference:
		throw std::invalid_argument("governing_residual: the difference class has its own checks");
	}
	return out;
}

} // namespace rgpert
