#include "rgpert/verify.hpp"

#include <random>
#include <set>

namespace rgpert {

namespace {

std::string status_word(CheckStatus s)
{
	switch (s) {
	case CheckStatus::pass:
		return "PASS";
	case CheckStatus::fail:
		return "FAIL";
	case CheckStatus::not_applicable:
		return "N/A";
	}
	return "?";
}

std::string monomial_str(const ContextPtr& ctx, const Exponents& e)
{
	return MultiPoly::monomial(ctx, e, 1).str();
}

CheckReport make_report(const std::string& check, const ODESystemSpec& spec)
{
	CheckReport r;
	r.check = check;
	r.spec_id = spec.name.empty() ? to_string(spec.cls) : spec.name;
	r.order = spec.order;
	return r;
}

CheckReport compare(CheckReport r, const std::vector<HarmonicSeries>& lhs, const std::vector<HarmonicSeries>& rhs)
{
	r.mismatch = first_mismatch(lhs, rhs);
	r.status = r.mismatch ? CheckStatus::fail : CheckStatus::pass;
	return r;
}

/// cA_k(eps, s, A): the defining coefficients with t renamed to s.
std::vector<MultiPoly> amplitudes_at_shift(const SecularTable& table)
{
	std::vector<MultiPoly> out;
	for (std::size_t k = 0; k < table.amplitude_count(); ++k)
		out.push_back(table.amplitude_coefficient(k).swap_variables(PolyContext::time, PolyContext::shift));
	return out;
}

std::vector<HarmonicSeries> as_series(const std::vector<MultiPoly>& polys)
{
	std::vector<HarmonicSeries> out;
	for (const auto& p : polys)
		out.push_back(HarmonicSeries::single(0, p));
	return out;
}

GaussianRational random_coefficient(std::mt19937_64& rng)
{
	std::uniform_int_distribution<int> num(-3, 3), den(1, 3), coin(0, 2);
	Rational re(num(rng), den(rng));
	Rational im = coin(rng) == 0 ? Rational(num(rng), den(rng)) : Rational(0);
	if (sgn(re) == 0 && sgn(im) == 0)
		re = 1;
	return {re, im};
}

std::string random_forcing(std::mt19937_64& rng, const std::vector<std::string>& states, bool autonomous)
{
	std::uniform_int_distribution<int> n_terms(1, 3), degree(0, 2), pick(0, static_cast<int>(states.size()) - 1),
	    harmonic(-1, 1);
	std::string out;
	const int terms = n_terms(rng);
	for (int k = 0; k < terms; ++k) {
		std::string term = random_coefficient(rng).str();
		const int d = degree(rng);
		for (int j = 0; j < d; ++j)
			term += "*" + states[static_cast<std::size_t>(pick(rng))];
		const int h = autonomous ? 0 : harmonic(rng);
		if (h != 0)
			term += "*E^" + std::to_string(h);
		out += (out.empty() ? "" : " + ") + term;
	}
	return out;
}

} // namespace

std::string CheckReport::render() const
{
	std::string out = status_word(status) + " " + check + " " + spec_id + " K=" + std::to_string(order);
	if (seed)
		out += " seed=" + std::to_string(*seed);
	if (!note.empty())
		out += " (" + note + ")";
	if (status == CheckStatus::fail)
		out += "\n" + to_json().dump(2);
	return out;
}

nlohmann::json CheckReport::to_json() const
{
	nlohmann::json j{{"check", check}, {"spec", spec_id}, {"order", order}, {"status", status_word(status)}};
	if (seed)
		j["seed"] = *seed;
	if (!note.empty())
		j["note"] = note;
	if (mismatch)
		j["mismatch"] = {{"component", mismatch->component + 1},
		                 {"harmonic", mismatch->harmonic},
		                 {"monomial", mismatch->monomial},
		                 {"lhs", mismatch->lhs},
		                 {"rhs", mismatch->rhs}};
	return j;
}

std::optional<Mismatch> first_mismatch(const std::vector<HarmonicSeries>& lhs, const std::vector<HarmonicSeries>& rhs)
{
	if (lhs.size() != rhs.size())
		return Mismatch{0, 0, "<component count>", std::to_string(lhs.size()), std::to_string(rhs.size())};
	for (std::size_t j = 0; j < lhs.size(); ++j) {
		if (lhs[j] == rhs[j])
			continue;
		HarmonicSeries diff = lhs[j] - rhs[j];
		const auto& [m, p] = *diff.entries().begin();
		const auto& [e, c] = *p.terms().begin();
		return Mismatch{j, m, monomial_str(p.context(), e), lhs[j].at(m).coefficient_of(e).str(),
		                rhs[j].at(m).coefficient_of(e).str()};
	}
	return std::nullopt;
}

CheckReport check_functional_relation(const SecularTable& table)
{
	const auto& ctx = table.ctx;
	const MultiPoly t = MultiPoly::variable(ctx, PolyContext::time);
	const MultiPoly s = MultiPoly::variable(ctx, PolyContext::shift);
	auto bindings = amplitude_bindings(ctx, amplitudes_at_shift(table));
	bindings.emplace_back(PolyContext::time, t - s);
	std::vector<HarmonicSeries> rhs;
	for (const auto& c : table.components)
		rhs.push_back(c.map([&](int, const MultiPoly& p) { return p.substitute(bindings); }));
	return compare(make_report("functional_relation", table.spec), table.components, rhs);
}

CheckReport check_group_property(const SecularTable& table)
{
	const auto& ctx = table.ctx;
	const MultiPoly t = MultiPoly::variable(ctx, PolyContext::time);
	const MultiPoly s = MultiPoly::variable(ctx, PolyContext::shift);
	const auto amps = renormalized_amplitudes(table);
	const auto at_s = amplitudes_at_shift(table);
	const auto inner = amplitude_bindings(ctx, amps);
	std::vector<MultiPoly> lhs, rhs;
	for (std::size_t k = 0; k < amps.size(); ++k) {
		lhs.push_back(amps[k].substitute({{PolyContext::time, t + s}}));
		rhs.push_back(at_s[k].substitute(inner));
	}
	return compare(make_report("group_property", table.spec), as_series(lhs), as_series(rhs));
}

CheckReport check_no_secular(const RenExpansion& ren)
{
	CheckReport r = make_report("no_secular", ren.spec);
	for (std::size_t j = 0; j < ren.components.size(); ++j)
		for (const auto& [m, p] : ren.components[j].entries())
			for (const auto& [e, c] : p.terms())
				if (e[PolyContext::time] || e[PolyContext::shift]) {
					r.status = CheckStatus::fail;
					r.mismatch = Mismatch{j, m, monomial_str(p.context(), e), c.str(), "0"};
					return r;
				}
	return r;
}

CheckReport check_no_secular(const SecularTable& table)
{
	return check_no_secular(RenExpansion{table.spec, table.ctx, table.components});
}

CheckReport check_residual(const SecularTable& table)
{
	auto res = governing_residual(table.spec, table.ctx, table.components,
	                              [](const MultiPoly& p) { return p.diff_t(); });
	std::vector<HarmonicSeries> zero(res.size(), HarmonicSeries(table.ctx));
	return compare(make_report("residual", table.spec), res, zero);
}

CheckReport check_residual(const RenExpansion& ren, const RGSystem& rg)
{
	auto res = governing_residual(ren.spec, ren.ctx, ren.components, rg_derivation(rg));
	std::vector<HarmonicSeries> zero(res.size(), HarmonicSeries(ren.ctx));
	return compare(make_report("renormalized_residual", ren.spec), res, zero);
}

CheckReport check_inversion(const SecularTable& table)
{
	const auto& ctx = table.ctx;
	const auto amps = renormalized_amplitudes(table);
	const auto inv = invert_amplitudes(table);
	const auto to_ren = amplitude_bindings(ctx, amps);
	const auto to_bare = amplitude_bindings(ctx, inv);
	std::vector<MultiPoly> ids, bare_round, ren_round;
	for (std::size_t k = 0; k < amps.size(); ++k) {
		ids.push_back(MultiPoly::variable(ctx, ctx->amplitude(k)));
		bare_round.push_back(inv[k].substitute(to_ren));
		ren_round.push_back(amps[k].substitute(to_bare));
	}
	auto lhs = as_series(bare_round);
	auto rhs = as_series(ids);
	auto l2 = as_series(ren_round);
	lhs.insert(lhs.end(), l2.begin(), l2.end());
	auto r2 = rhs;
	rhs.insert(rhs.end(), r2.begin(), r2.end());
	return compare(make_report("inversion", table.spec), lhs, rhs);
}

CheckReport check_homogeneity(const SecularTable& table)
{
	CheckReport r = make_report("homogeneity", table.spec);
	if (table.spec.cls != SpecClass::semisimple || !table.spec.is_autonomous()) {
		r.status = CheckStatus::not_applicable;
		r.note = "not applicable: requires an autonomous semisimple spec";
		return r;
	}
	const auto& ctx = table.ctx;
	const auto& freq = table.spec.frequencies;
	auto weight = [&](const Exponents& e) {
		int w = 0;
		for (std::size_t k = 0; k < freq.size(); ++k)
			w += freq[k] * e[ctx->amplitude(k)];
		return w;
	};
	for (std::size_t j = 0; j < table.components.size(); ++j)
		for (const auto& [m, p] : table.components[j].entries())
			for (const auto& [e, c] : p.terms())
				if (weight(e) != m) {
					r.status = CheckStatus::fail;
					r.mismatch = Mismatch{j, m, monomial_str(ctx, e), c.str(), "0"};
					return r;
				}
	const auto rg = derive_rg(table);
	for (std::size_t j = 0; j < rg.field.size(); ++j)
		for (const auto& [e, c] : rg.field[j].terms())
			if (weight(e) != freq[j]) {
				r.status = CheckStatus::fail;
				r.mismatch = Mismatch{j, freq[j], monomial_str(ctx, e), c.str(), "0"};
				r.note = "RG field weight";
				return r;
			}
	return r;
}

std::vector<CheckReport> run_all_checks(const ODESystemSpec& spec, std::optional<std::uint64_t> seed)
{
	const SecularTable table = expand(spec);
	const RGSystem rg = derive_rg(table);
	const RenExpansion ren = renormalized_expansion(table);
	std::vector<CheckReport> out{check_functional_relation(table), check_group_property(table),
	                             check_no_secular(ren),            check_residual(table),
	                             check_residual(ren, rg),          check_inversion(table),
	                             check_homogeneity(table)};
	for (auto& r : out)
		r.seed = seed;
	return out;
}

ODESystemSpec random_spec(SpecClass cls, std::uint64_t seed, int order, bool autonomous_zero)
{
	std::mt19937_64 rng(seed);
	std::uniform_int_distribution<int> dim(1, 2), freq(-1, 1);
	ODESystemSpec spec;
	spec.cls = cls;
	spec.order = order;
	spec.name = "random-" + to_string(cls) + "-" + std::to_string(seed);
	switch (cls) {
	case SpecClass::semisimple: {
		const int n = dim(rng);
		for (int j = 0; j < n; ++j)
			spec.frequencies.push_back(autonomous_zero ? 0 : freq(rng));
		break;
	}
	case SpecClass::nilpotent:
		spec.nil_size = dim(rng);
		spec.nil_m = autonomous_zero ? 0 : freq(rng);
		break;
	case SpecClass::scalar: {
		static const std::vector<std::vector<ScalarFactor>> shapes = {
		    {{0, 1}}, {{0, 2}}, {{1, 1}}, {{1, 1}, {-1, 1}}, {{0, 1}, {1, 1}}};
		spec.factors = shapes[std::uniform_int_distribution<std::size_t>(0, shapes.size() - 1)(rng)];
		break;
	}
	case SpecClass::difference:
		throw std::invalid_argument("random_spec: the difference class has no random generator");
	}
	const auto states = spec.state_names();
	const std::size_t n_v = cls == SpecClass::scalar ? 1 : states.size();
	for (std::size_t j = 0; j < n_v; ++j)
		spec.V_src.push_back(random_forcing(rng, states, autonomous_zero));
	validate_spec(spec);
	return spec;
}

SecularTable corrupt_table(const SecularTable& table)
{
	SecularTable bad = table;
	for (auto& comp : bad.components) {
		for (const auto& [m, p] : comp.entries()) {
			for (const auto& [e, c] : p.terms()) {
				if (e[PolyContext::time] == 0 || e[PolyContext::eps] == 0)
					continue;
				comp.add(m, MultiPoly::monomial(p.context(), e, 1));
				return bad;
			}
		}
	}
	throw std::invalid_argument("corrupt_table: no secular term to perturb");
}

nlohmann::json poly_to_json(const MultiPoly& p)
{
	nlohmann::json terms = nlohmann::json::array();
	for (const auto& [e, coef] : p.terms())
		terms.push_back({coef.re().get_str(), coef.im().get_str(), std::vector<int>(e.begin(), e.end())});
	return terms;
}

MultiPoly poly_from_json(const nlohmann::json& terms, const ContextPtr& ctx)
{
	MultiPoly p(ctx);
	for (const auto& term : terms) {
		auto exps = term.at(2).get<std::vector<int>>();
		if (exps.size() != ctx->size())
			throw SpecError("polynomial term has the wrong number of exponents");
		p.add_term(Exponents(exps.begin(), exps.end()),
		           GaussianRational::from_string(term.at(0).get<std::string>(), term.at(1).get<std::string>()));
	}
	return p;
}

nlohmann::json series_to_json(const HarmonicSeries& s)
{
	nlohmann::json entries = nlohmann::json::object();
	for (const auto& [m, p] : s.entries())
		entries[std::to_string(m)] = poly_to_json(p);
	return entries;
}

HarmonicSeries series_from_json(const nlohmann::json& entries, const ContextPtr& ctx)
{
	HarmonicSeries s(ctx);
	for (const auto& [key, terms] : entries.items())
		s.add(std::stoi(key), poly_from_json(terms, ctx));
	return s;
}

nlohmann::json table_to_json(const SecularTable& table)
{
	nlohmann::json comps = nlohmann::json::array();
	for (const auto& c : table.components)
		comps.push_back(series_to_json(c));
	return {{"spec", spec_to_json(table.spec)}, {"components", comps}};
}

SecularTable table_from_json(const nlohmann::json& doc)
{
	SecularTable table;
	table.spec = spec_from_json(doc.at("spec"));
	table.ctx = table_context(table.spec);
	for (const auto& entries : doc.at("components"))
		table.components.push_back(series_from_json(entries, table.ctx));
	if (table.components.size() != table.spec.dimension())
		throw SpecError("table has the wrong number of components");
	table.refresh_metadata();
	return table;
}

nlohmann::json rg_to_json(const RGSystem& rg, const RenExpansion& ren)
{
	nlohmann::json field = nlohmann::json::array(), comps = nlohmann::json::array();
	for (const auto& f : rg.field)
		field.push_back(poly_to_json(f));
	for (const auto& c : ren.components)
		comps.push_back(series_to_json(c));
	return {{"spec", spec_to_json(rg.spec)}, {"field", field}, {"renormalized", comps}};
}

std::pair<RGSystem, RenExpansion> rg_from_json(const nlohmann::json& doc)
{
	ODESystemSpec spec = spec_from_json(doc.at("spec"));
	ContextPtr ctx = table_context(spec);
	RGSystem rg{spec, ctx, {}};
	RenExpansion ren{spec, ctx, {}};
	for (const auto& f : doc.at("field"))
		rg.field.push_back(poly_from_json(f, ctx));
	for (const auto& c : doc.at("renormalized"))
		ren.components.push_back(series_from_json(c, ctx));
	return {rg, ren};
}

} // namespace rgpert
