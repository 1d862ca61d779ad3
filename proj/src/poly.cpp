#include "rgpert/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rgpert {

PolyContext::PolyContext(std::vector<std::string> amplitudes, std::vector<std::string> params, int eps_order,
                         std::string time_name, std::string shift_name)
    : n_amp_(amplitudes.size()), eps_order_(eps_order)
{
	if (eps_order < 0)
		throw std::invalid_argument("truncation order must be non-negative");
	names_.reserve(3 + amplitudes.size() + params.size());
	names_.push_back("eps");
	names_.push_back(std::move(time_name));
	names_.push_back(std::move(shift_name));
	for (auto& a : amplitudes)
		names_.push_back(std::move(a));
	for (auto& p : params)
		names_.push_back(std::move(p));
	for (std::size_t i = 0; i < names_.size(); ++i)
		for (std::size_t j = i + 1; j < names_.size(); ++j)
			if (names_[i] == names_[j])
				throw std::invalid_argument("duplicate symbol name: " + names_[i]);
}

std::vector<std::string> PolyContext::amplitude_names() const
{
	return {names_.begin() + 3, names_.begin() + 3 + static_cast<std::ptrdiff_t>(n_amp_)};
}

std::vector<std::string> PolyContext::param_names() const
{
	return {names_.begin() + 3 + static_cast<std::ptrdiff_t>(n_amp_), names_.end()};
}

std::optional<std::size_t> PolyContext::find(std::string_view name) const
{
	for (std::size_t i = 0; i < names_.size(); ++i)
		if (names_[i] == name)
			return i;
	return std::nullopt;
}

std::vector<std::string> PolyContext::renormalized_names() const
{
	auto out = names_;
	for (std::size_t k = 0; k < n_amp_; ++k)
		out[amplitude(k)] = "c" + out[amplitude(k)];
	return out;
}

ContextPtr make_context(std::vector<std::string> amplitudes, std::vector<std::string> params, int eps_order,
                        std::string time_name, std::string shift_name)
{
	return std::make_shared<const PolyContext>(std::move(amplitudes), std::move(params), eps_order,
	                                           std::move(time_name), std::move(shift_name));
}

bool same_context(const ContextPtr& a, const ContextPtr& b)
{
	return a == b || (a && b && *a == *b);
}

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const
{
	if (a[0] != b[0])
		return a[0] < b[0];
	unsigned da = 0, db = 0;
	for (std::size_t i = 1; i < a.size(); ++i) {
		da += a[i];
		db += b[i];
	}
	if (da != db)
		return da < db;
	for (std::size_t i = 1; i < a.size(); ++i)
		if (a[i] != b[i])
			return a[i] > b[i];
	return false;
}

MultiPoly::MultiPoly(ContextPtr ctx) : ctx_(std::move(ctx))
{
	if (!ctx_)
		throw std::invalid_argument("null polynomial context");
}

MultiPoly MultiPoly::constant(ContextPtr ctx, const GaussianRational& c)
{
	MultiPoly p(std::move(ctx));
	p.add_term(Exponents(p.ctx_->size(), 0), c);
	return p;
}

MultiPoly MultiPoly::variable(ContextPtr ctx, std::size_t var, unsigned power)
{
	MultiPoly p(std::move(ctx));
	Exponents e(p.ctx_->size(), 0);
	e.at(var) = static_cast<std::uint16_t>(power);
	p.add_term(e, 1);
	return p;
}

MultiPoly MultiPoly::monomial(ContextPtr ctx, Exponents exps, const GaussianRational& c)
{
	MultiPoly p(std::move(ctx));
	if (exps.size() != p.ctx_->size())
		throw std::invalid_argument("exponent vector has wrong length");
	p.add_term(exps, c);
	return p;
}

bool MultiPoly::is_constant() const
{
	return terms_.empty() ||
	       (terms_.size() == 1 &&
	        std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](auto e) { return e == 0; }));
}

GaussianRational MultiPoly::constant_term() const
{
	return coefficient_of(Exponents(ctx_->size(), 0));
}

GaussianRational MultiPoly::coefficient_of(const Exponents& exps) const
{
	auto it = terms_.find(exps);
	return it == terms_.end() ? GaussianRational() : it->second;
}

void MultiPoly::add_term(const Exponents& exps, const GaussianRational& c)
{
	if (c.is_zero() || exps[0] > ctx_->eps_order())
		return;
	auto [it, inserted] = terms_.try_emplace(exps, c);
	if (!inserted) {
		it->second += c;
		if (it->second.is_zero())
			terms_.erase(it);
	}
}

void MultiPoly::check_context(const MultiPoly& o) const
{
	if (!same_context(ctx_, o.ctx_))
		throw std::invalid_argument("polynomial context mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
	check_context(o);
	for (const auto& [e, c] : o.terms_)
		add_term(e, c);
	return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
	check_context(o);
	for (const auto& [e, c] : o.terms_)
		add_term(e, -c);
	return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussianRational& c)
{
	if (c.is_zero()) {
		terms_.clear();
		return *this;
	}
	for (auto& [e, v] : terms_)
		v *= c;
	return *this;
}

MultiPoly MultiPoly::operator-() const
{
	MultiPoly r = *this;
	for (auto& [e, v] : r.terms_)
		v = -v;
	return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
	return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::mul(const MultiPoly& a, const MultiPoly& b, int max_eps)
{
	a.check_context(b);
	const int cap = max_eps < 0 ? a.ctx_->eps_order() : std::min(max_eps, a.ctx_->eps_order());
	MultiPoly r(a.ctx_);
	if (a.is_zero() || b.is_zero())
		return r;
	const std::size_t n = a.ctx_->size();
	Exponents e(n, 0);
	for (const auto& [ea, ca] : a.terms_) {
		if (ea[0] > cap)
			break;
		for (const auto& [eb, cb] : b.terms_) {
			if (ea[0] + eb[0] > cap)
				break;
			for (std::size_t i = 0; i < n; ++i)
				e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
			auto [it, inserted] = r.terms_.try_emplace(e);
			it->second.add_product(ca, cb);
		}
	}
	std::erase_if(r.terms_, [](const auto& kv) { return kv.second.is_zero(); });
	return r;
}

MultiPoly MultiPoly::pow(unsigned n) const
{
	MultiPoly result = constant(ctx_, 1);
	MultiPoly base = *this;
	while (n) {
		if (n & 1u)
			result = mul(result, base);
		n >>= 1u;
		if (n)
			base = mul(base, base);
	}
	return result;
}

int MultiPoly::degree(std::size_t var) const
{
	int d = -1;
	for (const auto& [e, c] : terms_)
		d = std::max(d, static_cast<int>(e.at(var)));
	return d;
}

int MultiPoly::min_degree(std::size_t var) const
{
	if (terms_.empty())
		return -1;
	int d = INT32_MAX;
	for (const auto& [e, c] : terms_)
		d = std::min(d, static_cast<int>(e.at(var)));
	return d;
}

MultiPoly MultiPoly::coefficient(std::size_t var, unsigned power) const
{
	MultiPoly r(ctx_);
	for (const auto& [e, c] : terms_) {
		if (e.at(var) != power)
			continue;
		Exponents f = e;
		f[var] = 0;
		r.terms_.emplace(std::move(f), c);
	}
	return r;
}

MultiPoly MultiPoly::eps_part(int k) const
{
	MultiPoly r(ctx_);
	for (const auto& [e, c] : terms_)
		if (e[0] == k)
			r.terms_.emplace_hint(r.terms_.end(), e, c);
	return r;
}

MultiPoly MultiPoly::truncated(int max_eps) const
{
	MultiPoly r(ctx_);
	for (const auto& [e, c] : terms_)
		if (e[0] <= max_eps)
			r.terms_.emplace_hint(r.terms_.end(), e, c);
	return r;
}

MultiPoly MultiPoly::diff(std::size_t var) const
{
	MultiPoly r(ctx_);
	for (const auto& [e, c] : terms_) {
		if (e.at(var) == 0)
			continue;
		Exponents f = e;
		f[var] = static_cast<std::uint16_t>(f[var] - 1);
		r.add_term(f, c * GaussianRational(static_cast<long>(e[var])));
	}
	return r;
}

MultiPoly MultiPoly::antidiff(std::size_t var) const
{
	MultiPoly r(ctx_);
	for (const auto& [e, c] : terms_) {
		Exponents f = e;
		f.at(var) = static_cast<std::uint16_t>(f[var] + 1);
		r.add_term(f, c * GaussianRational(Rational(1, f[var])));
	}
	return r;
}

namespace {

struct SubstitutionState {
	const ContextPtr& ctx;
	std::vector<std::size_t> vars;
	std::vector<const MultiPoly*> images;
	std::vector<std::vector<MultiPoly>> powers;

	const MultiPoly& power(std::size_t level, unsigned e)
	{
		auto& cache = powers[level];
		if (cache.empty())
			cache.push_back(MultiPoly::constant(ctx, 1));
		while (cache.size() <= e)
			cache.push_back(MultiPoly::mul(cache.back(), *images[level]));
		return cache[e];
	}

	using Term = std::pair<Exponents, GaussianRational>;

	MultiPoly run(std::vector<Term>& terms, std::size_t level)
	{
		if (level == vars.size()) {
			MultiPoly r(ctx);
			for (auto& [e, c] : terms)
				r.add_term(e, c);
			return r;
		}
		const std::size_t v = vars[level];
		std::map<unsigned, std::vector<Term>> groups;
		for (auto& t : terms) {
			unsigned e = t.first[v];
			t.first[v] = 0;
			groups[e].push_back(std::move(t));
		}
		MultiPoly result(ctx);
		for (auto& [e, group] : groups) {
			MultiPoly inner = run(group, level + 1);
			if (e == 0)
				result += inner;
			else
				result += MultiPoly::mul(power(level, e), inner);
		}
		return result;
	}
};

} // namespace

MultiPoly MultiPoly::substitute(const std::vector<std::pair<std::size_t, MultiPoly>>& bindings) const
{
	SubstitutionState state{ctx_, {}, {}, {}};
	for (const auto& [var, image] : bindings) {
		if (var >= ctx_->size())
			throw std::invalid_argument("substitution of unknown symbol");
		check_context(image);
		if (std::find(state.vars.begin(), state.vars.end(), var) != state.vars.end())
			throw std::invalid_argument("symbol bound twice: " + ctx_->name(var));
		state.vars.push_back(var);
		state.images.push_back(&image);
	}
	state.powers.resize(state.vars.size());
	std::vector<SubstitutionState::Term> terms(terms_.begin(), terms_.end());
	return state.run(terms, 0);
}

MultiPoly MultiPoly::with_context(ContextPtr ctx) const
{
	if (ctx->size() != ctx_->size() || ctx->amplitude_count() != ctx_->amplitude_count())
		throw std::invalid_argument("context shape mismatch");
	MultiPoly r(std::move(ctx));
	for (const auto& [e, c] : terms_)
		r.add_term(e, c);
	return r;
}

MultiPoly MultiPoly::swap_variables(std::size_t a, std::size_t b) const
{
	MultiPoly r(ctx_);
	for (const auto& [e, c] : terms_) {
		Exponents f = e;
		std::swap(f.at(a), f.at(b));
		r.terms_.emplace(std::move(f), c);
	}
	return r;
}

MultiPoly MultiPoly::conj() const
{
	MultiPoly r = *this;
	for (auto& [e, c] : r.terms_)
		c = c.conj();
	return r;
}

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> values) const
{
	if (values.size() != ctx_->size())
		throw std::invalid_argument("evaluate: wrong number of values");
	std::complex<double> sum = 0;
	for (const auto& [e, c] : terms_) {
		std::complex<double> term = c.to_complex();
		for (std::size_t i = 0; i < e.size(); ++i)
			for (unsigned k = 0; k < e[i]; ++k)
				term *= values[i];
		sum += term;
	}
	return sum;
}

std::string MultiPoly::str() const
{
	return str(ctx_->names());
}

std::string MultiPoly::str(const std::vector<std::string>& names) const
{
	if (terms_.empty())
		return "0";
	std::string out;
	bool first = true;
	for (const auto& [e, c] : terms_) {
		std::string mono;
		for (std::size_t i = 0; i < e.size(); ++i) {
			if (e[i] == 0)
				continue;
			if (!mono.empty())
				mono += "*";
			mono += names.at(i);
			if (e[i] > 1)
				mono += "^" + std::to_string(e[i]);
		}
		std::string term;
		if (mono.empty())
			term = c.str();
		else if (c.is_one())
			term = mono;
		else if (c == GaussianRational(-1))
			term = "-" + mono;
		else
			term = c.str() + "*" + mono;
		if (first)
			out = term;
		else if (term.front() == '-')
			out += " - " + term.substr(1);
		else
			out += " + " + term;
		first = false;
	}
	return out;
}

MultiPoly resolve_shift(const GaussianRational& c, const MultiPoly& rhs)
{
	if (c.is_zero())
		throw std::domain_error("resolve_shift: zero shift, use the antiderivative");
	const GaussianRational inv = c.inverse();
	const GaussianRational step = -inv;
	MultiPoly result(rhs.context());
	MultiPoly deriv = rhs;
	GaussianRational factor = inv;
	while (!deriv.is_zero()) {
		result += deriv * factor;
		deriv = deriv.diff_t();
		factor *= step;
	}
	return result;
}

std::complex<double> eval_complex(const MultiPoly& p, const std::map<std::string, std::complex<double>>& point,
                                  double eps, double t)
{
	const auto& ctx = *p.context();
	std::vector<std::complex<double>> values(ctx.size(), 0.0);
	std::vector<bool> bound(ctx.size(), false);
	values[PolyContext::eps] = eps;
	values[PolyContext::time] = t;
	bound[PolyContext::eps] = bound[PolyContext::time] = true;
	for (const auto& [name, v] : point) {
		if (auto var = ctx.find(name)) {
			values[*var] = v;
			bound[*var] = true;
		}
	}
	for (const auto& [e, c] : p.terms())
		for (std::size_t i = 0; i < e.size(); ++i)
			if (e[i] && !bound[i])
				throw std::invalid_argument("eval_complex: unbound symbol " + ctx.name(i));
	return p.evaluate(values);
}

std::vector<std::pair<std::size_t, MultiPoly>> amplitude_bindings(const ContextPtr& ctx,
                                                                  const std::vector<MultiPoly>& images)
{
	if (images.size() != ctx->amplitude_count())
		throw std::invalid_argument("amplitude_bindings: wrong number of images");
	std::vector<std::pair<std::size_t, MultiPoly>> out;
	out.reserve(images.size());
	for (std::size_t k = 0; k < images.size(); ++k)
		out.emplace_back(ctx->amplitude(k), images[k]);
	return out;
}

} // namespace rgpert
