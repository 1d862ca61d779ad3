#include "rgpert/difference.hpp"

#include <cmath>
#include <numbers>

namespace rgpert {

// ---- LaurentPoly --------------------------------------------------------

LaurentPoly::LaurentPoly(const std::vector<std::pair<int, GaussianRational>>& coeffs)
{
	for (const auto& [l, v] : coeffs)
		add(l, v);
}

GaussianRational LaurentPoly::at(int l) const
{
	auto it = c_.find(l);
	return it == c_.end() ? GaussianRational() : it->second;
}

void LaurentPoly::add(int l, const GaussianRational& v)
{
	if (v.is_zero())
		return;
	auto [it, inserted] = c_.try_emplace(l, v);
	if (!inserted) {
		it->second += v;
		if (it->second.is_zero())
			c_.erase(it);
	}
}

bool LaurentPoly::is_even() const
{
	for (const auto& [l, v] : c_)
		if (l % 2 != 0)
			return false;
	return true;
}

int LaurentPoly::reach() const
{
	int r = 0;
	for (const auto& [l, v] : c_)
		r = std::max(r, std::abs(l));
	return r;
}

LaurentPoly LaurentPoly::reflected() const
{
	LaurentPoly r;
	for (const auto& [l, v] : c_)
		r.add(l, l % 2 == 0 ? v : -v);
	return r;
}

LaurentPoly LaurentPoly::inverted() const
{
	LaurentPoly r;
	for (const auto& [l, v] : c_)
		r.add(-l, v);
	return r;
}

LaurentPoly& LaurentPoly::operator*=(const GaussianRational& c)
{
	if (c.is_zero()) {
		c_.clear();
		return *this;
	}
	for (auto& [l, v] : c_)
		v *= c;
	return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
	LaurentPoly r;
	for (const auto& [la, va] : a.c_)
		for (const auto& [lb, vb] : b.c_)
			r.add(la + lb, va * vb);
	return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
{
	LaurentPoly r = a;
	for (const auto& [l, v] : b.c_)
		r.add(l, v);
	return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const
{
	LaurentPoly r({{0, GaussianRational(1)}});
	for (unsigned k = 0; k < n; ++k)
		r = r * *this;
	return r;
}

std::complex<double> LaurentPoly::evaluate(std::complex<double> z) const
{
	std::complex<double> sum = 0;
	for (const auto& [l, v] : c_)
		sum += v.to_complex() * std::pow(z, l);
	return sum;
}

std::string LaurentPoly::str(const std::string& var) const
{
	if (c_.empty())
		return "0";
	std::string out;
	for (const auto& [l, v] : c_) {
		std::string mono = l == 0 ? "" : l == 1 ? var : var + "^" + std::to_string(l);
		std::string coef = v.str();
		std::string term;
		if (mono.empty())
			term = coef;
		else if (v.is_one())
			term = mono;
		else if (v == GaussianRational(-1))
			term = "-" + mono;
		else
			term = coef + "*" + mono;
		if (out.empty())
			out = term;
		else if (term[0] == '-')
			out += " - " + term.substr(1);
		else
			out += " + " + term;
	}
	return out;
}

// ---- g_k ----------------------------------------------------------------

namespace {

Rational binomial(unsigned n, unsigned k)
{
	mpz_class r;
	mpz_bin_uiui(r.get_mpz_t(), n, k);
	return Rational(r);
}

Rational factorial(unsigned n)
{
	mpz_class r;
	mpz_fac_ui(r.get_mpz_t(), n);
	return Rational(r);
}

} // namespace

Rational n_const(int k)
{
	mpz_class four_k;
	mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned>(k));
	Rational r = binomial(static_cast<unsigned>(2 * k), static_cast<unsigned>(k)) / Rational(four_k * (2 * k + 1));
	r.canonicalize();
	return r;
}

GkTable gk_poly(int K)
{
	GkTable t;
	t.g.push_back({Rational(1)});
	for (int k = 1; k <= K; ++k) {
		const auto& q = t.g.back();
		std::vector<Rational> p(static_cast<std::size_t>(k) + 1, Rational(0));
		// Coefficient of u^i in p(u+1) - p(u-1) is sum_{d > i, d - i odd} 2 binom(d, i) p_d.
		for (int i = k - 1; i >= 0; --i) {
			Rational rest = 0;
			for (int d = i + 3; d <= k; d += 2)
				rest += 2 * binomial(static_cast<unsigned>(d), static_cast<unsigned>(i)) * p[static_cast<std::size_t>(d)];
			Rational target = static_cast<std::size_t>(i) < q.size() ? q[static_cast<std::size_t>(i)] : Rational(0);
			p[static_cast<std::size_t>(i) + 1] = (target - rest) / (2 * (i + 1));
			p[static_cast<std::size_t>(i) + 1].canonicalize();
		}
		t.g.push_back(std::move(p));
	}
	for (int k = 0; 2 * k <= K; ++k)
		t.N.push_back(n_const(k));
	return t;
}

std::vector<Rational> gk_closed_form(int k)
{
	if (k == 0)
		return {Rational(1)};
	// u / (2 k!) * prod_{i=0}^{k-2} (u/2 + (2 - k)/2 + i)
	std::vector<Rational> p{Rational(0), Rational(1) / (2 * factorial(static_cast<unsigned>(k)))};
	for (int i = 0; i <= k - 2; ++i) {
		Rational c = Rational(2 - k, 2) + i;
		std::vector<Rational> next(p.size() + 1, Rational(0));
		for (std::size_t d = 0; d < p.size(); ++d) {
			next[d + 1] += p[d] / 2;
			next[d] += p[d] * c;
		}
		p = std::move(next);
	}
	for (auto& c : p)
		c.canonicalize();
	return p;
}

Rational eval_upoly(const std::vector<Rational>& p, const Rational& u)
{
	Rational x = u;
	x.canonicalize();
	Rational r = 0;
	for (auto it = p.rbegin(); it != p.rend(); ++it)
		r = r * x + *it;
	return r;
}

LaurentPoly ckj_coeffs(const LaurentPoly& two_u, int k)
{
	const LaurentPoly odd = two_u.inverted();
	const LaurentPoly even = two_u.reflected().inverted();
	LaurentPoly h({{0, GaussianRational(1)}});
	for (int i = 1; i <= k; ++i)
		h = h * (i % 2 == 1 ? odd : even);
	return h;
}

// ---- problem ------------------------------------------------------------

std::size_t DifferenceProblem::amplitude_var(int m) const
{
	if (std::abs(m) > window)
		throw WindowError("harmonic " + std::to_string(m) + " lies outside the window " + std::to_string(window));
	return ctx->amplitude(static_cast<std::size_t>(m + window));
}

DifferenceProblem difference_problem(const LaurentPoly& two_u, int K, int W, std::string name)
{
	if (K < 0 || W < 0)
		throw std::invalid_argument("order and window must be non-negative");
	std::vector<std::string> names;
	for (int m = -W; m <= W; ++m)
		names.push_back(window_amplitude_name(m));
	return {std::move(name), two_u, K, W, make_context(names, {}, K, "u", "s")};
}

DifferenceProblem difference_problem(const ODESystemSpec& spec)
{
	if (spec.cls != SpecClass::difference)
		throw SpecError("not a difference spec");
	DifferenceProblem p = difference_problem(LaurentPoly(spec.alpha), spec.order, spec.window, spec.name);
	if (!spec.amplitude_names.empty())
		p.ctx = make_context(spec.amplitude_names, {}, spec.order, "u", "s");
	return p;
}

namespace {

MultiPoly upoly(const ContextPtr& ctx, const std::vector<Rational>& p)
{
	MultiPoly r(ctx);
	const MultiPoly u = MultiPoly::variable(ctx, PolyContext::time);
	MultiPoly power = MultiPoly::constant(ctx, 1);
	for (const auto& c : p) {
		if (sgn(c) != 0)
			r += power * GaussianRational(c);
		power = power * u;
	}
	return r;
}

MultiPoly eps_power(const ContextPtr& ctx, int k)
{
	return MultiPoly::variable(ctx, PolyContext::eps, static_cast<unsigned>(k));
}

void require_window(const DifferenceProblem& prob, int m)
{
	if (std::abs(m) > prob.reliable_radius())
		throw WindowError("window " + std::to_string(prob.window) + " too small for harmonic " + std::to_string(m) +
		                  " at order " + std::to_string(prob.order) + " (need |m| + K*" +
		                  std::to_string(prob.two_u.reach()) + " <= W)");
}

/// sum_j A_{m+j} [z^j] series, amplitudes outside the window read as zero.
MultiPoly contract(const DifferenceProblem& prob, int m, const HarmonicSeries& series)
{
	MultiPoly r(prob.ctx);
	for (const auto& [j, coef] : series.entries()) {
		if (std::abs(m + j) > prob.window)
			continue;
		r += coef * MultiPoly::variable(prob.ctx, prob.amplitude_var(m + j));
	}
	return r;
}

MultiPoly secular_unchecked(const DifferenceProblem& prob, int m, const GkTable& g)
{
	HarmonicSeries series(prob.ctx);
	for (int k = 0; k <= prob.order; ++k) {
		const bool flip = (static_cast<long>(m) * k) % 2 != 0;
		MultiPoly gk = upoly(prob.ctx, g.g[static_cast<std::size_t>(k)]) * eps_power(prob.ctx, k);
		if (gk.is_zero())
			continue;
		const LaurentPoly h = ckj_coeffs(prob.two_u, k);
		for (const auto& [j, c] : h.coeffs())
			series.add(j, gk * (flip ? -c : c));
	}
	return contract(prob, m, series);
}

HarmonicSeries laurent_series(const ContextPtr& ctx, const LaurentPoly& p, const MultiPoly& scale)
{
	HarmonicSeries s(ctx);
	for (const auto& [l, v] : p.coeffs())
		s.add(l, scale * v);
	return s;
}

HarmonicSeries negate_index(const HarmonicSeries& s)
{
	HarmonicSeries r(s.context());
	for (const auto& [m, p] : s.entries())
		r.add(-m, p);
	return r;
}

/// sum_n x^n / n! for x = O(eps).
HarmonicSeries exp_series(const HarmonicSeries& x, int K)
{
	const auto& ctx = x.context();
	HarmonicSeries sum = HarmonicSeries::single(0, MultiPoly::constant(ctx, 1));
	HarmonicSeries term = sum;
	for (int n = 1; n <= K; ++n) {
		term = hs_mul(term, x) * GaussianRational(Rational(1, n));
		if (term.is_zero())
			break;
		sum += term;
	}
	return sum;
}

/// exp(sign * u * Theta(eps, 1/z)).
HarmonicSeries theta_exponential(const DifferenceProblem& prob, const ThetaSeries& theta, int sign)
{
	MultiPoly u = MultiPoly::variable(prob.ctx, PolyContext::time) * GaussianRational(sign);
	return exp_series(negate_index(theta.series).scaled(u), prob.order);
}

MultiPoly closed_unchecked(const DifferenceProblem& prob, int m, const HarmonicSeries& e_plus,
                           const HarmonicSeries& e_minus)
{
	return contract(prob, m, m % 2 == 0 ? e_plus : e_minus);
}

HarmonicSeries restrict(const HarmonicSeries& s, int radius)
{
	HarmonicSeries r(s.context());
	for (const auto& [m, p] : s.entries())
		if (std::abs(m) <= radius)
			r.add(m, p);
	return r;
}

CheckReport make_report(const DifferenceProblem& prob, const std::string& check)
{
	CheckReport r;
	r.check = check;
	r.spec_id = prob.name;
	r.order = prob.order;
	return r;
}

CheckReport compare(CheckReport r, const HarmonicSeries& lhs, const HarmonicSeries& rhs)
{
	r.mismatch = first_mismatch({lhs}, {rhs});
	r.status = r.mismatch ? CheckStatus::fail : CheckStatus::pass;
	return r;
}

} // namespace

MultiPoly secular_pm(const DifferenceProblem& prob, int m)
{
	require_window(prob, m);
	return secular_unchecked(prob, m, gk_poly(prob.order));
}

ThetaSeries theta_series(const DifferenceProblem& prob)
{
	const auto& ctx = prob.ctx;
	LaurentPoly u = prob.two_u;
	u *= GaussianRational(Rational(1, 2));
	const HarmonicSeries x = laurent_series(ctx, u, eps_power(ctx, 1));
	const HarmonicSeries x2 = hs_mul(x, x);
	HarmonicSeries sum(ctx);
	HarmonicSeries power = x;
	for (int k = 0; 2 * k + 1 <= prob.order; ++k) {
		Rational c = n_const(k);
		sum += power * GaussianRational(k % 2 == 0 ? c : Rational(-c));
		power = hs_mul(power, x2);
	}
	return {sum};
}

HarmonicSeries theta_sinh(const DifferenceProblem& prob, const ThetaSeries& theta)
{
	const HarmonicSeries t2 = hs_mul(theta.series, theta.series);
	HarmonicSeries sum(prob.ctx);
	HarmonicSeries power = theta.series;
	for (int n = 0; 2 * n + 1 <= prob.order && !power.is_zero(); ++n) {
		sum += power * GaussianRational(Rational(1) / factorial(static_cast<unsigned>(2 * n + 1)));
		power = hs_mul(power, t2);
	}
	return sum;
}

MultiPoly closed_form_amplitude(const DifferenceProblem& prob, int m)
{
	if (!prob.two_u.is_even())
		throw std::invalid_argument("closed form requires an even U");
	require_window(prob, m);
	const ThetaSeries theta = theta_series(prob);
	return closed_unchecked(prob, m, theta_exponential(prob, theta, 1), theta_exponential(prob, theta, -1));
}

std::vector<CheckReport> check_difference_identities(const DifferenceProblem& prob)
{
	const int radius = prob.reliable_radius();
	if (radius < 0)
		throw WindowError("window " + std::to_string(prob.window) + " is smaller than K*reach(U) = " +
		                  std::to_string(prob.order * prob.two_u.reach()));
	const auto& ctx = prob.ctx;
	const bool even = prob.two_u.is_even();
	const GkTable g = gk_poly(prob.order);

	// Y_m = cA_m(eps, u, A) for the whole window; the closed form when it exists.
	std::map<int, MultiPoly> amp;
	ThetaSeries theta{HarmonicSeries(ctx)};
	if (even) {
		theta = theta_series(prob);
		const HarmonicSeries ep = theta_exponential(prob, theta, 1), em = theta_exponential(prob, theta, -1);
		for (int m = -prob.window; m <= prob.window; ++m)
			amp.emplace(m, closed_unchecked(prob, m, ep, em));
	} else {
		for (int m = -prob.window; m <= prob.window; ++m)
			amp.emplace(m, secular_unchecked(prob, m, g));
	}
	const std::string scope = "|m| <= " + std::to_string(radius);

	std::vector<CheckReport> out;
	{
		// cA_m(u) == cA_m(u - s, {cA_j(s)})
		const MultiPoly u = MultiPoly::variable(ctx, PolyContext::time);
		const MultiPoly s = MultiPoly::variable(ctx, PolyContext::shift);
		std::vector<std::pair<std::size_t, MultiPoly>> bind{{PolyContext::time, u - s}};
		for (const auto& [j, p] : amp)
			bind.emplace_back(prob.amplitude_var(j), p.swap_variables(PolyContext::time, PolyContext::shift));
		HarmonicSeries lhs(ctx), rhs(ctx);
		for (int m = -radius; m <= radius; ++m) {
			lhs.add(m, amp.at(m));
			rhs.add(m, amp.at(m).substitute(bind));
		}
		CheckReport r = compare(make_report(prob, "functional_relation"), lhs, rhs);
		r.note = scope;
		out.push_back(r);
	}
	{
		// Y(t + pi) - Y(t - pi) == 2 eps U(e^{it}) Y with Y = sum_m cA_m e^{imt}
		const MultiPoly u = MultiPoly::variable(ctx, PolyContext::time);
		const MultiPoly one = MultiPoly::constant(ctx, 1);
		HarmonicSeries lhs(ctx), y(ctx);
		for (const auto& [m, p] : amp) {
			y.add(m, p);
			MultiPoly d = p.substitute({{PolyContext::time, u + one}}) - p.substitute({{PolyContext::time, u - one}});
			lhs.add(m, m % 2 == 0 ? d : -d);
		}
		const HarmonicSeries rhs = hs_mul(laurent_series(ctx, prob.two_u, eps_power(ctx, 1)), y);
		CheckReport r = compare(make_report(prob, "difference_equation"), restrict(lhs, radius), restrict(rhs, radius));
		r.note = scope;
		out.push_back(r);
	}
	{
		CheckReport r = make_report(prob, "generating_derivative");
		if (!even) {
			r.status = CheckStatus::not_applicable;
			r.note = "not applicable: requires an even U";
		} else {
			// d/du cA(zeta, u) == Theta(eps, zeta) cA(-zeta, u)
			HarmonicSeries lhs(ctx), flipped(ctx);
			for (const auto& [m, p] : amp) {
				lhs.add(m, p.diff_t());
				flipped.add(m, m % 2 == 0 ? p : -p);
			}
			const HarmonicSeries rhs = hs_mul(theta.series, flipped);
			r = compare(r, restrict(lhs, radius), restrict(rhs, radius));
			r.note = scope;
		}
		out.push_back(r);
	}
	const std::string stab = stability_info(prob.two_u).describe();
	for (auto& r : out)
		if (r.status != CheckStatus::not_applicable)
			r.note += "; " + stab;
	return out;
}

StabilityInfo stability_info(const LaurentPoly& two_u)
{
	StabilityInfo info;
	bool real = true, imag = true;
	constexpr int samples = 720;
	for (int k = 0; k < samples; ++k) {
		const double t = 2 * std::numbers::pi * k / samples;
		const std::complex<double> v = 0.5 * two_u.evaluate(std::polar(1.0, t));
		info.max_abs_u = std::max(info.max_abs_u, std::abs(v));
		real = real && std::abs(v.imag()) <= 1e-12 * (1 + std::abs(v));
		imag = imag && std::abs(v.real()) <= 1e-12 * (1 + std::abs(v));
	}
	info.phase = real && imag ? StabilityInfo::Phase::zero
	             : real        ? StabilityInfo::Phase::real
	             : imag        ? StabilityInfo::Phase::imaginary
	                           : StabilityInfo::Phase::mixed;
	return info;
}

std::string StabilityInfo::describe() const
{
	char bound[64];
	std::snprintf(bound, sizeof bound, "%.6g", max_abs_u > 0 ? 1 / max_abs_u : 0.0);
	switch (phase) {
	case Phase::zero:
		return "stability: U vanishes on the unit circle";
	case Phase::real:
		return "stability: U real on the unit circle, Theta(eps,e^{it}) real for real eps (multipliers off the unit "
		       "circle); purely imaginary for imaginary eps with |eps| <= " +
		       std::string(bound);
	case Phase::imaginary:
		return "stability: U imaginary on the unit circle, Theta(eps,e^{it}) purely imaginary for real |eps| <= " +
		       std::string(bound);
	case Phase::mixed:
		break;
	}
	return "stability: U neither real nor imaginary on the unit circle, Theta(eps,e^{it}) not purely imaginary";
}

std::string render_amplitudes(const DifferenceProblem& prob)
{
	const GkTable g = gk_poly(prob.order);
	std::string out;
	const auto& names = prob.ctx->names();
	for (int m = -prob.reliable_radius(); m <= prob.reliable_radius(); ++m)
		out += "c" + names[prob.amplitude_var(m)] + " = " + secular_unchecked(prob, m, g).str() + "\n";
	return out;
}

} // namespace rgpert
