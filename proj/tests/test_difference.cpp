#include <doctest.h>

#include <cmath>
#include <map>

#include "golden.hpp"
#include "rgpert/difference.hpp"

using namespace rgpert;

namespace {

using UPoly = std::vector<GaussianRational>; // coefficients in u, index = power

Rational q(long a, long b)
{
	Rational r(a, b);
	r.canonicalize();
	return r;
}

Rational binom(int n, int k)
{
	Rational r = 1;
	for (int i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	r.canonicalize();
	return r;
}

// f(u+1) - f(u-1) = r with f(0) = 0, solved from the top degree down
UPoly solve_delta(const UPoly& r)
{
	const int D = static_cast<int>(r.size()) - 1;
	UPoly f(static_cast<std::size_t>(D + 2), GaussianRational(0));
	for (int e = D; e >= 0; --e) {
		GaussianRational rhs = r[static_cast<std::size_t>(e)];
		for (int d = e + 3; d <= D + 1; d += 2)
			rhs -= f[static_cast<std::size_t>(d)] * GaussianRational(2 * binom(d, d - e));
		f[static_cast<std::size_t>(e + 1)] = rhs / GaussianRational(Rational(2 * (e + 1)));
	}
	return f;
}

void axpy(UPoly& y, const GaussianRational& a, const UPoly& x)
{
	if (y.size() < x.size())
		y.resize(x.size(), GaussianRational(0));
	for (std::size_t d = 0; d < x.size(); ++d)
		y[d] += a * x[d];
}

// f_{m,k}(u) as a map from the amplitude index to a polynomial in u, built
// straight from (-1)^m (f_{m,k}(u+1) - f_{m,k}(u-1)) = sum_l alpha_l f_{m-l,k-1}(u).
MultiPoly recursion_oracle(const DifferenceProblem& prob, int m)
{
	using Level = std::map<int, std::map<int, UPoly>>;
	const int reach = prob.two_u.reach(), K = prob.order;
	Level level;
	for (int mm = -std::abs(m) - K * reach; mm <= std::abs(m) + K * reach; ++mm)
		level[mm][mm] = {GaussianRational(1)};
	const auto& ctx = prob.ctx;
	MultiPoly out(ctx);
	auto emit = [&](int k, const std::map<int, UPoly>& f) {
		for (const auto& [a, p] : f)
			for (std::size_t d = 0; d < p.size(); ++d) {
				if (p[d].is_zero())
					continue;
				Exponents e(ctx->size(), 0);
				e[PolyContext::eps] = static_cast<std::uint16_t>(k);
				e[PolyContext::time] = static_cast<std::uint16_t>(d);
				e[prob.amplitude_var(a)] = 1;
				out.add_term(e, p[d]);
			}
	};
	emit(0, level[m]);
	for (int k = 1; k <= K; ++k) {
		Level next;
		const int span = std::abs(m) + (K - k) * reach;
		for (int mm = -span; mm <= span; ++mm) {
			std::map<int, UPoly> rhs;
			for (const auto& [l, alpha] : prob.two_u.coeffs()) {
				const GaussianRational c = (mm % 2 == 0) ? alpha : -alpha;
				for (const auto& [a, p] : level[mm - l])
					axpy(rhs[a], c, p);
			}
			for (auto& [a, r] : rhs)
				next[mm][a] = solve_delta(r);
		}
		level = std::move(next);
		emit(k, level[m]);
	}
	return out;
}

LaurentPoly two_cos2()
{
	return LaurentPoly({{2, 1}, {-2, 1}});
}

LaurentPoly lopsided()
{
	return LaurentPoly({{1, 1}, {0, GaussianRational(q(1, 2))}, {-1, GaussianRational(0, -1)}});
}

std::vector<Rational> upoly(std::initializer_list<Rational> c)
{
	return c;
}

} // namespace

TEST_CASE("g_k: printed list, Gamma form and recursion")
{
	const GkTable tab = gk_poly(8);
	const Rational h(1, 2);
	CHECK(tab.g[0] == upoly({1}));
	CHECK(tab.g[1] == upoly({0, h}));
	CHECK(tab.g[2] == upoly({0, 0, q(1, 8)}));
	CHECK(tab.g[3] == upoly({0, q(-1, 48), 0, q(1, 48)}));
	CHECK(tab.g[4] == upoly({0, 0, q(-4, 384), 0, q(1, 384)}));
	// u (u^2 - 1)(u^2 - 9) = u^5 - 10 u^3 + 9 u
	CHECK(tab.g[5] == upoly({0, q(9, 3840), 0, q(-10, 3840), 0, q(1, 3840)}));
	for (int k = 0; k <= 8; ++k) {
		INFO("k = ", k);
		CHECK(tab.g[static_cast<std::size_t>(k)] == gk_closed_form(k));
		if (k > 0)
			for (int num = -7; num <= 7; ++num) {
				const Rational u = q(num, 3);
				CHECK(eval_upoly(tab.g[static_cast<std::size_t>(k)], u + 1) -
				          eval_upoly(tab.g[static_cast<std::size_t>(k)], u - 1) ==
				      eval_upoly(tab.g[static_cast<std::size_t>(k) - 1], u));
			}
	}
}

TEST_CASE("generating function of g_k")
{
	// (sqrt(1 + z^2) + z)^u against sum_k g_k(u) (2z)^k, exactly mod z^{K+1}
	const int K = 8;
	const GkTable tab = gk_poly(K);
	std::vector<Rational> base(K + 1, 0);
	for (int n = 0; 2 * n <= K; ++n) {
		// binom(1/2, n)
		Rational b = 1;
		for (int i = 0; i < n; ++i)
			b = b * (q(1, 2) - i) / (i + 1);
		base[static_cast<std::size_t>(2 * n)] = b;
	}
	base[1] += 1;
	std::vector<Rational> power(K + 1, 0);
	power[0] = 1;
	for (int u = 1; u <= 4; ++u) {
		std::vector<Rational> next(K + 1, 0);
		for (int a = 0; a <= K; ++a)
			for (int b = 0; a + b <= K; ++b)
				next[static_cast<std::size_t>(a + b)] += power[static_cast<std::size_t>(a)] * base[static_cast<std::size_t>(b)];
		power = next;
		for (int k = 0; k <= K; ++k) {
			Rational two_k = 1;
			for (int i = 0; i < k; ++i)
				two_k *= 2;
			INFO("u = ", u, ", k = ", k);
			CHECK(eval_upoly(tab.g[static_cast<std::size_t>(k)], u) * two_k == power[static_cast<std::size_t>(k)]);
		}
	}
}

TEST_CASE("N_k and the derivatives of g_k at 0")
{
	const std::vector<Rational> printed{1, q(1, 6), q(3, 40), q(5, 112), q(35, 1152)};
	for (int k = 0; k < 5; ++k)
		CHECK(n_const(k) == printed[static_cast<std::size_t>(k)]);
	const GkTable tab = gk_poly(9);
	for (int k = 0; 2 * k + 1 <= 9; ++k) {
		Rational p2 = 1;
		for (int i = 0; i < 2 * k + 1; ++i)
			p2 *= 2;
		const Rational sign = k % 2 == 0 ? 1 : -1;
		CHECK(tab.g[static_cast<std::size_t>(2 * k + 1)][1] == sign * n_const(k) / p2);
		if (2 * k + 2 <= 9)
			CHECK(tab.g[static_cast<std::size_t>(2 * k + 2)][1] == 0);
	}
	// sum (-1)^k N_k z^{2k+1} = asinh z
	double z = 0.3, sum = 0;
	for (int k = 0; k < 40; ++k)
		sum += (k % 2 ? -1 : 1) * n_const(k).get_d() * std::pow(z, 2 * k + 1);
	CHECK(std::abs(sum - std::asinh(z)) < 1e-15);
}

TEST_CASE("C_{k,j} generating polynomials")
{
	CHECK(ckj_coeffs(lopsided(), 0) == LaurentPoly({{0, 1}}));
	CHECK(ckj_coeffs(two_cos2(), 2) == LaurentPoly({{4, 1}, {0, 2}, {-4, 1}}));
	CHECK(ckj_coeffs(two_cos2(), 2).at(0) == GaussianRational(2));
	CHECK(ckj_coeffs(lopsided(), 1) == lopsided().inverted());
	CHECK(ckj_coeffs(lopsided(), 2) == lopsided().inverted() * lopsided().inverted().reflected());
}

TEST_CASE("secular coefficients against the direct recursion")
{
	for (const auto& prob : {difference_problem(two_cos2(), 4, 10), difference_problem(lopsided(), 3, 6)}) {
		for (int m = -prob.reliable_radius(); m <= prob.reliable_radius(); ++m) {
			INFO("2U = ", prob.two_u.str(), ", m = ", m);
			CHECK(secular_pm(prob, m) == recursion_oracle(prob, m));
		}
	}
}

TEST_CASE("eps^1 and eps^2 terms")
{
	for (const auto& prob : {difference_problem(two_cos2(), 4, 10), difference_problem(lopsided(), 3, 6)}) {
		const auto& ctx = prob.ctx;
		const auto& alpha = prob.two_u;
		const MultiPoly eps = MultiPoly::variable(ctx, PolyContext::eps);
		const MultiPoly u = MultiPoly::variable(ctx, PolyContext::time);
		const int reach = alpha.reach();
		for (int m = -prob.reliable_radius(); m <= prob.reliable_radius(); ++m) {
			MultiPoly first(ctx), second(ctx);
			for (int j = -2 * reach; j <= 2 * reach; ++j) {
				const MultiPoly A = MultiPoly::variable(ctx, prob.amplitude_var(m + j));
				first += A * alpha.at(-j) * GaussianRational(Rational(m % 2 == 0 ? 1 : -1, 2));
				GaussianRational s2(0);
				for (const auto& [l, a] : alpha.coeffs())
					s2 += (l % 2 == 0 ? a : -a) * alpha.at(-j - l);
				second += A * s2 * GaussianRational(q(1, 8));
			}
			const MultiPoly P = secular_pm(prob, m);
			INFO("m = ", m);
			CHECK(P.eps_part(0) == MultiPoly::variable(ctx, prob.amplitude_var(m)));
			CHECK(P.eps_part(1) == eps * u * first);
			CHECK(P.eps_part(2) == eps.pow(2) * u.pow(2) * second);
		}
	}
	const DifferenceProblem zero = difference_problem(LaurentPoly(), 3, 2);
	CHECK(secular_pm(zero, 1) == MultiPoly::variable(zero.ctx, zero.amplitude_var(1)));
}

TEST_CASE("Theta series")
{
	const DifferenceProblem prob = difference_problem(two_cos2(), 5, 12);
	const ThetaSeries theta = theta_series(prob);
	for (const auto& [l, p] : theta.series.entries())
		CHECK(l % 2 == 0);
	// sinh Theta = eps U
	HarmonicSeries epsU(prob.ctx);
	for (const auto& [l, a] : prob.two_u.coeffs())
		epsU.add(l, MultiPoly::variable(prob.ctx, PolyContext::eps) * a * GaussianRational(q(1, 2)));
	CHECK(theta_sinh(prob, theta) == epsU);
	// leading term eps U, then -N_1 (eps U)^3
	CHECK(theta.series.truncated(1) == epsU);
}

TEST_CASE("resummed amplitudes agree with the secular coefficients")
{
	const DifferenceProblem prob = difference_problem(two_cos2(), 4, 10);
	for (int m = -2; m <= 2; ++m) {
		const MultiPoly cf = closed_form_amplitude(prob, m);
		CHECK(cf == secular_pm(prob, m));
		CHECK(cf.eps_part(0) == MultiPoly::variable(prob.ctx, prob.amplitude_var(m)));
	}
	CHECK_THROWS_AS(closed_form_amplitude(difference_problem(lopsided(), 3, 6), 0), std::invalid_argument);
	CHECK_THROWS_AS(secular_pm(prob, 3), WindowError);
}

TEST_CASE("inversion through the functional relation at s = t")
{
	// P_m(eps, -u, P(eps, u, A)) = A_m on a window wide enough for the composition
	const DifferenceProblem prob = difference_problem(two_cos2(), 3, 2 * 3 * 2 + 2);
	const int inner = 2 + 3 * 2;
	std::vector<std::pair<std::size_t, MultiPoly>> bindings;
	for (int m = -inner; m <= inner; ++m)
		bindings.emplace_back(prob.amplitude_var(m), secular_pm(prob, m));
	const MultiPoly minus_u = MultiPoly::variable(prob.ctx, PolyContext::time) * GaussianRational(-1);
	for (int m = -2; m <= 2; ++m) {
		const MultiPoly outer = secular_pm(prob, m).substitute({{PolyContext::time, minus_u}});
		CHECK(outer.substitute(bindings) == MultiPoly::variable(prob.ctx, prob.amplitude_var(m)));
	}
}

TEST_CASE("identity checks")
{
	const auto reports = check_difference_identities(difference_problem(two_cos2(), 3, 8));
	REQUIRE(reports.size() == 3);
	for (const auto& r : reports) {
		INFO(r.render());
		CHECK(r.status == CheckStatus::pass);
	}
	const auto odd = check_difference_identities(difference_problem(lopsided(), 3, 6));
	CHECK(odd[0].status == CheckStatus::pass);
	CHECK(odd[1].status == CheckStatus::pass);
	CHECK(odd[2].status == CheckStatus::not_applicable);

	const auto builtin = check_difference_identities(difference_problem(builtin_spec("ex_difference")));
	for (const auto& r : builtin)
		CHECK(r.status == CheckStatus::pass);
}

TEST_CASE("stability classification on the unit circle")
{
	const StabilityInfo real = stability_info(two_cos2());
	CHECK(real.phase == StabilityInfo::Phase::real);
	CHECK(std::abs(real.max_abs_u - 1) < 1e-9);
	const StabilityInfo imag = stability_info(LaurentPoly({{1, 1}, {-1, -1}}));
	CHECK(imag.phase == StabilityInfo::Phase::imaginary);
	CHECK(stability_info(lopsided()).phase == StabilityInfo::Phase::mixed);
	CHECK(stability_info(LaurentPoly()).phase == StabilityInfo::Phase::zero);
}
