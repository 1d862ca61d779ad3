#include <doctest.h>

#include "golden.hpp"
#include "rgpert/expression.hpp"

using namespace rgpert;
using golden::parse_poly;
using golden::parse_series;

namespace {

GaussianRational gq(const char* re, const char* im = "0")
{
	return GaussianRational::from_string(re, im);
}

} // namespace

TEST_CASE("Gaussian rationals")
{
	const auto i = GaussianRational::i();
	CHECK(*gq_arith(i, i, ArithOp::mul) == GaussianRational(-1));
	CHECK(*gq_arith(1, gq("0", "-3"), ArithOp::div) == gq("0", "1/3"));
	CHECK(*gq_arith(gq("2/3", "1"), gq("2/3", "-1"), ArithOp::mul) == gq("13/9"));
	CHECK_FALSE(gq_arith(1, 0, ArithOp::div).has_value());
	CHECK_THROWS_AS((void)GaussianRational(0).inverse(), std::domain_error);

	// canonical form: lowest terms, positive denominator
	const auto q = gq("6/-8", "10/4");
	CHECK(q.re() == Rational(-3, 4));
	CHECK(q.im().get_den() == 2);
	CHECK(q.str() == "(-3/4 + 5/2*i)");

	// far beyond 64-bit
	GaussianRational big(1);
	for (int k = 0; k < 40; ++k)
		big *= gq("48165/1080");
	GaussianRational back = big;
	for (int k = 0; k < 40; ++k)
		back /= gq("48165/1080");
	CHECK(back == GaussianRational(1));
}

TEST_CASE("polynomial products and truncation")
{
	const auto ctx = make_context({"A1", "A2"}, {}, 3);
	const MultiPoly A1 = MultiPoly::variable(ctx, ctx->amplitude(0));
	const MultiPoly A2 = MultiPoly::variable(ctx, ctx->amplitude(1));
	const MultiPoly eps = MultiPoly::variable(ctx, PolyContext::eps);
	const MultiPoly t = MultiPoly::variable(ctx, PolyContext::time);

	CHECK((A1 + eps * t) * A2 == A1 * A2 + eps * t * A2);
	CHECK((eps.pow(3) * t * eps).is_zero());
	CHECK((A1 - MultiPoly::constant(ctx, 1)) * (A1 + MultiPoly::constant(ctx, 1)) ==
	      A1.pow(2) - MultiPoly::constant(ctx, 1));

	// no stored zeros, equality is structural
	MultiPoly p = A1 + A2;
	p -= A2;
	CHECK(p.size() == 1);
	CHECK(p == A1);
	CHECK(parse_poly(ctx, "A2*A1 + 1 - 1") == parse_poly(ctx, "A1*A2"));
}

TEST_CASE("t-derivatives and antiderivatives")
{
	const auto ctx = make_context({"A1", "A2"}, {}, 3);
	CHECK(parse_poly(ctx, "t^3/6").diff_t() == parse_poly(ctx, "t^2/2"));
	CHECK(parse_poly(ctx, "A1").diff_t().is_zero());
	CHECK(parse_poly(ctx, "eps*t^2*A2").diff_t() == parse_poly(ctx, "2*eps*t*A2"));
	CHECK(parse_poly(ctx, "t^2").antidiff_t() == parse_poly(ctx, "t^3/3"));
	CHECK(parse_poly(ctx, "A1*A2").antidiff_t() == parse_poly(ctx, "A1*A2*t"));
	CHECK(MultiPoly(ctx).antidiff_t().is_zero());
}

TEST_CASE("resolve_shift solves dP/dt + cP = R")
{
	const auto ctx = make_context({"A1", "A2"}, {}, 3);
	CHECK(resolve_shift(gq("0", "-3"), parse_poly(ctx, "A2")) == parse_poly(ctx, "i*A2/3"));
	CHECK(resolve_shift(gq("0", "-1"), parse_poly(ctx, "A1*A2")) == parse_poly(ctx, "i*A1*A2"));
	CHECK(resolve_shift(1, parse_poly(ctx, "t")) == parse_poly(ctx, "t - 1"));
	const MultiPoly R = parse_poly(ctx, "(2 + i)*t^3*A1 - eps*t*A2");
	const MultiPoly P = resolve_shift(gq("1/2", "-5"), R);
	CHECK(P.diff_t() + P * gq("1/2", "-5") == R);
	CHECK_THROWS_AS(resolve_shift(0, R), std::domain_error);
}

TEST_CASE("substitution")
{
	const auto ctx = make_context({"A"}, {}, 1);
	const std::size_t a = ctx->amplitude(0);
	const MultiPoly p = parse_poly(ctx, "A + eps*t*A^2");
	CHECK(p.substitute({{a, parse_poly(ctx, "A")}}) == p);
	// one step of the functional relation at order eps
	CHECK(p.substitute({{PolyContext::time, parse_poly(ctx, "t - s")}, {a, parse_poly(ctx, "A + eps*s*A^2")}}) == p);
	const auto ctx3 = make_context({"A"}, {}, 3);
	CHECK(parse_poly(ctx3, "t^2").substitute({{PolyContext::time, parse_poly(ctx3, "t - s")}}) ==
	      parse_poly(ctx3, "t^2 - 2*t*s + s^2"));
}

TEST_CASE("harmonic series products")
{
	const auto ctx = make_context({"A1", "A2"}, {}, 2);
	CHECK(hs_mul(parse_series(ctx, "A1*E"), parse_series(ctx, "A2*E^-1")) == parse_series(ctx, "A1*A2"));
	CHECK(hs_mul(parse_series(ctx, "E^-1"), parse_series(ctx, "A2*E^-1")) == parse_series(ctx, "A2*E^-2"));
	CHECK(hs_mul(parse_series(ctx, "A1*E + 3"), HarmonicSeries(ctx)).is_zero());
	// truncation applies inside the convolution
	CHECK(hs_mul(parse_series(ctx, "eps*E"), parse_series(ctx, "eps^2*E")).is_zero());
	// d/dt(e^{it} t) = e^{it}(1 + i t)
	CHECK(parse_series(ctx, "t*E").diff_t() == parse_series(ctx, "(1 + i*t)*E"));
}

TEST_CASE("numeric evaluation")
{
	const auto ctx = make_context({"A1", "A2"}, {}, 2);
	using C = std::complex<double>;
	CHECK(std::abs(eval_complex(parse_poly(ctx, "i*A1*A2*eps"), {{"A1", 1}, {"A2", 1}}, 0.25, 0) - C(0, 0.25)) < 1e-15);
	CHECK(std::abs(eval_complex(parse_poly(ctx, "t^2"), {}, 0, 3) - C(9)) < 1e-15);
	CHECK(std::abs(eval_complex(parse_poly(ctx, "A1^2 - 1"), {{"A1", 1}}, 0, 0)) < 1e-15);
	CHECK_THROWS_AS(eval_complex(parse_poly(ctx, "A1"), {}, 0, 0), std::invalid_argument);
}

TEST_CASE("expression grammar")
{
	const auto ast = parse_expression("i*(y1+y2)*(y3-y4)");
	CHECK(structurally_equal(*parse_expression(render(*ast)), *ast));
	CHECK(expression_symbols(*parse_expression("y^2 - 1")) == std::vector<std::string>{"y"});
	CHECK_THROWS_AS(parse_expression("y1 +* y2"), ParseError);

	const auto ctx = make_context({"y1", "y2"}, {}, 2);
	CHECK_THROWS_AS(expand_expression(*parse_expression("y2/(y1)"), ctx), ParseError);
	CHECK_THROWS_AS(expand_expression(*parse_expression("y3"), ctx), ParseError);
	CHECK_THROWS_AS(expand_expression(*parse_expression("y1^-1"), ctx), ParseError);
	CHECK_THROWS_AS(expand_expression(*parse_expression("t*y1"), ctx), ParseError);
	CHECK(parse_series(ctx, "2*y1*cos(t)") == parse_series(ctx, "y1*E + y1*E^-1"));
	CHECK(parse_series(ctx, "sin(2*t)") == parse_series(ctx, "(E^2 - E^-2)/(2*i)"));

	// direct evaluation agrees with the expanded form
	const auto e = parse_expression("eps*y1*y2*sin(3*t) + (1 + 2*i)*y1^3/7");
	const HarmonicSeries s = expand_expression(*e, ctx);
	const std::complex<double> y1(0.3, -0.2), y2(-1.1, 0.4);
	const double eps = 0.3, t = 0.7;
	std::complex<double> sum = 0;
	for (const auto& [m, p] : s.entries())
		sum += eval_complex(p, {{"y1", y1}, {"y2", y2}}, eps, 0) * std::polar(1.0, m * t);
	CHECK(std::abs(sum - evaluate_expression(*e, {{"y1", y1}, {"y2", y2}}, eps, t)) < 1e-13);
}
