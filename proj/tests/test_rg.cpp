#include <doctest.h>

#include "golden.hpp"

using namespace rgpert;
using golden::parse_poly;
using golden::parse_series;

TEST_CASE("renormalized amplitudes are the resonant coefficients")
{
	const SecularTable table = golden::builtin_table("ex_cd", 4);
	const auto amps = renormalized_amplitudes(table);
	REQUIRE(amps.size() == 2);
	CHECK(amps[0] == table.components[0].at(1));
	CHECK(amps[1] == table.components[1].at(-1));
	CHECK(amps[0].eps_part(0) == parse_poly(table.ctx, "A1"));
}

TEST_CASE("RG fields are autonomous with the class-specific leading order")
{
	for (const char* name : {"ex_cd", "ex_oscillators", "ex_bt", "ex_third", "ex_scalar1"}) {
		INFO(name);
		const SecularTable table = golden::builtin_table(name);
		const RGSystem rg = derive_rg(table);
		for (const auto& f : rg.field) {
			CHECK(f.degree(PolyContext::time) <= 0);
			CHECK(f.degree(PolyContext::shift) <= 0);
		}
		if (table.spec.cls == SpecClass::semisimple)
			for (const auto& f : rg.field)
				CHECK(f.eps_part(0).is_zero());
	}
	const SecularTable bt = golden::builtin_table("ex_bt");
	const RGSystem rg = derive_rg(bt);
	CHECK(rg.field[0].eps_part(0) == parse_poly(bt.ctx, "A2"));
	CHECK(rg.field[1].eps_part(0).is_zero());
}

TEST_CASE("first-order autonomous scalar equation: the RG equation is the equation itself")
{
	const SecularTable table = golden::builtin_table("ex_scalar1");
	CHECK(derive_rg(table).field[0] == parse_poly(table.ctx, "eps*(A1^2 - 1)"));
	const RenExpansion ren = renormalized_expansion(table);
	CHECK(ren.components[0] == parse_series(table.ctx, "A1"));
}

TEST_CASE("V = 0: Y_j = cA_j e^{i m_j t}")
{
	const SecularTable table =
	    expand(parse_spec(R"J({"class": "semisimple", "linear_part": [3, 0], "V": ["0", "0"], "order": 2})J"));
	const RenExpansion ren = renormalized_expansion(table);
	CHECK(ren.components[0] == parse_series(table.ctx, "A1*E^3"));
	CHECK(ren.components[1] == parse_series(table.ctx, "A2"));
	for (const auto& f : derive_rg(table).field)
		CHECK(f.is_zero());
}

TEST_CASE("inversion of the forced pair at order eps^2")
{
	const SecularTable table = golden::builtin_table("ex_cd", 3);
	const auto inv = invert_amplitudes(table);
	CHECK(inv[0].truncated(3) == parse_poly(table.ctx, "A1 + i/3*A1*eps^2*t*(3*A1*A2 + 1)"));
	CHECK(inv[0].eps_part(0) == parse_poly(table.ctx, "A1"));
	CHECK(inv[1].eps_part(0) == parse_poly(table.ctx, "A2"));
}

TEST_CASE("RG derivation acts as the vector field")
{
	const SecularTable table = golden::builtin_table("ex_cd", 3);
	const RGSystem rg = derive_rg(table);
	const Derivation D = rg_derivation(rg);
	CHECK(D(parse_poly(table.ctx, "A1")) == rg.field[0]);
	CHECK(D(parse_poly(table.ctx, "A1*A2")) ==
	      rg.field[0] * parse_poly(table.ctx, "A2") + rg.field[1] * parse_poly(table.ctx, "A1"));
}

TEST_CASE("polar form")
{
	SUBCASE("forced pair at K = 4")
	{
		const RGSystem rg = derive_rg(golden::builtin_table("ex_cd", 4));
		const PolarSystem polar = polar_transform(rg, parse_polar_pairs("1:2", 2));
		TrigPoly dR(1, 0);
		dR.add(4, {4}, {}, true, {0, 1}, Rational(1, 3));
		CHECK(polar.dR[0] == dR);
		TrigPoly dth(1, 0);
		dth.add(2, {0}, {}, false, {0, 0}, Rational(-1, 3));
		dth.add(2, {2}, {}, false, {0, 0}, -1);
		dth.add(4, {0}, {}, false, {0, 0}, Rational(-2, 54));
		dth.add(4, {2}, {}, false, {0, 0}, Rational(-57, 54));
		dth.add(4, {4}, {}, false, {0, 0}, -1);
		dth.add(4, {3}, {}, false, {0, 1}, Rational(36, 54));
		CHECK(polar.dtheta[0] == dth);
		CHECK(polar.render().find("dR/dt = 1/3*eps^4*R^4*sin(theta)") != std::string::npos);
	}
	SUBCASE("linear rotation")
	{
		const SecularTable table = golden::builtin_table("ex_cd", 2);
		RGSystem rg{table.spec, table.ctx, {parse_poly(table.ctx, "-2/3*i*A1"), parse_poly(table.ctx, "2/3*i*A2")}};
		const PolarSystem polar = polar_transform(rg, {{0, 1}});
		CHECK(polar.dR[0].is_zero());
		TrigPoly c(1, 0);
		c.add(0, {0}, {}, false, {0, 0}, Rational(-2, 3));
		CHECK(polar.dtheta[0] == c);
	}
	SUBCASE("pairing errors")
	{
		const RGSystem rg = derive_rg(golden::builtin_table("ex_cd", 2));
		CHECK_THROWS_AS(polar_transform(rg, {{0, 0}}), PolarPairingError);
		CHECK_THROWS_AS(parse_polar_pairs("1:3", 2), PolarPairingError);
		CHECK_THROWS_AS(parse_polar_pairs("1-2", 2), PolarPairingError);
		RGSystem broken = rg;
		broken.field[1] = broken.field[1] + parse_poly(rg.ctx, "eps^2*A1");
		CHECK_THROWS_AS(check_polar_pairing(broken, {{0, 1}}), PolarPairingError);
	}
}

TEST_CASE("polar form evaluates like the complex field")
{
	const RGSystem rg = derive_rg(golden::builtin_table("ex_oscillators", 4));
	const PolarSystem polar = polar_transform(rg, {{0, 1}, {2, 3}});
	const double eps = 0.3;
	const std::vector<double> R{0.7, 1.2}, th{0.4, -1.1};
	const std::map<std::string, std::complex<double>> A{{"A1", std::polar(R[0], th[0])},
	                                                    {"A2", std::polar(R[0], -th[0])},
	                                                    {"A3", std::polar(R[1], th[1])},
	                                                    {"A4", std::polar(R[1], -th[1])}};
	for (std::size_t p = 0; p < 2; ++p) {
		// dA/dt = (dR/dt + i R dtheta/dt) e^{i theta}
		const std::complex<double> dA = eval_complex(rg.field[2 * p], A, eps, 0);
		const std::complex<double> expected =
		    std::complex<double>(polar.dR[p].evaluate(eps, R, th, {}), R[p] * polar.dtheta[p].evaluate(eps, R, th, {})) *
		    std::polar(1.0, th[p]);
		CHECK(std::abs(dA - expected) < 1e-12);
	}
}
