#include <doctest.h>

#include <random>

#include "golden.hpp"
#include "rgpert/verify.hpp"

using namespace rgpert;

namespace {

bool all_pass(const std::vector<CheckReport>& reports, std::string& log)
{
	bool ok = true;
	for (const auto& r : reports) {
		if (!r.passed())
			log += r.render() + "\n";
		ok = ok && r.passed();
	}
	return ok;
}

std::map<std::string, std::complex<double>> point(const ContextPtr& ctx, const std::vector<std::complex<double>>& v)
{
	std::map<std::string, std::complex<double>> out;
	for (std::size_t k = 0; k < ctx->amplitude_count(); ++k)
		out[ctx->name(ctx->amplitude(k))] = v[k];
	return out;
}

} // namespace

TEST_CASE("identity suite on the builtins")
{
	for (const char* name : {"ex_cd", "ex_oscillators", "ex_bt", "ex_third", "ex_scalar1"}) {
		INFO(name);
		std::string log;
		CHECK_MESSAGE(all_pass(run_all_checks(builtin_spec(name)), log), log);
	}
}

TEST_CASE("identity suite on seeded random specs")
{
	for (SpecClass cls : {SpecClass::semisimple, SpecClass::nilpotent, SpecClass::scalar}) {
		for (std::uint64_t seed = 1; seed <= 20; ++seed) {
			const ODESystemSpec spec = random_spec(cls, seed, 1 + static_cast<int>(seed % 3));
			INFO(spec.name, " V = ", nlohmann::json(spec.V_src).dump());
			CHECK(spec.dimension() <= 2);
			CHECK(spec.order <= 3);
			std::string log;
			CHECK_MESSAGE(all_pass(run_all_checks(spec, seed), log), log);
		}
	}
	// seeds reproduce
	CHECK(spec_to_json(random_spec(SpecClass::nilpotent, 11, 3)) == spec_to_json(random_spec(SpecClass::nilpotent, 11, 3)));
}

TEST_CASE("functional relation cross-checked numerically")
{
	// P(eps, t, A) against P(eps, t - s, cA(eps, s, A)) in floating point:
	// the two differ only by the truncated eps^{K+1} tail.
	std::mt19937_64 rng(5);
	std::uniform_real_distribution<double> u(-0.8, 0.8);
	for (std::uint64_t seed = 1; seed <= 5; ++seed) {
		const SecularTable table = expand(random_spec(SpecClass::semisimple, seed, 3));
		const auto& ctx = table.ctx;
		const double eps = 1e-3, t = 0.9, s = 0.35;
		std::vector<std::complex<double>> A;
		for (std::size_t k = 0; k < ctx->amplitude_count(); ++k)
			A.emplace_back(u(rng), u(rng));
		std::vector<std::complex<double>> cA;
		for (std::size_t k = 0; k < ctx->amplitude_count(); ++k)
			cA.push_back(eval_complex(table.amplitude_coefficient(k), point(ctx, A), eps, s));
		for (const auto& comp : table.components)
			for (const auto& [m, p] : comp.entries()) {
				const auto lhs = eval_complex(p, point(ctx, A), eps, t);
				const auto rhs = eval_complex(p, point(ctx, cA), eps, t - s);
				CHECK(std::abs(lhs - rhs) < 1e-10);
			}
	}
}

TEST_CASE("group law of the first-order scalar equation against the Moebius form")
{
	const SecularTable table = golden::builtin_table("ex_scalar1");
	CHECK(check_group_property(table).status == CheckStatus::pass);
	// P(t) = (A cosh x - sinh x)/(cosh x - A sinh x), x = eps t
	auto mobius = [](double A, double x) { return (A * std::cosh(x) - std::sinh(x)) / (std::cosh(x) - A * std::sinh(x)); };
	const MultiPoly& P = table.components[0].at(0);
	const double eps = 0.05, t = 0.7, s = 0.4, A = 0.3;
	const double Ps = eval_complex(P, {{"A1", A}}, eps, s).real();
	const double composed = eval_complex(P, {{"A1", Ps}}, eps, t).real();
	CHECK(std::abs(composed - mobius(A, eps * (t + s))) < 1e-9);
	CHECK(std::abs(mobius(mobius(A, eps * s), eps * t) - mobius(A, eps * (t + s))) < 1e-14);
}

TEST_CASE("negative controls")
{
	const SecularTable table = golden::builtin_table("ex_cd", 3);
	const SecularTable bad = corrupt_table(table);
	const CheckReport fr = check_functional_relation(bad);
	CHECK(fr.status == CheckStatus::fail);
	REQUIRE(fr.mismatch.has_value());
	CHECK_FALSE(fr.mismatch->monomial.empty());
	CHECK(fr.render().rfind("FAIL functional_relation", 0) == 0);
	CHECK(fr.render().find("\"monomial\"") != std::string::npos);
	CHECK(check_residual(bad).status == CheckStatus::fail);

	// raw table still has secular t
	CHECK(check_no_secular(table).status == CheckStatus::fail);
	CHECK(check_no_secular(renormalized_expansion(table)).status == CheckStatus::pass);
}

TEST_CASE("homogeneity applies to autonomous semisimple tables only")
{
	CHECK(check_homogeneity(golden::builtin_table("ex_oscillators", 3)).status == CheckStatus::pass);
	const CheckReport na = check_homogeneity(golden::builtin_table("ex_cd", 3));
	CHECK(na.status == CheckStatus::not_applicable);
	CHECK(na.render().rfind("N/A homogeneity", 0) == 0);
}

TEST_CASE("renormalized residual with the RG field")
{
	const SecularTable table = golden::builtin_table("ex_cd", 2);
	CHECK(check_residual(renormalized_expansion(table), derive_rg(table)).status == CheckStatus::pass);
	CHECK(check_residual(golden::builtin_table("ex_third")).status == CheckStatus::pass);
}

TEST_CASE("machine format round trips")
{
	for (const char* name : {"ex_cd", "ex_bt", "ex_third"}) {
		INFO(name);
		const SecularTable table = golden::builtin_table(name, 3);
		const SecularTable back = table_from_json(nlohmann::json::parse(table_to_json(table).dump()));
		CHECK(back.components == table.components);
		CHECK(table_to_json(back) == table_to_json(table));

		const RGSystem rg = derive_rg(table);
		const RenExpansion ren = renormalized_expansion(table);
		const auto [rg2, ren2] = rg_from_json(nlohmann::json::parse(rg_to_json(rg, ren).dump()));
		CHECK(rg2.field == rg.field);
		CHECK(ren2.components == ren.components);
	}
	CHECK_THROWS(table_from_json(nlohmann::json::parse(R"J({"spec": {}})J")));
}
