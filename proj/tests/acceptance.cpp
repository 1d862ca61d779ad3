// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <iostream>
#include <sstream>

#include "golden.hpp"
#include "rgpert/cli.hpp"
#include "rgpert/difference.hpp"
#include "rgpert/numeric.hpp"
#include "rgpert/verify.hpp"

using namespace rgpert;

namespace {

const std::vector<std::string> builtins{"ex_cd", "ex_oscillators", "ex_bt", "ex_third", "ex_scalar1"};

struct Outcome {
	bool ok = true;
	std::string detail;

	void require(bool cond, const std::string& what)
	{
		if (!cond) {
			ok = false;
			detail += (detail.empty() ? "" : "; ") + what;
		}
	}
	void add(const std::vector<golden::Item>& items)
	{
		require(golden::all_ok(items), golden::describe_failures(items));
	}
};

Rational q(long a, long b)
{
	Rational r(a, b);
	r.canonicalize();
	return r;
}

Outcome criterion1()
{
	Outcome o;
	std::ostringstream out, err;
	const int rc = run_cli({"expand", "--builtin", "ex_cd", "--order", "5", "--format", "machine"}, out, err);
	o.require(rc == exit_ok, "expand exited with " + std::to_string(rc) + ": " + err.str());
	if (rc == exit_ok)
		o.add(golden::ex_cd_table(table_from_json(nlohmann::json::parse(out.str()))));
	return o;
}

Outcome criterion2()
{
	Outcome o;
	o.add(golden::ex_cd_rg());
	o.add(golden::bt());
	o.add(golden::oscillators());
	o.add(golden::third());
	o.add(golden::scalar1());
	o.require(builtin_spec("ex_scalar1").extra.contains("paper_discrepancy"), "ex_scalar1 discrepancy not recorded");
	return o;
}

Outcome criterion3()
{
	Outcome o;
	auto run = [&](const ODESystemSpec& spec, std::optional<std::uint64_t> seed) {
		for (const auto& r : run_all_checks(spec, seed))
			o.require(r.passed(), r.render());
	};
	for (const auto& name : builtins)
		run(builtin_spec(name), {});
	for (SpecClass cls : {SpecClass::semisimple, SpecClass::nilpotent, SpecClass::scalar})
		for (std::uint64_t seed = 1; seed <= 20; ++seed) {
			const ODESystemSpec spec = random_spec(cls, seed, 1 + static_cast<int>(seed % 3));
			o.require(spec.dimension() <= 2 && spec.order <= 3, spec.name + " too large");
			run(spec, seed);
		}
	const SecularTable bad = corrupt_table(golden::builtin_table("ex_cd", 3));
	const CheckReport fr = check_functional_relation(bad);
	o.require(fr.status == CheckStatus::fail && fr.mismatch.has_value(), "corrupted table was not caught");
	return o;
}

Outcome criterion4()
{
	Outcome o;
	const GkTable tab = gk_poly(8);
	for (int k = 0; k <= 8; ++k) {
		o.require(tab.g[static_cast<std::size_t>(k)] == gk_closed_form(k), "g_" + std::to_string(k) + " closed form");
		if (k > 0)
			for (int num = -5; num <= 5; ++num) {
				const Rational u = q(num, 2);
				o.require(eval_upoly(tab.g[static_cast<std::size_t>(k)], u + 1) -
				                  eval_upoly(tab.g[static_cast<std::size_t>(k)], u - 1) ==
				              eval_upoly(tab.g[static_cast<std::size_t>(k) - 1], u),
				          "g_" + std::to_string(k) + " difference relation");
			}
	}
	const std::vector<Rational> printed{1, q(1, 6), q(3, 40), q(5, 112), q(35, 1152)};
	for (int k = 0; k < 5; ++k)
		o.require(n_const(k) == printed[static_cast<std::size_t>(k)], "N_" + std::to_string(k));

	// 2U = z^2 + z^-2
	const DifferenceProblem prob = difference_problem(LaurentPoly({{2, 1}, {-2, 1}}), 4, 10);
	const auto& ctx = prob.ctx;
	const MultiPoly eps = MultiPoly::variable(ctx, PolyContext::eps);
	const MultiPoly u = MultiPoly::variable(ctx, PolyContext::time);
	for (int m = -prob.reliable_radius(); m <= prob.reliable_radius(); ++m) {
		MultiPoly first(ctx), second(ctx);
		for (int j = -4; j <= 4; ++j) {
			const MultiPoly A = MultiPoly::variable(ctx, prob.amplitude_var(m + j));
			first += A * prob.two_u.at(-j) * GaussianRational(q(m % 2 == 0 ? 1 : -1, 2));
			GaussianRational s2(0);
			for (const auto& [l, a] : prob.two_u.coeffs())
				s2 += (l % 2 == 0 ? a : -a) * prob.two_u.at(-j - l);
			second += A * s2 * GaussianRational(q(1, 8));
		}
		const MultiPoly P = secular_pm(prob, m);
		const std::string tag = "P_" + std::to_string(m);
		o.require(P.eps_part(1) == eps * u * first, tag + " eps^1");
		o.require(P.eps_part(2) == eps.pow(2) * u.pow(2) * second, tag + " eps^2");
		o.require(closed_form_amplitude(prob, m) == P, tag + " closed form");
	}
	for (const auto& r : check_difference_identities(difference_problem(builtin_spec("ex_difference"))))
		o.require(r.passed(), r.render());
	for (const auto& r : check_difference_identities(prob))
		o.require(r.passed(), r.render());
	return o;
}

Outcome criterion5()
{
	Outcome o;
	const SecularTable table = golden::builtin_table("ex_oscillators", 3);
	const auto& freq = table.spec.frequencies;
	for (std::size_t j = 0; j < table.components.size(); ++j)
		for (const auto& [m, p] : table.components[j].entries())
			for (const auto& [e, c] : p.terms()) {
				int w = 0;
				for (std::size_t k = 0; k < freq.size(); ++k)
					w += freq[k] * e[table.ctx->amplitude(k)];
				o.require(w == m, "weight " + std::to_string(w) + " at harmonic " + std::to_string(m));
			}
	o.require(check_homogeneity(table).passed(), "homogeneity check");

	for (std::uint64_t seed = 1; seed <= 5; ++seed) {
		const ODESystemSpec spec = random_spec(SpecClass::semisimple, seed, 3, true);
		const SecularTable t = expand(spec);
		const RGSystem rg = derive_rg(t);
		const auto V = expand_forcing(spec, state_context(spec));
		const MultiPoly eps = MultiPoly::variable(t.ctx, PolyContext::eps);
		for (std::size_t j = 0; j < rg.field.size(); ++j) {
			o.require(V[j].size() <= 1, spec.name + " forcing has harmonics");
			o.require(rg.field[j] == eps * V[j].at(0).with_context(t.ctx), spec.name + " field is not eps*V");
		}
	}
	return o;
}

Outcome criterion6()
{
	Outcome o;
	const SecularTable table = golden::builtin_table("ex_cd", 4);
	const PairRun a = run_pair_comparison(table, 0.25, 1.3, 2.1, 40.0, 0.01, 2, 4);
	const PairRun b = run_pair_comparison(table, 0.125, 1.3, 2.1, 40.0, 0.01, 2, 4);
	o.require(a.conjugate_defect < 1e-8 && b.conjugate_defect < 1e-8, "conjugate defect");
	const double ratio = a.deviation / b.deviation;
	o.require(ratio >= 6, "deviation ratio " + std::to_string(ratio));
	const ODESystemSpec rot =
	    parse_spec(R"J({"class": "semisimple", "linear_part": [1, -2], "V": ["0", "0"], "order": 1})J");
	const double rk4 = rk4_convergence_ratio(rot, 40.0, 0.1);
	o.require(rk4 > 14 && rk4 < 18, "RK4 ratio " + std::to_string(rk4));
	o.detail += (o.detail.empty() ? "" : "; ") + ("ratio " + std::to_string(ratio) + ", RK4 " + std::to_string(rk4));
	return o;
}

Outcome criterion7()
{
	Outcome o;
	for (const auto& name : builtins) {
		const CheckReport r = check_inversion(golden::builtin_table(name));
		o.require(r.passed(), r.render());
	}
	// difference builtin: P_m(eps, -u, P(eps, u, A)) = A_m
	const DifferenceProblem prob = difference_problem(LaurentPoly({{2, 1}, {-2, 1}}), 3, 14);
	std::vector<std::pair<std::size_t, MultiPoly>> bindings;
	for (int m = -8; m <= 8; ++m)
		bindings.emplace_back(prob.amplitude_var(m), secular_pm(prob, m));
	const MultiPoly minus_u = MultiPoly::variable(prob.ctx, PolyContext::time) * GaussianRational(-1);
	for (int m = -2; m <= 2; ++m) {
		const MultiPoly back = secular_pm(prob, m).substitute({{PolyContext::time, minus_u}}).substitute(bindings);
		o.require(back == MultiPoly::variable(prob.ctx, prob.amplitude_var(m)), "difference inversion m = " + std::to_string(m));
	}
	return o;
}

} // namespace

int main()
{
	const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
	    {"secular coefficients of the forced pair", criterion1},
	    {"printed expansions of the worked examples", criterion2},
	    {"identity suite on builtins and random specs", criterion3},
	    {"difference equation", criterion4},
	    {"homogeneity and the M = 0 field", criterion5},
	    {"numerical comparison", criterion6},
	    {"inversion round trip", criterion7},
	};
	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome o;
		try {
			o = criteria[i].second();
		} catch (const std::exception& e) {
			o.ok = false;
			o.detail = std::string("exception: ") + e.what();
		}
		std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
		if (!o.detail.empty())
			std::cout << " (" << o.detail << ")";
		std::cout << "\n";
		failed += o.ok ? 0 : 1;
	}
	return failed == 0 ? 0 : 1;
}
