#include "rgpert/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rgpert/builtins.hpp"
#include "rgpert/difference.hpp"
#include "rgpert/numeric.hpp"

namespace rgpert {

namespace {

struct Config {
	std::string spec_path;
	std::string builtin;
	std::string random_class;
	std::string table_path;
	std::uint64_t seed = 1;
	int order = -1;
	std::string format = "text";
	std::string out_dir;
	std::string polar;
	// simulate
	double eps = 0.25;
	std::string r0 = "1.3";
	std::string theta0 = "2.1";
	double t_end = 40;
	double dt = 0.01;
	int expansion_order = 2;
	int field_order = 4;
	std::vector<std::string> param_values;
};

SpecClass parse_class(const std::string& s)
{
	if (s == "semisimple")
		return SpecClass::semisimple;
	if (s == "nilpotent")
		return SpecClass::nilpotent;
	if (s == "scalar")
		return SpecClass::scalar;
	throw SpecError("--random takes semisimple, nilpotent or scalar (got '" + s + "')");
}

std::string slurp(const std::string& path)
{
	std::ifstream f(path, std::ios::binary);
	if (!f)
		throw SpecError("cannot read " + path);
	std::stringstream ss;
	ss << f.rdbuf();
	return ss.str();
}

ODESystemSpec load_spec(const Config& cfg, bool allow_table)
{
	const int sources = !cfg.spec_path.empty() + !cfg.builtin.empty() + !cfg.random_class.empty() +
	                    (allow_table && !cfg.table_path.empty());
	if (sources != 1)
		throw SpecError(std::string("give exactly one input: --spec, --builtin") + (allow_table ? ", --table" : "") +
		                " or --random");
	ODESystemSpec spec;
	if (!cfg.spec_path.empty())
		spec = parse_spec(slurp(cfg.spec_path));
	else if (!cfg.builtin.empty())
		spec = builtin_spec(cfg.builtin);
	else
		return random_spec(parse_class(cfg.random_class), cfg.seed, cfg.order >= 0 ? cfg.order : 3);
	if (cfg.order >= 0) {
		spec.order = cfg.order;
		validate_spec(spec);
	}
	return spec;
}

std::string output_dir(const Config& cfg)
{
	if (!cfg.out_dir.empty())
		return cfg.out_dir;
	if (const char* env = std::getenv(output_dir_env); env && *env)
		return env;
	return ".";
}

std::string header(const ODESystemSpec& spec)
{
	return "# " + (spec.name.empty() ? std::string("spec") : spec.name) + " (" + to_string(spec.cls) +
	       ", K=" + std::to_string(spec.order) + ")\n";
}

std::string series_line(const HarmonicSeries& s, const std::vector<std::string>& names)
{
	if (s.is_zero())
		return "0";
	std::string out;
	for (const auto& [m, p] : s.entries()) {
		std::string term = "(" + p.str(names) + ")";
		if (m != 0)
			term += "*E^" + std::to_string(m);
		out += (out.empty() ? "" : " + ") + term;
	}
	return out;
}

std::vector<double> parse_list(const std::string& text, const char* flag)
{
	std::vector<double> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ',')) {
		try {
			std::size_t used = 0;
			out.push_back(std::stod(item, &used));
			if (used != item.size())
				throw std::invalid_argument(item);
		} catch (const std::exception&) {
			throw SpecError(std::string(flag) + ": '" + item + "' is not a number");
		}
	}
	return out;
}

ParamValues parse_params(const std::vector<std::string>& items)
{
	ParamValues out;
	for (const auto& item : items) {
		auto eq = item.find('=');
		if (eq == std::string::npos)
			throw SpecError("--param expects name=value (got '" + item + "')");
		out[item.substr(0, eq)] = parse_list(item.substr(eq + 1), "--param").at(0);
	}
	return out;
}

// ---- expand -------------------------------------------------------------

int cmd_expand(const Config& cfg, std::ostream& out)
{
	const ODESystemSpec spec = load_spec(cfg, false);
	if (spec.cls == SpecClass::difference) {
		const DifferenceProblem prob = difference_problem(spec);
		const int r = prob.reliable_radius();
		if (r < 0)
			throw WindowError("window too small for this order");
		if (cfg.format == "machine") {
			nlohmann::json P = nlohmann::json::object();
			for (int m = -r; m <= r; ++m)
				P[std::to_string(m)] = poly_to_json(secular_pm(prob, m));
			out << nlohmann::json{{"spec", spec_to_json(spec)}, {"P", P}}.dump(2) << "\n";
			return exit_ok;
		}
		out << header(spec) << "# u = t/pi\n";
		for (int m = -r; m <= r; ++m)
			out << "P[" << m << "] = " << secular_pm(prob, m).str() << "\n";
		return exit_ok;
	}
	const SecularTable table = expand(spec);
	if (cfg.format == "machine") {
		out << table_to_json(table).dump(2) << "\n";
		return exit_ok;
	}
	out << header(spec);
	const bool scalar = spec.cls == SpecClass::scalar;
	for (std::size_t j = 0; j < (scalar ? 1 : table.components.size()); ++j)
		for (const auto& [m, p] : table.components[j].entries())
			out << "P[" << (scalar ? "" : std::to_string(j + 1) + ",") << m << "] = " << p.str() << "\n";
	return exit_ok;
}

// ---- rg -----------------------------------------------------------------

int cmd_rg(const Config& cfg, std::ostream& out)
{
	const ODESystemSpec spec = load_spec(cfg, false);
	if (spec.cls == SpecClass::difference) {
		const DifferenceProblem prob = difference_problem(spec);
		if (prob.reliable_radius() < 0)
			throw WindowError("window too small for this order");
		out << header(spec) << "# u = t/pi; cA_m = P_m\n" << render_amplitudes(prob);
		if (prob.two_u.is_even())
			out << "dcA(zeta,t)/dt = (Theta(eps,zeta)/pi) cA(-zeta,t)\nTheta(eps,zeta) = "
			    << theta_series(prob).series.str("zeta") << "\n";
		return exit_ok;
	}
	const SecularTable table = expand(spec);
	const RGSystem rg = derive_rg(table);
	const RenExpansion ren = renormalized_expansion(table);
	std::optional<PolarSystem> polar;
	if (!cfg.polar.empty())
		polar = polar_transform(rg, parse_polar_pairs(cfg.polar, rg.field.size()));

	if (cfg.format == "machine") {
		nlohmann::json doc = rg_to_json(rg, ren);
		if (polar) {
			nlohmann::json lines = nlohmann::json::array();
			std::stringstream ss(polar->render());
			for (std::string line; std::getline(ss, line);)
				lines.push_back(line);
			doc["polar"] = lines;
		}
		out << doc.dump(2) << "\n";
		return exit_ok;
	}

	const auto rnames = table.ctx->renormalized_names();
	const auto& names = table.ctx->names();
	out << header(spec) << "## RG equations\n" << rg.render();
	if (spec.cls == SpecClass::scalar) {
		// highest slot of each factor closes the chain: d^n cA/dt^n
		std::size_t k = 0;
		for (const auto& f : spec.factors) {
			k += static_cast<std::size_t>(f.n);
			if (f.n > 1)
				out << "d^" << f.n << rnames[table.ctx->amplitude(k - static_cast<std::size_t>(f.n))] << "/dt^" << f.n
				    << " = " << rg.field[k - 1].str(rnames) << "\n";
		}
	}
	if (polar)
		out << "## polar form\n" << polar->render();
	out << "## renormalized expansion\n";
	const auto states = spec.state_names();
	const std::size_t shown = spec.cls == SpecClass::scalar ? 1 : ren.components.size();
	for (std::size_t j = 0; j < shown; ++j)
		out << "Y" << (spec.cls == SpecClass::scalar ? std::string() : std::to_string(j + 1)) << " = "
		    << series_line(ren.components[j], rnames) << "\n";
	out << "## inversion\n";
	const auto inv = invert_amplitudes(table);
	for (std::size_t k = 0; k < inv.size(); ++k)
		out << names[table.ctx->amplitude(k)] << " = " << inv[k].str(rnames) << "\n";
	return exit_ok;
}

// ---- verify -------------------------------------------------------------

int report(const std::vector<CheckReport>& reports, const Config& cfg, std::ostream& out)
{
	bool ok = true;
	for (const auto& r : reports)
		ok = ok && r.passed();
	if (cfg.format == "machine") {
		nlohmann::json arr = nlohmann::json::array();
		for (const auto& r : reports)
			arr.push_back(r.to_json());
		out << arr.dump(2) << "\n";
	} else {
		for (const auto& r : reports)
			out << r.render() << "\n";
	}
	return ok ? exit_ok : exit_check_failed;
}

int cmd_verify(const Config& cfg, std::ostream& out)
{
	if (!cfg.table_path.empty() && cfg.spec_path.empty() && cfg.builtin.empty() && cfg.random_class.empty()) {
		nlohmann::json doc;
		try {
			doc = nlohmann::json::parse(slurp(cfg.table_path));
		} catch (const nlohmann::json::exception& e) {
			throw SpecError(std::string("table: ") + e.what());
		}
		const SecularTable table = table_from_json(doc);
		const RGSystem rg = derive_rg(table);
		const RenExpansion ren = renormalized_expansion(table);
		return report({check_functional_relation(table), check_group_property(table), check_no_secular(ren),
		               check_residual(table), check_residual(ren, rg), check_inversion(table)},
		              cfg, out);
	}
	const ODESystemSpec spec = load_spec(cfg, true);
	if (spec.cls == SpecClass::difference) {
		const DifferenceProblem prob = difference_problem(spec);
		auto reports = check_difference_identities(prob);
		if (prob.two_u.is_even()) {
			CheckReport r;
			r.check = "closed_form";
			r.spec_id = prob.name;
			r.order = prob.order;
			HarmonicSeries lhs(prob.ctx), rhs(prob.ctx);
			for (int m = -prob.reliable_radius(); m <= prob.reliable_radius(); ++m) {
				lhs.add(m, secular_pm(prob, m));
				rhs.add(m, closed_form_amplitude(prob, m));
			}
			r.mismatch = first_mismatch({lhs}, {rhs});
			r.status = r.mismatch ? CheckStatus::fail : CheckStatus::pass;
			reports.push_back(r);
		}
		return report(reports, cfg, out);
	}
	std::optional<std::uint64_t> seed;
	if (!cfg.random_class.empty())
		seed = cfg.seed;
	return report(run_all_checks(spec, seed), cfg, out);
}

// ---- simulate -----------------------------------------------------------

struct SimRun {
	State initial;
	Trajectory direct, polar, reconstructed;
	double conjugate_defect = 0;
	double deviation = 0;
};

SimRun simulate_once(const SecularTable& table, const PolarPairs& pairs, const PolarSystem& polar, double eps,
                     const std::vector<double>& R0, const std::vector<double>& th0, const Config& cfg,
                     const ParamValues& params)
{
	const RenExpansion ren = renormalized_expansion(table);
	State amps(table.amplitude_count(), 0.0);
	for (std::size_t p = 0; p < pairs.size(); ++p) {
		amps[pairs[p].first] = std::polar(R0[p], th0[p]);
		amps[pairs[p].second] = std::polar(R0[p], -th0[p]);
	}
	SimRun run;
	run.initial = evaluate_expansion(ren, amps, eps, 0, cfg.expansion_order, params);
	run.direct = integrate_ode(table.spec, run.initial, eps, cfg.t_end, cfg.dt, params);
	run.polar = integrate_polar(polar, R0, th0, eps, cfg.t_end, cfg.dt, cfg.field_order, params);
	run.reconstructed = reconstruct(ren, amplitudes_from_polar(run.polar, pairs, table.amplitude_count()), eps,
	                                cfg.expansion_order, params);
	for (std::size_t i = 0; i < run.direct.size(); ++i) {
		const State& y = run.direct.states[i];
		for (const auto& [a, b] : pairs)
			run.conjugate_defect = std::max(run.conjugate_defect, std::abs(y[b] - std::conj(y[a])));
		run.deviation = std::max(run.deviation, std::abs(y[0].real() - run.reconstructed.states[i][0].real()));
	}
	return run;
}

std::string num(double v)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.6g", v);
	return buf;
}

int cmd_simulate(const Config& cfg, std::ostream& out)
{
	ODESystemSpec spec = load_spec(cfg, false);
	if (spec.cls != SpecClass::semisimple)
		throw SpecError("simulate needs a semisimple spec whose amplitudes form conjugate pairs");
	const ParamValues params = parse_params(cfg.param_values);
	const SecularTable table = expand(spec);
	const RGSystem rg = derive_rg(table);
	const PolarPairs pairs = parse_polar_pairs(cfg.polar.empty() ? "1:2" : cfg.polar, rg.field.size());
	const PolarSystem polar = polar_transform(rg, pairs);
	const auto R0 = parse_list(cfg.r0, "--r0"), th0 = parse_list(cfg.theta0, "--theta0");
	if (R0.size() != pairs.size() || th0.size() != pairs.size())
		throw SpecError("--r0 and --theta0 need one value per polar pair");

	const SimRun run = simulate_once(table, pairs, polar, cfg.eps, R0, th0, cfg, params);

	namespace fs = std::filesystem;
	const fs::path dir = output_dir(cfg);
	fs::create_directories(dir);
	auto path = [&](const std::string& f) { return (dir / f).string(); };
	emit_csv(run.direct, path("direct.csv"));
	emit_csv(run.polar, path("rg_polar.csv"));
	emit_csv(run.reconstructed, path("reconstructed.csv"));
	emit_svg({real_series(run.direct, 0, "Re y1", "red"), imag_series(run.direct, 0, "Im y1", "blue")},
	         path("direct.svg"), "direct integration, eps = " + num(cfg.eps));
	std::vector<PlotSeries> rg_series;
	const auto Rn = polar.R_names(), tn = polar.theta_names();
	static const char* colors[] = {"red", "blue", "green", "purple", "orange", "brown"};
	for (std::size_t p = 0; p < pairs.size(); ++p) {
		rg_series.push_back(real_series(run.polar, 2 * p, Rn[p], colors[(2 * p) % 6]));
		rg_series.push_back(real_series(run.polar, 2 * p + 1, tn[p], colors[(2 * p + 1) % 6]));
	}
	emit_svg(rg_series, path("rg_polar.svg"), "RG equation, field to eps^" + std::to_string(cfg.field_order));
	emit_svg({real_series(run.direct, 0, "Re y1 (direct)", "red"),
	          real_series(run.reconstructed, 0, "Re Y1 (renormalized)", "black")},
	         path("overlay.svg"), "direct vs renormalized expansion");

	out << header(spec) << "eps = " << num(cfg.eps) << ", dt = " << num(cfg.dt) << ", t_end = " << num(cfg.t_end)
	    << "\n";
	out << "y(0) =";
	for (const auto& v : run.initial)
		out << " " << num(v.real()) << (v.imag() < 0 ? "-" : "+") << num(std::abs(v.imag())) << "i";
	out << "\nconjugate defect sup|y_b - conj(y_a)| = " << num(run.conjugate_defect) << "\n";
	out << "deviation sup|Re y1 - Re Y1| = " << num(run.deviation) << "\n";
	if (cfg.eps != 0) {
		const SimRun half = simulate_once(table, pairs, polar, cfg.eps / 2, R0, th0, cfg, params);
		out << "deviation at eps/2 = " << num(half.deviation) << ", ratio = " << num(run.deviation / half.deviation)
		    << "\n";
	}
	out << "wrote direct.csv rg_polar.csv reconstructed.csv direct.svg rg_polar.svg overlay.svg to " << dir.string()
	    << "\n";
	return exit_ok;
}

void add_input(CLI::App* sub, Config& cfg, bool with_table)
{
	sub->add_option("--spec", cfg.spec_path, "spec document (JSON)");
	sub->add_option("--builtin", cfg.builtin, "builtin demo name");
	sub->add_option("--random", cfg.random_class, "random spec of this class");
	sub->add_option("--seed", cfg.seed, "seed for --random");
	if (with_table)
		sub->add_option("--table", cfg.table_path, "secular table (machine format) to check");
	sub->add_option("--order", cfg.order, "truncation order K");
	sub->add_option("--format", cfg.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	Config cfg;
	CLI::App app{"Renormalization-group perturbation engine"};
	app.name("rgpert");
	app.require_subcommand(1);
	std::string builtin_list;
	for (const auto& b : builtins())
		builtin_list += "\n  " + b.name + ": " + b.summary;
	app.footer("builtins:" + builtin_list + "\noutput directory: --out, else $" + output_dir_env + ", else .");

	auto* expand_cmd = app.add_subcommand("expand", "print the secular coefficients");
	add_input(expand_cmd, cfg, false);
	auto* rg_cmd = app.add_subcommand("rg", "RG equations, renormalized expansion and inversion");
	add_input(rg_cmd, cfg, false);
	rg_cmd->add_option("--polar", cfg.polar, "amplitude pairs such as 1:2,3:4");
	auto* verify_cmd = app.add_subcommand("verify", "run the identity checks");
	add_input(verify_cmd, cfg, true);
	auto* sim_cmd = app.add_subcommand("simulate", "direct vs RG integration with CSV and SVG output");
	add_input(sim_cmd, cfg, false);
	sim_cmd->add_option("--polar", cfg.polar, "amplitude pairs (default 1:2)");
	sim_cmd->add_option("--eps", cfg.eps, "perturbation parameter");
	sim_cmd->add_option("--r0", cfg.r0, "R(0) per pair, comma separated");
	sim_cmd->add_option("--theta0", cfg.theta0, "theta(0) per pair, comma separated");
	sim_cmd->add_option("--t-end", cfg.t_end, "integration horizon");
	sim_cmd->add_option("--dt", cfg.dt, "RK4 step")->check(CLI::PositiveNumber);
	sim_cmd->add_option("--expansion-order", cfg.expansion_order, "eps order of the renormalized expansion");
	sim_cmd->add_option("--field-order", cfg.field_order, "eps order kept in the RG field");
	sim_cmd->add_option("--param", cfg.param_values, "parameter value name=value");
	sim_cmd->add_option("--out", cfg.out_dir, "output directory");

	std::vector<std::string> rev(args.rbegin(), args.rend());
	try {
		app.parse(rev);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? exit_ok : exit_spec_error;
	}

	try {
		if (expand_cmd->parsed())
			return cmd_expand(cfg, out);
		if (rg_cmd->parsed())
			return cmd_rg(cfg, out);
		if (verify_cmd->parsed())
			return cmd_verify(cfg, out);
		return cmd_simulate(cfg, out);
	} catch (const PolarPairingError& e) {
		err << "polar pairing error: " << e.what() << "\n";
		return exit_polar_pairing;
	} catch (const NumericOverflow& e) {
		err << "numeric overflow: " << e.what() << "\n";
		return exit_numeric_overflow;
	} catch (const SpecError& e) {
		err << "spec error: " << e.what() << "\n";
		return exit_spec_error;
	} catch (const ParseError& e) {
		err << "spec error: " << e.what() << "\n";
		return exit_spec_error;
	} catch (const WindowError& e) {
		err << "spec error: " << e.what() << "\n";
		return exit_spec_error;
	} catch (const nlohmann::json::exception& e) {
		err << "spec error: " << e.what() << "\n";
		return exit_spec_error;
	} catch (const std::invalid_argument& e) {
		err << "error: " << e.what() << "\n";
		return exit_spec_error;
	}
}

} // namespace rgpert
