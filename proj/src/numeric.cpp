#include "rgpert/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rgpert {

namespace {

using cplx = std::complex<double>;

/// A polynomial flattened for repeated numeric evaluation.
struct CompiledPoly {
	struct Term {
		cplx c;
		std::vector<std::pair<std::size_t, int>> powers;
	};
	std::vector<Term> terms;

	CompiledPoly() = default;
	explicit CompiledPoly(const MultiPoly& p, int max_eps = -1)
	{
		for (const auto& [e, c] : p.terms()) {
			if (max_eps >= 0 && e[PolyContext::eps] > max_eps)
				continue;
			Term t{c.to_complex(), {}};
			for (std::size_t v = 0; v < e.size(); ++v)
				if (e[v])
					t.powers.emplace_back(v, e[v]);
			terms.push_back(std::move(t));
		}
	}

	cplx operator()(const std::vector<cplx>& x) const
	{
		cplx sum = 0;
		for (const auto& t : terms) {
			cplx v = t.c;
			for (const auto& [var, e] : t.powers)
				v *= e == 1 ? x[var] : std::pow(x[var], e);
			sum += v;
		}
		return sum;
	}
};

/// Variable values for a context: eps, t, s = 0, amplitudes (filled later), params.
std::vector<cplx> base_values(const ContextPtr& ctx, double eps, const ParamValues& params)
{
	std::vector<cplx> x(ctx->size(), 0.0);
	x[PolyContext::eps] = eps;
	for (std::size_t k = 0; k < ctx->param_count(); ++k) {
		const auto& name = ctx->name(ctx->param(k));
		auto it = params.find(name);
		if (it == params.end())
			throw std::invalid_argument("no numeric value for parameter '" + name + "'");
		x[ctx->param(k)] = it->second;
	}
	return x;
}

std::string fmt17(double v)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

std::string fmt(double v)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.4g", v);
	return buf;
}

} // namespace

Trajectory rk4(const VectorField& f, const State& initial, double t_end, double dt)
{
	if (!(dt > 0))
		throw std::invalid_argument("dt must be positive");
	if (!(t_end >= 0))
		throw std::invalid_argument("t_end must be non-negative");
	const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
	const std::size_t n = initial.size();
	Trajectory traj;
	traj.dt = dt;
	traj.states.reserve(steps + 1);
	traj.states.push_back(initial);
	State y = initial, k1(n), k2(n), k3(n), k4(n), tmp(n);
	for (std::size_t i = 0; i < steps; ++i) {
		const double t = dt * static_cast<double>(i);
		f(t, y, k1);
		for (std::size_t j = 0; j < n; ++j)
			tmp[j] = y[j] + 0.5 * dt * k1[j];
		f(t + 0.5 * dt, tmp, k2);
		for (std::size_t j = 0; j < n; ++j)
			tmp[j] = y[j] + 0.5 * dt * k2[j];
		f(t + 0.5 * dt, tmp, k3);
		for (std::size_t j = 0; j < n; ++j)
			tmp[j] = y[j] + dt * k3[j];
		f(t + dt, tmp, k4);
		for (std::size_t j = 0; j < n; ++j) {
			y[j] += dt / 6 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
			if (!std::isfinite(y[j].real()) || !std::isfinite(y[j].imag()))
				throw NumericOverflow("non-finite state in component " + std::to_string(j + 1) + " at t = " +
				                      fmt17(t + dt));
		}
		traj.states.push_back(y);
	}
	return traj;
}

VectorField ode_field(const ODESystemSpec& spec, double eps, const ParamValues& params)
{
	if (spec.cls == SpecClass::difference)
		throw std::invalid_argument("the difference class has no ODE field");
	const ContextPtr vctx = state_context(spec);
	const std::size_t n = spec.dimension();
	// V_j as (harmonic, compiled coefficient) lists
	std::vector<std::vector<std::pair<int, CompiledPoly>>> V;
	for (const auto& v : expand_forcing(spec, vctx)) {
		std::vector<std::pair<int, CompiledPoly>> parts;
		for (const auto& [h, p] : v.entries())
			parts.emplace_back(h, CompiledPoly(p));
		V.push_back(std::move(parts));
	}
	const std::vector<cplx> base = base_values(vctx, eps, params);
	// Scalar: coefficients of prod (x - i m_r)^{n_r}, lowest power first.
	std::vector<cplx> charpoly{1.0};
	if (spec.cls == SpecClass::scalar)
		for (const auto& f : spec.factors)
			for (int k = 0; k < f.n; ++k) {
				std::vector<cplx> next(charpoly.size() + 1, 0.0);
				for (std::size_t d = 0; d < charpoly.size(); ++d) {
					next[d + 1] += charpoly[d];
					next[d] -= cplx(0, f.m) * charpoly[d];
				}
				charpoly = std::move(next);
			}

	return [=, spec = spec](double t, const State& y, State& dy) {
		std::vector<cplx> x = base;
		x[PolyContext::time] = t;
		for (std::size_t k = 0; k < n; ++k)
			x[vctx->amplitude(k)] = y[k];
		std::vector<cplx> forcing(V.size(), 0.0);
		for (std::size_t j = 0; j < V.size(); ++j)
			for (const auto& [h, p] : V[j])
				forcing[j] += p(x) * (h == 0 ? cplx(1) : std::polar(1.0, h * t));
		dy.assign(n, 0.0);
		switch (spec.cls) {
		case SpecClass::semisimple:
			for (std::size_t j = 0; j < n; ++j)
				dy[j] = cplx(0, spec.frequencies[j]) * y[j] + eps * forcing[j];
			break;
		case SpecClass::nilpotent:
			for (std::size_t j = 0; j < n; ++j)
				dy[j] = cplx(0, spec.nil_m) * y[j] + (j + 1 < n ? y[j + 1] : cplx(0)) + eps * forcing[j];
			break;
		case SpecClass::scalar: {
			for (std::size_t j = 0; j + 1 < n; ++j)
				dy[j] = y[j + 1];
			cplx top = eps * forcing[0];
			for (std::size_t k = 0; k < n; ++k)
				top -= charpoly[k] * y[k];
			dy[n - 1] = top;
			break;
		}
		case SpecClass::difference:
			break;
		}
	};
}

Trajectory integrate_ode(const ODESystemSpec& spec, const State& initial, double eps, double t_end, double dt,
                         const ParamValues& params)
{
	if (initial.size() != spec.dimension())
		throw std::invalid_argument("initial state has the wrong dimension");
	Trajectory traj = rk4(ode_field(spec, eps, params), initial, t_end, dt);
	traj.system = spec.name;
	traj.eps = eps;
	traj.labels = spec.state_names();
	return traj;
}

Trajectory integrate_rg(const RGSystem& rg, const State& initial, double eps, double t_end, double dt, int eps_order,
                        const ParamValues& params)
{
	if (initial.size() != rg.field.size())
		throw std::invalid_argument("initial amplitudes have the wrong dimension");
	std::vector<CompiledPoly> field;
	for (const auto& f : rg.field)
		field.emplace_back(f, eps_order);
	const std::vector<cplx> base = base_values(rg.ctx, eps, params);
	const ContextPtr ctx = rg.ctx;
	auto f = [&](double, const State& y, State& dy) {
		std::vector<cplx> x = base;
		for (std::size_t k = 0; k < y.size(); ++k)
			x[ctx->amplitude(k)] = y[k];
		dy.resize(y.size());
		for (std::size_t k = 0; k < y.size(); ++k)
			dy[k] = field[k](x);
	};
	Trajectory traj = rk4(f, initial, t_end, dt);
	traj.system = rg.spec.name + " (RG)";
	traj.eps = eps;
	const auto names = ctx->renormalized_names();
	for (std::size_t k = 0; k < rg.field.size(); ++k)
		traj.labels.push_back(names[ctx->amplitude(k)]);
	return traj;
}

Trajectory integrate_polar(const PolarSystem& polar, const std::vector<double>& R0, const std::vector<double>& theta0,
                           double eps, double t_end, double dt, int eps_order, const ParamValues& params)
{
	const std::size_t np = polar.pairs.size();
	if (R0.size() != np || theta0.size() != np)
		throw std::invalid_argument("initial polar state has the wrong dimension");
	std::vector<double> pvals;
	for (const auto& name : polar.param_names) {
		auto it = params.find(name);
		if (it == params.end())
			throw std::invalid_argument("no numeric value for parameter '" + name + "'");
		pvals.push_back(it->second);
	}
	std::vector<TrigPoly> dR, dth;
	for (std::size_t p = 0; p < np; ++p) {
		dR.push_back(polar.dR[p].truncated(eps_order));
		dth.push_back(polar.dtheta[p].truncated(eps_order));
	}
	auto f = [&](double, const State& y, State& dy) {
		std::vector<double> R(np), th(np);
		for (std::size_t p = 0; p < np; ++p) {
			R[p] = y[2 * p].real();
			th[p] = y[2 * p + 1].real();
		}
		dy.assign(2 * np, 0.0);
		for (std::size_t p = 0; p < np; ++p) {
			dy[2 * p] = dR[p].evaluate(eps, R, th, pvals);
			dy[2 * p + 1] = dth[p].evaluate(eps, R, th, pvals);
		}
	};
	State init;
	for (std::size_t p = 0; p < np; ++p) {
		init.emplace_back(R0[p]);
		init.emplace_back(theta0[p]);
	}
	Trajectory traj = rk4(f, init, t_end, dt);
	traj.system = "polar RG";
	traj.eps = eps;
	const auto Rn = polar.R_names(), tn = polar.theta_names();
	for (std::size_t p = 0; p < np; ++p) {
		traj.labels.push_back(Rn[p]);
		traj.labels.push_back(tn[p]);
	}
	return traj;
}

Trajectory amplitudes_from_polar(const Trajectory& polar_traj, const PolarPairs& pairs, std::size_t amplitude_count)
{
	Trajectory out;
	out.system = polar_traj.system;
	out.eps = polar_traj.eps;
	out.t0 = polar_traj.t0;
	out.dt = polar_traj.dt;
	for (std::size_t k = 1; k <= amplitude_count; ++k)
		out.labels.push_back("cA" + std::to_string(k));
	for (const auto& s : polar_traj.states) {
		State a(amplitude_count, 0.0);
		for (std::size_t p = 0; p < pairs.size(); ++p) {
			const double R = s[2 * p].real(), th = s[2 * p + 1].real();
			a.at(pairs[p].first) = std::polar(R, th);
			a.at(pairs[p].second) = std::polar(R, -th);
		}
		out.states.push_back(std::move(a));
	}
	return out;
}

State evaluate_expansion(const RenExpansion& ren, const State& amplitudes, double eps, double t, int eps_order,
                         const ParamValues& params)
{
	std::vector<cplx> x = base_values(ren.ctx, eps, params);
	if (amplitudes.size() != ren.ctx->amplitude_count())
		throw std::invalid_argument("amplitude vector has the wrong dimension");
	for (std::size_t k = 0; k < amplitudes.size(); ++k)
		x[ren.ctx->amplitude(k)] = amplitudes[k];
	State out;
	for (const auto& comp : ren.components) {
		cplx sum = 0;
		for (const auto& [m, p] : comp.entries())
			sum += CompiledPoly(p, eps_order)(x) * std::polar(1.0, m * t);
		out.push_back(sum);
	}
	return out;
}

Trajectory reconstruct(const RenExpansion& ren, const Trajectory& rg_traj, double eps, int eps_order,
                       const ParamValues& params)
{
	if (rg_traj.dimension() != ren.ctx->amplitude_count() && !rg_traj.states.empty() &&
	    rg_traj.states.front().size() != ren.ctx->amplitude_count())
		throw std::invalid_argument("RG trajectory does not match the expansion");
	std::vector<std::vector<std::pair<int, CompiledPoly>>> comps;
	for (const auto& comp : ren.components) {
		std::vector<std::pair<int, CompiledPoly>> parts;
		for (const auto& [m, p] : comp.entries())
			parts.emplace_back(m, CompiledPoly(p, eps_order));
		comps.push_back(std::move(parts));
	}
	std::vector<cplx> x = base_values(ren.ctx, eps, params);
	Trajectory out;
	out.system = ren.spec.name + " (reconstructed)";
	out.eps = eps;
	out.t0 = rg_traj.t0;
	out.dt = rg_traj.dt;
	out.labels = ren.spec.state_names();
	for (std::size_t i = 0; i < rg_traj.size(); ++i) {
		const double t = rg_traj.time(i);
		const State& a = rg_traj.states[i];
		for (std::size_t k = 0; k < a.size(); ++k)
			x[ren.ctx->amplitude(k)] = a[k];
		State y;
		for (const auto& parts : comps) {
			cplx sum = 0;
			for (const auto& [m, p] : parts)
				sum += p(x) * std::polar(1.0, m * t);
			y.push_back(sum);
		}
		out.states.push_back(std::move(y));
	}
	return out;
}

void emit_csv(const Trajectory& traj, const std::string& path)
{
	std::ofstream f(path, std::ios::binary);
	if (!f)
		throw std::runtime_error("cannot write " + path);
	f << "t";
	for (std::size_t k = 1; k <= traj.dimension(); ++k)
		f << ",re_" << k << ",im_" << k;
	f << "\n";
	for (std::size_t i = 0; i < traj.size(); ++i) {
		f << fmt17(traj.time(i));
		for (const auto& v : traj.states[i])
			f << "," << fmt17(v.real()) << "," << fmt17(v.imag());
		f << "\n";
	}
	if (!f)
		throw std::runtime_error("write failed: " + path);
}

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title)
{
	if (series.empty())
		throw std::invalid_argument("emit_svg: no series");
	double tmin = INFINITY, tmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
	for (const auto& s : series) {
		if (s.t.size() != s.y.size())
			throw std::invalid_argument("emit_svg: series '" + s.label + "' has mismatched lengths");
		for (std::size_t i = 0; i < s.t.size(); ++i) {
			tmin = std::min(tmin, s.t[i]);
			tmax = std::max(tmax, s.t[i]);
			ymin = std::min(ymin, s.y[i]);
			ymax = std::max(ymax, s.y[i]);
		}
	}
	if (!(tmin <= tmax))
		throw std::invalid_argument("emit_svg: all series are empty");
	if (tmax == tmin)
		tmax = tmin + 1;
	if (ymax == ymin) {
		ymin -= 1;
		ymax += 1;
	}
	const double pad = 0.05 * (ymax - ymin);
	ymin -= pad;
	ymax += pad;

	const double W = 800, H = 450, L = 70, R = 20, T = 40, B = 50;
	auto X = [&](double t) { return L + (t - tmin) / (tmax - tmin) * (W - L - R); };
	auto Y = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

	std::ostringstream o;
	o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
	  << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
	  << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
	  << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
	if (!title.empty())
		o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
		  << title << "</text>\n";
	// axes and ticks
	o << "<g stroke=\"black\" stroke-width=\"1\">\n"
	  << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>\n"
	  << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>\n</g>\n"
	  << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
	for (int k = 0; k <= 5; ++k) {
		const double t = tmin + (tmax - tmin) * k / 5, y = ymin + (ymax - ymin) * k / 5;
		o << "<line x1=\"" << X(t) << "\" y1=\"" << H - B << "\" x2=\"" << X(t) << "\" y2=\"" << H - B + 5
		  << "\" stroke=\"black\"/>\n"
		  << "<text x=\"" << X(t) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n"
		  << "<line x1=\"" << L - 5 << "\" y1=\"" << Y(y) << "\" x2=\"" << L << "\" y2=\"" << Y(y)
		  << "\" stroke=\"black\"/>\n"
		  << "<text x=\"" << L - 8 << "\" y=\"" << Y(y) + 4 << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
	}
	o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">t</text>\n</g>\n";
	for (std::size_t k = 0; k < series.size(); ++k) {
		const auto& s = series[k];
		const std::string color = s.color.empty() ? "black" : s.color;
		o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
		for (std::size_t i = 0; i < s.t.size(); ++i)
			o << (i ? " " : "") << X(s.t[i]) << "," << Y(s.y[i]);
		o << "\"/>\n";
		o << "<text x=\"" << W - R - 5 << "\" y=\"" << T + 14 * (k + 1) << "\" text-anchor=\"end\" fill=\"" << color
		  << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
	}
	o << "</svg>\n";
	return o.str();
}

void emit_svg(const std::vector<PlotSeries>& series, const std::string& path, const std::string& title)
{
	const std::string text = render_svg(series, title);
	std::ofstream f(path, std::ios::binary);
	if (!f)
		throw std::runtime_error("cannot write " + path);
	f << text;
	if (!f)
		throw std::runtime_error("write failed: " + path);
}

PlotSeries real_series(const Trajectory& traj, std::size_t component, std::string label, std::string color)
{
	PlotSeries s{std::move(label), std::move(color), {}, {}};
	for (std::size_t i = 0; i < traj.size(); ++i) {
		s.t.push_back(traj.time(i));
		s.y.push_back(traj.states[i].at(component).real());
	}
	return s;
}

PlotSeries imag_series(const Trajectory& traj, std::size_t component, std::string label, std::string color)
{
	PlotSeries s{std::move(label), std::move(color), {}, {}};
	for (std::size_t i = 0; i < traj.size(); ++i) {
		s.t.push_back(traj.time(i));
		s.y.push_back(traj.states[i].at(component).imag());
	}
	return s;
}

PairRun run_pair_comparison(const SecularTable& table, double eps, double R0, double theta0, double t_end, double dt,
                            int expansion_order, int field_order)
{
	const RGSystem rg = derive_rg(table);
	const PolarPairs pairs{{0, 1}};
	const PolarSystem polar = polar_transform(rg, pairs);
	const RenExpansion ren = renormalized_expansion(table);

	PairRun run;
	run.eps = eps;
	run.initial = evaluate_expansion(ren, {std::polar(R0, theta0), std::polar(R0, -theta0)}, eps, 0, expansion_order);
	run.direct = integrate_ode(table.spec, run.initial, eps, t_end, dt);
	run.polar = integrate_polar(polar, {R0}, {theta0}, eps, t_end, dt, field_order);
	run.reconstructed = reconstruct(ren, amplitudes_from_polar(run.polar, pairs, 2), eps, expansion_order);
	for (std::size_t i = 0; i < run.direct.size(); ++i) {
		const State& y = run.direct.states[i];
		run.conjugate_defect = std::max(run.conjugate_defect, std::abs(y[1] - std::conj(y[0])));
		run.deviation =
		    std::max(run.deviation, std::abs(y[0].real() - run.reconstructed.states[i][0].real()));
	}
	return run;
}

double rk4_convergence_ratio(const ODESystemSpec& spec, double t_end, double dt)
{
	if (spec.cls != SpecClass::semisimple)
		throw std::invalid_argument("convergence control needs a semisimple spec");
	State init;
	for (std::size_t j = 0; j < spec.dimension(); ++j)
		init.emplace_back(1.0 + 0.25 * static_cast<double>(j), 0.5);
	auto error = [&](double h) {
		Trajectory traj = integrate_ode(spec, init, 0.25, t_end, h);
		const double T = traj.time(traj.size() - 1);
		double e = 0;
		for (std::size_t j = 0; j < init.size(); ++j)
			e = std::max(e, std::abs(traj.states.back()[j] - init[j] * std::polar(1.0, spec.frequencies[j] * T)));
		return e;
	};
	return error(dt) / error(dt / 2);
}

} // namespace rgpert
