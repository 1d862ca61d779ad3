#include "rgpert/rg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace rgpert {

std::string RGSystem::render() const
{
	const auto names = ctx->renormalized_names();
	std::string out;
	for (std::size_t k = 0; k < field.size(); ++k)
		out += "d" + names[ctx->amplitude(k)] + "/dt = " + field[k].str(names) + "\n";
	return out;
}

std::vector<MultiPoly> renormalized_amplitudes(const SecularTable& table)
{
	std::vector<MultiPoly> out;
	for (std::size_t k = 0; k < table.amplitude_count(); ++k)
		out.push_back(table.amplitude_coefficient(k));
	return out;
}

RGSystem derive_rg(const SecularTable& table)
{
	RGSystem rg{table.spec, table.ctx, {}};
	for (std::size_t k = 0; k < table.amplitude_count(); ++k)
		rg.field.push_back(table.amplitude_coefficient(k).coefficient(PolyContext::time, 1));
	return rg;
}

RenExpansion renormalized_expansion(const SecularTable& table)
{
	RenExpansion ren{table.spec, table.ctx, {}};
	for (const auto& c : table.components)
		ren.components.push_back(c.map([](int, const MultiPoly& p) { return p.coefficient(PolyContext::time, 0); }));
	return ren;
}

std::vector<MultiPoly> invert_amplitudes(const SecularTable& table)
{
	const MultiPoly minus_t = -MultiPoly::variable(table.ctx, PolyContext::time);
	std::vector<MultiPoly> out;
	for (std::size_t k = 0; k < table.amplitude_count(); ++k)
		out.push_back(table.amplitude_coefficient(k).substitute({{PolyContext::time, minus_t}}));
	return out;
}

Derivation rg_derivation(const RGSystem& rg)
{
	return [&rg](const MultiPoly& f) {
		MultiPoly out(rg.ctx);
		for (std::size_t k = 0; k < rg.field.size(); ++k) {
			MultiPoly d = f.diff(rg.ctx->amplitude(k));
			if (!d.is_zero())
				out += rg.field[k] * d;
		}
		return out;
	};
}

// ---- polar form ---------------------------------------------------------

void TrigPoly::add(int eps, std::vector<int> R, std::vector<int> params, bool is_sin, std::vector<int> angle,
                   const Rational& c)
{
	if (sgn(c) == 0)
		return;
	Rational v = c;
	v.canonicalize();
	auto first = std::find_if(angle.begin(), angle.end(), [](int a) { return a != 0; });
	if (first == angle.end()) {
		if (is_sin)
			return;
	} else if (*first < 0) {
		for (auto& a : angle)
			a = -a;
		if (is_sin)
			v = -v;
	}
	TrigKey key{eps, std::move(R), std::move(params), is_sin, std::move(angle)};
	auto [it, inserted] = terms_.try_emplace(std::move(key), v);
	if (!inserted) {
		it->second += v;
		it->second.canonicalize();
		if (sgn(it->second) == 0)
			terms_.erase(it);
	}
}

TrigPoly TrigPoly::truncated(int max_eps) const
{
	TrigPoly r(n_pairs_, n_params_);
	for (const auto& [k, c] : terms_)
		if (k.eps <= max_eps)
			r.terms_.emplace(k, c);
	return r;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o)
{
	for (const auto& [k, c] : o.terms_)
		add(k.eps, k.R, k.params, k.is_sin, k.angle, -c);
	return *this;
}

double TrigPoly::evaluate(double eps, const std::vector<double>& R, const std::vector<double>& theta,
                          const std::vector<double>& params, double t) const
{
	double sum = 0;
	for (const auto& [k, c] : terms_) {
		double v = c.get_d() * std::pow(eps, k.eps);
		for (std::size_t p = 0; p < k.R.size(); ++p)
			v *= std::pow(R[p], k.R[p]);
		for (std::size_t p = 0; p < k.params.size(); ++p)
			v *= std::pow(params[p], k.params[p]);
		double phi = k.angle[0] * t;
		for (std::size_t p = 1; p < k.angle.size(); ++p)
			phi += k.angle[p] * theta[p - 1];
		sum += v * (k.is_sin ? std::sin(phi) : std::cos(phi));
	}
	return sum;
}

std::string TrigPoly::str(const std::vector<std::string>& R_names, const std::vector<std::string>& theta_names,
                          const std::vector<std::string>& param_names) const
{
	if (terms_.empty())
		return "0";
	std::string out;
	for (const auto& [k, c] : terms_) {
		std::vector<std::string> factors;
		auto power = [&](const std::string& name, int e) {
			if (e == 1)
				factors.push_back(name);
			else if (e != 0)
				factors.push_back(name + "^" + std::to_string(e));
		};
		power("eps", k.eps);
		for (std::size_t p = 0; p < k.R.size(); ++p)
			power(R_names.at(p), k.R[p]);
		for (std::size_t p = 0; p < k.params.size(); ++p)
			power(param_names.at(p), k.params[p]);
		std::string arg;
		for (std::size_t p = 0; p < k.angle.size(); ++p) {
			int a = k.angle[p];
			if (a == 0)
				continue;
			const std::string& name = p == 0 ? std::string("t") : theta_names.at(p - 1);
			std::string piece = (std::abs(a) == 1 ? "" : std::to_string(std::abs(a)) + "*") + name;
			if (arg.empty())
				arg = (a < 0 ? "-" : "") + piece;
			else
				arg += (a < 0 ? " - " : " + ") + piece;
		}
		if (!arg.empty())
			factors.push_back(std::string(k.is_sin ? "sin" : "cos") + "(" + arg + ")");
		std::string mono;
		for (const auto& f : factors)
			mono += (mono.empty() ? "" : "*") + f;
		Rational mag = abs(c);
		std::string term;
		if (mono.empty())
			term = mag.get_str();
		else if (mag == 1)
			term = mono;
		else
			term = mag.get_str() + "*" + mono;
		if (out.empty())
			out = (sgn(c) < 0 ? "-" : "") + term;
		else
			out += (sgn(c) < 0 ? " - " : " + ") + term;
	}
	return out;
}

std::vector<std::string> PolarSystem::R_names() const
{
	if (pairs.size() == 1)
		return {"R"};
	std::vector<std::string> out;
	for (std::size_t p = 1; p <= pairs.size(); ++p)
		out.push_back("R" + std::to_string(p));
	return out;
}

std::vector<std::string> PolarSystem::theta_names() const
{
	if (pairs.size() == 1)
		return {"theta"};
	std::vector<std::string> out;
	for (std::size_t p = 1; p <= pairs.size(); ++p)
		out.push_back("theta" + std::to_string(p));
	return out;
}

std::string PolarSystem::render() const
{
	const auto R = R_names();
	const auto th = theta_names();
	std::string out;
	for (std::size_t p = 0; p < pairs.size(); ++p) {
		out += "d" + R[p] + "/dt = " + dR[p].str(R, th, param_names) + "\n";
		out += "d" + th[p] + "/dt = " + dtheta[p].str(R, th, param_names) + "\n";
	}
	return out;
}

PolarPairs parse_polar_pairs(const std::string& text, std::size_t amplitude_count)
{
	PolarPairs out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ',')) {
		auto colon = item.find(':');
		if (colon == std::string::npos)
			throw PolarPairingError("polar pair '" + item + "' is not of the form a:b");
		int a = 0, b = 0;
		try {
			a = std::stoi(item.substr(0, colon));
			b = std::stoi(item.substr(colon + 1));
		} catch (const std::exception&) {
			throw PolarPairingError("polar pair '" + item + "' is not of the form a:b");
		}
		if (a < 1 || b < 1 || static_cast<std::size_t>(a) > amplitude_count ||
		    static_cast<std::size_t>(b) > amplitude_count)
			throw PolarPairingError("polar pair '" + item + "' is out of range");
		out.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
	}
	if (out.empty())
		throw PolarPairingError("no polar pairs given");
	return out;
}

void check_polar_pairing(const RGSystem& rg, const PolarPairs& pairs)
{
	std::set<std::size_t> seen;
	for (const auto& [p, q] : pairs)
		if (p == q || !seen.insert(p).second || !seen.insert(q).second)
			throw PolarPairingError("polar pairs must use each amplitude at most once");
	if (seen.size() != rg.field.size())
		throw PolarPairingError("polar pairs must cover every amplitude");
	for (const auto& [p, q] : pairs) {
		MultiPoly image = rg.field[p];
		for (const auto& [a, b] : pairs)
			image = image.swap_variables(rg.ctx->amplitude(a), rg.ctx->amplitude(b));
		if (image.conj() != rg.field[q])
			throw PolarPairingError("field of amplitude " + std::to_string(q + 1) +
			                        " is not the conjugate image of amplitude " + std::to_string(p + 1));
	}
}

std::pair<TrigPoly, TrigPoly> polar_parts(const HarmonicSeries& s, const PolarPairs& pairs,
                                          const std::vector<int>& extra_angle)
{
	const auto& ctx = s.context();
	const std::size_t np = pairs.size();
	const std::size_t nparam = ctx->param_count();
	TrigPoly re(np, nparam), im(np, nparam);
	std::vector<int> owner(ctx->amplitude_count(), -1);
	for (std::size_t p = 0; p < np; ++p) {
		owner.at(pairs[p].first) = static_cast<int>(p);
		owner.at(pairs[p].second) = static_cast<int>(p);
	}
	for (const auto& [m, poly] : s.entries()) {
		for (const auto& [e, c] : poly.terms()) {
			if (e[PolyContext::time] || e[PolyContext::shift])
				throw std::invalid_argument("polar_parts: expression depends on t or s");
			std::vector<int> R(np, 0), params(nparam, 0), angle(np + 1, 0);
			angle[0] = m;
			for (std::size_t k = 0; k < ctx->amplitude_count(); ++k) {
				int ek = e[ctx->amplitude(k)];
				if (ek == 0)
					continue;
				if (owner[k] < 0)
					throw PolarPairingError("amplitude " + std::to_string(k + 1) + " is not paired");
				auto p = static_cast<std::size_t>(owner[k]);
				R[p] += ek;
				angle[p + 1] += pairs[p].first == k ? ek : -ek;
			}
			for (std::size_t p = 0; p < extra_angle.size(); ++p)
				angle[p + 1] += extra_angle[p];
			for (std::size_t k = 0; k < nparam; ++k)
				params[k] = e[ctx->param(k)];
			const int eps = e[PolyContext::eps];
			// c e^{i phi}: Re = Re c cos - Im c sin, Im = Im c cos + Re c sin.
			re.add(eps, R, params, false, angle, c.re());
			re.add(eps, R, params, true, angle, -c.im());
			im.add(eps, R, params, false, angle, c.im());
			im.add(eps, R, params, true, angle, c.re());
		}
	}
	return {re, im};
}

PolarSystem polar_transform(const RGSystem& rg, const PolarPairs& pairs)
{
	check_polar_pairing(rg, pairs);
	PolarSystem out;
	out.pairs = pairs;
	out.param_names = rg.ctx->param_names();
	for (std::size_t p = 0; p < pairs.size(); ++p) {
		std::vector<int> extra(pairs.size(), 0);
		extra[p] = -1;
		auto [re, im] = polar_parts(HarmonicSeries::single(0, rg.field[pairs[p].first]), pairs, extra);
		out.dR.push_back(re);
		TrigPoly theta(pairs.size(), rg.ctx->param_count());
		for (const auto& [k, c] : im.terms()) {
			auto R = k.R;
			R[p] -= 1;
			theta.add(k.eps, R, k.params, k.is_sin, k.angle, c);
		}
		out.dtheta.push_back(theta);
	}
	return out;
}

} // namespace rgpert
