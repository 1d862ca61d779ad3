#include "rgpert/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rgpert {

namespace {

const std::set<std::string> reserved = {"eps", "t", "s", "i", "E", "cos", "sin", "u"};

bool is_identifier(const std::string& s)
{
	if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
		return false;
	std::size_t k = 0;
	while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_'))
		++k;
	while (k < s.size() && s[k] == '\'')
		++k;
	return k == s.size();
}

GaussianRational constant_value(const std::string& src)
{
	auto ctx = make_context({}, {}, 0);
	HarmonicSeries v = expand_expression(*parse_expression(src), ctx);
	if (v.is_zero())
		return 0;
	if (v.size() != 1 || v.entries().begin()->first != 0 || !v.entries().begin()->second.is_constant())
		throw SpecError("expected a constant, got '" + src + "'");
	return v.entries().begin()->second.constant_term();
}

GaussianRational json_constant(const nlohmann::json& v)
{
	if (v.is_number_integer())
		return GaussianRational(v.get<long>());
	if (v.is_string())
		return constant_value(v.get<std::string>());
	throw SpecError("coefficient must be an integer or a string");
}

template <class T>
T field(const nlohmann::json& doc, const char* key)
{
	try {
		return doc.at(key).get<T>();
	} catch (const nlohmann::json::exception& e) {
		throw SpecError(std::string("field '") + key + "': " + e.what());
	}
}

} // namespace

std::string to_string(SpecClass c)
{
	switch (c) {
	case SpecClass::semisimple:
		return "semisimple";
	case SpecClass::nilpotent:
		return "nilpotent";
	case SpecClass::scalar:
		return "scalar";
	case SpecClass::difference:
		return "difference";
	}
	return "?";
}

std::size_t ODESystemSpec::dimension() const
{
	switch (cls) {
	case SpecClass::semisimple:
		return frequencies.size();
	case SpecClass::nilpotent:
		return static_cast<std::size_t>(nil_size);
	case SpecClass::scalar: {
		std::size_t n = 0;
		for (const auto& f : factors)
			n += static_cast<std::size_t>(f.n);
		return n;
	}
	case SpecClass::difference:
		return 1;
	}
	return 0;
}

std::vector<std::string> ODESystemSpec::state_names() const
{
	std::vector<std::string> out;
	if (cls == SpecClass::scalar) {
		std::string name = "y";
		for (std::size_t k = 0; k < dimension(); ++k, name += '\'')
			out.push_back(name);
	} else if (cls == SpecClass::difference) {
		out.push_back("y");
	} else {
		for (std::size_t k = 1; k <= dimension(); ++k)
			out.push_back("y" + std::to_string(k));
	}
	return out;
}

int ODESystemSpec::resonant_harmonic(std::size_t k) const
{
	switch (cls) {
	case SpecClass::semisimple:
		return frequencies.at(k);
	case SpecClass::nilpotent:
		return nil_m;
	case SpecClass::scalar:
		return factors.at(scalar_slot(k).first).m;
	case SpecClass::difference:
		break;
	}
	throw std::logic_error("resonant_harmonic: not defined for the difference class");
}

std::pair<std::size_t, std::size_t> ODESystemSpec::scalar_slot(std::size_t k) const
{
	std::size_t base = 0;
	for (std::size_t r = 0; r < factors.size(); ++r) {
		auto n = static_cast<std::size_t>(factors[r].n);
		if (k < base + n)
			return {r, k - base};
		base += n;
	}
	throw std::out_of_range("scalar_slot: amplitude index out of range");
}

bool ODESystemSpec::is_autonomous() const
{
	if (cls == SpecClass::difference)
		return false;
	auto ctx = state_context(*this);
	for (const auto& v : expand_forcing(*this, ctx))
		for (const auto& [m, p] : v.entries())
			if (m != 0)
				return false;
	return true;
}

void validate_spec(ODESystemSpec& spec)
{
	if (spec.order < 0)
		throw SpecError("order must be non-negative");
	std::size_t expected_v = 0;
	switch (spec.cls) {
	case SpecClass::semisimple:
		if (spec.frequencies.empty())
			throw SpecError("semisimple linear part is empty");
		expected_v = spec.frequencies.size();
		break;
	case SpecClass::nilpotent:
		if (spec.nil_size < 1)
			throw SpecError("nilpotent block size must be positive");
		expected_v = static_cast<std::size_t>(spec.nil_size);
		break;
	case SpecClass::scalar: {
		if (spec.factors.empty())
			throw SpecError("scalar linear part is empty");
		std::set<int> seen;
		for (const auto& f : spec.factors) {
			if (f.n < 1)
				throw SpecError("scalar factor multiplicity must be positive");
			if (!seen.insert(f.m).second)
				throw SpecError("scalar factor frequencies must be distinct (m = " + std::to_string(f.m) +
				                " repeated)");
		}
		expected_v = 1;
		break;
	}
	case SpecClass::difference: {
		if (spec.window < 0)
			throw SpecError("window must be non-negative");
		std::set<int> seen;
		for (const auto& [l, a] : spec.alpha)
			if (!seen.insert(l).second)
				throw SpecError("alpha index " + std::to_string(l) + " repeated");
		expected_v = 0;
		break;
	}
	}
	if (spec.V_src.size() != expected_v)
		throw SpecError("expected " + std::to_string(expected_v) + " forcing expression(s), got " +
		                std::to_string(spec.V_src.size()));

	const std::size_t n_amp =
	    spec.cls == SpecClass::difference ? static_cast<std::size_t>(2 * spec.window + 1) : spec.dimension();
	if (spec.amplitude_names.empty()) {
		if (spec.cls == SpecClass::difference) {
			for (int m = -spec.window; m <= spec.window; ++m)
				spec.amplitude_names.push_back(window_amplitude_name(m));
		} else if (spec.cls == SpecClass::scalar && spec.factors.size() > 1) {
			for (std::size_t r = 0; r < spec.factors.size(); ++r)
				for (int j = 1; j <= spec.factors[r].n; ++j)
					spec.amplitude_names.push_back("A" + std::to_string(r + 1) + "_" + std::to_string(j));
		} else {
			for (std::size_t k = 1; k <= n_amp; ++k)
				spec.amplitude_names.push_back("A" + std::to_string(k));
		}
	}
	if (spec.amplitude_names.size() != n_amp)
		throw SpecError("expected " + std::to_string(n_amp) + " amplitude names");

	std::set<std::string> names;
	auto claim = [&](const std::string& n, const char* what) {
		if (!is_identifier(n))
			throw SpecError(std::string(what) + " '" + n + "' is not a valid identifier");
		if (reserved.count(n))
			throw SpecError(std::string(what) + " '" + n + "' is a reserved word");
		if (!names.insert(n).second)
			throw SpecError("symbol '" + n + "' declared twice");
	};
	for (const auto& n : spec.state_names())
		claim(n, "state symbol");
	for (const auto& n : spec.amplitude_names)
		claim(n, "amplitude name");
	for (const auto& n : spec.params)
		claim(n, "parameter");

	spec.V.clear();
	auto ctx = state_context(spec);
	for (std::size_t k = 0; k < spec.V_src.size(); ++k) {
		try {
			spec.V.push_back(parse_expression(spec.V_src[k]));
			expand_expression(*spec.V.back(), ctx);
		} catch (const ParseError& e) {
			throw SpecError("V[" + std::to_string(k) + "]: " + e.what());
		}
	}
}

ODESystemSpec spec_from_json(const nlohmann::json& doc)
{
	if (!doc.is_object())
		throw SpecError("spec document must be a JSON object");
	const auto cls = field<std::string>(doc, "class");
	if (cls == "oscillator") {
		OscillatorSpec osc;
		osc.name = doc.value("name", std::string());
		osc.masses = field<std::vector<int>>(doc, "masses");
		osc.V = field<std::vector<std::string>>(doc, "V");
		osc.params = doc.value("params", std::vector<std::string>{});
		osc.order = field<int>(doc, "order");
		ODESystemSpec spec = oscillator_to_firstorder(osc);
		for (const char* key : {"annotations", "paper_discrepancy"})
			if (doc.contains(key))
				spec.extra[key] = doc[key];
		return spec;
	}

	ODESystemSpec spec;
	spec.name = doc.value("name", std::string());
	if (cls == "semisimple") {
		spec.cls = SpecClass::semisimple;
		spec.frequencies = field<std::vector<int>>(doc, "linear_part");
	} else if (cls == "nilpotent") {
		spec.cls = SpecClass::nilpotent;
		const auto& lp = doc.at("linear_part");
		spec.nil_m = field<int>(lp, "m");
		spec.nil_size = field<int>(lp, "size");
	} else if (cls == "scalar") {
		spec.cls = SpecClass::scalar;
		for (const auto& pair : field<std::vector<std::vector<int>>>(doc, "linear_part")) {
			if (pair.size() != 2)
				throw SpecError("scalar linear_part entries must be [m, n] pairs");
			spec.factors.push_back({pair[0], pair[1]});
		}
	} else if (cls == "difference") {
		spec.cls = SpecClass::difference;
		for (const auto& entry : doc.at("alpha")) {
			if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer())
				throw SpecError("alpha entries must be [l, value] pairs");
			spec.alpha.emplace_back(entry[0].get<int>(), json_constant(entry[1]));
		}
		spec.window = field<int>(doc, "window");
	} else {
		throw SpecError("unknown class '" + cls + "'");
	}
	if (spec.cls != SpecClass::difference)
		spec.V_src = field<std::vector<std::string>>(doc, "V");
	spec.params = doc.value("params", std::vector<std::string>{});
	spec.order = field<int>(doc, "order");
	spec.amplitude_names = doc.value("amplitude_names", std::vector<std::string>{});
	for (const char* key : {"annotations", "paper_discrepancy"})
		if (doc.contains(key))
			spec.extra[key] = doc[key];
	validate_spec(spec);
	return spec;
}

ODESystemSpec parse_spec(const std::string& text)
{
	nlohmann::json doc;
	try {
		doc = nlohmann::json::parse(text);
	} catch (const nlohmann::json::parse_error& e) {
		throw SpecError(std::string("malformed spec document: ") + e.what());
	}
	return spec_from_json(doc);
}

nlohmann::json spec_to_json(const ODESystemSpec& spec)
{
	nlohmann::json doc;
	if (!spec.name.empty())
		doc["name"] = spec.name;
	doc["class"] = to_string(spec.cls);
	switch (spec.cls) {
	case SpecClass::semisimple:
		doc["linear_part"] = spec.frequencies;
		break;
	case SpecClass::nilpotent:
		doc["linear_part"] = {{"m", spec.nil_m}, {"size", spec.nil_size}};
		break;
	case SpecClass::scalar:
		doc["linear_part"] = nlohmann::json::array();
		for (const auto& f : spec.factors)
			doc["linear_part"].push_back({f.m, f.n});
		break;
	case SpecClass::difference:
		doc["alpha"] = nlohmann::json::array();
		for (const auto& [l, a] : spec.alpha)
			doc["alpha"].push_back({l, a.str()});
		doc["window"] = spec.window;
		break;
	}
	if (spec.cls != SpecClass::difference)
		doc["V"] = spec.V_src;
	doc["params"] = spec.params;
	doc["order"] = spec.order;
	doc["amplitude_names"] = spec.amplitude_names;
	for (const auto& [k, v] : spec.extra.items())
		doc[k] = v;
	return doc;
}

ODESystemSpec oscillator_to_firstorder(const OscillatorSpec& osc)
{
	if (osc.masses.empty())
		throw SpecError("oscillator system needs at least one mass");
	if (osc.V.size() != osc.masses.size())
		throw SpecError("oscillator system needs one forcing per mass");
	const std::size_t n = osc.masses.size();
	std::vector<std::string> qp;
	for (std::size_t j = 1; j <= n; ++j)
		qp.push_back("q" + std::to_string(j));
	for (std::size_t j = 1; j <= n; ++j)
		qp.push_back("p" + std::to_string(j));

	ODESystemSpec spec;
	spec.name = osc.name;
	spec.cls = SpecClass::semisimple;
	spec.params = osc.params;
	spec.order = osc.order;
	for (int m : osc.masses) {
		if (m < 1)
			throw SpecError("oscillator masses must be positive integers");
		spec.frequencies.push_back(m);
		spec.frequencies.push_back(-m);
	}

	// Expand V in (q, p), then substitute q_j = (y_{2j-1} - y_{2j})/(2 i m_j),
	// p_j = (y_{2j-1} + y_{2j})/2.
	auto qctx = make_context(qp, osc.params, osc.order);
	ODESystemSpec probe = spec;
	probe.V_src.assign(2 * n, "0");
	auto yctx = state_context(probe);

	std::vector<std::pair<std::size_t, MultiPoly>> bind;
	std::vector<MultiPoly> images;
	for (std::size_t j = 0; j < n; ++j) {
		MultiPoly y1 = MultiPoly::variable(yctx, yctx->amplitude(2 * j));
		MultiPoly y2 = MultiPoly::variable(yctx, yctx->amplitude(2 * j + 1));
		images.push_back((y1 - y2) * GaussianRational(0, 2 * osc.masses[j]).inverse());
	}
	for (std::size_t j = 0; j < n; ++j) {
		MultiPoly y1 = MultiPoly::variable(yctx, yctx->amplitude(2 * j));
		MultiPoly y2 = MultiPoly::variable(yctx, yctx->amplitude(2 * j + 1));
		images.push_back((y1 + y2) * GaussianRational(Rational(1, 2)));
	}
	for (std::size_t j = 0; j < n; ++j) {
		HarmonicSeries v(qctx);
		try {
			v = expand_expression(*parse_expression(osc.V[j]), qctx);
		} catch (const ParseError& e) {
			throw SpecError("oscillator V[" + std::to_string(j) + "]: " + e.what());
		}
		HarmonicSeries out(yctx);
		for (const auto& [m, p] : v.entries()) {
			MultiPoly moved(yctx);
			for (const auto& [e, c] : p.terms()) {
				MultiPoly term = MultiPoly::constant(yctx, c);
				term *= MultiPoly::variable(yctx, PolyContext::eps, e[PolyContext::eps]);
				for (std::size_t k = 0; k < 2 * n; ++k)
					if (e[qctx->amplitude(k)])
						term *= images[k].pow(e[qctx->amplitude(k)]);
				for (std::size_t k = 0; k < osc.params.size(); ++k)
					if (e[qctx->param(k)])
						term *= MultiPoly::variable(yctx, yctx->param(k), e[qctx->param(k)]);
				moved += term;
			}
			out.add(m, moved);
		}
		std::string rendered = render_forcing(out);
		spec.V_src.push_back(rendered);
		spec.V_src.push_back(rendered);
	}
	validate_spec(spec);
	return spec;
}

ContextPtr state_context(const ODESystemSpec& spec)
{
	return make_context(spec.state_names(), spec.params, spec.order);
}

std::vector<HarmonicSeries> expand_forcing(const ODESystemSpec& spec, const ContextPtr& ctx)
{
	std::vector<HarmonicSeries> out;
	for (const auto& v : spec.V)
		out.push_back(expand_expression(*v, ctx));
	return out;
}

ODESystemSpec gauge_reduce(const ODESystemSpec& spec)
{
	if (spec.cls != SpecClass::semisimple && spec.cls != SpecClass::nilpotent)
		throw std::invalid_argument("gauge_reduce: only the system classes have a diagonal frequency part");
	const std::size_t n = spec.dimension();
	std::vector<int> freq(n);
	for (std::size_t j = 0; j < n; ++j)
		freq[j] = spec.cls == SpecClass::semisimple ? spec.frequencies[j] : spec.nil_m;

	auto ctx = state_context(spec);
	auto V = expand_forcing(spec, ctx);
	ODESystemSpec out = spec;
	out.V_src.clear();
	for (std::size_t j = 0; j < n; ++j) {
		HarmonicSeries moved(ctx);
		for (const auto& [m, p] : V[j].entries()) {
			for (const auto& [e, c] : p.terms()) {
				int shift = -freq[j];
				for (std::size_t k = 0; k < n; ++k)
					shift += freq[k] * e[ctx->amplitude(k)];
				moved.add(m + shift, MultiPoly::monomial(ctx, e, c));
			}
		}
		out.V_src.push_back(render_forcing(moved));
	}
	if (spec.cls == SpecClass::semisimple)
		std::fill(out.frequencies.begin(), out.frequencies.end(), 0);
	else
		out.nil_m = 0;
	validate_spec(out);
	return out;
}

std::string render_forcing(const HarmonicSeries& v)
{
	if (v.is_zero())
		return "0";
	std::string out;
	for (const auto& [m, p] : v.entries()) {
		if (!out.empty())
			out += " + ";
		out += "(" + p.str() + ")";
		if (m != 0)
			out += "*E^" + std::to_string(m);
	}
	return out;
}

std::string window_amplitude_name(int m)
{
	return m < 0 ? "A_m" + std::to_string(-m) : "A_" + std::to_string(m);
}

} // namespace rgpert
