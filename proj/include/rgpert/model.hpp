#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rgpert/expression.hpp"

namespace rgpert {

enum class SpecClass { semisimple, nilpotent, scalar, difference };

std::string to_string(SpecClass c);

class SpecError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// One factor (d/dt - i m)^n of the scalar operator.
struct ScalarFactor {
	int m = 0;
	int n = 1;
	friend bool operator==(const ScalarFactor&, const ScalarFactor&) = default;
};

struct ODESystemSpec {
	std::string name;
	SpecClass cls = SpecClass::semisimple;

	std::vector<int> frequencies;       // semisimple: m_1..m_n
	int nil_m = 0;                      // nilpotent: eigenvalue i*m
	int nil_size = 0;                   // nilpotent: block size
	std::vector<ScalarFactor> factors;  // scalar: (m_r, n_r)
	std::vector<std::pair<int, GaussianRational>> alpha; // difference: 2U(z) = sum alpha_l z^l
	int window = 0;                     // difference: amplitude window W

	std::vector<std::string> V_src;
	std::vector<ExprPtr> V;
	std::vector<std::string> params;
	int order = 0;
	std::vector<std::string> amplitude_names;

	/// Free-form metadata carried through serialization (annotations,
	/// paper_discrepancy entries).
	nlohmann::json extra = nlohmann::json::object();

	/// n for the system classes, N for the scalar class, 1 for difference.
	std::size_t dimension() const;
	/// y1..yn, or y, y', y'', ... for the scalar class.
	std::vector<std::string> state_names() const;
	/// Resonant harmonic of amplitude k.
	int resonant_harmonic(std::size_t k) const;
	/// Index of the scalar factor owning amplitude k, and its slot j (0-based).
	std::pair<std::size_t, std::size_t> scalar_slot(std::size_t k) const;
	bool is_autonomous() const;
};

/// Spec document (JSON). Throws SpecError with a readable message.
ODESystemSpec parse_spec(const std::string& text);
ODESystemSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const ODESystemSpec& spec);

/// Validation shared by all constructors; throws SpecError.
void validate_spec(ODESystemSpec& spec);

/// q_j'' = -m_j^2 q_j + eps V_j(q, p) with p_j = q_j'.
struct OscillatorSpec {
	std::string name;
	std::vector<int> masses;
	std::vector<std::string> V; // in q1..qn, p1..pn
	std::vector<std::string> params;
	int order = 0;
};

/// y_{2j-1} = p_j + i m_j q_j, y_{2j} = p_j - i m_j q_j.
ODESystemSpec oscillator_to_firstorder(const OscillatorSpec& osc);

/// Default name of the bare amplitude A_m of a difference spec ("A_m2" for m = -2).
std::string window_amplitude_name(int m);

/// Context whose amplitude slots are the state symbols, for expanding V.
ContextPtr state_context(const ODESystemSpec& spec);

/// V_j expanded as sum_m c_m E^m over state_context(spec).
std::vector<HarmonicSeries> expand_forcing(const ODESystemSpec& spec, const ContextPtr& ctx);

/// Rewrite with y_j = e^{i m_j t} z_j so the linear part loses its
/// diagonal frequencies (semisimple: M -> 0, nilpotent: m -> 0).
ODESystemSpec gauge_reduce(const ODESystemSpec& spec);

/// Render an expanded forcing back into the expression grammar.
std::string render_forcing(const HarmonicSeries& v);

} // namespace rgpert
