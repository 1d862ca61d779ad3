#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "rgpert/model.hpp"

namespace rgpert {

/// Naive perturbation result. components[j] holds sum_m P_{j,m} e^{imt};
/// for the scalar class component q is the q-th derivative slot
/// (coefficients (d/dt + im)^q P_m), so components[0] is the solution.
struct SecularTable {
	ODESystemSpec spec;
	ContextPtr ctx;
	std::vector<HarmonicSeries> components;
	std::vector<std::pair<std::size_t, int>> resonant;
	std::map<std::pair<std::size_t, int>, int> min_order;

	std::size_t amplitude_count() const { return ctx->amplitude_count(); }
	/// The secular coefficient defining amplitude k as a function of
	/// (eps, t, A): P_{k,m_k} (semisimple), P_{k,m} (nilpotent),
	/// d^j P_{m_r}/dt^j for amplitude (r, j) (scalar).
	MultiPoly amplitude_coefficient(std::size_t k) const;
	bool is_resonant(std::size_t component, int m) const;
	/// Recompute resonant and min_order from components.
	void refresh_metadata();
};

/// Context for a table: amplitude names and parameters of the spec.
ContextPtr table_context(const ODESystemSpec& spec);

SecularTable expand_semisimple(const ODESystemSpec& spec);
SecularTable expand_nilpotent(const ODESystemSpec& spec);
SecularTable expand_scalar(const ODESystemSpec& spec);
/// Dispatch on spec.cls (not the difference class).
SecularTable expand(const ODESystemSpec& spec);

/// Unique solution of the order-k harmonic-m equation under the class
/// normalization. Semisimple: R has one entry per component; nilpotent:
/// one per component; scalar: a single entry, result is P_m only.
std::vector<MultiPoly> solve_linear_step(const ODESystemSpec& spec, int m, const std::vector<MultiPoly>& R);

/// V_j(eps, E, states) for the state series comps (scalar: derivative
/// slots), truncated at eps^max_eps. Coefficients live in ctx.
std::vector<HarmonicSeries> evaluate_forcing(const ODESystemSpec& spec, const ContextPtr& ctx,
                                             const std::vector<HarmonicSeries>& comps, int max_eps = -1);

using Derivation = std::function<MultiPoly(const MultiPoly&)>;

/// Left minus right side of the governing equation with d/dt acting on
/// each secular coefficient as the derivation D (d/dt for naive tables,
/// the RG vector field for renormalized expansions). Scalar: also
/// includes the slot relations. Zero series means an exact solution.
std::vector<HarmonicSeries> governing_residual(const ODESystemSpec& spec, const ContextPtr& ctx,
                                               const std::vector<HarmonicSeries>& comps, const Derivation& D);

} // namespace rgpert
