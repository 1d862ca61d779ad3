#pragma once

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgpert/rg.hpp"

namespace rgpert {

using State = std::vector<std::complex<double>>;
using ParamValues = std::map<std::string, double>;

/// Uniform grid t0, t0 + dt, ... with one state per grid point.
struct Trajectory {
	std::string system;
	double eps = 0;
	double t0 = 0;
	double dt = 0;
	std::vector<std::string> labels;
	std::vector<State> states;

	double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
	std::size_t size() const { return states.size(); }
	std::size_t dimension() const { return labels.size(); }
};

class NumericOverflow : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

using VectorField = std::function<void(double t, const State& y, State& dy)>;

/// Classical fixed-step RK4 over [0, t_end] with round(t_end/dt) steps.
/// Throws NumericOverflow on a non-finite state.
Trajectory rk4(const VectorField& f, const State& initial, double t_end, double dt);

/// The original system: semisimple y' = iMy + eps V, nilpotent
/// y_j' = i m y_j + y_{j+1} + eps V_j, scalar as the companion system in
/// (y, y', ..., y^(N-1)).
VectorField ode_field(const ODESystemSpec& spec, double eps, const ParamValues& params = {});
Trajectory integrate_ode(const ODESystemSpec& spec, const State& initial, double eps, double t_end, double dt,
                         const ParamValues& params = {});

/// The RG field truncated at eps^eps_order.
Trajectory integrate_rg(const RGSystem& rg, const State& initial, double eps, double t_end, double dt, int eps_order,
                        const ParamValues& params = {});

/// Polar RG system; states are (R_1, theta_1, R_2, theta_2, ...) stored as
/// real parts.
Trajectory integrate_polar(const PolarSystem& polar, const std::vector<double>& R0, const std::vector<double>& theta0,
                           double eps, double t_end, double dt, int eps_order, const ParamValues& params = {});

/// Renormalized amplitudes cA_plus = R e^{i theta}, cA_minus = R e^{-i theta}.
Trajectory amplitudes_from_polar(const Trajectory& polar_traj, const PolarPairs& pairs, std::size_t amplitude_count);

/// Y_j(t) = sum_m P_{j,m}(eps, 0, cA(t)) e^{imt}, with the expansion
/// truncated at eps^eps_order (negative: keep everything).
Trajectory reconstruct(const RenExpansion& ren, const Trajectory& rg_traj, double eps, int eps_order = -1,
                       const ParamValues& params = {});

/// Values of the components of ren at t with amplitudes cA.
State evaluate_expansion(const RenExpansion& ren, const State& amplitudes, double eps, double t, int eps_order = -1,
                         const ParamValues& params = {});

/// Header "t,re_1,im_1,..." then one row per grid point, 17 significant digits.
void emit_csv(const Trajectory& traj, const std::string& path);

struct PlotSeries {
	std::string label;
	std::string color;
	std::vector<double> t;
	std::vector<double> y;
};

/// Self-contained SVG line chart; throws std::invalid_argument on an empty
/// series list.
void emit_svg(const std::vector<PlotSeries>& series, const std::string& path, const std::string& title = "");
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title = "");

PlotSeries real_series(const Trajectory& traj, std::size_t component, std::string label, std::string color);
PlotSeries imag_series(const Trajectory& traj, std::size_t component, std::string label, std::string color);

/// Direct vs RG comparison for a spec with one conjugate pair (1:2).
struct PairRun {
	double eps = 0;
	State initial;
	Trajectory direct;
	Trajectory polar;
	Trajectory reconstructed;
	double conjugate_defect = 0; // sup |y_2 - conj(y_1)|
	double deviation = 0;        // sup |Re y_1 - Re Y_1|
};

/// Direct integration from the state given by the renormalized expansion
/// at t = 0 (truncated at eps^expansion_order), polar RG with the field
/// truncated at eps^field_order, and reconstruction.
PairRun run_pair_comparison(const SecularTable& table, double eps, double R0, double theta0, double t_end, double dt,
                            int expansion_order, int field_order);

/// Ratio of the final-time errors against the exact exponential at dt and
/// dt/2, for a semisimple spec with V == 0.
double rk4_convergence_ratio(const ODESystemSpec& spec, double t_end, double dt);

} // namespace rgpert
