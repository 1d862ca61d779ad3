#include "rgpert/builtins.hpp"

namespace rgpert {

const std::vector<Builtin>& builtins()
{
	static const std::vector<Builtin> list{
	    {"ex_cd", "two coupled first-order equations with periodic forcing, M = diag(1, -1)",
	     R"JSON({
  "name": "ex_cd",
  "class": "semisimple",
  "linear_part": [1, -1],
  "V": ["y1*y2 + E^-1*y2", "y1*y2 + E*y1"],
  "order": 5
})JSON"},
	    {"ex_oscillators", "coupled oscillators q1'' + q1 + 4 eps q2 q1' = 0, q2'' + q2 + 4 eps q1 q2' = 0",
	     R"JSON({
  "name": "ex_oscillators",
  "class": "oscillator",
  "masses": [1, 1],
  "V": ["-4*q2*p1", "-4*q1*p2"],
  "order": 4
})JSON"},
	    {"ex_bt", "Bogdanov-Takens type nilpotent system with periodic forcing",
	     R"JSON({
  "name": "ex_bt",
  "class": "nilpotent",
  "linear_part": {"m": 0, "size": 2},
  "V": ["alpha*y1*(E + E^-1)", "beta*y2*(mu + y1^2 + E + E^-1)"],
  "params": ["alpha", "beta", "mu"],
  "order": 3
})JSON"},
	    {"ex_third", "third-order scalar equation y''' = 2 eps y y'' cos t",
	     R"JSON({
  "name": "ex_third",
  "class": "scalar",
  "linear_part": [[0, 3]],
  "V": ["2*y*y''*cos(t)"],
  "order": 4
})JSON"},
	    {"ex_scalar1", "first-order autonomous scalar equation y' = eps (y^2 - 1)",
	     R"JSON({
  "name": "ex_scalar1",
  "class": "scalar",
  "linear_part": [[0, 1]],
  "V": ["y^2 - 1"],
  "order": 6,
  "annotations": {
    "closed_form": "(A*cosh(eps*t) - sinh(eps*t))/(cosh(eps*t) - A*sinh(eps*t))"
  },
  "paper_discrepancy": [
    {
      "item": "closed form of P_0",
      "printed": "(A*cosh(eps*t) - sinh(eps*t))/(A*sinh(eps*t) + cosh(eps*t))",
      "engine": "(A*cosh(eps*t) - sinh(eps*t))/(cosh(eps*t) - A*sinh(eps*t))",
      "reason": "the printed denominator solves y' = -eps (y^2 + 1); quadrature of y' = eps (y^2 - 1) flips its sign",
      "arbiter": ["residual", "functional_relation"]
    }
  ]
})JSON"},
	    {"ex_difference", "difference equation y(t+pi) - y(t-pi) = 2 eps U(e^{it}) y with 2U = z^2 + z^-2",
	     R"JSON({
  "name": "ex_difference",
  "class": "difference",
  "alpha": [[2, 1], [-2, 1]],
  "window": 10,
  "order": 4
})JSON"},
	};
	return list;
}

const Builtin& find_builtin(const std::string& name)
{
	for (const auto& b : builtins())
		if (b.name == name)
			return b;
	std::string known;
	for (const auto& b : builtins())
		known += (known.empty() ? "" : ", ") + b.name;
	throw SpecError("unknown builtin '" + name + "' (known: " + known + ")");
}

ODESystemSpec builtin_spec(const std::string& name)
{
	return parse_spec(find_builtin(name).document);
}

} // namespace rgpert
