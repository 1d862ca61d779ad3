#pragma once

#include <string>
#include <vector>

#include "rgpert/model.hpp"

namespace rgpert {

struct Builtin {
	std::string name;
	std::string summary;
	std::string document; // spec document (JSON)
};

const std::vector<Builtin>& builtins();
/// Throws SpecError for an unknown name.
const Builtin& find_builtin(const std::string& name);
ODESystemSpec builtin_spec(const std::string& name);

} // namespace rgpert
