#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgpert/rg.hpp"

namespace rgpert {

enum class CheckStatus { pass, fail, not_applicable };

struct Mismatch {
	std::size_t component = 0;
	int harmonic = 0;
	std::string monomial;
	std::string lhs;
	std::string rhs;
};

struct CheckReport {
	std::string check;
	std::string spec_id;
	int order = 0;
	CheckStatus status = CheckStatus::pass;
	std::optional<std::uint64_t> seed;
	std::optional<Mismatch> mismatch;
	std::string note;

	bool passed() const { return status != CheckStatus::fail; }
	/// "PASS <check> <spec> K=<order>", plus a JSON detail block on failure.
	std::string render() const;
	nlohmann::json to_json() const;
};

/// First differing monomial of two families of series, if any.
std::optional<Mismatch> first_mismatch(const std::vector<HarmonicSeries>& lhs, const std::vector<HarmonicSeries>& rhs);

/// P(eps, t, A) == P(eps, t - s, cA(eps, s, A)) for every populated (j, m).
CheckReport check_functional_relation(const SecularTable& table);
/// cA(eps, t + s, A) == cA(eps, s, cA(eps, t, A)).
CheckReport check_group_property(const SecularTable& table);
/// Every entry is free of t.
CheckReport check_no_secular(const RenExpansion& ren);
CheckReport check_no_secular(const SecularTable& table);
/// The naive table solves the governing equation exactly (mod eps^{K+1}).
CheckReport check_residual(const SecularTable& table);
/// The renormalized expansion solves it with d/dt acting through the RG field.
CheckReport check_residual(const RenExpansion& ren, const RGSystem& rg);
/// Both compositions of the bare/renormalized maps are the identity.
CheckReport check_inversion(const SecularTable& table);
/// Autonomous semisimple only: sum r_k m_k == m for every table monomial
/// and weight m_j for the RG field of cA_j.
CheckReport check_homogeneity(const SecularTable& table);

/// All checks for one spec (difference specs excluded).
std::vector<CheckReport> run_all_checks(const ODESystemSpec& spec, std::optional<std::uint64_t> seed = {});

/// Random spec with n <= 2, V degree <= 2 and Gaussian-rational
/// coefficients with |numerator|, |denominator| <= 3.
ODESystemSpec random_spec(SpecClass cls, std::uint64_t seed, int order, bool autonomous_zero = false);

/// Copy of the table with one coefficient of positive t-degree perturbed.
SecularTable corrupt_table(const SecularTable& table);

/// Machine format: a polynomial is a list of [re, im, exponents] terms,
/// a series maps the harmonic (as a string) to a polynomial.
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& terms, const ContextPtr& ctx);
nlohmann::json series_to_json(const HarmonicSeries& s);
HarmonicSeries series_from_json(const nlohmann::json& entries, const ContextPtr& ctx);

/// Tables (used for fixtures and round trips).
nlohmann::json table_to_json(const SecularTable& table);
SecularTable table_from_json(const nlohmann::json& doc);

/// RG field plus renormalized expansion.
nlohmann::json rg_to_json(const RGSystem& rg, const RenExpansion& ren);
std::pair<RGSystem, RenExpansion> rg_from_json(const nlohmann::json& doc);

} // namespace rgpert
