#pragma once

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgpert/harmonic_series.hpp"

namespace rgpert {

enum class ExprKind { number, imag, eps, E, symbol, neg, add, sub, mul, div, pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of the forcing-term grammar. number holds a non-negative integer;
/// pow holds an integer exponent (negative only on E).
struct Expr {
	ExprKind kind;
	Rational value;
	std::string name;
	int exponent = 0;
	std::vector<ExprPtr> args;
	std::size_t pos = 0;
};

class ParseError : public std::runtime_error {
public:
	ParseError(const std::string& msg, std::size_t pos)
	    : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos)
	{
	}
	std::size_t position() const { return pos_; }

private:
	std::size_t pos_;
};

/// expr := term (('+'|'-') term)*
/// term := unary (('*'|'/') unary)*
/// unary := '-' unary | factor
/// factor := atom ('^' '-'? int)?
/// atom := int | 'i' | 'eps' | 'E' | ident | '(' expr ')' | cos(k*t) | sin(k*t)
/// Identifiers may end in primes (y', y''). cos/sin desugar to E powers.
ExprPtr parse_expression(const std::string& src);

/// Text that re-parses to a structurally equal tree.
std::string render(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Symbol names used by the tree.
std::vector<std::string> expression_symbols(const Expr& e);

/// Expand into sum_m c_m(eps, symbols) E^m. Symbols resolve through ctx
/// (amplitude or parameter slots). Throws ParseError for unknown symbols,
/// division by a non-constant and negative powers of non-E factors.
/// With allow_time the time and shift symbols of ctx are accepted too.
HarmonicSeries expand_expression(const Expr& e, const ContextPtr& ctx, bool allow_time = false);

/// Direct numeric evaluation of the tree with E = e^{it}.
std::complex<double> evaluate_expression(const Expr& e, const std::map<std::string, std::complex<double>>& values,
                                         double eps, double t);

} // namespace rgpert
