#include "rgpert/expression.hpp"

#include <cctype>
#include <set>

namespace rgpert {

namespace {

ExprPtr make_node(ExprKind kind, std::size_t pos, std::vector<ExprPtr> args = {})
{
	auto e = std::make_shared<Expr>();
	e->kind = kind;
	e->pos = pos;
	e->args = std::move(args);
	return e;
}

ExprPtr make_number(long v, std::size_t pos)
{
	auto e = std::make_shared<Expr>();
	e->kind = ExprKind::number;
	e->value = v;
	e->pos = pos;
	return e;
}

ExprPtr make_pow(ExprPtr base, int k, std::size_t pos)
{
	auto e = std::make_shared<Expr>();
	e->kind = ExprKind::pow;
	e->exponent = k;
	e->pos = pos;
	e->args = {std::move(base)};
	return e;
}

class Parser {
public:
	explicit Parser(const std::string& src) : s_(src) {}

	ExprPtr parse()
	{
		ExprPtr e = expr();
		skip();
		if (p_ != s_.size())
			throw ParseError("unexpected '" + std::string(1, s_[p_]) + "'", p_);
		return e;
	}

private:
	const std::string& s_;
	std::size_t p_ = 0;

	void skip()
	{
		while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_])))
			++p_;
	}

	bool accept(char c)
	{
		skip();
		if (p_ < s_.size() && s_[p_] == c) {
			++p_;
			return true;
		}
		return false;
	}

	void expect(char c)
	{
		if (!accept(c))
			throw ParseError(std::string("expected '") + c + "'", p_);
	}

	long integer()
	{
		skip();
		std::size_t start = p_;
		while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_])))
			++p_;
		if (start == p_)
			throw ParseError("expected integer", p_);
		if (p_ - start > 9)
			throw ParseError("integer literal too long", start);
		return std::stol(s_.substr(start, p_ - start));
	}

	ExprPtr expr()
	{
		ExprPtr lhs = term();
		for (;;) {
			skip();
			std::size_t pos = p_;
			if (accept('+'))
				lhs = make_node(ExprKind::add, pos, {lhs, term()});
			else if (accept('-'))
				lhs = make_node(ExprKind::sub, pos, {lhs, term()});
			else
				return lhs;
		}
	}

	ExprPtr term()
	{
		ExprPtr lhs = unary();
		for (;;) {
			skip();
			std::size_t pos = p_;
			if (accept('*'))
				lhs = make_node(ExprKind::mul, pos, {lhs, unary()});
			else if (accept('/'))
				lhs = make_node(ExprKind::div, pos, {lhs, unary()});
			else
				return lhs;
		}
	}

	ExprPtr unary()
	{
		skip();
		std::size_t pos = p_;
		if (accept('-'))
			return make_node(ExprKind::neg, pos, {unary()});
		return factor();
	}

	ExprPtr factor()
	{
		ExprPtr base = atom();
		skip();
		std::size_t pos = p_;
		if (!accept('^'))
			return base;
		bool negative = accept('-');
		long k = integer();
		return make_pow(base, static_cast<int>(negative ? -k : k), pos);
	}

	ExprPtr trig(bool is_cos, std::size_t pos)
	{
		expect('(');
		long k = 1;
		skip();
		if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
			k = integer();
			accept('*');
		}
		skip();
		if (!(p_ < s_.size() && s_[p_] == 't'))
			throw ParseError("expected 't' in trigonometric argument", p_);
		++p_;
		expect(')');
		auto e = make_node(ExprKind::E, pos);
		auto plus = make_pow(e, static_cast<int>(k), pos);
		auto minus = make_pow(e, static_cast<int>(-k), pos);
		if (is_cos)
			return make_node(ExprKind::div, pos, {make_node(ExprKind::add, pos, {plus, minus}), make_number(2, pos)});
		auto denom = make_node(ExprKind::mul, pos, {make_number(2, pos), make_node(ExprKind::imag, pos)});
		return make_node(ExprKind::div, pos, {make_node(ExprKind::sub, pos, {plus, minus}), denom});
	}

	ExprPtr atom()
	{
		skip();
		std::size_t pos = p_;
		if (p_ >= s_.size())
			throw ParseError("unexpected end of input", p_);
		char c = s_[p_];
		if (std::isdigit(static_cast<unsigned char>(c)))
			return make_number(integer(), pos);
		if (accept('(')) {
			ExprPtr e = expr();
			expect(')');
			return e;
		}
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_'))
				++p_;
			while (p_ < s_.size() && s_[p_] == '\'')
				++p_;
			std::string id = s_.substr(pos, p_ - pos);
			if (id == "i")
				return make_node(ExprKind::imag, pos);
			if (id == "eps")
				return make_node(ExprKind::eps, pos);
			if (id == "E")
				return make_node(ExprKind::E, pos);
			if (id == "cos" || id == "sin")
				return trig(id == "cos", pos);
			auto e = make_node(ExprKind::symbol, pos);
			std::const_pointer_cast<Expr>(e)->name = id;
			return e;
		}
		throw ParseError("unexpected '" + std::string(1, c) + "'", pos);
	}
};

int precedence(const Expr& e)
{
	switch (e.kind) {
	case ExprKind::add:
	case ExprKind::sub:
		return 1;
	case ExprKind::mul:
	case ExprKind::div:
		return 2;
	case ExprKind::neg:
		return 3;
	case ExprKind::pow:
		return 4;
	default:
		return 5;
	}
}

std::string wrap(const Expr& e, bool parens)
{
	return parens ? "(" + render(e) + ")" : render(e);
}

void collect_symbols(const Expr& e, std::set<std::string>& out)
{
	if (e.kind == ExprKind::symbol)
		out.insert(e.name);
	for (const auto& a : e.args)
		collect_symbols(*a, out);
}

std::complex<double> ipow(std::complex<double> z, int k)
{
	if (k < 0)
		return 1.0 / ipow(z, -k);
	std::complex<double> r = 1.0;
	for (int j = 0; j < k; ++j)
		r *= z;
	return r;
}

} // namespace

ExprPtr parse_expression(const std::string& src)
{
	return Parser(src).parse();
}

std::string render(const Expr& e)
{
	switch (e.kind) {
	case ExprKind::number:
		return e.value.get_str();
	case ExprKind::imag:
		return "i";
	case ExprKind::eps:
		return "eps";
	case ExprKind::E:
		return "E";
	case ExprKind::symbol:
		return e.name;
	case ExprKind::neg:
		return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
	case ExprKind::add:
	case ExprKind::sub: {
		const char* op = e.kind == ExprKind::add ? " + " : " - ";
		return render(*e.args[0]) + op + wrap(*e.args[1], precedence(*e.args[1]) <= 1);
	}
	case ExprKind::mul:
	case ExprKind::div: {
		const char* op = e.kind == ExprKind::mul ? "*" : "/";
		return wrap(*e.args[0], precedence(*e.args[0]) < 2) + op + wrap(*e.args[1], precedence(*e.args[1]) <= 2);
	}
	case ExprKind::pow:
		return wrap(*e.args[0], precedence(*e.args[0]) < 5) + "^" + std::to_string(e.exponent);
	}
	return {};
}

bool structurally_equal(const Expr& a, const Expr& b)
{
	if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.exponent != b.exponent ||
	    a.args.size() != b.args.size())
		return false;
	for (std::size_t k = 0; k < a.args.size(); ++k)
		if (!structurally_equal(*a.args[k], *b.args[k]))
			return false;
	return true;
}

std::vector<std::string> expression_symbols(const Expr& e)
{
	std::set<std::string> out;
	collect_symbols(e, out);
	return {out.begin(), out.end()};
}

HarmonicSeries expand_expression(const Expr& e, const ContextPtr& ctx, bool allow_time)
{
	switch (e.kind) {
	case ExprKind::number:
		return HarmonicSeries::single(0, MultiPoly::constant(ctx, GaussianRational(e.value)));
	case ExprKind::imag:
		return HarmonicSeries::single(0, MultiPoly::constant(ctx, GaussianRational::i()));
	case ExprKind::eps:
		return HarmonicSeries::single(0, MultiPoly::variable(ctx, PolyContext::eps));
	case ExprKind::E:
		return HarmonicSeries::single(1, MultiPoly::constant(ctx, 1));
	case ExprKind::symbol: {
		auto var = ctx->find(e.name);
		const bool clock = var && allow_time && (*var == PolyContext::time || *var == PolyContext::shift);
		if (!var || !(clock || ctx->is_amplitude(*var) || ctx->is_param(*var)))
			throw ParseError("unknown symbol '" + e.name + "'", e.pos);
		return HarmonicSeries::single(0, MultiPoly::variable(ctx, *var));
	}
	case ExprKind::neg:
		return expand_expression(*e.args[0], ctx, allow_time) * GaussianRational(-1);
	case ExprKind::add:
		return expand_expression(*e.args[0], ctx, allow_time) + expand_expression(*e.args[1], ctx, allow_time);
	case ExprKind::sub:
		return expand_expression(*e.args[0], ctx, allow_time) - expand_expression(*e.args[1], ctx, allow_time);
	case ExprKind::mul:
		return hs_mul(expand_expression(*e.args[0], ctx, allow_time), expand_expression(*e.args[1], ctx, allow_time));
	case ExprKind::div: {
		HarmonicSeries den = expand_expression(*e.args[1], ctx, allow_time);
		if (den.size() != 1 || den.entries().begin()->first != 0 || !den.entries().begin()->second.is_constant())
			throw ParseError("division by a non-constant expression", e.pos);
		GaussianRational c = den.entries().begin()->second.constant_term();
		return expand_expression(*e.args[0], ctx, allow_time) * c.inverse();
	}
	case ExprKind::pow: {
		HarmonicSeries base = expand_expression(*e.args[0], ctx, allow_time);
		if (e.exponent < 0) {
			if (base.size() != 1 || !base.entries().begin()->second.is_constant())
				throw ParseError("negative power of a non-monomial expression", e.pos);
			auto [m, p] = *base.entries().begin();
			GaussianRational c = p.constant_term().inverse();
			GaussianRational r = 1;
			for (int k = 0; k < -e.exponent; ++k)
				r *= c;
			return HarmonicSeries::single(m * e.exponent, MultiPoly::constant(ctx, r));
		}
		HarmonicSeries r = HarmonicSeries::single(0, MultiPoly::constant(ctx, 1));
		for (int k = 0; k < e.exponent; ++k)
			r = hs_mul(r, base);
		return r;
	}
	}
	throw ParseError("bad expression node", e.pos);
}

std::complex<double> evaluate_expression(const Expr& e, const std::map<std::string, std::complex<double>>& values,
                                         double eps, double t)
{
	auto arg = [&](std::size_t k) { return evaluate_expression(*e.args[k], values, eps, t); };
	switch (e.kind) {
	case ExprKind::number:
		return e.value.get_d();
	case ExprKind::imag:
		return {0.0, 1.0};
	case ExprKind::eps:
		return eps;
	case ExprKind::E:
		return std::polar(1.0, t);
	case ExprKind::symbol: {
		auto it = values.find(e.name);
		if (it == values.end())
			throw ParseError("unbound symbol '" + e.name + "'", e.pos);
		return it->second;
	}
	case ExprKind::neg:
		return -arg(0);
	case ExprKind::add:
		return arg(0) + arg(1);
	case ExprKind::sub:
		return arg(0) - arg(1);
	case ExprKind::mul:
		return arg(0) * arg(1);
	case ExprKind::div:
		return arg(0) / arg(1);
	case ExprKind::pow:
		return ipow(arg(0), e.exponent);
	}
	return 0.0;
}

} // namespace rgpert
