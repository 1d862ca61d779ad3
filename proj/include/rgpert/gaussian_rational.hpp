#pragma once

#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace rgpert {

using Rational = mpq_class;

/// Exact element re + i*im of Q(i). Components are kept canonical (lowest
/// terms, positive denominator), so equality is structural.
class GaussianRational {
public:
	GaussianRational() = default;
	GaussianRational(long value) : re_(value) {}
	GaussianRational(Rational re, Rational im = 0);

	static GaussianRational i() { return {0, 1}; }
	static GaussianRational from_string(const std::string& re, const std::string& im = "0");

	const Rational& re() const { return re_; }
	const Rational& im() const { return im_; }

	bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
	bool is_real() const { return sgn(im_) == 0; }
	bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

	GaussianRational conj() const { return {re_, -im_}; }
	/// re^2 + im^2
	Rational norm() const { return re_ * re_ + im_ * im_; }

	/// Throws std::domain_error on zero.
	GaussianRational inverse() const;

	GaussianRational& operator+=(const GaussianRational& o);
	GaussianRational& operator-=(const GaussianRational& o);
	GaussianRational& operator*=(const GaussianRational& o);
	GaussianRational& operator/=(const GaussianRational& o);

	/// Multiply-accumulate: *this += a * b without a temporary.
	void add_product(const GaussianRational& a, const GaussianRational& b);

	friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
	friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
	friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
	friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
	GaussianRational operator-() const { return {-re_, -im_}; }

	friend bool operator==(const GaussianRational& a, const GaussianRational& b)
	{
		return a.re_ == b.re_ && a.im_ == b.im_;
	}
	friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

	std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

	/// Canonical text: "3/4", "-i", "2/3*i", "(1/2 - 3*i)".
	/// Products are written so that the string re-parses through the
	/// expression grammar.
	std::string str() const;

private:
	Rational re_;
	Rational im_;
};

enum class ArithOp { add, sub, mul, div };

/// Field arithmetic with an explicit error value: std::nullopt for division by zero.
std::optional<GaussianRational> gq_arith(const GaussianRational& a, const GaussianRational& b, ArithOp op);

std::string rational_str(const Rational& q);

} // namespace rgpert
