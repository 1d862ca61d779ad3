#include "rgpert/gaussian_rational.hpp"

#include <stdexcept>

namespace rgpert {

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
{
	re_.canonicalize();
	im_.canonicalize();
}

GaussianRational GaussianRational::from_string(const std::string& re, const std::string& im)
{
	return {Rational(re), Rational(im)};
}

GaussianRational GaussianRational::inverse() const
{
	if (is_zero())
		throw std::domain_error("division by zero in Q(i)");
	Rational n = norm();
	return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
	re_ += o.re_;
	im_ += o.im_;
	return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
	re_ -= o.re_;
	im_ -= o.im_;
	return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
	if (o.is_real()) {
		re_ *= o.re_;
		im_ *= o.re_;
		return *this;
	}
	if (is_real()) {
		im_ = re_ * o.im_;
		re_ *= o.re_;
		return *this;
	}
	Rational r = re_ * o.re_ - im_ * o.im_;
	im_ = re_ * o.im_ + im_ * o.re_;
	re_ = std::move(r);
	return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
	return *this *= o.inverse();
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b)
{
	static thread_local Rational tmp;
	if (b.is_real()) {
		tmp = a.re_ * b.re_;
		re_ += tmp;
		if (!a.is_real()) {
			tmp = a.im_ * b.re_;
			im_ += tmp;
		}
		return;
	}
	if (a.is_real()) {
		tmp = a.re_ * b.im_;
		im_ += tmp;
		if (sgn(b.re_) != 0) {
			tmp = a.re_ * b.re_;
			re_ += tmp;
		}
		return;
	}
	*this += a * b;
}

std::string rational_str(const Rational& q)
{
	return q.get_str();
}

std::string GaussianRational::str() const
{
	if (is_real())
		return rational_str(re_);
	std::string imag;
	if (im_ == 1)
		imag = "i";
	else if (im_ == -1)
		imag = "-i";
	else
		imag = rational_str(im_) + "*i";
	if (sgn(re_) == 0)
		return imag;
	std::string out = "(" + rational_str(re_);
	if (sgn(im_) < 0)
		out += " - " + imag.substr(1);
	else
		out += " + " + imag;
	return out + ")";
}

std::optional<GaussianRational> gq_arith(const GaussianRational& a, const GaussianRational& b, ArithOp op)
{
	switch (op) {
	case ArithOp::add:
		return a + b;
	case ArithOp::sub:
		return a - b;
	case ArithOp::mul:
		return a * b;
	case ArithOp::div:
		if (b.is_zero())
			return std::nullopt;
		return a / b;
	}
	return std::nullopt;
}

} // namespace rgpert
