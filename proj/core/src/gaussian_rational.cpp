#include "abch/gaussian_rational.hpp"

#include <stdexcept>

namespace abch {

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const mpq_class den = o.norm();
  if (sgn(den) == 0) throw std::domain_error("GaussianRational: division by zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  auto imag = [](const mpq_class& v) {
    if (v == 1) return std::string("i");
    if (v == -1) return std::string("-i");
    return v.get_str() + " i";
  };
  if (sgn(re_) == 0) return imag(im_);
  std::string s = "(" + re_.get_str();
  if (sgn(im_) > 0) {
    s += " + " + imag(im_);
  } else {
    s += " - " + imag(mpq_class(-im_));
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace abch
