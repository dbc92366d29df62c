#include "fdeligne/exact.hpp"

#include <cctype>
#include <stdexcept>

namespace fdeligne {

std::string to_string(const Rational& x) { return x.get_str(); }

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  if (sgn(norm) == 0) throw std::domain_error("division by zero in Q(i)");
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

std::string Scalar::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return re_.get_str();
  std::string im_part;
  if (im_ == 1)
    im_part = "i";
  else if (im_ == -1)
    im_part = "-i";
  else
    im_part = im_.get_str() + "i";
  if (!has_re) return im_part;
  if (im_part.front() != '-') im_part = "+" + im_part;
  return re_.get_str() + im_part;
}

namespace {

Rational parse_rational(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t k = 0;
  if (s[0] == '+' || s[0] == '-') ++k;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (; k < s.size(); ++k) {
    if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (s[k] == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw std::invalid_argument("bad rational literal '" + std::string(s) + "'");
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash))
    throw std::invalid_argument("bad rational literal '" + std::string(s) + "'");
  std::string str(s.front() == '+' ? s.substr(1) : s);
  Rational r;
  if (r.set_str(str, 10) != 0)
    throw std::invalid_argument("bad rational literal '" + str + "'");
  if (sgn(r.get_den()) == 0)
    throw std::invalid_argument("zero denominator in '" + str + "'");
  r.canonicalize();
  return r;
}

// Coefficient in front of 'i': "", "+", "-" mean 1, 1, -1.
Rational parse_imag_coefficient(std::string_view s) {
  if (!s.empty() && s.back() == '*') s.remove_suffix(1);
  if (s.empty() || s == "+") return 1;
  if (s == "-") return -1;
  return parse_rational(s);
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    t.push_back(c);
  }
  // The middle dot is accepted as a multiplication sign before i.
  for (std::size_t pos; (pos = t.find("\xC2\xB7")) != std::string::npos;)
    t.replace(pos, 2, "*");
  if (t.empty()) throw std::invalid_argument("empty scalar literal");
  if (t.back() != 'i') return Scalar(parse_rational(t));
  t.pop_back();
  // Split real and imaginary parts at the last sign not in front position.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {Rational(0), parse_imag_coefficient(t)};
  return {parse_rational(std::string_view(t).substr(0, split)),
          parse_imag_coefficient(std::string_view(t).substr(split))};
}

Scalar i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return Scalar(1);
    case 1:
      return Scalar::i();
    case 2:
      return Scalar(-1);
    default:
      return -Scalar::i();
  }
}

QMatrix realify_vectors(const CMatrix& v) {
  const std::size_t n = v.rows();
  QMatrix out(2 * n, v.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < v.cols(); ++c) {
      out(r, c) = v(r, c).re();
      out(n + r, c) = v(r, c).im();
    }
  return out;
}

CMatrix complexify_vectors(const QMatrix& v) {
  if (v.rows() % 2 != 0) throw DimensionMismatch("odd real dimension");
  const std::size_t n = v.rows() / 2;
  CMatrix out(n, v.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < v.cols(); ++c) out(r, c) = Scalar(v(r, c), v(n + r, c));
  return out;
}

QMatrix realify_linear(const CMatrix& m) {
  const std::size_t rr = m.rows(), cc = m.cols();
  QMatrix out(2 * rr, 2 * cc);
  for (std::size_t r = 0; r < rr; ++r)
    for (std::size_t c = 0; c < cc; ++c) {
      const auto& x = m(r, c);
      if (x.is_zero()) continue;
      out(r, c) = x.re();
      out(r, cc + c) = -x.im();
      out(rr + r, c) = x.im();
      out(rr + r, cc + c) = x.re();
    }
  return out;
}

QMatrix realify_antilinear(const CMatrix& s) {
  // (R + iI)(x - iy) = (Rx + Iy) + i(Ix - Ry)
  const std::size_t rr = s.rows(), cc = s.cols();
  QMatrix out(2 * rr, 2 * cc);
  for (std::size_t r = 0; r < rr; ++r)
    for (std::size_t c = 0; c < cc; ++c) {
      const auto& x = s(r, c);
      if (x.is_zero()) continue;
      out(r, c) = x.re();
      out(r, cc + c) = x.im();
      out(rr + r, c) = x.im();
      out(rr + r, cc + c) = -x.re();
    }
  return out;
}

Subspace<Rational> restrict_scalars(const Subspace<Scalar>& v) {
  const CMatrix& b = v.basis;
  CMatrix doubled(v.ambient, 2 * b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t r = 0; r < v.ambient; ++r) {
      doubled(r, 2 * j) = b(r, j);
      doubled(r, 2 * j + 1) = Scalar::i() * b(r, j);
    }
  return {2 * v.ambient, realify_vectors(doubled)};
}

}  // namespace fdeligne
