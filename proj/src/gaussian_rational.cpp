#include "germcalc/gaussian_rational.hpp"

#include <cctype>
#include <ostream>

#include "germcalc/errors.hpp"

namespace germcalc {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::OrderTooLow: return "OrderTooLow";
    case ErrorKind::DuplicateBasePoints: return "DuplicateBasePoints";
    case ErrorKind::DivisionNotDefined: return "DivisionNotDefined";
    case ErrorKind::NotDeramifiable: return "NotDeramifiable";
    case ErrorKind::ImplicitNotApplicable: return "ImplicitNotApplicable";
    case ErrorKind::NotABlowDown: return "NotABlowDown";
    case ErrorKind::NonRationalExponential: return "NonRationalExponential";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::RelationNotSatisfied: return "RelationNotSatisfied";
    case ErrorKind::UnboundGerm: return "UnboundGerm";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadArgument: return "BadArgument";
  }
  return "UnknownError";
}

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational::GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {
  re_.canonicalize();
}

GaussianRational GaussianRational::ratio(long num, long den) {
  require(den != 0, ErrorKind::BadArgument, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return GaussianRational(q);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  require(!o.is_zero(), ErrorKind::BadArgument, "division by zero in Q(i)");
  mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational GaussianRational::pow(unsigned long e) const {
  GaussianRational acc(1);
  GaussianRational b = *this;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

std::string GaussianRational::rational_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool valid_rational_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  bool digits = false, slash = false, post_digits = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (slash || !digits) return false;
      slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (slash ? post_digits : digits) = true;
    } else {
      return false;
    }
  }
  return digits && (!slash || post_digits);
}

}  // namespace

mpq_class GaussianRational::parse_rational(const std::string& text) {
  require(valid_rational_token(text), ErrorKind::ParseError,
          "malformed rational literal '" + text + "'");
  std::string s = (text[0] == '+') ? text.substr(1) : text;
  mpq_class q(s);
  require(sgn(q.get_den()) != 0, ErrorKind::ParseError,
          "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string GaussianRational::literal() const {
  if (is_real()) return rational_str(re_);
  std::string out = rational_str(re_);
  if (sgn(im_) < 0) {
    mpq_class a = -im_;
    out += "-" + rational_str(a) + " i";
  } else {
    out += "+" + rational_str(im_) + " i";
  }
  return out;
}

GaussianRational GaussianRational::parse_literal(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  require(!s.empty(), ErrorKind::ParseError, "empty number literal");

  bool imaginary = s.back() == 'i';
  if (imaginary) s.pop_back();

  if (!imaginary) return GaussianRational(parse_rational(s));

  // Split "<re><+/-><im>" at the last sign that is not a leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t j = s.size(); j-- > 1;) {
    if (s[j] == '+' || s[j] == '-') {
      split = j;
      break;
    }
  }
  auto parse_im = [](std::string t) {
    if (t.empty() || t == "+") return mpq_class(1);
    if (t == "-") return mpq_class(-1);
    return parse_rational(t);
  };
  if (split == std::string::npos) {
    // Pure imaginary: "i", "-i", "3/4i".
    return GaussianRational(mpq_class(0), parse_im(s));
  }
  mpq_class re = parse_rational(s.substr(0, split));
  mpq_class im = parse_im(s.substr(split));
  return GaussianRational(re, im);
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& v) {
  return os << v.literal();
}

}  // namespace germcalc
