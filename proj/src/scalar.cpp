#include "ila/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace ila {

const char* to_string(FieldMode mode) {
    return mode == FieldMode::Rational ? "rational" : "gaussian";
}

Scalar::Scalar(FieldMode mode, mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)), mode_(mode) {
    if (mode_ == FieldMode::Rational && sgn(im_) != 0)
        throw ScalarError("imaginary part in Rational mode");
    canonicalize();
}

Scalar Scalar::fraction(FieldMode mode, long num, long den) {
    if (den == 0) throw ScalarError("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(mode, q);
}

Scalar Scalar::imaginary_unit() {
    return Scalar(FieldMode::GaussianRational, 0, 1);
}

void Scalar::canonicalize() {
    re_.canonicalize();
    im_.canonicalize();
}

void Scalar::require_same_mode(const Scalar& rhs) const {
    if (mode_ != rhs.mode_) throw ScalarError("mixed field modes");
}

Scalar Scalar::conj() const {
    Scalar r(*this);
    r.im_ = -r.im_;
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.re_ = -r.re_;
    r.im_ = -r.im_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    require_same_mode(rhs);
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    require_same_mode(rhs);
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    require_same_mode(rhs);
    if (is_real() && rhs.is_real()) {
        re_ *= rhs.re_;
        return *this;
    }
    mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
    mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    require_same_mode(rhs);
    if (rhs.is_zero()) throw ScalarError("division by zero");
    if (is_real() && rhs.is_real()) {
        re_ /= rhs.re_;
        return *this;
    }
    // (a+bi)/(c+di) = (a+bi)(c-di) / (c^2+d^2)
    mpq_class norm = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
    mpq_class re = (re_ * rhs.re_ + im_ * rhs.im_) / norm;
    mpq_class im = (im_ * rhs.re_ - re_ * rhs.im_) / norm;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

namespace {

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "p" or "p/q" starting at pos; advances pos past the literal.
// Returns false on malformed text, sets div0 on a zero denominator.
bool parse_rational(const std::string& s, size_t& pos, mpq_class& out, bool& div0) {
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    size_t digits_begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_begin) return false;
    // mpq_set_str rejects a leading '+', so the sign is applied afterwards.
    std::string num = s.substr(digits_begin, pos - digits_begin);
    std::string den = "1";
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t den_begin = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == den_begin) return false;
        den = s.substr(den_begin, pos - den_begin);
    }
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0) return false;
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) {
        div0 = true;
        return false;
    }
    q.canonicalize();
    if (negative) q = -q;
    out = std::move(q);
    return true;
}

}  // namespace

std::string Scalar::str() const {
    if (mode_ == FieldMode::Rational || is_real()) return rational_str(re_);
    std::string im = rational_str(im_) + "i";
    if (sgn(re_) == 0) return im;
    if (sgn(im_) > 0) return rational_str(re_) + "+" + im;
    return rational_str(re_) + im;  // im already carries the minus sign
}

ScalarParse Scalar::parse(const std::string& text, FieldMode mode) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return {};

    ScalarParse result;
    size_t pos = 0;

    // Leading pure-imaginary forms: "i", "-i", "+i".
    auto imaginary_tail = [&](size_t p) {
        return p < s.size() && s[p] == 'i' && p + 1 == s.size();
    };

    mpq_class first;
    bool have_first = false;
    if (imaginary_tail(pos) || ((s[pos] == '+' || s[pos] == '-') && imaginary_tail(pos + 1))) {
        // bare "i" with optional sign
        first = (s[pos] == '-') ? -1 : 1;
        pos = s.size() - 1;
        have_first = true;
    } else {
        if (!parse_rational(s, pos, first, result.div0)) return result;
        have_first = true;
    }

    if (pos == s.size()) {
        result.value = Scalar(mode, first);
        return result;
    }
    if (mode != FieldMode::GaussianRational) return {};

    if (s[pos] == 'i') {
        if (pos + 1 != s.size()) return {};
        result.value = Scalar(mode, 0, first);
        return result;
    }

    // real part followed by a signed imaginary part
    if (s[pos] != '+' && s[pos] != '-') return {};
    mpq_class second;
    if (imaginary_tail(pos + 1)) {
        second = (s[pos] == '-') ? -1 : 1;
        pos = s.size() - 1;
    } else if (!parse_rational(s, pos, second, result.div0)) {
        return result;
    }
    if (pos >= s.size() || s[pos] != 'i' || pos + 1 != s.size()) return {};
    (void)have_first;
    result.value = Scalar(mode, first, second);
    return result;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace ila
