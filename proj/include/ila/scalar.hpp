#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace ila {

// Which exact field the computation runs over.  Every scalar, matrix and space
// carries one of these tags; mixing tags in one operation is a programming error
// and throws.
enum class FieldMode {
    Rational,          // Q
    GaussianRational,  // Q(i)
};

const char* to_string(FieldMode mode);

class ScalarError : public std::runtime_error {
  public:
    explicit ScalarError(const std::string& what) : std::runtime_error(what) {}
};

// Exact field element: a rational with an optional imaginary rational part.
// Both parts are kept canonical (lowest terms, positive denominator) by GMP.
// In Rational mode the imaginary part is identically zero and conj() is the
// identity.
struct ScalarParse;

class Scalar {
  public:
    Scalar() : mode_(FieldMode::Rational) {}
    explicit Scalar(FieldMode mode) : mode_(mode) {}
    Scalar(FieldMode mode, mpq_class re) : re_(std::move(re)), mode_(mode) { canonicalize(); }
    Scalar(FieldMode mode, mpq_class re, mpq_class im);

    static Scalar zero(FieldMode mode) { return Scalar(mode); }
    static Scalar one(FieldMode mode) { return Scalar(mode, 1); }
    static Scalar integer(FieldMode mode, long n) { return Scalar(mode, mpq_class(n)); }
    static Scalar fraction(FieldMode mode, long num, long den);
    static Scalar imaginary_unit();  // i in GaussianRational mode

    FieldMode mode() const { return mode_; }
    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    // Sign of the real part; only meaningful for real values (LDL pivots).
    int real_sign() const { return sgn(re_); }

    Scalar conj() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);  // throws ScalarError on division by zero

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool operator==(const Scalar& rhs) const { return re_ == rhs.re_ && im_ == rhs.im_; }
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    // Canonical literal: "p/q" (q omitted when 1); Gaussian adds "+r/ti"/"-r/ti",
    // omitting a zero part ("0" when both vanish).  Never contains whitespace.
    std::string str() const;

    // Parses the literal syntax above.  Interior whitespace is tolerated (the
    // spaced spelling "p/q + r/t i" parses the same as the compact one).  Returns
    // nullopt on malformed input; a zero denominator is reported separately so
    // callers can emit a dedicated DIV0 diagnostic.
    static ScalarParse parse(const std::string& text, FieldMode mode);

  private:
    void canonicalize();
    void require_same_mode(const Scalar& rhs) const;

    mpq_class re_;
    mpq_class im_;
    FieldMode mode_;
};

struct ScalarParse {
    std::optional<Scalar> value;
    bool div0 = false;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace ila
