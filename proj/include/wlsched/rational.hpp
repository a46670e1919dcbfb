#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace wlsched {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Every real-valued quantity in the library (execution rates, utilizations,
/// segment endpoints, simulation time) is a Rat. There is no floating point
/// anywhere on an analysis path; to_double() exists for display only.
class Rat {
public:
    Rat() = default;
    Rat(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rat(std::int64_t numerator, std::int64_t denominator);

    /// Parses "12", "1.5", "0.0625" or "3/2". Signs are accepted on the
    /// integer part. Throws std::invalid_argument on anything else.
    static Rat parse(std::string_view text);

    std::int64_t numerator() const;
    std::int64_t denominator() const;
    bool is_integer() const { return mpz_cmp_ui(value_.get_den_mpz_t(), 1) == 0; }
    int sign() const { return sgn(value_); }

    std::int64_t floor() const;
    std::int64_t ceil() const;

    /// "p/q", always with the slash (integers render as "p/1").
    std::string str() const;
    /// Shortest exact decimal if the denominator is of the form 2^a 5^b,
    /// otherwise "p/q". Used when writing task-set documents.
    std::string decimal_or_fraction() const;
    /// Rounded decimal approximation with the given number of places.
    std::string approx(int places = 6) const;
    double to_double() const { return value_.get_d(); }

    Rat& operator+=(const Rat& rhs) { value_ += rhs.value_; return *this; }
    Rat& operator-=(const Rat& rhs) { value_ -= rhs.value_; return *this; }
    Rat& operator*=(const Rat& rhs) { value_ *= rhs.value_; return *this; }
    Rat& operator/=(const Rat& rhs);

    friend Rat operator+(Rat lhs, const Rat& rhs) { return lhs += rhs; }
    friend Rat operator-(Rat lhs, const Rat& rhs) { return lhs -= rhs; }
    friend Rat operator*(Rat lhs, const Rat& rhs) { return lhs *= rhs; }
    friend Rat operator/(Rat lhs, const Rat& rhs) { return lhs /= rhs; }
    friend Rat operator-(const Rat& x) { Rat r; r.value_ = -x.value_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    const mpq_class& raw() const { return value_; }

private:
    explicit Rat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

/// Largest integer q with q * divisor <= value; divisor > 0.
std::int64_t floor_div(const Rat& value, const Rat& divisor);

/// value mod divisor, in [0, divisor); divisor > 0.
Rat mod(const Rat& value, const Rat& divisor);

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

}  // namespace wlsched
