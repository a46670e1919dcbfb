#include "wlsched/rational.hpp"

#include <cctype>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace wlsched {

namespace {

std::int64_t to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("rational component exceeds 64 bits");
    return z.get_si();
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat::Rat(std::int64_t value) : value_(mpz_class(static_cast<long>(value))) {}

Rat::Rat(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
    value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    const std::string original(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    mpq_class q;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed fraction '" + original + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + original + "'");
        q = mpq_class(mpz_class(std::string(num), 10), d);
    } else {
        auto dot = text.find('.');
        auto whole = text.substr(0, dot);
        std::string_view frac;
        if (dot != std::string_view::npos) {
            frac = text.substr(dot + 1);
            if (!all_digits(frac))
                throw std::invalid_argument("malformed decimal '" + original + "'");
        }
        if (!all_digits(whole)) throw std::invalid_argument("malformed decimal '" + original + "'");
        mpz_class scale = 1;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(std::string(whole) + std::string(frac), 10);
        q = mpq_class(digits, scale);
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rat(q);
}

std::int64_t Rat::numerator() const { return to_int64(value_.get_num()); }
std::int64_t Rat::denominator() const { return to_int64(value_.get_den()); }

std::int64_t Rat::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return to_int64(r);
}

std::int64_t Rat::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return to_int64(r);
}

std::string Rat::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rat::decimal_or_fraction() const {
    mpz_class den = value_.get_den();
    unsigned twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den != 1) return str();
    const unsigned places = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = abs(value_.get_num()) * (scale / value_.get_den());
    std::string digits = scaled.get_str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = value_ < 0 ? "-" : "";
    if (places == 0) return out + digits;
    out += digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
    return out;
}

std::string Rat::approx(int places) const {
    // Round half away from zero at the requested number of places.
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    mpq_class scaled = abs(value_) * scale + mpq_class(1, 2);
    mpz_class rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    std::string digits = rounded.get_str();
    const auto p = static_cast<std::size_t>(places);
    if (digits.size() <= p) digits.insert(0, p + 1 - digits.size(), '0');
    std::string out = (value_ < 0 && rounded != 0) ? "-" : "";
    out += digits.substr(0, digits.size() - p);
    if (p > 0) out += "." + digits.substr(digits.size() - p);
    return out;
}

Rat& Rat::operator/=(const Rat& rhs) {
    if (rhs.value_ == 0) throw std::domain_error("division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

std::int64_t floor_div(const Rat& value, const Rat& divisor) { return (value / divisor).floor(); }

Rat mod(const Rat& value, const Rat& divisor) {
    return value - divisor * Rat(floor_div(value, divisor));
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace wlsched
