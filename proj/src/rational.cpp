#include "swclock/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace swclock {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t parse_i64(std::string_view s) {
    std::int64_t value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    // from_chars takes only '-'; allow an explicit '+' before a digit
    if (first != last && *first == '+' && last - first > 1 && *(first + 1) >= '0' &&
        *(first + 1) <= '9')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("bad rational literal: '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

Rat Rat::make(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return Rat();
    u128 g = gcd128(uabs(num), u128(den));
    num /= i128(g);
    den /= i128(g);
    constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) {
        throw std::overflow_error("rational overflow");
    }
    Rat r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rat::Rat(std::int64_t num, std::int64_t den) { *this = make(num, den); }

Rat Rat::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rat(parse_i64(text));
    }
    std::int64_t p = parse_i64(text.substr(0, slash));
    std::int64_t q = parse_i64(text.substr(slash + 1));
    return Rat(p, q);
}

std::int64_t Rat::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rat::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat operator+(const Rat& a, const Rat& b) {
    return Rat::make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) {
    return Rat::make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rat operator*(const Rat& a, const Rat& b) {
    return Rat::make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return Rat::make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering Rat::operator<=>(const Rat& o) const {
    return i128(num_) * o.den_ <=> i128(o.num_) * den_;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace swclock
