#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace swclock {

/// Exact rational number on int64 numerator / denominator.
///
/// Always stored in canonical form: gcd-reduced, denominator > 0.
/// Intermediate products are carried in 128-bit arithmetic; a result that
/// does not fit back into int64 after reduction throws std::overflow_error.
/// Every threshold comparison in the readout pipeline relies on these being
/// exact, so no operation ever rounds.
class Rat {
public:
    constexpr Rat() = default;
    constexpr Rat(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
    Rat(std::int64_t num, std::int64_t den);

    /// Parses "p", "p/q", with optional sign. Throws std::invalid_argument.
    static Rat parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    std::int64_t floor() const;
    std::int64_t ceil() const;

    Rat abs() const { return num_ < 0 ? Rat(-num_, den_) : *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { return Rat(-num_, den_); }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    std::strong_ordering operator<=>(const Rat& o) const;
    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    static Rat make(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace swclock
