// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tdlmc {

/// Exact rational arithmetic for ground values. Values stay tiny (names,
/// canonical witnesses, gap midpoints), so 64-bit components with 128-bit
/// comparison are plenty.
class Rat {
public:
    constexpr Rat() = default;
    constexpr Rat(long long n) : num_(n), den_(1) {}
    static Rat make(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    /// Midpoint, used when a witness strictly between two values is needed.
    static Rat mid(const Rat& a, const Rat& b) { return make(a.num_ * b.den_ + b.num_ * a.den_, 2 * a.den_ * b.den_); }

    /// Largest integer <= *this.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "n" or "n/d". Throws std::invalid_argument on malformed input.
    static Rat parse(const std::string& s);

    size_t hash() const {
        size_t h = std::hash<long long>()(num_);
        return h * 1000003u ^ std::hash<long long>()(den_);
    }

private:
    long long num_ = 0;
    long long den_ = 1;
};

inline Rat Rat::make(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Rat r;
    r.num_ = num;
    r.den_ = den;
    return r;
}

inline Rat Rat::parse(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return make(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

}  // namespace tdlmc

template <>
struct std::hash<tdlmc::Rat> {
    size_t operator()(const tdlmc::Rat& r) const { return r.hash(); }
};
