#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace posimod {

// Exact function values. Generated families are integer-valued; explicit
// tables may carry rationals (parsed from decimal or a/b strings), so the
// whole pipeline computes over exact rationals and never touches floats.
using Value = boost::rational<long long>;

inline Value value_of(long long n) { return Value(n); }

// Accepts "12", "-3", "2.75", "7/4".
inline Value parse_value(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty value literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in value: " + text);
        return Value(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Value(std::stoll(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) return Value(std::stoll(digits));
    long long den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) {
        if (den > 900'000'000'000'000'000LL / 10) throw std::invalid_argument("value literal too precise: " + text);
        den *= 10;
    }
    return Value(std::stoll(digits), den);
}

inline std::string format_value(const Value& v) {
    if (v.denominator() == 1) return std::to_string(v.numerator());
    return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

inline bool is_integer(const Value& v) { return v.denominator() == 1; }

}  // namespace posimod
