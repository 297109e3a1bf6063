#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace iso {

// Exact rational number. All lengths, offsets and scale factors in this
// project are rationals; there is no floating point in the core.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "n", "n/d" or "-n/d". Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical form: "n" when the denominator is 1, otherwise "n/d".
std::string format_rational(const Rat& r);

// gcd over positive rationals: largest g with a/g and b/g integral.
Rat rational_gcd(const Rat& a, const Rat& b);

// Smallest multiple of step that is >= value. step must be positive.
Rat ceil_to_multiple(const Rat& value, const Rat& step);

// Largest integer <= value.
Rat rational_floor(const Rat& value);

} // namespace iso
