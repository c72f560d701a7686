#ifndef TROPADEL_RATIONAL_HPP
#define TROPADEL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropadel {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rat& r) { return r.sign(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Serialized form is always "p/q" with q > 0, gcd(p,q) = 1.
inline std::string rat_to_string(const Rat& r)
{
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rat rat_from_string(const std::string& s)
{
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw Error("malformed rational '" + s + "': " + e.what());
    }
}

// Nearest rational with denominator 2^bits; ties round to even via llround.
inline Rat rat_from_double_dyadic(double x, unsigned bits)
{
    if (!std::isfinite(x)) throw Error("cannot convert non-finite double to rational");
    const double scaled = std::ldexp(x, static_cast<int>(bits));
    Int num;
    if (std::abs(scaled) < 9.0e15) {
        num = Int(static_cast<long long>(std::llround(scaled)));
    } else {
        num = Int(Rat(scaled));  // exact for large magnitudes, fraction already negligible
    }
    Int den = Int(1) << bits;
    return Rat(num, den);
}

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

}  // namespace tropadel

#endif
