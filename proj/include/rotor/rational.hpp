#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <ostream>

#include "rotor/error.hpp"

namespace rotor {

using Int = boost::multiprecision::cpp_int;

// Exact rational number. The denominator is kept positive and the pair is
// always reduced to lowest terms, so equality is plain field comparison and
// ordering is a single cross-multiplication. Every dynamical quantity in the
// library (orbit points, parameters, rotation numbers) is one of these; no
// floating point enters any computation, only the optional approx() display.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(const Int& n) : num_(n), den_(1) {}
    Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0)
            throw RotorError("division by zero", "rational with zero denominator");
        normalize();
    }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }
    bool is_integer() const { return den_ == 1; }

    // Largest integer <= *this. Exact floor division, correct for negatives.
    Int floor() const {
        Int q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    Rat abs() const { return num_ < 0 ? Rat(-num_, den_) : *this; }

    Rat operator-() const { return Rat(-num_, den_); }

    Rat operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Rat operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0)
            throw RotorError("division by zero", "rational division by zero");
        return Rat(num_ * o.den_, den_ * o.num_);
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    double approx() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    // Canonical "num/den" form, denominator always printed: "0/1", "-3/2".
    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    // Accepts "a/b" or a bare integer "a". Whitespace is not tolerated: these
    // strings travel through CLIs, CSV cells and JSON where they are produced
    // canonically.
    static Rat parse(const std::string& s) {
        if (s.empty())
            throw RotorError("parse error", "empty rational literal");
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos)
                return Rat(Int(s));
            Int n(s.substr(0, slash));
            Int d(s.substr(slash + 1));
            if (d == 0)
                throw RotorError("parse error", "zero denominator in '" + s + "'");
            return Rat(n, d);
        } catch (const RotorError&) {
            throw;
        } catch (const std::exception&) {
            throw RotorError("parse error", "bad rational literal '" + s + "'");
        }
    }

private:
    Int num_, den_;

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Int g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace rotor
