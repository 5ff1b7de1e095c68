#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace zxg {

/// An angle stored as an exact rational multiple of pi, reduced and kept in [0, 2).
class Phase {
public:
    constexpr Phase() = default;
    Phase(std::int64_t num, std::int64_t den) { assign(num, den); }

    static Phase zero() { return {}; }
    static Phase pi() { return {1, 1}; }
    static Phase half_pi() { return {1, 2}; }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_pauli() const { return den_ == 1; }
    bool is_proper_clifford() const { return den_ == 2; }
    bool is_clifford() const { return den_ <= 2; }

    double radians() const { return 3.14159265358979323846 * static_cast<double>(num_) / static_cast<double>(den_); }

    Phase operator+(const Phase& o) const {
        const std::int64_t l = std::lcm(den_, o.den_);
        return {num_ * (l / den_) + o.num_ * (l / o.den_), l};
    }
    Phase operator-() const { return {-num_, den_}; }
    Phase operator-(const Phase& o) const { return *this + (-o); }
    Phase& operator+=(const Phase& o) { return *this = *this + o; }
    Phase& operator-=(const Phase& o) { return *this = *this - o; }

    bool operator==(const Phase&) const = default;

    /// "0", "1", "1/4", "7/4" (units of pi).
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Phase parse(const std::string& text) {
        std::size_t used = 0;
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                const std::int64_t n = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                return {n, 1};
            }
            const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
            std::size_t ua = 0, ub = 0;
            const std::int64_t n = std::stoll(a, &ua), d = std::stoll(b, &ub);
            if (ua != a.size() || ub != b.size() || d <= 0) throw std::invalid_argument(text);
            return {n, d};
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad phase '" + text + "'");
        }
    }

private:
    void assign(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::invalid_argument("Phase: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        const std::int64_t period = 2 * den;
        num %= period;
        if (num < 0) num += period;
        num_ = num;
        den_ = den;
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Phase& p) { return os << p.to_string(); }

}  // namespace zxg
