#pragma once

// Roots of unity as exact fractions of a turn, and exact sums of them.

#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace distlab {

using cplx = std::complex<double>;

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
    a %= n;
    return a < 0 ? a + n : a;
}

// num/den of a full turn, kept reduced with 0 <= num < den.
struct Angle {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Angle() = default;
    Angle(std::int64_t n, std::int64_t d);

    Angle operator+(const Angle& o) const;
    Angle operator-() const { return Angle(-num, den); }
    Angle operator-(const Angle& o) const { return *this + (-o); }
    Angle times(std::int64_t k) const { return Angle(num * k, den); }
    bool operator==(const Angle& o) const { return num == o.num && den == o.den; }
    bool is_zero() const { return num == 0; }
    cplx value() const;
};

// Integer combination sum_k c_k * exp(2 pi i k / N), compared exactly by
// reducing modulo the N-th cyclotomic polynomial.
class CyclotomicSum {
public:
    explicit CyclotomicSum(std::int64_t n);

    void add(std::int64_t k, std::int64_t mult = 1);
    void add(const Angle& a, std::int64_t mult = 1);

    std::int64_t order() const { return n_; }
    // True iff the sum is a rational integer; stores it in *value.
    bool is_integer(std::int64_t* value) const;
    bool is_zero() const;
    cplx value() const;

private:
    std::vector<std::int64_t> reduced() const;

    std::int64_t n_;
    std::vector<std::int64_t> c_;
};

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n);

}  // namespace distlab
