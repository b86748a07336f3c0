#include "distlab/angle.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace distlab {

Angle::Angle(std::int64_t n, std::int64_t d) {
    if (d <= 0) throw std::invalid_argument("Angle: denominator must be positive");
    n = mod(n, d);
    std::int64_t g = std::gcd(n, d);
    if (g == 0) g = d;
    num = n / g;
    den = d / g;
    if (num == 0) den = 1;
}

Angle Angle::operator+(const Angle& o) const {
    std::int64_t l = std::lcm(den, o.den);
    return Angle(num * (l / den) + o.num * (l / o.den), l);
}

cplx Angle::value() const {
    if (num == 0) return {1.0, 0.0};
    // exact quarter turns avoid -0.0 noise in reports
    if (4 * num == den) return {0.0, 1.0};
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    double t = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
}

namespace {

std::vector<std::int64_t> exact_div(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
    // b monic; coefficients low degree first
    std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {0};
    std::vector<std::int64_t> q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        std::int64_t c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n) {
    static std::map<std::int64_t, std::vector<std::int64_t>> cache;
    static std::recursive_mutex m;
    std::lock_guard<std::recursive_mutex> lock(m);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::int64_t> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d) continue;
        p = exact_div(p, cyclotomic_polynomial(d));
    }
    return cache.emplace(n, p).first->second;
}

CyclotomicSum::CyclotomicSum(std::int64_t n) : n_(n), c_(n, 0) {
    if (n <= 0) throw std::invalid_argument("CyclotomicSum: order must be positive");
}

void CyclotomicSum::add(std::int64_t k, std::int64_t mult) { c_[mod(k, n_)] += mult; }

void CyclotomicSum::add(const Angle& a, std::int64_t mult) {
    if (n_ % a.den) throw std::invalid_argument("CyclotomicSum: angle denominator does not divide order");
    add(a.num * (n_ / a.den), mult);
}

std::vector<std::int64_t> CyclotomicSum::reduced() const {
    const auto& phi = cyclotomic_polynomial(n_);
    std::size_t deg = phi.size() - 1;
    std::vector<std::int64_t> r = c_;
    for (std::size_t i = r.size(); i-- > deg;) {
        std::int64_t c = r[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi[j];
    }
    r.resize(deg);
    return r;
}

bool CyclotomicSum::is_integer(std::int64_t* value) const {
    auto r = reduced();
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return false;
    if (value) *value = r.empty() ? 0 : r[0];
    return true;
}

bool CyclotomicSum::is_zero() const {
    std::int64_t v = 0;
    return is_integer(&v) && v == 0;
}

cplx CyclotomicSum::value() const {
    cplx s = 0;
    for (std::int64_t k = 0; k < n_; ++k)
        if (c_[k]) s += static_cast<double>(c_[k]) * Angle(k, n_).value();
    return s;
}

}  // namespace distlab
