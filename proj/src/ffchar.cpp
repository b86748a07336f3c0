#include "distlab/ffchar.hpp"

#include <algorithm>
#include <sstream>

namespace distlab {

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    for (i64 r = 2; r * r <= n; ++r) {
        if (n % r) continue;
        out.push_back(r);
        while (n % r == 0) n /= r;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::pair<i64, int> prime_power(i64 n) {
    if (n < 2) return {0, 0};
    auto f = prime_factors(n);
    if (f.size() != 1) return {0, 0};
    int m = 0;
    while (n > 1) {
        n /= f[0];
        ++m;
    }
    return {f[0], m};
}

FieldParams FieldParams::make(i64 q, int delta) {
    auto [p, m] = prime_power(q);
    if (p == 0) throw ConfigError("q = " + std::to_string(q) + " is not a prime power");
    if (p == 2) throw ConfigError("residual characteristic 2 is not tame");
    if (delta < 1) throw ConfigError("delta must be >= 1");
    FieldParams fp;
    fp.p = p;
    fp.q = q;
    fp.delta = delta;
    fp.Q = ipow(q, delta);
    fp.d = 2 * delta;
    if (fp.Q * fp.Q > FiniteField::kMaxOrder * 64)
        throw ConfigError("Q = " + std::to_string(fp.Q) + " is beyond the supported range");
    return fp;
}

// ---------------------------------------------------------------------------
// polynomials over F_p, low degree first

namespace {

using Poly = std::vector<i64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

i64 inv_mod_p(i64 a, i64 p) {
    i64 r = 1, e = p - 2;
    a = mod(a, p);
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

Poly poly_rem(Poly a, const Poly& b, i64 p) {
    trim(a);
    i64 ib = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        i64 c = a.back() * ib % p;
        std::size_t sh = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[sh + j] = mod(a[sh + j] - c * b[j], p);
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_rem(r, f, p);
}

Poly poly_powmod(Poly a, i64 e, const Poly& f, i64 p) {
    Poly r{1};
    a = poly_rem(a, f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, a, f, p);
        a = poly_mulmod(a, a, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^k) mod f
Poly x_frob(int k, const Poly& f, i64 p) {
    Poly r{0, 1};
    for (int i = 0; i < k; ++i) r = poly_powmod(r, p, f, p);
    return r;
}

Poly sub_x(Poly a, i64 p) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = mod(a[1] - 1, p);
    trim(a);
    return a;
}

bool is_irreducible(const Poly& f, i64 p) {
    int m = static_cast<int>(f.size()) - 1;
    if (m == 1) return true;
    if (!sub_x(x_frob(m, f, p), p).empty()) return false;
    for (i64 r : prime_factors(m)) {
        Poly g = poly_gcd(f, sub_x(x_frob(m / static_cast<int>(r), f, p), p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

Poly code_to_poly(i64 c, i64 p, int m) {
    Poly r(m, 0);
    for (int i = 0; i < m; ++i) {
        r[i] = c % p;
        c /= p;
    }
    trim(r);
    return r;
}

i64 poly_to_code(const Poly& a, i64 p) {
    i64 c = 0;
    for (std::size_t i = a.size(); i-- > 0;) c = c * p + a[i];
    return c;
}

}  // namespace

FiniteField::FiniteField(i64 p, int m) : p_(p), m_(m), order_(ipow(p, m)) {
    if (prime_power(p).second != 1 || m < 1) throw ConfigError("FiniteField: bad characteristic or degree");
    if (order_ > kMaxOrder) throw ConfigError("FiniteField: order " + std::to_string(order_) + " exceeds 2^20");

    for (i64 low = 0; low < order_; ++low) {
        Poly f = code_to_poly(low, p, m);
        f.resize(m + 1, 0);
        f[m] = 1;
        if (m > 1 && f[0] == 0) continue;
        if (is_irreducible(f, p)) {
            modulus_ = f;
            break;
        }
    }

    auto factors = prime_factors(order_ - 1);
    for (i64 c = 1; c < order_ && g_ == 0; ++c) {
        Poly a = code_to_poly(c, p, m);
        bool prim = true;
        for (i64 r : factors) {
            Poly t = poly_powmod(a, (order_ - 1) / r, modulus_, p);
            if (t.size() == 1 && t[0] == 1) {
                prim = false;
                break;
            }
        }
        if (order_ == 2) prim = true;
        if (prim) g_ = c;
    }

    exp_.assign(order_ - 1, 0);
    log_.assign(order_, -1);
    i64 x = 1;
    for (i64 k = 0; k < order_ - 1; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = poly_mul(x, g_);
    }

    if (order_ <= 1024) {
        add_.resize(order_ * order_);
        for (i64 a = 0; a < order_; ++a)
            for (i64 b = 0; b < order_; ++b) {
                i64 r = 0, pw = 1, aa = a, bb = b;
                for (int i = 0; i < m_; ++i) {
                    r += ((aa % p_ + bb % p_) % p_) * pw;
                    aa /= p_;
                    bb /= p_;
                    pw *= p_;
                }
                add_[a * order_ + b] = static_cast<std::uint16_t>(r);
            }
    }
}

FiniteField FiniteField::of_order(i64 order) {
    auto [p, m] = prime_power(order);
    if (p == 0) throw ConfigError("FiniteField: order is not a prime power");
    return FiniteField(p, m);
}

i64 FiniteField::poly_mul(i64 a, i64 b) const {
    return poly_to_code(poly_mulmod(code_to_poly(a, p_, m_), code_to_poly(b, p_, m_), modulus_, p_), p_);
}

i64 FiniteField::add(i64 a, i64 b) const {
    if (!add_.empty()) return add_[a * order_ + b];
    i64 r = 0, pw = 1;
    for (int i = 0; i < m_; ++i) {
        r += ((a % p_ + b % p_) % p_) * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

i64 FiniteField::neg(i64 a) const {
    i64 r = 0, pw = 1;
    for (int i = 0; i < m_; ++i) {
        r += mod(-(a % p_), p_) * pw;
        a /= p_;
        pw *= p_;
    }
    return r;
}

i64 FiniteField::inv(i64 a) const {
    if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
    return exp_[mod(-log_[a], order_ - 1)];
}

i64 FiniteField::pow(i64 a, i64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[static_cast<i64>((static_cast<__int128>(log_[a]) * mod(e, order_ - 1)) % (order_ - 1))];
}

i64 FiniteField::log(i64 a) const {
    if (a == 0) throw std::domain_error("FiniteField: log of zero");
    return log_[a];
}

i64 FiniteField::frobenius(i64 a, i64 power_of_p) const { return pow(a, power_of_p); }

i64 FiniteField::abs_trace(i64 a) const {
    i64 t = 0, x = a;
    for (int i = 0; i < m_; ++i) {
        t = add(t, x);
        x = pow(x, p_);
    }
    if (t >= p_) throw InvariantViolation("absolute trace left the prime field");
    return t;
}

std::string FiniteField::modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = m_; i >= 0; --i) {
        i64 c = modulus_[i];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

MulCharacter MulCharacter::operator*(const MulCharacter& o) const {
    if (n != o.n) throw std::invalid_argument("MulCharacter: product of characters on different groups");
    return MulCharacter(n, a + o.a);
}

i64 frobenius_orbit_length(const MulCharacter& chi, i64 q) {
    i64 f = 1;
    i64 x = mod(chi.a * q, chi.n);
    while (x != chi.a) {
        x = mod(x * q, chi.n);
        ++f;
    }
    return f;
}

MulCharacter norm_descend(const MulCharacter& chibar, i64 Q) {
    if (chibar.n != Q * Q - 1) throw std::invalid_argument("norm_descend: character is not on F_{Q^2}^x");
    if (chibar.a % (Q + 1) != 0)
        throw NoDescent("exponent " + std::to_string(chibar.a) + " is not a multiple of " + std::to_string(Q + 1));
    return MulCharacter(Q - 1, chibar.a / (Q + 1));
}

MulCharacter restrict_to_subfield(const MulCharacter& chi, i64 s) {
    auto [p, m] = prime_power(chi.n + 1);
    auto [ps, j] = prime_power(s);
    if (p == 0 || ps != p || m % j != 0)
        throw NotASubfield(std::to_string(s) + " is not a subfield order of " + std::to_string(chi.n + 1));
    return MulCharacter(s - 1, chi.a);
}

bool is_trivial_on_subfield(const MulCharacter& chi, i64 s) { return restrict_to_subfield(chi, s).is_trivial(); }

bool is_trivial_on_squares(const MulCharacter& chi, i64 s) {
    auto r = restrict_to_subfield(chi, s);
    return mod(2 * r.a, r.n) == 0;
}

MulCharacter inflate_along_norm(const MulCharacter& chi, i64 P) {
    i64 s = chi.n + 1;
    if ((P - 1) % (s - 1) != 0) throw NotASubfield("inflate_along_norm: orders do not nest");
    return MulCharacter(P - 1, chi.a * ((P - 1) / (s - 1)));
}

PairData build_pair_data(const FieldParams& params, int f, const TameCharacter& chi_f) {
    if (f < 1 || params.d % f != 0) throw ConfigError("f must divide d = " + std::to_string(params.d));
    PairData pd;
    pd.params = params;
    pd.f = f;
    pd.e = params.d / f;
    if (pd.e % 2 != 0) throw NotNonCuspidal("e = d/f = " + std::to_string(pd.e) + " is odd");
    pd.e_prime = std::gcd(pd.e, 2);
    i64 qf = ipow(params.q, f);
    if (chi_f.residue.n != qf - 1) throw ConfigError("chi_f must live on F_{q^f}^x");
    if (frobenius_orbit_length(chi_f.residue, params.q) != f)
        throw NotRegular("orbit length of exponent " + std::to_string(chi_f.residue.a) + " is not " + std::to_string(f));

    pd.chi_f = chi_f;
    pd.chibar = inflate_along_norm(chi_f.residue, ipow(params.q, params.d));
    pd.chi = {pd.chibar, chi_f.unif.times(pd.e)};
    pd.chi0 = norm_descend(pd.chibar, params.Q);
    pd.central = restrict_to_subfield(pd.chibar, params.q);
    if (frobenius_orbit_length(pd.chibar, params.q) != f || frobenius_orbit_length(pd.chi0, params.q) != f)
        throw InvariantViolation("Frobenius orbit lengths of chibar and chi0 disagree with f");
    return pd;
}

std::vector<i64> regular_orbit_representatives(i64 q, int f) {
    const i64 n = ipow(q, f) - 1;
    std::vector<i64> out;
    for (i64 a = 0; a < n; ++a) {
        MulCharacter chi(n, a);
        if (frobenius_orbit_length(chi, q) != f) continue;
        bool smallest = true;
        i64 b = a;
        for (int i = 1; i < f && smallest; ++i) {
            b = mod(b * q, n);
            smallest = b > a;
        }
        if (smallest) out.push_back(a);
    }
    return out;
}

std::vector<PairData> admissible_pairs(const FieldParams& params, int f, const Angle& unif) {
    std::vector<PairData> out;
    if (f < 1 || params.delta % f != 0) return out;
    const i64 n = ipow(params.q, f) - 1;
    for (i64 a : regular_orbit_representatives(params.q, f))
        out.push_back(build_pair_data(params, f, TameCharacter{MulCharacter(n, a), unif}));
    return out;
}

}  // namespace distlab
