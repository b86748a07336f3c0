#pragma once

// Finite fields with log/exp tables, multiplicative characters and the
// admissible-pair bookkeeping for level-zero non-cuspidal parameters.

#include <cstdint>
#include <string>
#include <vector>

#include "distlab/angle.hpp"
#include "distlab/errors.hpp"

namespace distlab {

using i64 = std::int64_t;

i64 ipow(i64 b, int e);
// Returns (p, m) with n = p^m, or (0, 0) if n is not a prime power.
std::pair<i64, int> prime_power(i64 n);
std::vector<i64> prime_factors(i64 n);

struct FieldParams {
    i64 p = 0;
    i64 q = 0;
    int delta = 0;
    i64 Q = 0;
    int d = 0;

    static FieldParams make(i64 q, int delta);
};

// F_{p^m}. Elements are integer codes sum c_i p^i of their polynomial
// residues. The modulus is the smallest monic irreducible polynomial when
// the lower coefficients are read as the code (c_{m-1} most significant).
class FiniteField {
public:
    static constexpr i64 kMaxOrder = i64{1} << 20;

    FiniteField(i64 p, int m);
    static FiniteField of_order(i64 order);

    i64 order() const { return order_; }
    i64 p() const { return p_; }
    int degree() const { return m_; }
    i64 generator() const { return g_; }
    const std::vector<i64>& modulus() const { return modulus_; }

    i64 add(i64 a, i64 b) const;
    i64 neg(i64 a) const;
    i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
    i64 mul(i64 a, i64 b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (order_ - 1)];
    }
    i64 inv(i64 a) const;
    i64 div(i64 a, i64 b) const { return mul(a, inv(b)); }
    i64 pow(i64 a, i64 e) const;
    i64 log(i64 a) const;
    i64 exp(i64 k) const { return exp_[mod(k, order_ - 1)]; }
    i64 from_int(i64 n) const { return mod(n, p_); }
    i64 frobenius(i64 a, i64 power_of_p) const;  // a^(power_of_p)
    i64 abs_trace(i64 a) const;                   // in F_p, as 0..p-1
    bool is_square(i64 a) const { return a != 0 && log_[a] % 2 == 0; }
    bool in_subfield(i64 a, i64 s) const { return pow(a, s) == a; }
    std::string modulus_string() const;

private:
    i64 poly_mul(i64 a, i64 b) const;

    i64 p_;
    int m_;
    i64 order_;
    std::vector<i64> modulus_;  // low degree first, monic of degree m
    i64 g_ = 0;
    std::vector<i64> exp_;
    std::vector<i64> log_;
    std::vector<std::uint16_t> add_;  // full table for small orders
};

// Character of a cyclic group of order n: generator -> exp(2 pi i a / n).
struct MulCharacter {
    i64 n = 1;
    i64 a = 0;

    MulCharacter() = default;
    MulCharacter(i64 n_, i64 a_) : n(n_), a(mod(a_, n_)) {}

    Angle at_log(i64 k) const { return Angle(a * k, n); }
    bool is_trivial() const { return a == 0; }
    i64 field_order() const { return n + 1; }
    MulCharacter operator*(const MulCharacter& o) const;
    MulCharacter power(i64 k) const { return MulCharacter(n, a * k); }
    bool operator==(const MulCharacter& o) const { return n == o.n && a == o.a; }
};

struct TameCharacter {
    MulCharacter residue;
    Angle unif;

    TameCharacter operator*(const TameCharacter& o) const {
        return {residue * o.residue, unif + o.unif};
    }
};

i64 frobenius_orbit_length(const MulCharacter& chi, i64 q);
MulCharacter norm_descend(const MulCharacter& chibar, i64 Q);
// chi on F_P^x restricted to the units of the subfield of order s.
MulCharacter restrict_to_subfield(const MulCharacter& chi, i64 s);
bool is_trivial_on_subfield(const MulCharacter& chi, i64 s);
bool is_trivial_on_squares(const MulCharacter& chi, i64 s);
// chi on F_{s}^x pulled back along the norm from F_{P} with P a power of s.
MulCharacter inflate_along_norm(const MulCharacter& chi, i64 P);

struct PairData {
    FieldParams params;
    int f = 0;
    int e = 0;
    int e_prime = 0;
    TameCharacter chi_f;      // on K_f^x, residue on k_f^x
    TameCharacter chi;        // chi_f o N_{K_d/K_f}
    MulCharacter chibar;      // on k_D^x = F_{q^d}^x
    MulCharacter chi0;        // on k_Delta^x, chibar = chi0 o N
    MulCharacter central;     // chibar restricted to k^x

    // chi0^{Phi^nu} on k_Delta^x
    MulCharacter chi0_twist(int nu) const { return chi0.power(ipow(params.q, nu)); }
};

PairData build_pair_data(const FieldParams& params, int f, const TameCharacter& chi_f);

// Smallest exponent in each Frobenius orbit of regular characters of k_f^x.
std::vector<i64> regular_orbit_representatives(i64 q, int f);
// Empty when f does not divide delta.
std::vector<PairData> admissible_pairs(const FieldParams& params, int f, const Angle& unif);

}  // namespace distlab
