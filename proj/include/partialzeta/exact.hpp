#pragma once

// Exact rational power series and polynomials, plus the q-th cyclotomic
// field used for graph L-functions.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "partialzeta/errors.hpp"

namespace pzeta {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& r);

/// Power series in u with exact rational coefficients.
///
/// A series either is an exact polynomial (no precision) or is known modulo
/// u^precision. Arithmetic propagates the smaller precision; every stored
/// coefficient is exact.
class ExactSeries {
public:
    ExactSeries() = default;

    static ExactSeries polynomial(std::vector<Rational> coeffs);
    static ExactSeries series(std::vector<Rational> coeffs, std::size_t precision);
    static ExactSeries constant(const Rational& c);
    /// 1 - c u^k as an exact polynomial.
    static ExactSeries binomial(const Rational& c, std::size_t k);

    bool is_polynomial() const { return !precision_.has_value(); }
    std::optional<std::size_t> precision() const { return precision_; }

    /// Degree of the polynomial (or of the stored truncation); -1 for zero.
    long degree() const;
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(std::size_t i) const;

    bool is_zero() const { return coeffs_.empty(); }
    bool is_integral() const;

    ExactSeries truncated(std::size_t precision) const;
    /// F(u^k)
    ExactSeries substitute_power(std::size_t k) const;
    ExactSeries derivative() const;
    ExactSeries pow(unsigned exponent) const;
    /// Multiplicative inverse to the given precision; needs a nonzero
    /// constant term.
    ExactSeries inverse(std::size_t precision) const;

    std::complex<double> evaluate(std::complex<double> u) const;
    std::complex<long double> evaluate(std::complex<long double> u) const;

    ExactSeries& operator+=(const ExactSeries& rhs);
    ExactSeries& operator-=(const ExactSeries& rhs);
    ExactSeries& operator*=(const ExactSeries& rhs);
    ExactSeries& operator*=(const Rational& c);

    friend ExactSeries operator+(ExactSeries a, const ExactSeries& b) { return a += b; }
    friend ExactSeries operator-(ExactSeries a, const ExactSeries& b) { return a -= b; }
    friend ExactSeries operator*(ExactSeries a, const ExactSeries& b) { return a *= b; }
    friend ExactSeries operator*(ExactSeries a, const Rational& c) { return a *= c; }
    ExactSeries operator-() const;

    /// Coefficientwise equality on the common known range; exact polynomials
    /// must match completely.
    friend bool operator==(const ExactSeries& a, const ExactSeries& b);

    std::string to_string() const;

private:
    void normalize();

    std::vector<Rational> coeffs_;
    std::optional<std::size_t> precision_;
};

/// a / b truncated at the given precision (b needs a nonzero constant term).
ExactSeries divide(const ExactSeries& a, const ExactSeries& b, std::size_t precision);

// Polynomial algebra over Q. Inputs are treated as exact polynomials.
std::pair<ExactSeries, ExactSeries> poly_divmod(const ExactSeries& a, const ExactSeries& b);
ExactSeries poly_gcd(const ExactSeries& a, const ExactSeries& b);
ExactSeries poly_monic(const ExactSeries& a);
/// Square-free decomposition a = c * prod_i f_i^i (Yun); entry i-1 holds f_i.
std::vector<ExactSeries> square_free_decomposition(const ExactSeries& a);

struct PolynomialRoot {
    std::complex<double> value;
    int multiplicity = 1;
};

/// Complex roots of an exact polynomial with multiplicities, refined by
/// Newton iteration on the square-free parts to the given tolerance.
std::vector<PolynomialRoot> polynomial_roots(const ExactSeries& p, double tolerance = 1e-12);

/// Polynomial through (x_i, y_i) by Newton divided differences over Q.
ExactSeries interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// Fraction-free (Bareiss) determinant of an integer matrix.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m);

/// Element of Q(zeta_p) (p prime) on the power basis 1, z, ..., z^(p-2).
template <class Coeff>
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(int p) : p_(p), c_(static_cast<std::size_t>(p - 1)) {}

    /// zeta_p^k
    static Cyclotomic root_power(int p, long k) {
        Cyclotomic x(p);
        long e = ((k % p) + p) % p;
        x.add_monomial(static_cast<int>(e), Coeff(1));
        return x;
    }
    static Cyclotomic scalar(int p, const Coeff& v) {
        Cyclotomic x(p);
        if (p > 1) x.c_[0] = v;
        return x;
    }

    int modulus() const { return p_; }
    const std::vector<Coeff>& coefficients() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    /// True when the element lies in Q (all non-constant basis coefficients 0).
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Coeff rational_part() const { return c_.empty() ? Coeff(0) : c_[0]; }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        adopt(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) {
        adopt(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        int p = a.p_ ? a.p_ : b.p_;
        Cyclotomic out(p);
        if (a.c_.empty() || b.c_.empty()) return out;
        std::vector<Coeff> full(static_cast<std::size_t>(p));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                full[(i + j) % static_cast<std::size_t>(p)] += a.c_[i] * b.c_[j];
            }
        }
        // z^(p-1) = -(1 + z + ... + z^(p-2))
        const Coeff top = full[static_cast<std::size_t>(p - 1)];
        for (std::size_t i = 0; i + 1 < full.size(); ++i) out.c_[i] = full[i] - top;
        return out;
    }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& scale(const Coeff& v) {
        for (auto& x : c_) x *= v;
        return *this;
    }

    /// Image under z -> z^k (k coprime to p): a Galois automorphism.
    Cyclotomic galois(int k) const {
        Cyclotomic out(p_);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) out.add_monomial(static_cast<int>((static_cast<long>(i) * k % p_ + p_) % p_), c_[i]);
        return out;
    }

    std::complex<double> evaluate(int power_of_root = 1) const {
        std::complex<double> acc = 0.0;
        const double two_pi = 6.283185307179586476925286766559;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            double angle = two_pi * static_cast<double>((static_cast<long>(i) * power_of_root) % p_) / p_;
            acc += to_double(c_[i]) * std::polar(1.0, angle);
        }
        return acc;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        Cyclotomic d = a;
        d -= b;
        return d.is_zero();
    }

private:
    static double to_double(const Coeff& v) { return v.get_d(); }

    void adopt(const Cyclotomic& o) {
        if (p_ == 0) {
            p_ = o.p_;
            c_.assign(o.c_.size(), Coeff(0));
        }
    }
    void add_monomial(int e, const Coeff& v) {
        if (e == p_ - 1) {
            for (auto& x : c_) x -= v;
        } else {
            c_[static_cast<std::size_t>(e)] += v;
        }
    }

    int p_ = 0;
    std::vector<Coeff> c_;
};

}  // namespace pzeta
