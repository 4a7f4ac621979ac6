#include "partialzeta/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace pzeta {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::domain: return "domain";
        case ErrorKind::singularity_proximity: return "singularity-proximity";
        case ErrorKind::singular_local_factor: return "singular-local-factor";
        case ErrorKind::budget_exceeded: return "budget-exceeded";
        case ErrorKind::insufficient_data: return "insufficient-data";
        case ErrorKind::unresolved_box: return "unresolved-box";
        case ErrorKind::root_refinement: return "root-refinement";
    }
    return "unknown";
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// ExactSeries

ExactSeries ExactSeries::polynomial(std::vector<Rational> coeffs) {
    ExactSeries s;
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
}

ExactSeries ExactSeries::series(std::vector<Rational> coeffs, std::size_t precision) {
    ExactSeries s;
    s.coeffs_ = std::move(coeffs);
    s.precision_ = precision;
    s.normalize();
    return s;
}

ExactSeries ExactSeries::constant(const Rational& c) { return polynomial({c}); }

ExactSeries ExactSeries::binomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[0] += 1;
    v[k] -= c;
    return polynomial(std::move(v));
}

void ExactSeries::normalize() {
    for (auto& c : coeffs_) c.canonicalize();
    if (precision_ && coeffs_.size() > *precision_) coeffs_.resize(*precision_);
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long ExactSeries::degree() const { return static_cast<long>(coeffs_.size()) - 1; }

Rational ExactSeries::coefficient(std::size_t i) const {
    if (i < coeffs_.size()) return coeffs_[i];
    return Rational(0);
}

bool ExactSeries::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
}

ExactSeries ExactSeries::truncated(std::size_t precision) const {
    std::size_t p = precision_ ? std::min(*precision_, precision) : precision;
    return series(coeffs_, p);
}

ExactSeries ExactSeries::substitute_power(std::size_t k) const {
    if (k == 0) fail(ErrorKind::invalid_input, "substitute_power needs k >= 1");
    std::vector<Rational> v(coeffs_.empty() ? 0 : (coeffs_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * k] = coeffs_[i];
    ExactSeries out;
    out.coeffs_ = std::move(v);
    if (precision_) out.precision_ = (*precision_ - 1) * k + 1;
    out.normalize();
    return out;
}

ExactSeries ExactSeries::derivative() const {
    std::vector<Rational> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(coeffs_[i] * static_cast<long>(i));
    ExactSeries out;
    out.coeffs_ = std::move(v);
    if (precision_) out.precision_ = *precision_ > 0 ? *precision_ - 1 : 0;
    out.normalize();
    return out;
}

ExactSeries ExactSeries::pow(unsigned exponent) const {
    ExactSeries result = constant(1);
    if (precision_) result = result.truncated(*precision_);
    ExactSeries base = *this;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base *= base;
    }
    return result;
}

ExactSeries ExactSeries::inverse(std::size_t precision) const {
    if (precision_) precision = std::min(precision, *precision_);
    if (coeffs_.empty() || coeffs_[0] == 0)
        fail(ErrorKind::domain, "series inverse needs a nonzero constant term");
    std::vector<Rational> inv(precision);
    if (precision == 0) return series({}, 0);
    Rational c0_inv = 1 / coeffs_[0];
    inv[0] = c0_inv;
    for (std::size_t k = 1; k < precision; ++k) {
        Rational acc = 0;
        std::size_t top = std::min(k, coeffs_.size() - 1);
        for (std::size_t i = 1; i <= top; ++i) acc += coeffs_[i] * inv[k - i];
        inv[k] = -acc * c0_inv;
    }
    return series(std::move(inv), precision);
}

std::complex<double> ExactSeries::evaluate(std::complex<double> u) const {
    std::complex<long double> v = evaluate(std::complex<long double>(u.real(), u.imag()));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> ExactSeries::evaluate(std::complex<long double> u) const {
    std::complex<long double> acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * u + static_cast<long double>(coeffs_[i].get_d());
    return acc;
}

namespace {
std::optional<std::size_t> min_precision(const std::optional<std::size_t>& a,
                                         const std::optional<std::size_t>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}
}  // namespace

ExactSeries& ExactSeries::operator+=(const ExactSeries& rhs) {
    precision_ = min_precision(precision_, rhs.precision_);
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
}

ExactSeries& ExactSeries::operator-=(const ExactSeries& rhs) {
    precision_ = min_precision(precision_, rhs.precision_);
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
}

ExactSeries& ExactSeries::operator*=(const ExactSeries& rhs) {
    auto prec = min_precision(precision_, rhs.precision_);
    if (coeffs_.empty() || rhs.coeffs_.empty()) {
        coeffs_.clear();
        precision_ = prec;
        return *this;
    }
    std::size_t n = coeffs_.size() + rhs.coeffs_.size() - 1;
    if (prec) n = std::min(n, *prec);
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < coeffs_.size() && i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size() && i + j < n; ++j)
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    coeffs_ = std::move(out);
    precision_ = prec;
    normalize();
    return *this;
}

ExactSeries& ExactSeries::operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    normalize();
    return *this;
}

ExactSeries ExactSeries::operator-() const {
    ExactSeries out = *this;
    for (auto& x : out.coeffs_) x = -x;
    return out;
}

bool operator==(const ExactSeries& a, const ExactSeries& b) {
    auto prec = min_precision(a.precision_, b.precision_);
    std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    if (prec) n = std::min(n, *prec);
    for (std::size_t i = 0; i < n; ++i)
        if (a.coefficient(i) != b.coefficient(i)) return false;
    return true;
}

std::string ExactSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        os << "(" << coeffs_[i].get_str() << ")";
        if (i > 0) os << "*u^" << i;
        first = false;
    }
    if (first) os << "0";
    if (precision_) os << " + O(u^" << *precision_ << ")";
    return os.str();
}

ExactSeries divide(const ExactSeries& a, const ExactSeries& b, std::size_t precision) {
    return (a * b.inverse(precision)).truncated(precision);
}

// ---------------------------------------------------------------------------
// Polynomial algebra

std::pair<ExactSeries, ExactSeries> poly_divmod(const ExactSeries& a, const ExactSeries& b) {
    if (b.is_zero()) fail(ErrorKind::domain, "polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const auto& bc = b.coefficients();
    long db = b.degree();
    if (static_cast<long>(rem.size()) - 1 < db) return {ExactSeries(), ExactSeries::polynomial(rem)};
    std::vector<Rational> quot(rem.size() - static_cast<std::size_t>(db));
    Rational lead_inv = 1 / bc.back();
    for (long k = static_cast<long>(rem.size()) - 1; k >= db; --k) {
        Rational c = rem[static_cast<std::size_t>(k)] * lead_inv;
        quot[static_cast<std::size_t>(k - db)] = c;
        if (c == 0) continue;
        for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * bc[static_cast<std::size_t>(j)];
    }
    return {ExactSeries::polynomial(std::move(quot)), ExactSeries::polynomial(std::move(rem))};
}

ExactSeries poly_monic(const ExactSeries& a) {
    if (a.is_zero()) return a;
    Rational inv = 1 / a.coefficients().back();
    return a * inv;
}

ExactSeries poly_gcd(const ExactSeries& a, const ExactSeries& b) {
    ExactSeries x = a, y = b;
    while (!y.is_zero()) {
        ExactSeries r = poly_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return poly_monic(x);
}

std::vector<ExactSeries> square_free_decomposition(const ExactSeries& a) {
    std::vector<ExactSeries> out;
    if (a.degree() < 1) return out;
    ExactSeries f = poly_monic(a);
    ExactSeries fp = f.derivative();
    ExactSeries g = poly_gcd(f, fp);
    ExactSeries w = poly_divmod(f, g).first;
    ExactSeries c = g;
    while (w.degree() >= 1) {
        ExactSeries y = poly_gcd(w, c);
        ExactSeries z = poly_divmod(w, y).first;
        out.push_back(poly_monic(z));
        w = y;
        c = poly_divmod(c, y).first;
    }
    while (!out.empty() && out.back().degree() < 1) out.pop_back();
    return out;
}

namespace {

using cld = std::complex<long double>;

cld eval_ld(const std::vector<long double>& c, cld z) {
    cld acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

std::vector<std::complex<double>> roots_of_squarefree(const ExactSeries& p, double tolerance) {
    const long deg = p.degree();
    std::vector<std::complex<double>> roots;
    if (deg < 1) return roots;
    ExactSeries monic = poly_monic(p);
    std::vector<long double> c;
    for (const auto& x : monic.coefficients()) c.push_back(static_cast<long double>(x.get_d()));
    if (deg == 1) {
        roots.emplace_back(static_cast<double>(-c[0]), 0.0);
        return roots;
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (long i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (long i = 0; i < deg; ++i) companion(i, deg - 1) = -static_cast<double>(c[static_cast<std::size_t>(i)]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) fail(ErrorKind::root_refinement, "companion eigenvalue solve failed");

    std::vector<long double> dc;
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<long double>(i));
    for (long i = 0; i < deg; ++i) {
        std::complex<double> e = solver.eigenvalues()[i];
        cld z(e.real(), e.imag());
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            cld fz = eval_ld(c, z);
            cld dz = eval_ld(dc, z);
            if (std::abs(dz) == 0.0L) break;
            cld step = fz / dz;
            z -= step;
            if (std::abs(step) <= static_cast<long double>(tolerance) * std::max(1.0L, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            // Accept when the residual is already at rounding level.
            cld fz = eval_ld(c, z);
            cld dz = eval_ld(dc, z);
            if (std::abs(dz) == 0.0L || std::abs(fz / dz) > static_cast<long double>(tolerance))
                fail(ErrorKind::root_refinement, "Newton refinement did not converge for " + p.to_string());
        }
        roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return roots;
}

}  // namespace

std::vector<PolynomialRoot> polynomial_roots(const ExactSeries& p, double tolerance) {
    std::vector<PolynomialRoot> out;
    auto parts = square_free_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (auto r : roots_of_squarefree(parts[i], tolerance))
            out.push_back({r, static_cast<int>(i + 1)});
    }
    std::sort(out.begin(), out.end(), [](const PolynomialRoot& a, const PolynomialRoot& b) {
        if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
        return a.value.real() < b.value.real();
    });
    return out;
}

ExactSeries interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n) fail(ErrorKind::invalid_input, "interpolate: size mismatch");
    std::vector<Rational> dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    // Horner on the Newton form.
    ExactSeries result = ExactSeries::constant(n ? dd[n - 1] : Rational(0));
    for (std::size_t i = n - 1; i-- > 0;) {
        result *= ExactSeries::polynomial({-xs[i], Rational(1)});
        result += ExactSeries::constant(dd[i]);
    }
    return result;
}

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace pzeta
