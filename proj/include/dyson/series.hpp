#ifndef DYSON_SERIES_HPP
#define DYSON_SERIES_HPP

#include "dyson/rational.hpp"
#include "dyson/zetapoly.hpp"

#include <complex>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace dyson {

struct DivisionByNonUnit : std::domain_error {
    DivisionByNonUnit() : std::domain_error("series division by non-invertible constant term") {}
};
struct NonzeroConstantTerm : std::domain_error {
    NonzeroConstantTerm() : std::domain_error("Borel transform needs a series in a*R[[a]]") {}
};

// Scaling a ring element by an exact rational. Floating coefficient rings get
// the double image; exact rings multiply exactly.
template <class R>
R rscale(const R& x, const Rational& q) {
    if constexpr (std::is_floating_point_v<R>)
        return x * q.get_d();
    else if constexpr (std::is_same_v<R, std::complex<double>>)
        return x * q.get_d();
    else
        return R(x * q);
}

inline Rational ring_inv(const Rational& x) {
    if (x == 0) throw DivisionByNonUnit();
    return 1 / x;
}
inline double ring_inv(double x) {
    if (x == 0) throw DivisionByNonUnit();
    return 1.0 / x;
}
inline std::complex<double> ring_inv(const std::complex<double>& x) {
    if (x == std::complex<double>(0)) throw DivisionByNonUnit();
    return 1.0 / x;
}
inline ZetaPoly ring_inv(const ZetaPoly& x) {
    if (!x.is_rational() || x.rational_part() == 0) throw DivisionByNonUnit();
    return ZetaPoly(1 / x.rational_part());
}

template <class R>
class Series {
public:
    explicit Series(int trunc = 0) : c_(trunc + 1) {
        if (trunc < 0) throw std::invalid_argument("negative truncation");
    }
    Series(std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.resize(1);
    }

    int trunc() const { return static_cast<int>(c_.size()) - 1; }
    const R& operator[](int i) const { return c_.at(i); }
    R& operator[](int i) { return c_.at(i); }
    const std::vector<R>& coeffs() const { return c_; }

    static Series constant(const R& v, int trunc) {
        Series s(trunc);
        s.c_[0] = v;
        return s;
    }
    // the variable itself
    static Series var(int trunc) {
        Series s(trunc);
        if (trunc >= 1) s.c_[1] = R(1);
        return s;
    }

    Series truncated(int t) const {
        Series s(t);
        for (int i = 0; i <= t && i <= trunc(); ++i) s.c_[i] = c_[i];
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int t = std::min(a.trunc(), b.trunc());
        Series r(t);
        for (int i = 0; i <= t; ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        int t = std::min(a.trunc(), b.trunc());
        Series r(t);
        for (int i = 0; i <= t; ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend Series operator-(const Series& a) {
        Series r(a.trunc());
        for (int i = 0; i <= a.trunc(); ++i) r.c_[i] = R(0) - a.c_[i];
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        int t = std::min(a.trunc(), b.trunc());
        Series r(t);
        for (int i = 0; i <= t; ++i)
            for (int j = 0; i + j <= t; ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        return r;
    }
    friend Series operator*(const Series& a, const R& s) {
        Series r(a.trunc());
        for (int i = 0; i <= a.trunc(); ++i) r.c_[i] = a.c_[i] * s;
        return r;
    }
    friend Series operator*(const R& s, const Series& a) { return a * s; }

    Series scaled(const Rational& q) const {
        Series r(trunc());
        for (int i = 0; i <= trunc(); ++i) r.c_[i] = rscale(c_[i], q);
        return r;
    }

    // division by recursive coefficient solve; exact over the coefficient ring
    friend Series operator/(const Series& a, const Series& b) {
        int t = std::min(a.trunc(), b.trunc());
        R inv0 = ring_inv(b.c_[0]);
        Series r(t);
        for (int n = 0; n <= t; ++n) {
            R acc = a.c_[n];
            for (int j = 1; j <= n; ++j) acc = acc - b.c_[j] * r.c_[n - j];
            r.c_[n] = acc * inv0;
        }
        return r;
    }

    friend bool operator==(const Series& a, const Series& b) {
        if (a.trunc() != b.trunc()) return false;
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    bool is_zero() const {
        for (auto& x : c_)
            if (!(x == R(0))) return false;
        return true;
    }

    // multiply by var^n within the same truncation (top coefficients fall off)
    Series shifted(int n) const {
        Series r(trunc());
        for (int i = 0; i + n <= trunc(); ++i) r.c_[i + n] = c_[i];
        return r;
    }

    template <class F>
    auto map(F&& f) const {
        using S = decltype(f(c_[0]));
        std::vector<S> out;
        out.reserve(c_.size());
        for (auto& x : c_) out.push_back(f(x));
        return Series<S>(std::move(out));
    }

private:
    std::vector<R> c_;
};

template <class R>
Series<R> a_del_a(const Series<R>& f) {
    Series<R> r(f.trunc());
    for (int i = 1; i <= f.trunc(); ++i) r[i] = rscale(f[i], rat(i));
    return r;
}

enum class RingOp { add, mul, div };
template <class R>
Series<R> ring_ops(const Series<R>& f, const Series<R>& g, RingOp op) {
    switch (op) {
        case RingOp::add: return f + g;
        case RingOp::mul: return f * g;
        default: return f / g;
    }
}

// ---- Borel calculus --------------------------------------------------------

// a * sum c_n a^n  |->  sum (c_n / n!) xi^n
template <class R>
Series<R> borel_map(const Series<R>& f) {
    if (!(f[0] == R(0))) throw NonzeroConstantTerm();
    int t = std::max(f.trunc() - 1, 0);
    Series<R> r(t);
    for (int n = 0; n <= t; ++n)
        if (n + 1 <= f.trunc()) r[n] = rscale(f[n + 1], 1 / factorial(n));
    return r;
}

template <class R>
Series<R> inverse_borel(const Series<R>& fh) {
    Series<R> r(fh.trunc() + 1);
    for (int n = 0; n <= fh.trunc(); ++n) r[n + 1] = rscale(fh[n], factorial(n));
    return r;
}

// convolution product: coefficient of xi^{n+m+1} receives f_n g_m n! m! / (n+m+1)!
template <class R>
Series<R> convolve(const Series<R>& f, const Series<R>& g) {
    int t = std::min(f.trunc(), g.trunc());
    Series<R> r(t);
    for (int n = 0; n <= t; ++n)
        for (int m = 0; n + m + 1 <= t; ++m) {
            R prod = f[n] * g[m];
            r[n + m + 1] = r[n + m + 1] +
                rscale(prod, Rational(factorial(n) * factorial(m) / factorial(n + m + 1)));
        }
    return r;
}

// primitive: Borel image of multiplication by a
template <class R>
Series<R> borel_primitive(const Series<R>& fh) {
    Series<R> r(fh.trunc());
    for (int n = 1; n <= fh.trunc(); ++n) r[n] = rscale(fh[n - 1], rat(1, n));
    return r;
}

// d/dxi (xi * fh): Borel image of a d/da
template <class R>
Series<R> borel_adel(const Series<R>& fh) {
    Series<R> r(fh.trunc());
    for (int n = 0; n <= fh.trunc(); ++n) r[n] = rscale(fh[n], rat(n + 1));
    return r;
}

// ---- bivariate, total-degree truncated -------------------------------------

template <class R>
class BiSeries {
public:
    explicit BiSeries(int trunc = 0) : trunc_(trunc) {
        if (trunc < 0) throw std::invalid_argument("negative truncation");
        c_.resize(trunc + 1);
        for (int i = 0; i <= trunc; ++i) c_[i].resize(trunc - i + 1);
    }

    int trunc() const { return trunc_; }
    const R& at(int i, int j) const { return c_.at(i).at(j); }
    R& at(int i, int j) { return c_.at(i).at(j); }

    static BiSeries constant(const R& v, int trunc) {
        BiSeries s(trunc);
        s.at(0, 0) = v;
        return s;
    }
    static BiSeries x(int trunc) {
        BiSeries s(trunc);
        if (trunc >= 1) s.at(1, 0) = R(1);
        return s;
    }
    static BiSeries y(int trunc) {
        BiSeries s(trunc);
        if (trunc >= 1) s.at(0, 1) = R(1);
        return s;
    }

    friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
        int t = std::min(a.trunc_, b.trunc_);
        BiSeries r(t);
        for (int i = 0; i <= t; ++i)
            for (int j = 0; i + j <= t; ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
        return r;
    }
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b) {
        int t = std::min(a.trunc_, b.trunc_);
        BiSeries r(t);
        for (int i = 0; i <= t; ++i)
            for (int j = 0; i + j <= t; ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
        return r;
    }
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        int t = std::min(a.trunc_, b.trunc_);
        BiSeries r(t);
        for (int i = 0; i <= t; ++i)
            for (int j = 0; i + j <= t; ++j) {
                if (a.at(i, j) == R(0)) continue;
                for (int k = 0; i + j + k <= t; ++k)
                    for (int l = 0; i + j + k + l <= t; ++l)
                        r.at(i + k, j + l) = r.at(i + k, j + l) + a.at(i, j) * b.at(k, l);
            }
        return r;
    }
    friend BiSeries operator*(const BiSeries& a, const R& s) {
        BiSeries r(a.trunc_);
        for (int i = 0; i <= a.trunc_; ++i)
            for (int j = 0; i + j <= a.trunc_; ++j) r.at(i, j) = a.at(i, j) * s;
        return r;
    }

    BiSeries scaled(const Rational& q) const {
        BiSeries r(trunc_);
        for (int i = 0; i <= trunc_; ++i)
            for (int j = 0; i + j <= trunc_; ++j) r.at(i, j) = rscale(at(i, j), q);
        return r;
    }

    friend bool operator==(const BiSeries& a, const BiSeries& b) {
        return a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

    // exp of a series with vanishing constant term
    BiSeries exp() const {
        if (!(at(0, 0) == R(0))) throw std::domain_error("BiSeries::exp needs zero constant term");
        BiSeries r = constant(R(1), trunc_);
        BiSeries pw = constant(R(1), trunc_);
        for (int n = 1; n <= trunc_; ++n) {
            pw = pw * (*this);
            r = r + pw.scaled(1 / factorial(n));
        }
        return r;
    }

    template <class F>
    auto eval(F&& coeff_to_value, std::complex<double> xv, std::complex<double> yv) const {
        std::complex<double> acc = 0;
        for (int i = 0; i <= trunc_; ++i)
            for (int j = 0; i + j <= trunc_; ++j) {
                if (at(i, j) == R(0)) continue;
                acc += coeff_to_value(at(i, j)) * std::pow(xv, i) * std::pow(yv, j);
            }
        return acc;
    }

private:
    int trunc_;
    std::vector<std::vector<R>> c_;
};

// ---- Laurent polynomials in the regulator ----------------------------------
// Exact semantics: coefficients outside the stored window are exactly zero.
// Consumers working with genuinely truncated data (e.g. regulator expansions
// of Gamma functions) truncate explicitly via truncated().

template <class R>
class LaurentSeries {
public:
    LaurentSeries() : min_(0), c_{R(0)} {}
    LaurentSeries(int minDeg, std::vector<R> coeffs) : min_(minDeg), c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(R(0));
        normalize();
    }
    static LaurentSeries constant(const R& v, int trunc) {
        LaurentSeries s;
        s.min_ = 0;
        s.c_ = std::vector<R>(trunc + 1, R(0));
        s.c_[0] = v;
        return s;
    }
    static LaurentSeries monomial(const R& v, int deg, int trunc) {
        LaurentSeries s;
        s.min_ = deg;
        s.c_ = std::vector<R>(trunc - deg + 1, R(0));
        s.c_[0] = v;
        return s;
    }

    int min_deg() const { return min_; }
    int max_deg() const { return min_ + static_cast<int>(c_.size()) - 1; }
    R coeff(int deg) const {
        if (deg < min_ || deg > max_deg()) return R(0);
        return c_[deg - min_];
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        int lo = std::min(a.min_, b.min_);
        int hi = std::max(a.max_deg(), b.max_deg());
        LaurentSeries r;
        r.min_ = lo;
        r.c_.assign(hi - lo + 1, R(0));
        for (int d = lo; d <= hi; ++d) r.c_[d - lo] = a.coeff(d) + b.coeff(d);
        r.normalize();
        return r;
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + (b * R(-1));
    }
    friend LaurentSeries operator*(const LaurentSeries& a, const R& s) {
        LaurentSeries r = a;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        int lo = a.min_ + b.min_;
        int hi = a.max_deg() + b.max_deg();
        LaurentSeries r;
        r.min_ = lo;
        r.c_.assign(hi - lo + 1, R(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) {
                int d = a.min_ + static_cast<int>(i) + b.min_ + static_cast<int>(j);
                r.c_[d - lo] = r.c_[d - lo] + a.c_[i] * b.c_[j];
            }
        r.normalize();
        return r;
    }

    // drop coefficients above maxDeg (for genuinely truncated expansions)
    LaurentSeries truncated(int maxDeg) const {
        LaurentSeries r;
        r.min_ = min_;
        int n = std::max(0, std::min(maxDeg, max_deg()) - min_ + 1);
        if (n == 0) return LaurentSeries();
        r.c_.assign(c_.begin(), c_.begin() + n);
        r.normalize();
        return r;
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        int lo = std::min(a.min_, b.min_);
        int hi = std::max(a.max_deg(), b.max_deg());
        for (int d = lo; d <= hi; ++d)
            if (!(a.coeff(d) == b.coeff(d))) return false;
        return true;
    }

    // pole-part projector (minimal subtraction): strictly negative powers
    LaurentSeries pole_part() const {
        LaurentSeries r;
        if (min_ >= 0) {
            r.min_ = 0;
            r.c_ = {R(0)};
            return r;
        }
        r.min_ = min_;
        int n = std::min(-min_, static_cast<int>(c_.size()));
        r.c_.assign(c_.begin(), c_.begin() + n);
        return r;
    }
    LaurentSeries finite_part() const { return *this - pole_part(); }
    bool has_pole() const {
        for (int d = min_; d < 0 && d <= max_deg(); ++d)
            if (!(coeff(d) == R(0))) return true;
        return false;
    }

private:
    void normalize() {
        while (c_.size() > 1 && c_.front() == R(0)) {
            c_.erase(c_.begin());
            ++min_;
        }
    }
    int min_;
    std::vector<R> c_;
};

} // namespace dyson

#endif
