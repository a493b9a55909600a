#pragma once

#include <complex>
#include <string>
#include <quadmath.h>

namespace cmroot {

// Complex arithmetic on __float128.  Gauss sums accumulate up to ~10^6 unit
// vectors; 113-bit significands keep the final 1e-9 comparisons safe.
struct QComplex {
    __float128 re = 0, im = 0;

    QComplex() = default;
    QComplex(__float128 r) : re(r) {}
    QComplex(__float128 r, __float128 i) : re(r), im(i) {}

    QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
    QComplex operator-(const QComplex& o) const { return {re - o.re, im - o.im}; }
    QComplex operator*(const QComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QComplex& operator+=(const QComplex& o) { re += o.re; im += o.im; return *this; }
    QComplex& operator*=(const QComplex& o) { *this = *this * o; return *this; }
    QComplex operator-() const { return {-re, -im}; }
    QComplex conj() const { return {re, -im}; }

    QComplex operator/(const QComplex& o) const {
        __float128 n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }

    __float128 abs() const { return hypotq(re, im); }
    __float128 arg() const { return atan2q(im, re); }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline QComplex qc_polar(__float128 angle) { return {cosq(angle), sinq(angle)}; }

inline QComplex qc_root_of_unity(long num, long den) {
    // e^{2 pi i num/den}
    return qc_polar(2 * M_PIq * num / den);
}

inline double qc_dist(const QComplex& a, const QComplex& b) {
    return static_cast<double>((a - b).abs());
}

inline std::string qfloat_str(__float128 v, int digits) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, v);
    return buf;
}

inline std::string qc_str(const QComplex& v, int digits) {
    return qfloat_str(v.re, digits) + (v.im < 0 ? " - " : " + ") +
           qfloat_str(v.im < 0 ? -v.im : v.im, digits) + "i";
}

} // namespace cmroot
