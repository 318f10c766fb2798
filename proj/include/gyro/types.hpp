#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace gyro {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/* Small fixed-size complex matrices. The system has two driven modes after
 * eliminating b_y, so everything downstream is 2x2 or 2x5. */
struct Mat2 {
    std::array<cplx, 4> v{};

    cplx& operator()(int r, int c) { return v[2 * r + c]; }
    const cplx& operator()(int r, int c) const { return v[2 * r + c]; }

    cplx det() const { return v[0] * v[3] - v[1] * v[2]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
};

struct Mat25 {
    std::array<cplx, 10> v{};

    cplx& operator()(int r, int c) { return v[5 * r + c]; }
    const cplx& operator()(int r, int c) const { return v[5 * r + c]; }
};

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.v[i] = x.v[i] + y.v[i];
    return r;
}

inline cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace gyro
