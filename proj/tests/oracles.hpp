#pragma once

// Reference values computed without the library's own numerics: Schur-based
// matrix square roots and exponentials, closed trigonometric forms, a fixed
// step RK4, and binomial series.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using real = long double;
using cplx = std::complex<real>;
using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr real pi = 3.141592653589793238462643383279502884L;

inline Mat eye(int m) { return Mat::Identity(m, m); }

inline real norm2(const Mat& a) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

inline real rel_err(const Mat& a, const Mat& ref) {
    return norm2(a - ref) / std::max<real>(norm2(ref), 1e-300L);
}

// i (zI - Q0)^{1/2}. For Im z > 0 every eigenvalue of zI - Q0 sits in the
// upper half plane, where the principal root already has Im > 0.
inline Mat weyl_sqrt(const Mat& q0, cplx z) {
    const Mat w = z * eye(static_cast<int>(q0.rows())) - q0;
    return cplx(0, 1) * Mat(w.sqrt());
}

// Psi(z, x0 + L, x0) for constant Q0: exp of the 2m x 2m generator.
inline Mat constant_psi(const Mat& q0, cplx z, real len) {
    const int m = static_cast<int>(q0.rows());
    Mat a = Mat::Zero(2 * m, 2 * m);
    a.topRightCorner(m, m) = eye(m);
    a.bottomLeftCorner(m, m) = q0 - z * eye(m);
    return Mat(a * cplx(len)).exp();
}

// Half-line M_+(z, x0) for a piecewise-constant potential: values[i] on
// [breaks[i], breaks[i+1]), zero outside, x0 <= breaks[0]. The decaying
// solution e^{i sqrt(z) x} is carried back through each piece exactly.
inline Mat step_m(const std::vector<real>& breaks, const std::vector<Mat>& values, cplx z,
                  real x0) {
    const int m = static_cast<int>(values.front().rows());
    const cplx k = std::sqrt(z);  // principal: Im > 0 for z off [0, inf)
    Mat u = eye(m), up = cplx(0, 1) * k * eye(m);
    auto back = [&](const Mat& q, real len) {
        const Mat psi = constant_psi(q, z, -len);
        Mat s(2 * m, m);
        s << u, up;
        const Mat t = psi * s;
        u = t.topRows(m);
        up = t.bottomRows(m);
        // keep the columns O(1)
        const Mat r = u.inverse();
        u = u * r;
        up = up * r;
    };
    for (int i = static_cast<int>(values.size()) - 1; i >= 0; --i)
        back(values[i], breaks[i + 1] - breaks[i]);
    if (x0 < breaks.front()) back(Mat::Zero(m, m), breaks.front() - x0);
    return up * u.inverse();
}

// Scalar free fundamental system.
struct FreeScalar {
    cplx theta, theta_p, phi, phi_p;
};

inline FreeScalar free_scalar(cplx z, real len) {
    const cplx k = std::sqrt(z);
    return {std::cos(k * len), -k * std::sin(k * len), std::sin(k * len) / k, std::cos(k * len)};
}

// Classical RK4 with n equal steps for Y' = F(x, Y).
inline Mat rk4(const std::function<Mat(real, const Mat&)>& f, Mat y, real a, real b, int n) {
    const real h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        const real x = a + i * h;
        const Mat k1 = f(x, y);
        const Mat k2 = f(x + h / 2, y + (h / 2) * k1);
        const Mat k3 = f(x + h / 2, y + (h / 2) * k2);
        const Mat k4 = f(x + h, y + h * k3);
        y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return y;
}

// generalized binomial coefficient binom(a, k)
inline real binom(real a, int k) {
    real c = 1;
    for (int j = 0; j < k; ++j) c *= (a - j) / (j + 1);
    return c;
}

// Coefficient of z^{-j/2} in i (zI - Q0)^{1/2} = i z^{1/2} sum binom(1/2, k) (-Q0/z)^k.
inline Mat taylor_m(const Mat& q0, int j) {
    const int m = static_cast<int>(q0.rows());
    if (j % 2 == 0) return Mat::Zero(m, m);
    const int k = (j + 1) / 2;
    Mat p = eye(m);
    for (int i = 0; i < k; ++i) p = p * (-q0);
    return cplx(0, binom(0.5L, k)) * p;
}

// Coefficient G_k of (i/2) z^{-k-1/2} in (i/2)(zI - Q0)^{-1/2}.
inline Mat taylor_g(const Mat& q0, int k) {
    const int m = static_cast<int>(q0.rows());
    Mat p = eye(m);
    for (int i = 0; i < k; ++i) p = p * (-q0);
    return binom(-0.5L, k) * p;
}

inline Mat random_hermitian(std::mt19937_64& rng, int m, real scale) {
    std::uniform_real_distribution<double> u(-1, 1);
    Mat a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = cplx(u(rng), u(rng));
    Mat h = (a + a.adjoint()) / cplx(2);
    const real n = norm2(h);
    if (n > 0) h *= scale / n;
    return h;
}

inline Mat random_matrix(std::mt19937_64& rng, int m, real scale) {
    std::uniform_real_distribution<double> u(-1, 1);
    Mat a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = scale * cplx(u(rng), u(rng));
    return a;
}

// Positive definite: G G* + eps I.
inline Mat random_pd(std::mt19937_64& rng, int m, real eps) {
    const Mat g = random_matrix(rng, m, 1);
    return g * g.adjoint() + eps * eye(m);
}

}  // namespace oracle
