#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

// Special functions backing the chi-square and Student-t p-values: Lanczos
// log-gamma, series/continued-fraction regularized incomplete gamma, and
// Lentz continued-fraction regularized incomplete beta, all in-repo with no
// libm dependency beyond exp/log. Accuracy: absolute error <= 1e-10 on the
// documented domains (chi-square df <= 200, x <= 1000; t df <= 10000).

namespace radius {

namespace detail {

// Lanczos approximation, 14-term coefficient set (relative error ~1e-15).
inline double log_gamma(double x) {
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
        0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma requires x > 0");
    }
    double y = x;
    double tmp = x + 5.24218750000000000;  // 671/128
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : cof) {
        ser += c / ++y;
    }
    return tmp + std::log(2.5066282746310005 * ser / x);
}

constexpr int kMaxIter = 1000000;
inline const double kEps = std::numeric_limits<double>::epsilon();
inline const double kFpMin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

// Series representation of P(a, x), valid for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ++ap;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
        }
    }
    throw std::runtime_error("gamma_p_series failed to converge");
}

// Continued fraction for Q(a, x) with modified Lentz, valid for x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) {
            return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
        }
    }
    throw std::runtime_error("gamma_q_cf failed to converge");
}

// Continued fraction for the incomplete beta (modified Lentz).
inline double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) {
            return h;
        }
    }
    throw std::runtime_error("beta_cf failed to converge");
}

// I_x(a, b) given both x and its complement y = 1 - x. Taking y as computed
// by the caller avoids the cancellation in 1 - x when x is close to 1 (the
// Student-t case at small |t| and large df).
inline double regularized_beta_xy(double x, double y, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_x = x <= 0.5 ? std::log(x) : std::log1p(-y);
    const double log_y = y <= 0.5 ? std::log(y) : std::log1p(-x);
    const double bt = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * log_x +
                               b * log_y);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * beta_cf(a, b, x) / a;
    }
    return 1.0 - bt * beta_cf(b, a, y) / b;
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || std::isnan(x)) {
        throw std::domain_error("regularized_gamma_p requires a > 0 and x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_cf(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || std::isnan(x)) {
        throw std::domain_error("regularized_gamma_q requires a > 0 and x >= 0");
    }
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_cf(a, x);
}

/// Regularized incomplete beta I_x(a, b).
inline double regularized_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || x < 0.0 || x > 1.0 || std::isnan(x)) {
        throw std::domain_error("regularized_beta requires a, b > 0 and x in [0, 1]");
    }
    return detail::regularized_beta_xy(x, 1.0 - x, a, b);
}

/// Chi-square survival function: P(X >= x) for X ~ chi2(df).
inline double chi_square_sf(double x, double df) {
    if (x < 0.0 || std::isnan(x)) {
        throw std::domain_error("chi_square_sf requires x >= 0");
    }
    if (!(df > 0.0)) {
        throw std::domain_error("chi_square_sf requires df > 0");
    }
    if (x == 0.0) return 1.0;
    return regularized_gamma_q(df / 2.0, x / 2.0);
}

/// Two-sided Student-t p-value: 2 * P(T >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
inline double student_t_sf2(double t, double df) {
    if (!(df > 0.0)) {
        throw std::domain_error("student_t_sf2 requires df > 0");
    }
    if (std::isnan(t)) {
        throw std::domain_error("student_t_sf2: t is NaN");
    }
    if (t == 0.0) return 1.0;
    if (std::isinf(t)) return 0.0;
    const double t2 = t * t;
    return detail::regularized_beta_xy(df / (df + t2), t2 / (df + t2), df / 2.0, 0.5);
}

}  // namespace radius
