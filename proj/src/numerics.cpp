#include "qmem/numerics.hpp"

#include <algorithm>

namespace qmem {

namespace {

double simpson_rule(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const ScalarFunction& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol,
                     int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_rule(fa, flm, fm, m - a);
    const double right = simpson_rule(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const ScalarFunction& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_rule(fa, fm, fb, b - a);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

std::pair<double, double> golden_section_max(const ScalarFunction& f,
                                             double a, double b,
                                             double rel_tol) {
    if (!(b > a)) throw std::invalid_argument("golden_section_max: b <= a");
    const double gr = 0.6180339887498948482;  // (sqrt(5)-1)/2
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < 400; ++i) {
        if (b - a <= rel_tol * std::max(std::abs(a), std::abs(b)) + 1e-18) break;
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

double bisect(const ScalarFunction& f, double a, double b, double x_tol,
              int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("bisect: no sign change");
    for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> cumulative_simpson(double h, const std::vector<double>& f) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n == 2) {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    // first interval: left-edge three-point rule
    out[1] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
    for (std::size_t i = 2; i < n; ++i) {
        if (i % 2 == 0) {
            out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else {
            // right-edge three-point rule over [i-1, i]
            out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i] + 8.0 * f[i - 1] - f[i - 2]);
        }
    }
    return out;
}

double simpson_total(double h, const std::vector<double>& f) {
    if (f.size() < 2) return 0.0;
    return cumulative_simpson(h, f).back();
}

}  // namespace qmem
