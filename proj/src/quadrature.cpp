#include "quadrature.hpp"

#include <cmath>

namespace ccfv {

namespace {

struct Panel {
    double a, b, fa, fm, fb, estimate;
};

double simpson(double fa, double fm, double fb, double len) {
    return len / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const std::function<double(double)>& f, const Panel& p, double rel_tol,
               double scale, int depth, int max_depth) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(p.fa, flm, p.fm, m - p.a);
    const double right = simpson(p.fm, frm, p.fb, p.b - m);
    const double whole = left + right;
    const double err = whole - p.estimate;
    // The 1/15 Richardson factor is the classic Simpson acceptance rule.
    if (depth >= max_depth ||
        std::abs(err) <= 15.0 * rel_tol * std::max(std::abs(whole), scale)) {
        return whole + err / 15.0;
    }
    Panel pl{p.a, m, p.fa, flm, p.fm, left};
    Panel pr{m, p.b, p.fm, frm, p.fb, right};
    return recurse(f, pl, 0.5 * rel_tol, scale, depth + 1, max_depth) +
           recurse(f, pr, 0.5 * rel_tol, scale, depth + 1, max_depth);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    Panel p{a, b, fa, fm, fb, simpson(fa, fm, fb, b - a)};
    // Absolute floor keeps the tolerance meaningful when the integral is ~0.
    const double scale = 1e-300;
    return recurse(f, p, rel_tol, scale, 0, max_depth);
}

} // namespace ccfv
