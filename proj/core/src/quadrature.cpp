#include "halfspace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace halfspace {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1] (QUADPACK dqk15).
constexpr int kn = 8;
constexpr double xgk[kn] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double wgk[kn] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double hl = 0.5 * (b - a);
    const double c = 0.5 * (a + b);

    double fv[15];
    const double fc = f(c);
    fv[7] = fc;
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - hl * xgk[i]);
        fv[14 - i] = f(c + hl * xgk[i]);
    }

    double resk = wgk[7] * fc;
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        const double s = fv[i] + fv[14 - i];
        resk += wgk[i] * s;
        resabs += wgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    double resg = wg[3] * fc;
    for (int i = 0; i < 4 - 1; ++i)
        resg += wg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    // Scaled difference of the nested rules, QUADPACK style.
    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += wgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));

    double err = std::abs((resk - resg) * hl);
    resasc *= hl;
    resabs *= hl;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);

    return {a, b, resk * hl, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec,
                                    double initial_panel_width) {
    spec.validate();
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    double w0 = initial_panel_width > 0.0 ? initial_panel_width : (b - a) / 8.0;
    int n0 = static_cast<int>(std::ceil((b - a) / w0));
    n0 = std::clamp(n0, 1, std::min(1024, std::max(1, spec.max_subdivisions / 2)));

    std::priority_queue<Panel> panels;
    double total = 0.0;
    double total_err = 0.0;
    const double step = (b - a) / n0;
    for (int i = 0; i < n0; ++i) {
        Panel p = evaluate_panel(f, a + i * step, (i + 1 == n0) ? b : a + (i + 1) * step);
        total += p.value;
        total_err += p.error;
        panels.push(p);
    }

    int used = n0;
    const double min_width = 1e-14 * (b - a);
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
           used < spec.max_subdivisions) {
        Panel worst = panels.top();
        if (worst.b - worst.a <= min_width) break; // roundoff-limited
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++used;
    }

    out.value = total;
    out.error_estimate = total_err;
    out.panels = used;
    out.converged = total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    return out;
}

} // namespace halfspace
