#include "qfo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qfo {

OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        double initial_step, int max_iterations,
                        double tolerance) {
    const int n = static_cast<int>(x0.size());
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };

    std::vector<Eigen::VectorXd> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (int i = 1; i <= n; ++i) pts[i](i - 1) += initial_step;
    for (int i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<int> order(n + 1);
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[a] < vals[b]; });
        const int best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(vals[worst] - vals[best]) <
            tolerance * (std::abs(vals[best]) + tolerance))
            break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= n;

        Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
        double f_refl = eval(refl);
        if (f_refl < vals[best]) {
            Eigen::VectorXd exp_pt = centroid + 2.0 * (centroid - pts[worst]);
            double f_exp = eval(exp_pt);
            if (f_exp < f_refl) {
                pts[worst] = exp_pt;
                vals[worst] = f_exp;
            } else {
                pts[worst] = refl;
                vals[worst] = f_refl;
            }
        } else if (f_refl < vals[second]) {
            pts[worst] = refl;
            vals[worst] = f_refl;
        } else {
            Eigen::VectorXd contr =
                centroid + 0.5 * ((f_refl < vals[worst] ? refl : pts[worst]) -
                                  centroid);
            double f_contr = eval(contr);
            if (f_contr < std::min(f_refl, vals[worst])) {
                pts[worst] = contr;
                vals[worst] = f_contr;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }

    int best = static_cast<int>(
        std::min_element(vals.begin(), vals.end()) - vals.begin());
    return OptimResult{pts[best], vals[best], evals, iter};
}

namespace {

Eigen::VectorXd central_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                                 double h, int& evals) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (int i = 0; i < x.size(); ++i) {
        const double xi = xp(i);
        xp(i) = xi + h;
        double fp = f(xp);
        xp(i) = xi - h;
        double fm = f(xp);
        xp(i) = xi;
        evals += 2;
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

}  // namespace

OptimResult bfgs_fd(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                    int max_iterations, double gradient_tolerance,
                    double fd_step) {
    const int n = static_cast<int>(x0.size());
    int evals = 0;
    Eigen::VectorXd x = x0;
    double fx = f(x);
    ++evals;
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g = central_gradient(f, x, fd_step, evals);

    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        if (g.norm() < gradient_tolerance) break;
        Eigen::VectorXd dir = -h_inv * g;
        double slope = g.dot(dir);
        if (slope >= 0.0) {  // lost curvature; reset to steepest descent
            h_inv.setIdentity();
            dir = -g;
            slope = g.dot(dir);
        }

        double step = 1.0;
        double f_new = fx;
        Eigen::VectorXd x_new = x;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            x_new = x + step * dir;
            f_new = f(x_new);
            ++evals;
            if (f_new <= fx + 1e-4 * step * slope) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;

        Eigen::VectorXd g_new = central_gradient(f, x_new, fd_step, evals);
        Eigen::VectorXd s = x_new - x;
        Eigen::VectorXd y = g_new - g;
        double sy = s.dot(y);
        if (sy > 1e-12) {
            Eigen::VectorXd hy = h_inv * y;
            double yhy = y.dot(hy);
            h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
                     (hy * s.transpose() + s * hy.transpose()) / sy;
        } else {
            h_inv.setIdentity();
        }
        double improvement = fx - f_new;
        x = std::move(x_new);
        fx = f_new;
        g = std::move(g_new);
        if (improvement < 1e-15 * (std::abs(fx) + 1e-15)) break;
    }
    return OptimResult{x, fx, evals, iter};
}

}  // namespace qfo
