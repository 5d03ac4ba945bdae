#include "hsjump/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsjump::stats {

void Running::merge(const Running& o) {
    if (o.n == 0) return;
    if (n == 0) {
        *this = o;
        return;
    }
    const double d = o.mean - mean;
    const long nn = n + o.n;
    m2 += o.m2 + d * d * (double)n * (double)o.n / (double)nn;
    mean += d * (double)o.n / (double)nn;
    n = nn;
}

double Running::std_error() const {
    return n > 1 ? std::sqrt(variance() / (double)n) : 0.0;
}

Interval wilson(long k, long n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double p = (double)k / (double)n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / (double)n;
    const double center = (p + z2 / (2.0 * (double)n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / (double)n + z2 / (4.0 * (double)n * (double)n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

static double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

std::pair<double, double> ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const size_t na = a.size(), nb = b.size();
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < na && j < nb) {
        const double x = std::min(a[i], b[j]);
        while (i < na && a[i] <= x) ++i;
        while (j < nb && b[j] <= x) ++j;
        d = std::max(d, std::abs((double)i / na - (double)j / nb));
    }
    const double ne = std::sqrt((double)na * nb / (double)(na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return {d, kolmogorov_q(lambda)};
}

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p domain");
    if (x == 0.0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction for Q
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

double chi2_tail(double x, int k) { return 1.0 - gamma_p(0.5 * k, 0.5 * x); }

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit sizes");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

std::vector<double> fit2(const std::vector<double>& x1, const std::vector<double>& x2,
                         const std::vector<double>& y) {
    const size_t n = y.size();
    // normal equations for [1, x1, x2]
    double m[3][3] = {{(double)n, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double r[3] = {0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
        const double v[3] = {1.0, x1[i], x2[i]};
        for (int a = 0; a < 3; ++a) {
            r[a] += v[a] * y[i];
            for (int b = 0; b < 3; ++b) m[a][b] += (a == 0 && b == 0) ? 0.0 : v[a] * v[b];
        }
    }
    // gaussian elimination, 3x3
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int rr = c + 1; rr < 3; ++rr)
            if (std::abs(m[rr][c]) > std::abs(m[piv][c])) piv = rr;
        std::swap(m[c], m[piv]);
        std::swap(r[c], r[piv]);
        for (int rr = c + 1; rr < 3; ++rr) {
            const double f = m[rr][c] / m[c][c];
            for (int cc = c; cc < 3; ++cc) m[rr][cc] -= f * m[c][cc];
            r[rr] -= f * r[c];
        }
    }
    std::vector<double> out(3);
    for (int c = 2; c >= 0; --c) {
        double s = r[c];
        for (int cc = c + 1; cc < 3; ++cc) s -= m[c][cc] * out[cc];
        out[c] = s / m[c][c];
    }
    return out;
}

} // namespace hsjump::stats
