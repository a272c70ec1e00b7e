#include "gsynth/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gsynth/error.hpp"

namespace gsynth {

double normal_cdf(double x, double mean, double sigma) {
    return 0.5 * std::erfc(-(x - mean) / (sigma * std::sqrt(2.0)));
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    // Acklam's rational approximation
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

namespace {

double ks_constant(double alpha) {
    if (alpha == 0.01) return 1.63;
    if (alpha == 0.05) return 1.36;
    return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

}  // namespace

double ks_critical(double alpha, std::size_t n) {
    return ks_constant(alpha) / std::sqrt(static_cast<double>(n));
}

TestReport ks_one_sample(std::vector<double> samples, const Cdf& cdf, double alpha,
                         std::string name) {
    if (samples.empty())
        throw std::invalid_argument("ks_one_sample: samples must be non-empty");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    TestReport report;
    report.test_name = std::move(name);
    report.statistic = d;
    report.critical_value = ks_critical(alpha, samples.size());
    report.alpha = alpha;
    report.pass = d < report.critical_value;
    report.sample_size = samples.size();
    return report;
}

TestReport ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha,
                         std::string name) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return ks_two_sample_sorted(a, b, alpha, std::move(name));
}

TestReport ks_two_sample_sorted(const std::vector<double>& a,
                                const std::vector<double>& b, double alpha,
                                std::string name) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: samples must be non-empty");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    TestReport report;
    report.test_name = std::move(name);
    report.statistic = d;
    report.critical_value =
        ks_constant(alpha) * std::sqrt((na + nb) / (na * nb));
    report.alpha = alpha;
    report.pass = d < report.critical_value;
    report.sample_size = a.size() + b.size();
    return report;
}

double regularized_gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw std::invalid_argument("regularized_gamma_p: bad arguments");
    if (x == 0.0) return 0.0;

    const double log_gamma_a = std::lgamma(a);
    if (x < a + 1.0) {
        // series expansion
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int k = 0; k < 1000; ++k) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - log_gamma_a);
    }
    // continued fraction for Q, then P = 1 - Q
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 1000; ++k) {
        const double an = -static_cast<double>(k) * (k - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - log_gamma_a) * h;
    return 1.0 - q;
}

double chi_square_critical(double alpha, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_critical: dof must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("chi_square_critical: alpha must lie in (0, 1)");
    const double target = 1.0 - alpha;
    const double a = dof / 2.0;
    double lo = 0.0, hi = dof + 200.0 * std::sqrt(2.0 * dof) + 200.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_gamma_p(a, mid / 2.0) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

TestReport chi_square_gof(const std::vector<double>& samples,
                          const std::vector<double>& interior_edges, const Cdf& cdf,
                          double alpha, std::string name) {
    if (samples.empty())
        throw std::invalid_argument("chi_square_gof: samples must be non-empty");
    if (interior_edges.empty())
        throw std::invalid_argument("chi_square_gof: need at least one edge");
    if (!std::is_sorted(interior_edges.begin(), interior_edges.end()))
        throw std::invalid_argument("chi_square_gof: edges must be sorted");

    const std::size_t cells = interior_edges.size() + 1;
    const double n = static_cast<double>(samples.size());

    std::vector<double> expected(cells);
    double prev = 0.0;
    for (std::size_t i = 0; i < interior_edges.size(); ++i) {
        const double f = cdf(interior_edges[i]);
        expected[i] = n * (f - prev);
        prev = f;
    }
    expected[cells - 1] = n * (1.0 - prev);
    for (double e : expected)
        if (e < 5.0)
            throw std::invalid_argument(
                "chi_square_gof: expected count below 5 in some cell; widen the bins");

    std::vector<std::uint64_t> observed(cells, 0);
    for (double v : samples) {
        const std::size_t cell =
            std::upper_bound(interior_edges.begin(), interior_edges.end(), v) -
            interior_edges.begin();
        ++observed[cell];
    }

    double statistic = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double diff = static_cast<double>(observed[i]) - expected[i];
        statistic += diff * diff / expected[i];
    }

    TestReport report;
    report.test_name = std::move(name);
    report.statistic = statistic;
    report.critical_value = chi_square_critical(alpha, static_cast<int>(cells) - 1);
    report.alpha = alpha;
    report.pass = statistic < report.critical_value;
    report.sample_size = samples.size();
    return report;
}

Histogram histogram_export(const GrayImage& image, double bin_width, double mean,
                           double sigma) {
    if (!(bin_width > 0.0))
        throw std::invalid_argument("histogram_export: bin_width must be positive");

    const auto& vals = image.values();
    double lo = mean - 4.0 * sigma, hi = mean + 4.0 * sigma;
    for (float v : vals) {
        lo = std::min(lo, static_cast<double>(v));
        hi = std::max(hi, static_cast<double>(v));
    }

    // grid anchored so that `mean` is a bin center
    const double first_edge =
        mean - bin_width / 2.0 -
        std::ceil((mean - bin_width / 2.0 - lo) / bin_width) * bin_width;
    const std::size_t bins = static_cast<std::size_t>(
        std::ceil((hi - first_edge) / bin_width));

    Histogram h;
    h.bin_width = bin_width;
    h.centers.resize(bins);
    h.counts.assign(bins, 0);
    h.curve.resize(bins);
    const double norm = static_cast<double>(vals.size()) * bin_width /
                        (sigma * std::sqrt(2.0 * 3.14159265358979323846));
    for (std::size_t i = 0; i < bins; ++i) {
        h.centers[i] = first_edge + (static_cast<double>(i) + 0.5) * bin_width;
        const double z = (h.centers[i] - mean) / sigma;
        h.curve[i] = norm * std::exp(-0.5 * z * z);
    }
    for (float v : vals) {
        auto bin = static_cast<std::ptrdiff_t>((v - first_edge) / bin_width);
        bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        ++h.counts[bin];
    }
    return h;
}

void write_histogram_csv(const Histogram& h, const std::string& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw DataError("histogram: cannot open for writing: " + path);
    os << "bin_center,count,curve\n";
    for (std::size_t i = 0; i < h.centers.size(); ++i)
        os << h.centers[i] << "," << h.counts[i] << "," << h.curve[i] << "\n";
    if (!os) throw DataError("histogram: write failed: " + path);
}

}  // namespace gsynth
