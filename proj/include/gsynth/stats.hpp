#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsynth/image.hpp"

namespace gsynth {

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    double critical_value = 0.0;
    double alpha = 0.0;
    bool pass = false;
    std::size_t sample_size = 0;
};

using Cdf = std::function<double(double)>;

double normal_cdf(double x, double mean, double sigma);

/// Standard normal quantile (Acklam's rational approximation, ~1e-9).
double normal_quantile(double p);

/// Asymptotic one-sample KS critical value c(alpha)/sqrt(n). The two
/// conventional constants are pinned: c(0.01) = 1.63, c(0.05) = 1.36;
/// other levels use c = sqrt(-ln(alpha/2)/2).
double ks_critical(double alpha, std::size_t n);

/// One-sample Kolmogorov-Smirnov: D = sup |F_empirical - F|.
TestReport ks_one_sample(std::vector<double> samples, const Cdf& cdf, double alpha,
                         std::string name = "ks");

/// Two-sample KS with the asymptotic critical value
/// c(alpha) * sqrt((n+m)/(n*m)); tie groups are advanced on both sides
/// before the gap is measured.
TestReport ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha,
                         std::string name = "ks2");

/// Same test over inputs the caller has already sorted ascending; lets
/// batch callers sort each sequence once and reuse it across pairs.
TestReport ks_two_sample_sorted(const std::vector<double>& a,
                                const std::vector<double>& b, double alpha,
                                std::string name = "ks2");

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// chi-square quantile at 1-alpha for the given degrees of freedom
/// (bisection on the incomplete gamma).
double chi_square_critical(double alpha, int dof);

/// Goodness of fit against a continuous CDF. interior_edges split the
/// real line into edges.size()+1 cells (open tails included); every
/// expected cell count must be >= 5 or the call throws with a re-binning
/// hint. dof = cells - 1.
TestReport chi_square_gof(const std::vector<double>& samples,
                          const std::vector<double>& interior_edges, const Cdf& cdf,
                          double alpha, std::string name = "chi2");

struct Histogram {
    double bin_width = 0.0;
    std::vector<double> centers;
    std::vector<std::uint64_t> counts;
    std::vector<double> curve;  // n * bin_width * pdf(center)
};

/// Bin an image's values on a grid anchored so that `mean` is a bin
/// center, padded to cover mean +- 4 sigma, with the scaled N(mean,
/// sigma^2) density sampled at the centers.
Histogram histogram_export(const GrayImage& image, double bin_width, double mean,
                           double sigma);

void write_histogram_csv(const Histogram& h, const std::string& path);

}  // namespace gsynth
