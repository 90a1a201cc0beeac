#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmmsat {

struct TtsSample {
    double tts = 0.0;
    bool censored = false; // run stopped at the cutoff without a solution
};

struct TtsSampleSet {
    std::vector<TtsSample> samples;

    std::size_t n_inst() const { return samples.size(); }
    std::size_t censored_count() const;
    void add(double tts, bool censored) { samples.push_back({tts, censored}); }
};

class MedianUndefined : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sample median with censored entries treated as +inf. Requires censored
/// fraction < 1/2; even counts average the two central order statistics.
double median_tts(const TtsSampleSet& set);

/// median(modified) / median(unmodified).
double nmtts(const TtsSampleSet& modified, const TtsSampleSet& unmodified);

/// Theoretical acceleration factor 1 - v_jump/2 on [0,2].
double jump_acceleration_model(double v_jump);

/// Half-open bins [origin + k*w, origin + (k+1)*w). Censored samples are
/// excluded. `counts` spans the first through last nonempty bin (interior
/// zeros kept), so the stored mass equals the uncensored sample count.
struct Histogram {
    double bin_width = 1.0;
    double origin = 0.0;
    std::size_t first_bin = 0;
    std::vector<std::uint64_t> counts;
    std::size_t n_inst = 0;

    double bin_center(std::size_t i) const {
        return origin + (static_cast<double>(first_bin + i) + 0.5) * bin_width;
    }
    std::uint64_t total() const;
};

Histogram histogram(const TtsSampleSet& set, double w, double origin = 0.0);

enum class FitFamily { Exponential, InverseGaussian, PowerLaw, ExpScaling };

struct FitResult {
    FitFamily family = FitFamily::Exponential;
    std::vector<double> params;  // exp: {a}; invgauss: {a,b}; scaling: {e}
    std::vector<double> stderrs; // same arity as params
    double rss = 0.0;
    double r2 = 0.0;
    std::size_t n_inst = 0;   // histogram fits only
    double bin_width = 0.0;   // histogram fits only
    double prefactor = 0.0;   // scaling fits: c in c*N^e or c*exp(e*N)
    bool in_domain = true;    // parameters inside the distribution's domain
    int iterations = 0;
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, std::vector<double> last_params = {})
        : std::runtime_error(what), last_params_(std::move(last_params)) {}
    const std::vector<double>& last_params() const { return last_params_; }

private:
    std::vector<double> last_params_;
};

/// Least-squares fit of f(x) = (N_inst*w/a) * exp(-x/a) to bin centers vs
/// counts. Initial guess: binned mean.
FitResult fit_exponential(const Histogram& h);

/// Least-squares fit of f(x) = N_inst*w*sqrt(b/(2 pi x^3)) *
/// exp(-b(x-a)^2/(2 a^2 x)). Initial guesses from binned moments (a0 = mean,
/// b0 = a0^3/variance).
FitResult fit_inverse_gaussian(const Histogram& h);

/// Maximum-likelihood alternatives on the raw (uncensored) samples; the
/// histogram parameters are used only to report rss/r2 of the implied curve.
/// Standard errors are asymptotic. Not used for the least-squares reports.
FitResult fit_exponential_mle(const TtsSampleSet& set, double w,
                              double origin = 0.0);
FitResult fit_inverse_gaussian_mle(const TtsSampleSet& set, double w,
                                   double origin = 0.0);

struct ScalingPoint {
    double n;
    double tts;
};

/// PowerLaw: linear least squares of log(tts) on log(N); ExpScaling: of
/// log(tts) on N. params = {exponent}; prefactor = exp(intercept). rss and
/// r2 are reported in log space.
FitResult fit_scaling(const std::vector<ScalingPoint>& points, FitFamily family);

/// Evaluates the fitted curve at x (bin center, or N for scaling fits).
double fitted_value(const FitResult& fit, double x);

std::string fit_family_name(FitFamily family);
std::string fit_report_json(const FitResult& fit);

/// CSV with header `tts,censored` (censored as 0/1).
TtsSampleSet parse_tts_csv(const std::string& text);
std::string tts_csv(const TtsSampleSet& set);

/// CSV with header `bin_center,count,fitted_value` for plotting.
std::string fit_curve_csv(const Histogram& h, const FitResult& fit);

} // namespace dmmsat
