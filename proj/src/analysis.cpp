#include "dmmsat/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dmmsat/version.hpp"

namespace dmmsat {

namespace {

std::string shortest(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

std::size_t TtsSampleSet::censored_count() const {
    std::size_t c = 0;
    for (const TtsSample& s : samples) c += s.censored ? 1 : 0;
    return c;
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t c : counts) t += c;
    return t;
}

double median_tts(const TtsSampleSet& set) {
    const std::size_t n = set.n_inst();
    if (n == 0) throw MedianUndefined("median of an empty sample set");
    if (2 * set.censored_count() >= n)
        throw MedianUndefined("median undefined at this cutoff: censored fraction >= 1/2");
    std::vector<double> values;
    values.reserve(n);
    for (const TtsSample& s : set.samples)
        values.push_back(s.censored ? std::numeric_limits<double>::infinity()
                                    : s.tts);
    std::sort(values.begin(), values.end());
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double nmtts(const TtsSampleSet& modified, const TtsSampleSet& unmodified) {
    return median_tts(modified) / median_tts(unmodified);
}

double jump_acceleration_model(double v_jump) {
    if (v_jump < 0.0 || v_jump > 2.0)
        throw std::invalid_argument("model curve is defined for v_jump in [0,2]");
    return 1.0 - v_jump / 2.0;
}

Histogram histogram(const TtsSampleSet& set, double w, double origin) {
    if (!(w > 0.0)) throw std::invalid_argument("bin width must be > 0");
    Histogram h;
    h.bin_width = w;
    h.origin = origin;
    h.n_inst = set.n_inst();

    long long lo = 0, hi = -1;
    std::vector<long long> bins;
    bins.reserve(set.samples.size());
    for (const TtsSample& s : set.samples) {
        if (s.censored) continue;
        if (s.tts < origin)
            throw std::invalid_argument("sample below the histogram origin");
        const auto k = static_cast<long long>(std::floor((s.tts - origin) / w));
        bins.push_back(k);
        if (hi < lo) {
            lo = hi = k;
        } else {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
    }
    if (bins.empty()) return h;
    h.first_bin = static_cast<std::size_t>(lo);
    h.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (long long k : bins) ++h.counts[static_cast<std::size_t>(k - lo)];
    return h;
}

namespace {

struct FitPoints {
    std::vector<double> x; // bin centers
    std::vector<double> y; // counts
    std::size_t nonempty = 0;
    double mean = 0.0;     // binned sample mean
    double variance = 0.0; // binned sample variance
};

FitPoints fit_points(const Histogram& h) {
    FitPoints p;
    double mass = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double x = h.bin_center(i);
        const double y = static_cast<double>(h.counts[i]);
        p.x.push_back(x);
        p.y.push_back(y);
        if (h.counts[i] > 0) ++p.nonempty;
        mass += y;
        sum += y * x;
    }
    if (mass > 0.0) {
        p.mean = sum / mass;
        double var = 0.0;
        for (std::size_t i = 0; i < p.x.size(); ++i)
            var += p.y[i] * (p.x[i] - p.mean) * (p.x[i] - p.mean);
        p.variance = var / mass;
    }
    return p;
}

using Model = std::function<double(double x, const std::vector<double>&)>;

double rss_of(const FitPoints& pts, const Model& f,
              const std::vector<double>& theta) {
    double rss = 0.0;
    for (std::size_t i = 0; i < pts.x.size(); ++i) {
        const double r = pts.y[i] - f(pts.x[i], theta);
        rss += r * r;
    }
    return rss;
}

void jacobian(const FitPoints& pts, const Model& f, std::vector<double> theta,
              std::vector<std::vector<double>>& J) {
    const std::size_t p = theta.size();
    J.assign(pts.x.size(), std::vector<double>(p));
    for (std::size_t j = 0; j < p; ++j) {
        const double h = 1e-6 * std::max(1.0, std::fabs(theta[j]));
        const double saved = theta[j];
        theta[j] = saved + h;
        std::vector<double> hi(pts.x.size());
        for (std::size_t i = 0; i < pts.x.size(); ++i) hi[i] = f(pts.x[i], theta);
        theta[j] = saved - h;
        for (std::size_t i = 0; i < pts.x.size(); ++i)
            J[i][j] = (hi[i] - f(pts.x[i], theta)) / (2.0 * h);
        theta[j] = saved;
    }
}

// Solves (A + lambda*diag(A)) d = g for 1 or 2 parameters.
bool solve_damped(const std::vector<std::vector<double>>& A,
                  const std::vector<double>& g, double lambda,
                  std::vector<double>& d) {
    const std::size_t p = g.size();
    if (p == 1) {
        const double a = A[0][0] * (1.0 + lambda);
        if (a == 0.0) return false;
        d = {g[0] / a};
        return true;
    }
    const double a00 = A[0][0] * (1.0 + lambda);
    const double a11 = A[1][1] * (1.0 + lambda);
    const double a01 = A[0][1];
    const double det = a00 * a11 - a01 * a01;
    if (det == 0.0) return false;
    d = {(g[0] * a11 - g[1] * a01) / det, (g[1] * a00 - g[0] * a01) / det};
    return true;
}

struct LmOutcome {
    std::vector<double> params;
    std::vector<double> stderrs;
    double rss = 0.0;
    int iterations = 0;
};

// Damped Gauss-Newton (Levenberg-style): iteration cap 200, relative
// parameter tolerance 1e-9, standard errors from the linearized covariance
// at the optimum.
LmOutcome lm_fit(const FitPoints& pts, const Model& f,
                 std::vector<double> theta) {
    constexpr int kMaxIter = 200;
    constexpr double kRelTol = 1e-9;
    const std::size_t p = theta.size();

    double rss = rss_of(pts, f, theta);
    if (!std::isfinite(rss))
        throw FitError("initial guess gives a non-finite residual", theta);

    std::vector<std::vector<double>> J;
    double lambda = 1e-3;
    bool converged = false;
    int iter = 0;
    for (; iter < kMaxIter && !converged; ++iter) {
        jacobian(pts, f, theta, J);
        std::vector<std::vector<double>> A(p, std::vector<double>(p, 0.0));
        std::vector<double> g(p, 0.0);
        for (std::size_t i = 0; i < pts.x.size(); ++i) {
            const double r = pts.y[i] - f(pts.x[i], theta);
            for (std::size_t a = 0; a < p; ++a) {
                g[a] += J[i][a] * r;
                for (std::size_t b = 0; b < p; ++b) A[a][b] += J[i][a] * J[i][b];
            }
        }

        bool accepted = false;
        while (!accepted && !converged) {
            std::vector<double> d;
            if (!solve_damped(A, g, lambda, d))
                throw FitError("singular normal equations", theta);
            double rel = 0.0;
            for (std::size_t a = 0; a < p; ++a)
                rel = std::max(rel, std::fabs(d[a]) /
                                        std::max(std::fabs(theta[a]), 1e-30));
            if (rel < kRelTol) { // at the optimum no strictly better step exists
                converged = true;
                break;
            }
            std::vector<double> trial(p);
            for (std::size_t a = 0; a < p; ++a) trial[a] = theta[a] + d[a];
            const double trial_rss = rss_of(pts, f, trial);
            if (trial_rss < rss) { // NaN compares false and is rejected
                theta = std::move(trial);
                rss = trial_rss;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
                if (rel < kRelTol) converged = true;
            } else {
                lambda *= 10.0;
                if (lambda > 1e12)
                    throw FitError("fit did not converge (damping exhausted)", theta);
            }
        }
    }
    if (!converged)
        throw FitError("fit did not converge within 200 iterations", theta);

    jacobian(pts, f, theta, J);
    std::vector<std::vector<double>> A(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < pts.x.size(); ++i)
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < p; ++b) A[a][b] += J[i][a] * J[i][b];

    LmOutcome out;
    out.params = theta;
    out.rss = rss;
    out.iterations = iter;
    out.stderrs.assign(p, 0.0);
    const double dof = static_cast<double>(pts.x.size()) - static_cast<double>(p);
    if (dof > 0) {
        const double s2 = rss / dof;
        if (p == 1) {
            if (A[0][0] > 0.0) out.stderrs[0] = std::sqrt(s2 / A[0][0]);
        } else {
            const double det = A[0][0] * A[1][1] - A[0][1] * A[0][1];
            if (det > 0.0) {
                out.stderrs[0] = std::sqrt(s2 * A[1][1] / det);
                out.stderrs[1] = std::sqrt(s2 * A[0][0] / det);
            }
        }
    }
    return out;
}

double r_squared(const FitPoints& pts, double rss) {
    double mean = 0.0;
    for (double y : pts.y) mean += y;
    mean /= static_cast<double>(pts.y.size());
    double tss = 0.0;
    for (double y : pts.y) tss += (y - mean) * (y - mean);
    if (tss <= 0.0) return rss == 0.0 ? 1.0 : 0.0;
    return 1.0 - rss / tss;
}

double exp_model(double x, double a, double k) { return k / a * std::exp(-x / a); }

double invgauss_model(double x, double a, double b, double k) {
    if (b <= 0.0 || x <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return k * std::sqrt(b / (2.0 * std::numbers::pi * x * x * x)) *
           std::exp(-b * (x - a) * (x - a) / (2.0 * a * a * x));
}

} // namespace

FitResult fit_exponential(const Histogram& h) {
    const FitPoints pts = fit_points(h);
    if (pts.nonempty < 3)
        throw FitError("exponential fit needs at least 3 nonempty bins");
    const double k = static_cast<double>(h.n_inst) * h.bin_width;
    const Model f = [k](double x, const std::vector<double>& th) {
        return exp_model(x, th[0], k);
    };
    const LmOutcome lm = lm_fit(pts, f, {pts.mean});
    FitResult fit;
    fit.family = FitFamily::Exponential;
    fit.params = lm.params;
    fit.stderrs = lm.stderrs;
    fit.rss = lm.rss;
    fit.r2 = r_squared(pts, lm.rss);
    fit.n_inst = h.n_inst;
    fit.bin_width = h.bin_width;
    fit.in_domain = lm.params[0] > 0.0;
    fit.iterations = lm.iterations;
    return fit;
}

FitResult fit_inverse_gaussian(const Histogram& h) {
    const FitPoints pts = fit_points(h);
    if (pts.nonempty < 4)
        throw FitError("inverse Gaussian fit needs at least 4 nonempty bins");
    for (double x : pts.x)
        if (x <= 0.0) throw FitError("inverse Gaussian fit needs positive bin centers");
    if (!(pts.variance > 0.0))
        throw FitError("degenerate histogram: zero binned variance");
    const double k = static_cast<double>(h.n_inst) * h.bin_width;
    const Model f = [k](double x, const std::vector<double>& th) {
        return invgauss_model(x, th[0], th[1], k);
    };
    const double a0 = pts.mean;
    const double b0 = a0 * a0 * a0 / pts.variance;
    const LmOutcome lm = lm_fit(pts, f, {a0, b0});
    FitResult fit;
    fit.family = FitFamily::InverseGaussian;
    fit.params = lm.params;
    fit.stderrs = lm.stderrs;
    fit.rss = lm.rss;
    fit.r2 = r_squared(pts, lm.rss);
    fit.n_inst = h.n_inst;
    fit.bin_width = h.bin_width;
    fit.in_domain = lm.params[0] > 0.0 && lm.params[1] > 0.0;
    fit.iterations = lm.iterations;
    return fit;
}

namespace {

double binned_goodness(const Histogram& h, const FitResult& fit, double& rss) {
    FitPoints pts = fit_points(h);
    rss = 0.0;
    for (std::size_t i = 0; i < pts.x.size(); ++i) {
        const double r = pts.y[i] - fitted_value(fit, pts.x[i]);
        rss += r * r;
    }
    return r_squared(pts, rss);
}

std::vector<double> uncensored_values(const TtsSampleSet& set) {
    std::vector<double> xs;
    xs.reserve(set.samples.size());
    for (const TtsSample& s : set.samples)
        if (!s.censored) xs.push_back(s.tts);
    if (xs.size() < 2) throw FitError("MLE fit needs at least 2 uncensored samples");
    return xs;
}

} // namespace

FitResult fit_exponential_mle(const TtsSampleSet& set, double w, double origin) {
    const std::vector<double> xs = uncensored_values(set);
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    if (!(mean > 0.0)) throw FitError("exponential MLE needs positive samples");

    FitResult fit;
    fit.family = FitFamily::Exponential;
    fit.params = {mean};
    fit.stderrs = {mean / std::sqrt(n)};
    fit.n_inst = set.n_inst();
    fit.bin_width = w;
    fit.in_domain = true;
    const Histogram h = histogram(set, w, origin);
    fit.r2 = binned_goodness(h, fit, fit.rss);
    return fit;
}

FitResult fit_inverse_gaussian_mle(const TtsSampleSet& set, double w,
                                   double origin) {
    const std::vector<double> xs = uncensored_values(set);
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) {
        if (!(x > 0.0))
            throw FitError("inverse Gaussian MLE needs positive samples");
        mean += x;
    }
    mean /= n;
    double inv_gap = 0.0; // (1/n) sum (1/x - 1/mean)
    for (double x : xs) inv_gap += 1.0 / x - 1.0 / mean;
    inv_gap /= n;
    if (!(inv_gap > 0.0)) throw FitError("degenerate samples for the MLE shape");
    const double b = 1.0 / inv_gap;

    FitResult fit;
    fit.family = FitFamily::InverseGaussian;
    fit.params = {mean, b};
    fit.stderrs = {std::sqrt(mean * mean * mean / (n * b)),
                   b * std::sqrt(2.0 / n)};
    fit.n_inst = set.n_inst();
    fit.bin_width = w;
    fit.in_domain = true;
    const Histogram h = histogram(set, w, origin);
    fit.r2 = binned_goodness(h, fit, fit.rss);
    return fit;
}

FitResult fit_scaling(const std::vector<ScalingPoint>& points, FitFamily family) {
    if (family != FitFamily::PowerLaw && family != FitFamily::ExpScaling)
        throw std::invalid_argument("fit_scaling expects PowerLaw or ExpScaling");
    if (points.size() < 3)
        throw std::invalid_argument("scaling fit needs at least 3 points");
    for (const ScalingPoint& p : points)
        if (!(p.n > 0.0) || !(p.tts > 0.0))
            throw std::invalid_argument("scaling fit needs positive N and tts");

    const std::size_t n = points.size();
    std::vector<double> u(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = family == FitFamily::PowerLaw ? std::log(points[i].n) : points[i].n;
        z[i] = std::log(points[i].tts);
    }
    double um = 0.0, zm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        um += u[i];
        zm += z[i];
    }
    um /= static_cast<double>(n);
    zm /= static_cast<double>(n);
    double suu = 0.0, suz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        suu += (u[i] - um) * (u[i] - um);
        suz += (u[i] - um) * (z[i] - zm);
    }
    if (suu <= 0.0) throw std::invalid_argument("scaling fit needs distinct N");
    const double slope = suz / suu;
    const double intercept = zm - slope * um;

    double rss = 0.0, tss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = z[i] - (intercept + slope * u[i]);
        rss += r * r;
        tss += (z[i] - zm) * (z[i] - zm);
    }

    FitResult fit;
    fit.family = family;
    fit.params = {slope};
    const double dof = static_cast<double>(n) - 2.0;
    fit.stderrs = {dof > 0 ? std::sqrt(rss / dof / suu) : 0.0};
    fit.rss = rss;
    fit.r2 = tss > 0.0 ? 1.0 - rss / tss : (rss == 0.0 ? 1.0 : 0.0);
    fit.prefactor = std::exp(intercept);
    return fit;
}

double fitted_value(const FitResult& fit, double x) {
    const double k = static_cast<double>(fit.n_inst) * fit.bin_width;
    switch (fit.family) {
    case FitFamily::Exponential:
        return exp_model(x, fit.params[0], k);
    case FitFamily::InverseGaussian:
        return invgauss_model(x, fit.params[0], fit.params[1], k);
    case FitFamily::PowerLaw:
        return fit.prefactor * std::pow(x, fit.params[0]);
    case FitFamily::ExpScaling:
        return fit.prefactor * std::exp(fit.params[0] * x);
    }
    return 0.0;
}

std::string fit_family_name(FitFamily family) {
    switch (family) {
    case FitFamily::Exponential: return "exponential";
    case FitFamily::InverseGaussian: return "inverse_gaussian";
    case FitFamily::PowerLaw: return "power_law";
    case FitFamily::ExpScaling: return "exp_scaling";
    }
    return "unknown";
}

std::string fit_report_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = fit_family_name(fit.family);
    nlohmann::ordered_json params, stderrs;
    const bool scaling =
        fit.family == FitFamily::PowerLaw || fit.family == FitFamily::ExpScaling;
    if (scaling) {
        params["exponent"] = fit.params[0];
        stderrs["exponent"] = fit.stderrs[0];
        j["params"] = params;
        j["stderrs"] = stderrs;
        j["prefactor"] = fit.prefactor;
    } else {
        static const char* names[] = {"a", "b"};
        for (std::size_t i = 0; i < fit.params.size(); ++i) {
            params[names[i]] = fit.params[i];
            stderrs[names[i]] = fit.stderrs[i];
        }
        j["params"] = params;
        j["stderrs"] = stderrs;
        j["n_inst"] = fit.n_inst;
        j["w"] = fit.bin_width;
    }
    j["rss"] = fit.rss;
    j["r2"] = fit.r2;
    j["in_domain"] = fit.in_domain;
    j["iterations"] = fit.iterations;
    return j.dump(2) + "\n";
}

TtsSampleSet parse_tts_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    TtsSampleSet set;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "tts,censored")
                throw std::invalid_argument(
                    "line 1: expected header 'tts,censored'");
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'tts,censored'");
        double tts = 0.0;
        const std::string_view head(line.data(), comma);
        auto res = std::from_chars(head.data(), head.data() + head.size(), tts);
        if (res.ec != std::errc{} || res.ptr != head.data() + head.size())
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": bad tts value");
        const std::string_view tail(line.data() + comma + 1,
                                    line.size() - comma - 1);
        if (tail != "0" && tail != "1")
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": censored must be 0 or 1");
        set.add(tts, tail == "1");
    }
    return set;
}

std::string tts_csv(const TtsSampleSet& set) {
    std::ostringstream out;
    out << "tts,censored\n";
    for (const TtsSample& s : set.samples)
        out << shortest(s.tts) << ',' << (s.censored ? 1 : 0) << '\n';
    return out.str();
}

std::string fit_curve_csv(const Histogram& h, const FitResult& fit) {
    std::ostringstream out;
    out << "bin_center,count,fitted_value\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double x = h.bin_center(i);
        out << shortest(x) << ',' << h.counts[i] << ','
            << shortest(fitted_value(fit, x)) << '\n';
    }
    return out.str();
}

} // namespace dmmsat
