#include "avc/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "avc/errors.hpp"

namespace avc {

FftDesign design_fft(int n_samples, double sample_rate) {
    if (n_samples < 2 || !is_power_of_two(static_cast<std::size_t>(n_samples))) {
        std::ostringstream os;
        os << "fft design: N must be an integer power of 2, >= 2 (got " << n_samples << ")";
        throw ConfigError(os.str());
    }
    if (!(sample_rate > 0.0)) {
        throw ConfigError("fft design: sample rate must be positive");
    }
    FftDesign d;
    d.n_samples = n_samples;
    d.sample_rate = sample_rate;
    d.period_span = (n_samples - 1) / sample_rate;
    d.resolution = sample_rate / (n_samples - 1);
    d.max_freq = (static_cast<double>(n_samples) / (n_samples - 1)) * sample_rate / 2.0;
    d.cycle_period = n_samples / sample_rate;
    return d;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::marginal: return "marginal";
        case Verdict::fail: return "fail";
    }
    return "?";
}

namespace {

GuidelineCheck check_upper(double value, double limit, double tolerance, const char* what) {
    GuidelineCheck c;
    c.value = value;
    c.limit = limit;
    if (value <= limit) {
        c.verdict = Verdict::pass;
    } else if (value <= limit * tolerance) {
        c.verdict = Verdict::marginal;
    } else {
        c.verdict = Verdict::fail;
    }
    std::ostringstream os;
    os << what << " " << value << " vs limit " << limit;
    c.detail = os.str();
    return c;
}

GuidelineCheck check_lower(double value, double limit, double tolerance, const char* what) {
    GuidelineCheck c;
    c.value = value;
    c.limit = limit;
    if (value >= limit) {
        c.verdict = Verdict::pass;
    } else if (value >= limit / tolerance) {
        c.verdict = Verdict::marginal;
    } else {
        c.verdict = Verdict::fail;
    }
    std::ostringstream os;
    os << what << " " << value << " vs limit " << limit;
    c.detail = os.str();
    return c;
}

} // namespace

GuidelineReport validate_design(const FftDesign& d, double tolerance) {
    if (!(tolerance >= 1.0)) {
        throw ConfigError("design tolerance must be >= 1");
    }
    GuidelineReport r;
    r.resolution = check_upper(d.resolution, 40.0, tolerance, "resolution Hz");
    r.period = check_upper(d.period_span, 25e-3, tolerance, "period s");
    r.max_freq = check_lower(d.max_freq, 2800.0, tolerance, "max freq Hz");
    return r;
}

namespace {

// In-place iterative radix-2 FFT, decimation in time.
void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

} // namespace

Spectrum compute_spectrum(const SampleBlock& block, const FftDesign& design,
                          WindowKind window) {
    const std::size_t n = static_cast<std::size_t>(design.n_samples);
    if (block.samples.size() != n) {
        std::ostringstream os;
        os << "spectrum: block length " << block.samples.size()
           << " does not match design N " << design.n_samples;
        throw ProcessingError(os.str());
    }

    std::vector<std::complex<double>> a(n);
    if (window == WindowKind::hann) {
        for (std::size_t i = 0; i < n; ++i) {
            const double w =
                0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                     static_cast<double>(n - 1));
            a[i] = block.samples[i] * w;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) a[i] = block.samples[i];
    }

    fft_radix2(a);

    Spectrum spec;
    spec.bin_hz = design.resolution;
    spec.power.resize(n / 2 + 1);
    const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const double mag2 = std::norm(a[j]);
        const double fold = (j == 0 || j == n / 2) ? 1.0 : 2.0; // conjugate bins
        spec.power[j] = fold * mag2 * scale;
    }
    return spec;
}

} // namespace avc
