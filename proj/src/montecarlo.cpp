#include "cubesep/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cubesep/analytic.hpp"

namespace cubesep::mc {

const char* const kGeneratorName = "mt19937_64/u53";

namespace {

double u53(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double one_separation(std::mt19937_64& gen) {
    const double ax = u53(gen), ay = u53(gen), az = u53(gen);
    const double bx = u53(gen), by = u53(gen), bz = u53(gen);
    const double dx = ax - bx, dy = ay - by, dz = az - bz;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void fill_stream(std::uint64_t seed, std::span<double> out) {
    std::mt19937_64 gen(seed);
    for (double& d : out) d = one_separation(gen);
}

}  // namespace

void validate(const SimConfig& config) {
    if (config.sample_count < 1)
        throw std::domain_error("SimConfig: sample_count must be >= 1");
    if (config.bin_count < 2) throw std::domain_error("SimConfig: bin_count must be >= 2");
}

std::vector<double> sample_separations(const SimConfig& config) {
    validate(config);
    std::vector<double> out(config.sample_count);
    fill_stream(config.seed, out);
    return out;
}

std::uint64_t partition_seed(std::uint64_t seed, std::uint64_t partition) {
    std::uint64_t z = seed + (partition + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

std::vector<double> sample_partitioned(const SimConfig& config, int partitions,
                                       [[maybe_unused]] bool parallel) {
    validate(config);
    if (partitions < 1) throw std::domain_error("partitions must be >= 1");
    const std::uint64_t n = config.sample_count;
    const std::uint64_t p = static_cast<std::uint64_t>(partitions);
    const std::uint64_t base = n / p;
    const std::uint64_t extra = n % p;

    std::vector<std::uint64_t> offsets(p + 1, 0);
    for (std::uint64_t i = 0; i < p; ++i)
        offsets[i + 1] = offsets[i] + base + (i < extra ? 1 : 0);

    std::vector<double> out(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < static_cast<long long>(p); ++i) {
        const auto k = static_cast<std::uint64_t>(i);
        fill_stream(partition_seed(config.seed, k),
                    std::span<double>(out).subspan(offsets[k], offsets[k + 1] - offsets[k]));
    }
    return out;
}

}  // namespace

std::vector<double> sample_separations_parallel(const SimConfig& config, int partitions) {
    return sample_partitioned(config, partitions, true);
}

std::vector<double> sample_separations_reference(const SimConfig& config, int partitions) {
    return sample_partitioned(config, partitions, false);
}

Histogram build_histogram(std::span<const double> samples, int bin_count) {
    if (bin_count < 2) throw std::domain_error("build_histogram: bin_count must be >= 2");
    Histogram h;
    h.edges.resize(bin_count + 1);
    for (int i = 0; i <= bin_count; ++i)
        h.edges[i] = kSqrt3 * (static_cast<double>(i) / bin_count);
    h.counts.assign(bin_count, 0);
    for (const double x : samples) {
        if (!(x >= 0.0 && x <= kSqrt3))
            throw std::invalid_argument("build_histogram: sample " + std::to_string(x) +
                                        " outside [0, sqrt3]; sampler bug");
        auto idx = static_cast<int>(x / kSqrt3 * bin_count);
        idx = std::min(idx, bin_count - 1);  // the last bin is closed at sqrt3
        ++h.counts[idx];
    }
    h.total = samples.size();
    return h;
}

GofReport ks_test(std::span<const double> sorted_samples, int bin_count, std::uint64_t seed) {
    const std::size_t n = sorted_samples.size();
    if (n == 0) throw std::domain_error("ks_test: empty sample set");
    for (std::size_t i = 1; i < n; ++i)
        if (sorted_samples[i] < sorted_samples[i - 1])
            throw std::invalid_argument("ks_test: samples not sorted ascending");

    GofReport report;
    report.sample_count = n;
    report.seed = seed;

    const std::vector<double> model = analytic::cdf_prefix(sorted_samples);
    const double dn = static_cast<double>(n);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dist = std::max(dist, model[i] - static_cast<double>(i) / dn);
        dist = std::max(dist, static_cast<double>(i + 1) / dn - model[i]);
    }
    report.ks_statistic = dist;
    report.ks_threshold_1pct = 1.628 / std::sqrt(dn);
    report.pass = dist < report.ks_threshold_1pct;

    // Chi-square against expected bin masses, merging runs of sparse edge
    // bins until every expected count is at least 5 (the leading bins are as
    // starved as the far tail at realistic sample sizes).
    const Histogram hist = build_histogram(sorted_samples, bin_count);
    std::vector<double> expected(hist.counts.size());
    std::vector<double> edge_cdf = analytic::cdf_prefix(hist.edges);
    for (std::size_t i = 0; i < expected.size(); ++i)
        expected[i] = dn * (edge_cdf[i + 1] - edge_cdf[i]);

    std::vector<double> obs(hist.counts.begin(), hist.counts.end());
    std::size_t lo = 0, hi = expected.size();  // active half-open range
    auto merge_front = [&] {
        while (hi - lo > 1 && expected[lo] < 5.0) {
            expected[lo + 1] += expected[lo];
            obs[lo + 1] += obs[lo];
            ++lo;
        }
    };
    auto merge_back = [&] {
        while (hi - lo > 1 && expected[hi - 1] < 5.0) {
            expected[hi - 2] += expected[hi - 1];
            obs[hi - 2] += obs[hi - 1];
            --hi;
        }
    };
    merge_front();
    merge_back();

    double chi2 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double d = obs[i] - expected[i];
        chi2 += d * d / expected[i];
    }
    report.chi_square = chi2;
    report.chi_square_dof = static_cast<int>(hi - lo) - 1;
    return report;
}

}  // namespace cubesep::mc
