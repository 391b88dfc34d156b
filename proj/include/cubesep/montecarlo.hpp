#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cubesep/domain.hpp"

namespace cubesep::mc {

// Name of the pseudo-random scheme, recorded in every report: the standard
// mt19937_64 engine, doubles formed from the high 53 bits as (x >> 11) * 2^-53.
extern const char* const kGeneratorName;

struct SimConfig {
    std::uint64_t sample_count = 150000;
    int bin_count = 100;
    std::uint64_t seed = 1;
};

// Throws std::domain_error unless sample_count >= 1 and bin_count >= 2.
void validate(const SimConfig& config);

struct Histogram {
    std::vector<double> edges;          // bin_count + 1 edges spanning [0, sqrt3]
    std::vector<std::uint64_t> counts;  // right-open bins; the last bin is closed
    std::uint64_t total = 0;
};

struct GofReport {
    double ks_statistic = 0.0;
    double ks_threshold_1pct = 0.0;  // 1.628 / sqrt(N)
    double chi_square = 0.0;
    int chi_square_dof = 0;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    bool pass = false;
};

// Separations of sample_count independent point pairs in the unit cube.
// Draw order per pair: A.x, A.y, A.z, B.x, B.y, B.z, each a u53 double from
// one mt19937_64 stream seeded with config.seed. Fully deterministic.
std::vector<double> sample_separations(const SimConfig& config);

// Seed of partition p derived from the stream seed: splitmix64 finalizer
// applied to seed + (p + 1) * 0x9E3779B97F4A7C15.
std::uint64_t partition_seed(std::uint64_t seed, std::uint64_t partition);

// Partitioned sampling: the sample count is split into `partitions` nearly
// equal chunks, each generated as an independent stream under its derived
// seed and concatenated in partition order. Output depends only on
// (config, partitions), never on the number of worker threads.
// The _parallel variant runs the partitions under OpenMP; the _reference
// variant is the serial implementation of the identical scheme.
std::vector<double> sample_separations_parallel(const SimConfig& config, int partitions);
std::vector<double> sample_separations_reference(const SimConfig& config, int partitions);

// Equal-width bins over [0, sqrt3]; right-open except the last. A sample
// outside [0, sqrt3] is a data error (it cannot come from the cube sampler).
Histogram build_histogram(std::span<const double> samples, int bin_count);

// Kolmogorov-Smirnov distance between the empirical CDF of the (ascending)
// samples and the analytic CDF, plus a chi-square report computed from the
// histogram against the expected bin masses. The pass verdict is the KS test
// at the 1% level.
GofReport ks_test(std::span<const double> sorted_samples, int bin_count = 100,
                  std::uint64_t seed = 0);

}  // namespace cubesep::mc
