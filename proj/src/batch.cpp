#include "avc/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace avc {

std::vector<SampleBlock> stream_to_blocks(const std::vector<double>& samples,
                                          const FftDesign& design) {
    const std::size_t n = static_cast<std::size_t>(design.n_samples);
    std::vector<SampleBlock> blocks;
    blocks.reserve(samples.size() / n);
    for (std::size_t off = 0; off + n <= samples.size(); off += n) {
        SampleBlock b;
        b.rate = design.sample_rate;
        b.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(off),
                         samples.begin() + static_cast<std::ptrdiff_t>(off + n));
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::vector<PsilSample> meter_blocks_serial(const std::vector<SampleBlock>& blocks,
                                            const FftDesign& design,
                                            const BandPartition& part, double floor_db,
                                            WindowKind window) {
    std::vector<PsilSample> out(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const Spectrum spec = compute_spectrum(blocks[k], design, window);
        out[k] = psil(spec, part, floor_db);
        out[k].period = static_cast<std::int64_t>(k);
        out[k].time_s = static_cast<double>(k) * design.cycle_period;
    }
    return out;
}

std::vector<PsilSample> meter_blocks_parallel(const std::vector<SampleBlock>& blocks,
                                              const FftDesign& design,
                                              const BandPartition& part, double floor_db,
                                              WindowKind window, int threads) {
    std::vector<PsilSample> out(blocks.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(blocks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const Spectrum spec = compute_spectrum(blocks[i], design, window);
        out[i] = psil(spec, part, floor_db);
        out[i].period = static_cast<std::int64_t>(k);
        out[i].time_s = static_cast<double>(k) * design.cycle_period;
    }
    return out;
}

std::vector<PsilSample> meter_blocks(const std::vector<SampleBlock>& blocks,
                                     const FftDesign& design, const BandPartition& part,
                                     double floor_db, WindowKind window, int threads) {
    if (threads == 1) {
        return meter_blocks_serial(blocks, design, part, floor_db, window);
    }
    return meter_blocks_parallel(blocks, design, part, floor_db, window, threads);
}

} // namespace avc
