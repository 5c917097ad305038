#pragma once

#include <cstddef>
#include <vector>

#include "avc/sil_meter.hpp"
#include "avc/spectral.hpp"

namespace avc {

/// Splits a sample stream into back-to-back N-sample blocks; the tail
/// shorter than one block is dropped.
std::vector<SampleBlock> stream_to_blocks(const std::vector<double>& samples,
                                          const FftDesign& design);

/// Serial reference: spectrum + PSIL per block, in order.
std::vector<PsilSample> meter_blocks_serial(const std::vector<SampleBlock>& blocks,
                                            const FftDesign& design,
                                            const BandPartition& part, double floor_db,
                                            WindowKind window = WindowKind::rectangular);

/// OpenMP kernel over independent blocks. Output ordering and every bit of
/// every value match the serial reference. threads = 0 uses all cores.
std::vector<PsilSample> meter_blocks_parallel(const std::vector<SampleBlock>& blocks,
                                              const FftDesign& design,
                                              const BandPartition& part, double floor_db,
                                              WindowKind window = WindowKind::rectangular,
                                              int threads = 0);

/// Dispatches on thread count: 1 -> serial reference, otherwise the kernel.
std::vector<PsilSample> meter_blocks(const std::vector<SampleBlock>& blocks,
                                     const FftDesign& design, const BandPartition& part,
                                     double floor_db,
                                     WindowKind window = WindowKind::rectangular,
                                     int threads = 1);

} // namespace avc
