#include "avc/sil_meter.hpp"

#include <cmath>
#include <sstream>

#include "avc/errors.hpp"

namespace avc {

BandPartition band_partition(const FftDesign& d) {
    BandPartition part;
    const std::size_t bins = d.bin_count();
    for (int band = 0; band < 3; ++band) {
        const double lo = kBandEdges[band];
        const double hi = kBandEdges[band + 1];
        int first = -1, last = -2;
        for (std::size_t j = 0; j < bins; ++j) {
            const double f = d.bin_freq(j);
            // lowest band includes its lower edge, the others are (lo, hi]
            const bool in = (band == 0) ? (f >= lo && f <= hi) : (f > lo && f <= hi);
            if (in) {
                if (first < 0) first = static_cast<int>(j);
                last = static_cast<int>(j);
            }
        }
        if (first < 0) {
            std::ostringstream os;
            os << "band partition: octave band " << lo << "-" << hi
               << " Hz holds no FFT bins (resolution " << d.resolution << " Hz)";
            throw ConfigError(os.str());
        }
        part.bands[band] = {first, last};
    }
    return part;
}

double band_level(const Spectrum& spec, const BandPartition::Range& range,
                  double floor_db) {
    double sum = 0.0;
    for (int j = range.first; j <= range.last; ++j) {
        sum += spec.power[static_cast<std::size_t>(j)];
    }
    if (sum <= 0.0) return floor_db;
    const double db = 10.0 * std::log10(sum);
    return db < floor_db ? floor_db : db;
}

PsilSample psil(const Spectrum& spec, const BandPartition& part, double floor_db) {
    PsilSample s;
    for (int band = 0; band < 3; ++band) {
        if (part.bands[band].last >= static_cast<int>(spec.power.size())) {
            throw ProcessingError("psil: band partition exceeds spectrum length");
        }
        s.band_db[static_cast<std::size_t>(band)] =
            band_level(spec, part.bands[static_cast<std::size_t>(band)], floor_db);
    }
    s.psil_db = (s.band_db[0] + s.band_db[1] + s.band_db[2]) / 3.0;
    return s;
}

} // namespace avc
