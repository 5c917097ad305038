#include "avc/wav.hpp"

#include <cstring>
#include <fstream>

#include "avc/errors.hpp"

namespace avc {

namespace {

std::uint32_t rd32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t rd16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void wr32(std::ofstream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void wr16(std::ofstream& out, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
}

} // namespace

WavData read_wav_mono16(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProcessingError("cannot open WAV file: " + path);
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (raw.size() < 12 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
        std::memcmp(raw.data() + 8, "WAVE", 4) != 0) {
        throw ProcessingError(path + ": not a RIFF/WAVE file");
    }

    bool have_fmt = false;
    std::uint16_t channels = 0, bits = 0, format = 0;
    std::uint32_t rate = 0;
    WavData wav;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= raw.size()) {
        const char* id = reinterpret_cast<const char*>(raw.data() + pos);
        const std::uint32_t size = rd32(raw.data() + pos + 4);
        const std::size_t body = pos + 8;
        if (body + size > raw.size()) {
            throw ProcessingError(path + ": truncated chunk '" + std::string(id, 4) + "'");
        }
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16) throw ProcessingError(path + ": short fmt chunk");
            format = rd16(raw.data() + body);
            channels = rd16(raw.data() + body + 2);
            rate = rd32(raw.data() + body + 4);
            bits = rd16(raw.data() + body + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            if (!have_fmt) throw ProcessingError(path + ": data chunk before fmt");
            if (format != 1 || bits != 16)
                throw ProcessingError(path + ": only 16-bit PCM is supported");
            if (channels != 1) throw ProcessingError(path + ": only mono is supported");
            const std::size_t count = size / 2;
            wav.samples.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                const std::int16_t s = static_cast<std::int16_t>(rd16(raw.data() + body + 2 * i));
                wav.samples[i] = static_cast<double>(s) / 32768.0;
            }
            have_data = true;
        }
        pos = body + size + (size & 1); // chunks are word-aligned
    }
    if (!have_fmt || !have_data) throw ProcessingError(path + ": missing fmt or data chunk");
    wav.rate = static_cast<double>(rate);
    return wav;
}

void write_wav_mono16(const std::string& path, const std::vector<double>& samples,
                      double rate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ProcessingError("cannot create WAV file: " + path);
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
    out.write("RIFF", 4);
    wr32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    wr32(out, 16);
    wr16(out, 1); // PCM
    wr16(out, 1); // mono
    wr32(out, static_cast<std::uint32_t>(rate));
    wr32(out, static_cast<std::uint32_t>(rate) * 2);
    wr16(out, 2);
    wr16(out, 16);
    out.write("data", 4);
    wr32(out, data_bytes);
    for (double v : samples) {
        double x = v;
        if (x > 32767.0 / 32768.0) x = 32767.0 / 32768.0;
        if (x < -1.0) x = -1.0;
        const std::int16_t s = static_cast<std::int16_t>(std::lround(x * 32768.0));
        wr16(out, static_cast<std::uint16_t>(s));
    }
}

} // namespace avc
