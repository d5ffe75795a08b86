#include "evtrack/stream_io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "evtrack/errors.hpp"

namespace evtrack {

namespace {

constexpr int kMaxDimension = std::numeric_limits<std::uint16_t>::max();

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        if (pos > start) fields.push_back(line.substr(start, pos - start));
    }
    return fields;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool is_blank_or_comment(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    return i == line.size() || line[i] == '#';
}

std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::uint16_t load_u16le(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t load_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u16le(std::uint16_t v, unsigned char* p) {
    p[0] = static_cast<unsigned char>(v & 0xff);
    p[1] = static_cast<unsigned char>(v >> 8);
}

void store_u32le(std::uint32_t v, unsigned char* p) {
    p[0] = static_cast<unsigned char>(v & 0xff);
    p[1] = static_cast<unsigned char>((v >> 8) & 0xff);
    p[2] = static_cast<unsigned char>((v >> 16) & 0xff);
    p[3] = static_cast<unsigned char>((v >> 24) & 0xff);
}

} // namespace

EventStream read_text(std::istream& in) {
    EventStream stream;
    bool have_geometry = false;
    std::uint64_t prev_t = 0;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim_cr(raw);
        if (is_blank_or_comment(line)) continue;

        auto fields = split_fields(line);
        if (!have_geometry) {
            if (fields.size() != 3 || fields[0] != "geometry") {
                throw DataError(Errc::MalformedLine, "expected 'geometry <width> <height>'",
                                line_no);
            }
            int w = 0;
            int h = 0;
            if (!parse_number(fields[1], w) || !parse_number(fields[2], h)) {
                throw DataError(Errc::MalformedLine, "non-numeric geometry field", line_no);
            }
            if (w < 1 || h < 1 || w > kMaxDimension || h > kMaxDimension) {
                throw DataError(Errc::BadHeader, "geometry out of supported range", line_no);
            }
            stream.geometry = {w, h};
            have_geometry = true;
            continue;
        }

        if (fields.size() != 4) {
            throw DataError(Errc::MalformedLine, "expected '<t> <x> <y> <p>'", line_no);
        }
        std::uint64_t t = 0;
        int x = 0;
        int y = 0;
        int p = 0;
        if (!parse_number(fields[0], t) || !parse_number(fields[1], x) ||
            !parse_number(fields[2], y) || !parse_number(fields[3], p)) {
            throw DataError(Errc::MalformedLine, "non-numeric event field", line_no);
        }
        if (p != 0 && p != 1) {
            throw DataError(Errc::MalformedLine, "polarity must be 0 or 1", line_no);
        }
        if (!stream.geometry.contains(x, y)) {
            throw DataError(Errc::OutOfRange, "event coordinate outside geometry", line_no);
        }
        if (!stream.events.empty() && t < prev_t) {
            throw DataError(Errc::NonMonotonicTime, "timestamp decreased", line_no);
        }
        prev_t = t;
        stream.events.push_back({t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                                 p == 1 ? Polarity::Positive : Polarity::Negative});
    }

    if (!have_geometry) {
        throw DataError(Errc::BadHeader, "missing geometry line", 0);
    }
    return stream;
}

void write_text(const EventStream& stream, std::ostream& out) {
    out << "geometry " << stream.geometry.width << ' ' << stream.geometry.height << '\n';
    for (const Event& e : stream.events) {
        out << e.t << ' ' << e.x << ' ' << e.y << ' '
            << (e.polarity == Polarity::Positive ? 1 : 0) << '\n';
    }
}

EventStream read_binary(std::istream& in) {
    std::string data(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    const std::size_t size = data.size();

    if (size < 4 || std::memcmp(bytes, kBinaryMagic, 4) != 0) {
        throw DataError(Errc::BadMagic, "missing EVT1 magic");
    }
    if (size < kBinaryHeaderSize) {
        throw DataError(Errc::TruncatedRecord, "incomplete header");
    }
    const int w = load_u16le(bytes + 4);
    const int h = load_u16le(bytes + 6);
    if (w == 0 || h == 0) {
        throw DataError(Errc::BadHeader, "zero sensor dimension");
    }

    const std::size_t payload = size - kBinaryHeaderSize;
    if (payload % kBinaryRecordSize != 0) {
        throw DataError(Errc::TruncatedRecord,
                        "payload is not a multiple of the 9-byte record size");
    }

    EventStream stream;
    stream.geometry = {w, h};
    const std::size_t n = payload / kBinaryRecordSize;
    stream.events.reserve(n);

    std::uint64_t prev_t = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned char* rec = bytes + kBinaryHeaderSize + i * kBinaryRecordSize;
        const std::uint64_t t = load_u32le(rec);
        const int x = load_u16le(rec + 4);
        const int y = load_u16le(rec + 6);
        const unsigned char pol = rec[8];
        if (pol > 1) {
            throw DataError(Errc::BadPolarityByte, "polarity byte > 1", i + 1);
        }
        if (!stream.geometry.contains(x, y)) {
            throw DataError(Errc::OutOfRange, "event coordinate outside geometry", i + 1);
        }
        if (i > 0 && t < prev_t) {
            throw DataError(Errc::NonMonotonicTime, "timestamp decreased", i + 1);
        }
        prev_t = t;
        stream.events.push_back({t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                                 pol == 1 ? Polarity::Positive : Polarity::Negative});
    }
    return stream;
}

void write_binary(const EventStream& stream, std::ostream& out) {
    std::array<unsigned char, kBinaryHeaderSize> header;
    std::memcpy(header.data(), kBinaryMagic, 4);
    store_u16le(static_cast<std::uint16_t>(stream.geometry.width), header.data() + 4);
    store_u16le(static_cast<std::uint16_t>(stream.geometry.height), header.data() + 6);
    out.write(reinterpret_cast<const char*>(header.data()), header.size());

    std::array<unsigned char, kBinaryRecordSize> rec;
    for (const Event& e : stream.events) {
        if (e.t > std::numeric_limits<std::uint32_t>::max()) {
            throw DataError(Errc::TimestampOverflow,
                            "timestamp does not fit the 32-bit binary field");
        }
        store_u32le(static_cast<std::uint32_t>(e.t), rec.data());
        store_u16le(e.x, rec.data() + 4);
        store_u16le(e.y, rec.data() + 6);
        rec[8] = e.polarity == Polarity::Positive ? 1 : 0;
        out.write(reinterpret_cast<const char*>(rec.data()), rec.size());
    }
}

EventStream read_events_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    char magic[4] = {};
    in.read(magic, 4);
    const bool binary = in.gcount() == 4 && std::memcmp(magic, kBinaryMagic, 4) == 0;
    in.clear();
    in.seekg(0);
    return binary ? read_binary(in) : read_text(in);
}

void write_events_file(const EventStream& stream, const std::filesystem::path& path,
                       StreamFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    if (format == StreamFormat::Binary) {
        write_binary(stream, out);
    } else {
        write_text(stream, out);
    }
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

} // namespace evtrack
