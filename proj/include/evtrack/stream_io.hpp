#ifndef EVTRACK_STREAM_IO_HPP
#define EVTRACK_STREAM_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "evtrack/event_model.hpp"

namespace evtrack {

/// Binary event log layout:
///   magic "EVT1" | width u16 LE | height u16 LE        (8-byte header)
///   then per event: t u32 LE | x u16 LE | y u16 LE | polarity u8 (0/1)
/// Record size is exactly 9 bytes; file size = 8 + 9 * |events|.
inline constexpr char kBinaryMagic[4] = {'E', 'V', 'T', '1'};
inline constexpr std::size_t kBinaryHeaderSize = 8;
inline constexpr std::size_t kBinaryRecordSize = 9;

/// Text event log: `#` lines are comments, the first content line is
/// `geometry <width> <height>`, every following line is `<t> <x> <y> <p>`
/// with p 0 = negative, 1 = positive.
EventStream read_text(std::istream& in);
void write_text(const EventStream& stream, std::ostream& out);

EventStream read_binary(std::istream& in);
void write_binary(const EventStream& stream, std::ostream& out);

enum class StreamFormat { Text, Binary };

/// Reads either format, picking by the magic bytes.
EventStream read_events_file(const std::filesystem::path& path);
void write_events_file(const EventStream& stream, const std::filesystem::path& path,
                       StreamFormat format);

} // namespace evtrack

#endif // EVTRACK_STREAM_IO_HPP
