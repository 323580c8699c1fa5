#include "xvc/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace xvc {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

// Skips PPM whitespace and '#' comment lines, then parses one decimal field.
int read_ppm_int(std::istream& in, const std::filesystem::path& path) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) fail(path, "malformed PPM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 30) fail(path, "PPM header field out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

bool wildcard_match(std::string_view pattern, std::string_view name) {
    // Iterative '*' matcher; no other metacharacters.
    std::size_t p = 0, n = 0;
    std::size_t star = std::string_view::npos, backtrack = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            backtrack = n;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            n = ++backtrack;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void append_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    append_u64(out, bits);
}

struct ByteReader {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > bytes.size()) throw std::runtime_error("sparse container: truncated payload");
    }
    std::uint8_t u8() {
        need(1);
        return bytes[pos++];
    }
    std::uint16_t u16() {
        need(2);
        const std::uint16_t v = static_cast<std::uint16_t>(bytes[pos] | (bytes[pos + 1] << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }
};

}  // namespace

DenseFrame read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '6') fail(path, "not a binary PPM (P6)");
    const int width = read_ppm_int(in, path);
    const int height = read_ppm_int(in, path);
    const int maxval = read_ppm_int(in, path);
    if (width <= 0 || height <= 0 || width > 0xffff || height > 0xffff) {
        fail(path, "unsupported dimensions");
    }
    if (maxval != 255) fail(path, "unsupported maxval (must be 255)");
    in.get();  // single whitespace after maxval
    DenseFrame frame(width, height);
    in.read(reinterpret_cast<char*>(frame.data.data()),
            static_cast<std::streamsize>(frame.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(frame.data.size())) {
        fail(path, "truncated pixel data");
    }
    return frame;
}

void write_ppm(const DenseFrame& frame, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot create");
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.data.data()),
              static_cast<std::streamsize>(frame.data.size()));
    if (!out) fail(path, "write failed");
}

std::vector<DenseFrame> read_image_sequence(const std::filesystem::path& dir,
                                            std::string_view pattern) {
    if (!std::filesystem::is_directory(dir)) fail(dir, "not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && wildcard_match(pattern, entry.path().filename().string())) {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) fail(dir, "no frames match pattern '" + std::string(pattern) + "'");
    std::sort(files.begin(), files.end());

    std::vector<DenseFrame> frames;
    frames.reserve(files.size());
    for (const auto& file : files) {
        DenseFrame frame = read_ppm(file);
        if (!frames.empty() &&
            (frame.width != frames.front().width || frame.height != frames.front().height)) {
            fail(file, "dimensions differ from first frame");
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

void write_image_sequence(const std::vector<DenseFrame>& frames,
                          const std::filesystem::path& dir, std::string_view prefix) {
    std::filesystem::create_directories(dir);
    char name[64];
    for (std::size_t i = 0; i < frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "%s%06zu.ppm", std::string(prefix).c_str(), i);
        write_ppm(frames[i], dir / name);
    }
}

std::vector<std::uint8_t> encode_sparse(const SparseVideo& video) {
    if (video.width <= 0 || video.height <= 0 || video.width > 0xffff || video.height > 0xffff) {
        throw std::invalid_argument("encode_sparse: dimensions must be in [1, 65535]");
    }
    std::vector<std::uint8_t> out;
    out.reserve(30 + video.frames.size() * 4);
    for (char c : {'X', 'V', 'C', '1'}) out.push_back(static_cast<std::uint8_t>(c));
    append_u16(out, kSparseContainerVersion);
    append_u16(out, static_cast<std::uint16_t>(video.width));
    append_u16(out, static_cast<std::uint16_t>(video.height));
    append_u32(out, static_cast<std::uint32_t>(video.frames.size()));
    append_f64(out, video.fraction);
    append_u64(out, video.seed);

    for (const SparseFrame& frame : video.frames) {
        std::vector<Sample> sorted = frame.samples;
        std::sort(sorted.begin(), sorted.end(), [](const Sample& a, const Sample& b) {
            return a.y != b.y ? a.y < b.y : a.x < b.x;
        });
        append_u32(out, static_cast<std::uint32_t>(sorted.size()));
        for (const Sample& s : sorted) {
            append_u16(out, s.x);
            append_u16(out, s.y);
            out.push_back(s.r);
            out.push_back(s.g);
            out.push_back(s.b);
        }
    }
    return out;
}

SparseVideo decode_sparse(const std::vector<std::uint8_t>& bytes) {
    ByteReader in{bytes};
    in.need(4);
    if (bytes[0] != 'X' || bytes[1] != 'V' || bytes[2] != 'C' || bytes[3] != '1') {
        throw std::runtime_error("sparse container: bad magic");
    }
    in.pos = 4;
    const std::uint16_t version = in.u16();
    if (version != kSparseContainerVersion) {
        throw std::runtime_error("sparse container: unsupported version " + std::to_string(version));
    }
    SparseVideo video;
    video.width = in.u16();
    video.height = in.u16();
    const std::uint32_t frame_count = in.u32();
    video.fraction = in.f64();
    video.seed = in.u64();
    if (video.width == 0 || video.height == 0) {
        throw std::runtime_error("sparse container: zero dimensions");
    }
    if (!(video.fraction > 0.0) || video.fraction > 1.0) {
        throw std::runtime_error("sparse container: fraction out of (0, 1]");
    }

    video.frames.reserve(frame_count);
    for (std::uint32_t f = 0; f < frame_count; ++f) {
        const std::uint32_t count = in.u32();
        SparseFrame frame;
        frame.width = video.width;
        frame.height = video.height;
        frame.samples.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            Sample s;
            s.x = in.u16();
            s.y = in.u16();
            s.r = in.u8();
            s.g = in.u8();
            s.b = in.u8();
            if (s.x >= video.width || s.y >= video.height) {
                throw std::runtime_error("sparse container: sample outside frame in frame " +
                                         std::to_string(f));
            }
            if (!frame.samples.empty()) {
                const Sample& prev = frame.samples.back();
                if (s.y < prev.y || (s.y == prev.y && s.x <= prev.x)) {
                    throw std::runtime_error(
                        "sparse container: unsorted or duplicate coordinates in frame " +
                        std::to_string(f));
                }
            }
            frame.samples.push_back(s);
        }
        video.frames.push_back(std::move(frame));
    }
    if (in.pos != bytes.size()) {
        throw std::runtime_error("sparse container: trailing bytes after payload");
    }
    return video;
}

std::uint64_t write_sparse(const SparseVideo& video, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_sparse(video);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot create");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(path, "write failed");
    return bytes.size();
}

SparseVideo read_sparse(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode_sparse(bytes);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

}  // namespace xvc
