#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "opplod/error.hpp"
#include "opplod/frame.hpp"
#include "opplod/pipeline.hpp" // ResponseRecord

namespace opplod::io {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// PGM (binary P5, maxval 255)
// ---------------------------------------------------------------------------

namespace detail {

inline int pgm_next_token(std::istream& in, std::string& token) {
    token.clear();
    int c = in.get();
    while (c != EOF) {
        if (c == '#') { // comment runs to end of line
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    return c;
}

inline long parse_pgm_int(const std::string& tok, const std::string& path, std::streampos at) {
    if (tok.empty() || tok.size() > 7 ||
        tok.find_first_not_of("0123456789") != std::string::npos)
        raise(ErrorCode::FormatError, path + ": malformed PGM header at byte offset " +
                                          std::to_string(static_cast<long>(at)));
    return std::stol(tok);
}

} // namespace detail

inline Frame load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::InvalidInput, "cannot open '" + path + "'");

    std::string tok;
    detail::pgm_next_token(in, tok);
    if (tok != "P5")
        raise(ErrorCode::FormatError, path + ": not a binary PGM (P5) file at byte offset 0");
    detail::pgm_next_token(in, tok);
    const long width = detail::parse_pgm_int(tok, path, in.tellg());
    detail::pgm_next_token(in, tok);
    const long height = detail::parse_pgm_int(tok, path, in.tellg());
    detail::pgm_next_token(in, tok);
    const long maxval = detail::parse_pgm_int(tok, path, in.tellg());
    if (maxval != 255)
        raise(ErrorCode::FormatError,
              path + ": PGM maxval must be 255, got " + std::to_string(maxval));
    if (width < 1 || height < 1)
        raise(ErrorCode::FormatError, path + ": PGM with empty dimensions");

    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(width) * height);
    const std::streampos payload_at = in.tellg();
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
        raise(ErrorCode::FormatError,
              path + ": short PGM payload at byte offset " +
                  std::to_string(static_cast<long>(payload_at) + in.gcount()));

    Frame f(static_cast<int>(width), static_cast<int>(height));
    for (std::size_t i = 0; i < bytes.size(); ++i)
        f.data[i] = bytes[i] / 255.0;
    return f;
}

inline void save_pgm(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    std::vector<std::uint8_t> bytes(frame.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const double v = std::clamp(frame.data[i], 0.0, 1.0);
        bytes[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

inline std::string frame_file_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%06d.pgm", index);
    return buf;
}

// ---------------------------------------------------------------------------
// Sequences: a directory of frame_%06d.pgm files, or a single .raw dump with
// an 8-byte header (width u32 LE, height u32 LE) followed by w*h-byte frames.
// ---------------------------------------------------------------------------

namespace detail {

inline FrameSequence load_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::InvalidInput, "cannot open '" + path + "'");
    std::uint8_t header[8];
    in.read(reinterpret_cast<char*>(header), 8);
    if (in.gcount() != 8)
        raise(ErrorCode::FormatError,
              path + ": short raw header at byte offset " + std::to_string(in.gcount()));
    const std::uint32_t width = static_cast<std::uint32_t>(header[0]) |
                                static_cast<std::uint32_t>(header[1]) << 8 |
                                static_cast<std::uint32_t>(header[2]) << 16 |
                                static_cast<std::uint32_t>(header[3]) << 24;
    const std::uint32_t height = static_cast<std::uint32_t>(header[4]) |
                                 static_cast<std::uint32_t>(header[5]) << 8 |
                                 static_cast<std::uint32_t>(header[6]) << 16 |
                                 static_cast<std::uint32_t>(header[7]) << 24;
    if (width < 1 || height < 1 || width > 1000000 || height > 1000000)
        raise(ErrorCode::FormatError, path + ": raw header dimensions out of range");

    const std::size_t frame_bytes = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> buf(frame_bytes);
    FrameSequence seq;
    long offset = 8;
    while (true) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(frame_bytes));
        const std::streamsize got = in.gcount();
        if (got == 0) break;
        if (got != static_cast<std::streamsize>(frame_bytes))
            raise(ErrorCode::FormatError,
                  path + ": truncated raw frame at byte offset " + std::to_string(offset + got));
        Frame f(static_cast<int>(width), static_cast<int>(height), 0.0,
                static_cast<int>(seq.size()));
        for (std::size_t i = 0; i < frame_bytes; ++i)
            f.data[i] = buf[i] / 255.0;
        seq.push_back(std::move(f));
        offset += static_cast<long>(frame_bytes);
    }
    if (seq.empty())
        raise(ErrorCode::FormatError, path + ": raw file holds no frames");
    return seq;
}

} // namespace detail

inline FrameSequence load_sequence(const std::string& path) {
    if (!fs::exists(path))
        raise(ErrorCode::InvalidInput, "input path '" + path + "' does not exist");
    if (fs::is_regular_file(path)) {
        if (fs::path(path).extension() == ".raw") return detail::load_raw(path);
        raise(ErrorCode::InvalidInput,
              "input file '" + path + "' is not a .raw dump (directories hold PGM sequences)");
    }

    std::vector<std::pair<int, fs::path>> numbered;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        // frame_%06d.pgm
        if (name.size() == 16 && name.rfind("frame_", 0) == 0 &&
            name.compare(12, 4, ".pgm") == 0 &&
            name.find_first_not_of("0123456789", 6) == 12) {
            numbered.emplace_back(std::stoi(name.substr(6, 6)), entry.path());
        }
    }
    if (numbered.empty())
        raise(ErrorCode::InvalidInput, "no frame_NNNNNN.pgm files under '" + path + "'");
    std::sort(numbered.begin(), numbered.end());

    FrameSequence seq;
    seq.reserve(numbered.size());
    for (const auto& [num, file] : numbered) {
        Frame f = load_pgm(file.string());
        f.t = static_cast<int>(seq.size());
        if (!seq.empty() && !f.same_dims(seq.front()))
            raise(ErrorCode::InvalidInput,
                  file.string() + ": frame dimensions differ from the rest of the sequence");
        seq.push_back(std::move(f));
    }
    return seq;
}

inline void save_sequence(const FrameSequence& seq, const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) raise(ErrorCode::IoError, "cannot create directory '" + dir + "'");
    for (std::size_t i = 0; i < seq.size(); ++i)
        save_pgm(seq[i], (fs::path(dir) / frame_file_name(static_cast<int>(i))).string());
}

// ---------------------------------------------------------------------------
// CSV results
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Header: t,response_opplod,response_dlgmd,roi_x,roi_y,roi_w,roi_h,warm_up
// Either record list may be empty; missing cells stay empty. LF endings.
inline void save_csv(const std::vector<ResponseRecord>& opplod_records,
                     const std::vector<ResponseRecord>& dlgmd_records,
                     const std::string& path) {
    if (opplod_records.empty() && dlgmd_records.empty())
        raise(ErrorCode::InvalidInput, "save_csv: no records");
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
    out << "t,response_opplod,response_dlgmd,roi_x,roi_y,roi_w,roi_h,warm_up\n";
    const std::size_t rows = std::max(opplod_records.size(), dlgmd_records.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const ResponseRecord* opp = i < opplod_records.size() ? &opplod_records[i] : nullptr;
        const ResponseRecord* dlg = i < dlgmd_records.size() ? &dlgmd_records[i] : nullptr;
        const ResponseRecord* any = opp ? opp : dlg;
        out << any->t << ',';
        if (opp) out << format_double(opp->response);
        out << ',';
        if (dlg) out << format_double(dlg->response);
        out << ',';
        if (opp && opp->roi) {
            const Roi& r = *opp->roi;
            out << r.x << ',' << r.y << ',' << r.w << ',' << r.h << ',';
        } else {
            out << ",,,,";
        }
        out << (any->warm_up ? '1' : '0') << '\n';
    }
    if (!out) raise(ErrorCode::IoError, "write failed for '" + path + "'");
}

} // namespace opplod::io
