#include "core/audio/manifest.hpp"

#include "core/error.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace nws::audio {

const char* split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::dev: return "dev";
        case Split::test: return "test";
    }
    return "?";
}

Split parse_split(const std::string& s) {
    if (s == "train") return Split::train;
    if (s == "dev") return Split::dev;
    if (s == "test") return Split::test;
    fail(ErrKind::format, "unknown split '%s' (expected train, dev or test)", s.c_str());
}

std::vector<const ManifestEntry*> Manifest::split_entries(Split s) const {
    std::vector<const ManifestEntry*> out;
    for (const auto& e : entries)
        if (e.split == s) out.push_back(&e);
    return out;
}

Manifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::io, "cannot open manifest: %s", path.c_str());
    const fs::path base = fs::path(path).parent_path();

    Manifest m;
    std::set<std::string> train_pieces, test_pieces;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields.size() != 5)
            fail(ErrKind::format, "%s:%zu: expected 5 tab-separated fields, got %zu",
                 path.c_str(), line_no, fields.size());

        ManifestEntry e;
        auto resolve = [&](const std::string& p) {
            if (p.empty())
                fail(ErrKind::format, "%s:%zu: empty path field", path.c_str(), line_no);
            fs::path fp(p);
            return fp.is_absolute() ? fp.string() : (base / fp).string();
        };
        e.audio_path = resolve(fields[0]);
        e.f0_path = resolve(fields[1]);
        e.instrument = fields[2];
        e.piece_id = fields[3];
        if (e.instrument.empty() || e.piece_id.empty())
            fail(ErrKind::format, "%s:%zu: empty instrument or piece_id", path.c_str(), line_no);
        try {
            e.split = parse_split(fields[4]);
        } catch (const Error& err) {
            fail(ErrKind::format, "%s:%zu: %s", path.c_str(), line_no, err.what());
        }

        if (e.split == Split::train) train_pieces.insert(e.piece_id);
        if (e.split == Split::test) test_pieces.insert(e.piece_id);
        m.entries.push_back(std::move(e));
    }
    if (m.entries.empty())
        fail(ErrKind::format, "%s: manifest has no entries", path.c_str());

    for (const auto& piece : train_pieces)
        if (test_pieces.count(piece))
            fail(ErrKind::format, "%s: piece '%s' appears in both train and test splits",
                 path.c_str(), piece.c_str());
    return m;
}

void write_manifest(const Manifest& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrKind::io, "cannot write manifest: %s", path.c_str());
    for (const auto& e : m.entries) {
        out << e.audio_path << '\t' << e.f0_path << '\t' << e.instrument << '\t' << e.piece_id
            << '\t' << split_name(e.split) << '\n';
    }
    if (!out) fail(ErrKind::io, "short write: %s", path.c_str());
}

} // namespace nws::audio
