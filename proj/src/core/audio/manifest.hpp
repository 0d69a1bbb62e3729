#pragma once

#include <string>
#include <vector>

namespace nws::audio {

enum class Split { train, dev, test };

const char* split_name(Split s);
Split parse_split(const std::string& s); // fails on unknown name

struct ManifestEntry {
    std::string audio_path; // resolved against the manifest's directory
    std::string f0_path;
    std::string instrument;
    std::string piece_id;
    Split split = Split::train;
};

struct Manifest {
    std::vector<ManifestEntry> entries;

    std::vector<const ManifestEntry*> split_entries(Split s) const;
};

// Reads a tab-separated manifest: audio_path, f0_path, instrument, piece_id, split.
// Relative paths are resolved against the manifest file's directory. A piece_id
// appearing in both train and test raises an error.
Manifest read_manifest(const std::string& path);

void write_manifest(const Manifest& m, const std::string& path);

} // namespace nws::audio
