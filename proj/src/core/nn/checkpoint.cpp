#include "core/nn/checkpoint.hpp"

#include "core/io_util.hpp"

#include <cstring>

namespace nws::nn {

const char* arch_name(ArchId id) {
    switch (id) {
        case ArchId::nsf: return "nsf";
        case ArchId::wavenet: return "wavenet";
    }
    return "?";
}

ArchId parse_arch(const std::string& name) {
    if (name == "nsf") return ArchId::nsf;
    if (name == "wavenet") return ArchId::wavenet;
    fail(ErrKind::invalid_arg, "unknown architecture '%s' (expected nsf or wavenet)",
         name.c_str());
}

const CheckpointTensor* Checkpoint::find(const std::string& name) const {
    for (const auto& t : tensors)
        if (t.name == name) return &t;
    return nullptr;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    ByteBuf buf;
    buf.put_raw("NWSC", 4);
    buf.put_u32(1); // format version
    buf.put_u8(static_cast<uint8_t>(ckpt.arch));
    buf.put_str(ckpt.profile);
    buf.put_u32(static_cast<uint32_t>(ckpt.tensors.size()));
    for (const auto& t : ckpt.tensors) {
        buf.put_str(t.name);
        buf.put_u32(static_cast<uint32_t>(t.shape.size()));
        for (int d : t.shape) buf.put_u32(static_cast<uint32_t>(d));
        buf.put_raw(t.data.data(), t.data.size() * sizeof(float));
    }
    write_file_bytes(path, buf.bytes());
}

Checkpoint load_checkpoint(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    ByteCursor cur(bytes, path);

    char magic[4];
    cur.raw(magic, 4, "magic");
    if (std::memcmp(magic, "NWSC", 4) != 0)
        fail(ErrKind::format, "%s: not a checkpoint file (bad magic)", path.c_str());
    const uint32_t version = cur.u32("version");
    if (version != 1)
        fail(ErrKind::format, "%s: unsupported checkpoint version %u", path.c_str(), version);

    Checkpoint ckpt;
    const uint8_t arch = cur.u8("arch id");
    if (arch != static_cast<uint8_t>(ArchId::nsf) && arch != static_cast<uint8_t>(ArchId::wavenet))
        fail(ErrKind::format, "%s: unknown arch id %u", path.c_str(), arch);
    ckpt.arch = static_cast<ArchId>(arch);
    ckpt.profile = cur.str("profile name");

    const uint32_t count = cur.u32("tensor count");
    for (uint32_t i = 0; i < count; ++i) {
        CheckpointTensor t;
        t.name = cur.str("tensor table");
        const uint32_t ndim = cur.u32("tensor table");
        std::size_t total = 1;
        for (uint32_t d = 0; d < ndim; ++d) {
            const uint32_t dim = cur.u32("tensor table");
            if (dim == 0 || dim > (1u << 28))
                fail(ErrKind::format, "%s: tensor %s has bad dim %u", path.c_str(),
                     t.name.c_str(), dim);
            t.shape.push_back(static_cast<int>(dim));
            total *= dim;
        }
        t.data.resize(total);
        cur.raw(t.data.data(), total * sizeof(float), "tensor table");
        ckpt.tensors.push_back(std::move(t));
    }
    if (cur.remaining() != 0)
        fail(ErrKind::format, "%s: %zu trailing bytes after tensor table", path.c_str(),
             cur.remaining());
    return ckpt;
}

} // namespace nws::nn
