#pragma once

#include "core/error.hpp"
#include "core/nn/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nws::nn {

enum class ArchId : uint8_t { nsf = 1, wavenet = 2 };

const char* arch_name(ArchId id);
ArchId parse_arch(const std::string& name); // accepts "nsf" or "wavenet"

struct CheckpointTensor {
    std::string name;
    std::vector<int> shape;
    std::vector<float> data;
};

// On-disk model weights: magic "NWSC", u32 version 1, u8 arch id, profile
// name, then the named tensor table as float32 little-endian.
struct Checkpoint {
    ArchId arch = ArchId::nsf;
    std::string profile;
    std::vector<CheckpointTensor> tensors;

    const CheckpointTensor* find(const std::string& name) const;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

template <class T>
Checkpoint checkpoint_from_params(ArchId arch, const std::string& profile,
                                  const std::vector<Param<T>*>& params) {
    Checkpoint ckpt;
    ckpt.arch = arch;
    ckpt.profile = profile;
    for (const auto* p : params) {
        CheckpointTensor t;
        t.name = p->name;
        t.shape = p->shape;
        t.data.reserve(p->size());
        for (const T v : p->w) t.data.push_back(static_cast<float>(v));
        ckpt.tensors.push_back(std::move(t));
    }
    return ckpt;
}

// Fills params by tensor name; every param must be present with the exact
// shape, and the checkpoint may not carry unknown tensors.
template <class T>
void load_params_from_checkpoint(const Checkpoint& ckpt,
                                 const std::vector<Param<T>*>& params) {
    if (ckpt.tensors.size() != params.size())
        fail(ErrKind::mismatch, "checkpoint has %zu tensors, model expects %zu",
             ckpt.tensors.size(), params.size());
    for (auto* p : params) {
        const CheckpointTensor* t = ckpt.find(p->name);
        if (!t) fail(ErrKind::mismatch, "checkpoint is missing tensor %s", p->name.c_str());
        if (t->shape != p->shape)
            fail(ErrKind::mismatch, "tensor %s shape mismatch", p->name.c_str());
        for (std::size_t i = 0; i < p->size(); ++i) p->w[i] = static_cast<T>(t->data[i]);
    }
}

} // namespace nws::nn
