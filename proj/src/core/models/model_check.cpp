#include "core/models/model_check.hpp"

#include "core/models/nsf.hpp"
#include "core/models/wavenet.hpp"
#include "core/nn/layers.hpp"
#include "core/rng.hpp"

namespace nws::models {

namespace {
constexpr int kFrames = 6;

std::vector<float> check_f0(int frames) {
    // Mix of voiced and unvoiced frames, well under the tiny Nyquist.
    std::vector<float> f0(static_cast<std::size_t>(frames));
    const float pattern[] = {110.0f, 130.0f, 0.0f, 95.0f, 0.0f, 160.0f};
    for (int t = 0; t < frames; ++t) f0[static_cast<std::size_t>(t)] = pattern[t % 6];
    return f0;
}

nn::Seq<double> random_mel(int frames, int dims, Rng& rng) {
    nn::Seq<double> mel(frames, dims);
    for (auto& v : mel.v) v = rng.uniform(-1.0, 1.0);
    return mel;
}
} // namespace

nn::GradCheckReport check_nsf_gradients(uint64_t seed, long max_per_block) {
    const NsfConfig cfg = NsfConfig::tiny();
    NsfModel<double> model(cfg);
    Rng rng(seed);
    model.init(rng);

    const nn::Seq<double> mel = random_mel(kFrames, cfg.mel_dims, rng);
    const std::vector<float> f0 = check_f0(kFrames);
    std::vector<float> f0_samples;
    for (const float v : f0)
        f0_samples.insert(f0_samples.end(), static_cast<std::size_t>(cfg.hop), v);
    const Excitation exc = source_excitation(f0_samples, cfg.sample_rate, seed + 1);

    // Probe loss: fixed random weighting of the output samples. Linear in the
    // output, so it exercises every model gradient without adding a loss of
    // its own.
    const std::size_t n = static_cast<std::size_t>(kFrames) * cfg.hop;
    std::vector<double> probe(n);
    for (auto& c : probe) c = rng.uniform(-1.0, 1.0);

    nn::DiffProblem<double> prob;
    prob.params = model.params();
    prob.loss = [&] {
        const std::vector<double> y = model.forward(mel, f0, exc);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += probe[i] * y[i];
        return acc;
    };
    prob.grad = [&] {
        for (auto* p : prob.params) p->zero_grad();
        model.forward(mel, f0, exc);
        model.backward(probe);
    };
    return nn::grad_check(prob, 1e-5, max_per_block);
}

nn::GradCheckReport check_wavenet_gradients(uint64_t seed, long max_per_block) {
    const WaveNetConfig cfg = WaveNetConfig::tiny();
    WaveNetModel<double> model(cfg);
    Rng rng(seed);
    model.init(rng);

    const nn::Seq<double> mel = random_mel(kFrames, cfg.mel_dims, rng);
    const std::vector<float> f0 = check_f0(kFrames);
    const std::size_t n = static_cast<std::size_t>(kFrames) * cfg.hop;
    std::vector<int> codes(n);
    for (auto& c : codes) c = static_cast<int>(rng.uniform() * cfg.quant_levels) % cfg.quant_levels;

    nn::DiffProblem<double> prob;
    prob.params = model.params();
    prob.loss = [&] {
        const nn::Seq<double> logits = model.teacher_forced(mel, f0, codes);
        nn::Seq<double> grad;
        return nn::softmax_cross_entropy(logits, codes, grad);
    };
    prob.grad = [&] {
        for (auto* p : prob.params) p->zero_grad();
        const nn::Seq<double> logits = model.teacher_forced(mel, f0, codes);
        nn::Seq<double> grad;
        nn::softmax_cross_entropy(logits, codes, grad);
        model.backward(grad);
    };
    return nn::grad_check(prob, 1e-5, max_per_block);
}

} // namespace nws::models
