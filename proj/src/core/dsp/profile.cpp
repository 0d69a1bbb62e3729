#include "core/dsp/profile.hpp"

#include "core/error.hpp"

namespace nws::dsp {

const FeatureProfile& profile_ts() {
    static const FeatureProfile p{"TS", 24000, 120, 1024, 1024, 80, 0.0, 12000.0};
    return p;
}

const FeatureProfile& profile_ft() {
    static const FeatureProfile p{"FT", 22050, 256, 1024, 1024, 80, 0.0, 8000.0};
    return p;
}

const FeatureProfile& parse_profile(const std::string& name) {
    if (name == "TS") return profile_ts();
    if (name == "FT") return profile_ft();
    fail(ErrKind::invalid_arg, "unknown feature profile '%s' (expected TS or FT)", name.c_str());
}

} // namespace nws::dsp
