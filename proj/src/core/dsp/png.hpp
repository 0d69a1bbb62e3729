#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nws::dsp {

// Writes an 8-bit RGB PNG. pixels is row-major top-to-bottom, 3 bytes per
// pixel, size width*height*3.
void write_png_rgb(const std::string& path, int width, int height,
                   const std::vector<uint8_t>& pixels);

} // namespace nws::dsp
