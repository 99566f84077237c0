// Copyright 2026 The heritage-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <csetjmp>
#include <cstdio>
#include <cmath>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "fmt/format.h"
#include "heritage_forge/asset_validate/asset_validate.hpp"
#include "heritage_forge/errors.hpp"

namespace heritage::assets {

namespace {

constexpr std::uint64_t kMaxDecodedPixels = 100'000'000;

void CheckPixelBudget(std::uint64_t width, std::uint64_t height) {
    if (width * height > kMaxDecodedPixels) {
        throw DecodeError{fmt::format("{}x{} exceeds the decode budget of {} "
                                      "pixels",
                                      width, height, kMaxDecodedPixels)};
    }
}

auto DecodePng(ByteView bytes) -> DecodedImage {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) ==
        0) {
        std::string const message = image.message;
        png_image_free(&image);
        throw DecodeError{"PNG: " + message};
    }
    bool const color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0U;
    bool const alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0U;
    image.format = color ? (alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB)
                         : (alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY);
    try {
        CheckPixelBudget(image.width, image.height);
    } catch (...) {
        png_image_free(&image);
        throw;
    }

    DecodedImage out;
    out.width = image.width;
    out.height = image.height;
    out.channels = PNG_IMAGE_PIXEL_CHANNELS(image.format);
    out.pixels.resize(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, out.pixels.data(), 0,
                              nullptr) == 0) {
        std::string const message = image.message;
        png_image_free(&image);
        throw DecodeError{"PNG: " + message};
    }
    return out;
}

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

extern "C" void OnJpegError(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

extern "C" void OnJpegMessage(j_common_ptr /*cinfo*/) {}

// libjpeg reports errors through longjmp, so this function only touches
// C structs and objects owned by the caller.
auto DecodeJpegInto(ByteView bytes, DecodedImage& out, std::string& error)
    -> bool {
    jpeg_decompress_struct cinfo{};
    JpegErrorManager jerr{};
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = OnJpegError;
    jerr.pub.output_message = OnJpegMessage;

    if (setjmp(jerr.jump) != 0) {
        error.assign(jerr.message);
        jpeg_destroy_decompress(&cinfo);
        return false;
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    if (cinfo.num_components == 1) {
        cinfo.out_color_space = JCS_GRAYSCALE;
    }
    else if (cinfo.num_components == 3) {
        cinfo.out_color_space = JCS_RGB;
    }
    else {
        error = fmt::format("{}-component JPEG is not supported",
                            cinfo.num_components);
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    if (static_cast<std::uint64_t>(cinfo.image_width) * cinfo.image_height >
        kMaxDecodedPixels) {
        error = "image exceeds the decode budget";
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_start_decompress(&cinfo);

    out.width = cinfo.output_width;
    out.height = cinfo.output_height;
    out.channels = static_cast<std::uint32_t>(cinfo.output_components);
    std::size_t const stride = static_cast<std::size_t>(out.width) * out.channels;
    out.pixels.resize(stride * out.height);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.pixels.data() + stride * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

auto DecodeJpeg(ByteView bytes) -> DecodedImage {
    DecodedImage out;
    std::string error;
    if (!DecodeJpegInto(bytes, out, error)) {
        throw DecodeError{"JPEG: " + error};
    }
    return out;
}

struct Tap {
    std::uint32_t index;
    double weight;
};

// Exact box weights: output cell i covers source [i*s, (i+1)*s).
auto BoxTaps(std::uint32_t source, std::uint32_t target)
    -> std::vector<std::vector<Tap>> {
    std::vector<std::vector<Tap>> taps(target);
    double const scale = static_cast<double>(source) / target;
    for (std::uint32_t i = 0; i < target; ++i) {
        double const lo = i * scale;
        double const hi = (i + 1) * scale;
        auto first = static_cast<std::uint32_t>(std::floor(lo));
        auto last = std::min(source, static_cast<std::uint32_t>(std::ceil(hi)));
        double total = 0.0;
        for (std::uint32_t s = first; s < last; ++s) {
            double const overlap =
                std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
            if (overlap > 0.0) {
                taps[i].push_back(Tap{s, overlap});
                total += overlap;
            }
        }
        for (auto& t : taps[i]) {
            t.weight /= total;
        }
    }
    return taps;
}

}  // namespace

auto DecodeImage(ByteView bytes) -> DecodedImage {
    ImageInfo info{};
    try {
        info = ProbeImage(bytes);
    } catch (ImageError const& e) {
        throw DecodeError{e.what()};
    }
    return info.format == ImageFormat::kPng ? DecodePng(bytes)
                                            : DecodeJpeg(bytes);
}

auto EncodePng(DecodedImage const& image) -> Bytes {
    png_image desc{};
    desc.version = PNG_IMAGE_VERSION;
    desc.width = image.width;
    desc.height = image.height;
    switch (image.channels) {
        case 1:
            desc.format = PNG_FORMAT_GRAY;
            break;
        case 2:
            desc.format = PNG_FORMAT_GA;
            break;
        case 3:
            desc.format = PNG_FORMAT_RGB;
            break;
        case 4:
            desc.format = PNG_FORMAT_RGBA;
            break;
        default:
            throw DecodeError{
                fmt::format("cannot encode {} channels", image.channels)};
    }
    png_alloc_size_t size = 0;
    if (png_image_write_to_memory(&desc, nullptr, &size, 0,
                                  image.pixels.data(), 0, nullptr) == 0) {
        throw DecodeError{std::string{"PNG encode: "} + desc.message};
    }
    Bytes out(size);
    if (png_image_write_to_memory(&desc, out.data(), &size, 0,
                                  image.pixels.data(), 0, nullptr) == 0) {
        throw DecodeError{std::string{"PNG encode: "} + desc.message};
    }
    out.resize(size);
    return out;
}

auto PreviewExtent(Extent source, std::uint32_t max_dim) noexcept -> Extent {
    auto const longest = std::max(source.width, source.height);
    if (longest <= max_dim || longest == 0) {
        return source;
    }
    // round(other * max_dim / longest), halves rounding up, integer exact.
    auto const scaled = [&](std::uint32_t other) {
        std::uint64_t const num = 2ULL * other * max_dim + longest;
        return std::max<std::uint32_t>(
            1, static_cast<std::uint32_t>(num / (2ULL * longest)));
    };
    if (source.width >= source.height) {
        return Extent{max_dim, scaled(source.height)};
    }
    return Extent{scaled(source.width), max_dim};
}

auto BoxDownsample(DecodedImage const& source, Extent target) -> DecodedImage {
    if (target.width == 0 || target.height == 0 ||
        target.width > source.width || target.height > source.height) {
        throw DecodeError{fmt::format("cannot box-resample {}x{} to {}x{}",
                                      source.width, source.height,
                                      target.width, target.height)};
    }
    auto const channels = source.channels;
    auto const htaps = BoxTaps(source.width, target.width);
    auto const vtaps = BoxTaps(source.height, target.height);
    std::size_t const src_stride =
        static_cast<std::size_t>(source.width) * channels;
    std::size_t const dst_stride =
        static_cast<std::size_t>(target.width) * channels;

    DecodedImage out{target.width, target.height, channels, {}};
    out.pixels.resize(dst_stride * target.height);
    std::vector<double> row(dst_stride);
    std::vector<double> acc(dst_stride);
    for (std::uint32_t oy = 0; oy < target.height; ++oy) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (auto const& vt : vtaps[oy]) {
            auto const* src = source.pixels.data() + src_stride * vt.index;
            for (std::uint32_t ox = 0; ox < target.width; ++ox) {
                for (std::uint32_t c = 0; c < channels; ++c) {
                    double sum = 0.0;
                    for (auto const& ht : htaps[ox]) {
                        sum += ht.weight * src[ht.index * channels + c];
                    }
                    row[ox * channels + c] = sum;
                }
            }
            for (std::size_t k = 0; k < dst_stride; ++k) {
                acc[k] += vt.weight * row[k];
            }
        }
        auto* dst = out.pixels.data() + dst_stride * oy;
        for (std::size_t k = 0; k < dst_stride; ++k) {
            dst[k] = static_cast<std::uint8_t>(
                std::clamp(std::floor(acc[k] + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

auto DerivePreview(ByteView bytes, std::uint32_t max_dim) -> Bytes {
    if (max_dim == 0) {
        throw DecodeError{"preview size must be positive"};
    }
    ImageInfo info{};
    try {
        info = ProbeImage(bytes);
    } catch (ImageError const& e) {
        throw DecodeError{e.what()};
    }
    auto const target = PreviewExtent({info.width, info.height}, max_dim);
    if (target == Extent{info.width, info.height}) {
        return Bytes(bytes.begin(), bytes.end());
    }
    auto const decoded = DecodeImage(bytes);
    if (decoded.width != info.width || decoded.height != info.height) {
        throw DecodeError{"decoded size disagrees with the header"};
    }
    return EncodePng(BoxDownsample(decoded, target));
}

}  // namespace heritage::assets
