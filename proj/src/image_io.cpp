#include "msas/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

namespace msas {

namespace {

struct PngReadCtx {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadCtx() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

struct PngWriteCtx {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteCtx() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

std::uint8_t to_byte(double v) {
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
}

std::uint16_t to_u16(double v) {
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint16_t>(std::floor(v * 65535.0 + 0.5));
}

// Opens and validates the PNG signature; leaves ctx ready for read_info.
void open_png_read(PngReadCtx& ctx, const std::string& path) {
    ctx.fp = std::fopen(path.c_str(), "rb");
    if (!ctx.fp)
        throw std::runtime_error("cannot open file: " + path);
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, ctx.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw std::runtime_error("not a PNG file: " + path);
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    ctx.info = ctx.png ? png_create_info_struct(ctx.png) : nullptr;
    if (!ctx.png || !ctx.info)
        throw std::runtime_error("libpng allocation failure reading " + path);
    png_init_io(ctx.png, ctx.fp);
    png_set_sig_bytes(ctx.png, 8);
}

} // namespace

GrayImage load_gray(const std::string& path) {
    PngReadCtx ctx;
    GrayImage out;
    std::vector<std::uint8_t> raw;
    std::vector<png_bytep> rows;

    open_png_read(ctx, path);
    if (setjmp(png_jmpbuf(ctx.png)))
        throw std::runtime_error("PNG decode failed: " + path);

    png_read_info(ctx.png, ctx.info);
    const int color_type = png_get_color_type(ctx.png, ctx.info);
    const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    if (color_type != PNG_COLOR_TYPE_GRAY)
        throw std::runtime_error("unsupported PNG (expected single-channel grayscale): " + path);
    if (bit_depth != 8 && bit_depth != 16)
        throw std::runtime_error("unsupported grayscale bit depth (expected 8 or 16): " + path);
    if (bit_depth == 16)
        png_set_swap(ctx.png); // PNG stores 16-bit samples big-endian
    png_set_interlace_handling(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    const int w = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
    const int h = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
    const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
    raw.resize(rowbytes * static_cast<std::size_t>(h));
    rows.resize(h);
    for (int y = 0; y < h; ++y)
        rows[y] = raw.data() + rowbytes * static_cast<std::size_t>(y);
    png_read_image(ctx.png, rows.data());
    png_read_end(ctx.png, nullptr);

    out = GrayImage(w, h);
    if (bit_depth == 8) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                out.at(x, y) = rows[y][x] / 255.0;
    } else {
        for (int y = 0; y < h; ++y) {
            const auto* row16 = reinterpret_cast<const std::uint16_t*>(rows[y]);
            for (int x = 0; x < w; ++x)
                out.at(x, y) = row16[x] / 65535.0;
        }
    }
    return out;
}

RgbImage load_rgb(const std::string& path) {
    PngReadCtx ctx;
    RgbImage out;
    std::vector<std::uint8_t> raw;
    std::vector<png_bytep> rows;

    open_png_read(ctx, path);
    if (setjmp(png_jmpbuf(ctx.png)))
        throw std::runtime_error("PNG decode failed: " + path);

    png_read_info(ctx.png, ctx.info);
    const int color_type = png_get_color_type(ctx.png, ctx.info);
    const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    if (color_type != PNG_COLOR_TYPE_RGB && color_type != PNG_COLOR_TYPE_RGB_ALPHA)
        throw std::runtime_error("unsupported PNG (expected RGB): " + path);
    if (bit_depth != 8)
        throw std::runtime_error("unsupported RGB bit depth (expected 8): " + path);
    if (color_type == PNG_COLOR_TYPE_RGB_ALPHA)
        png_set_strip_alpha(ctx.png);
    png_set_interlace_handling(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    const int w = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
    const int h = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
    const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
    raw.resize(rowbytes * static_cast<std::size_t>(h));
    rows.resize(h);
    for (int y = 0; y < h; ++y)
        rows[y] = raw.data() + rowbytes * static_cast<std::size_t>(y);
    png_read_image(ctx.png, rows.data());
    png_read_end(ctx.png, nullptr);

    out = RgbImage(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = {rows[y][3 * x] / 255.0, rows[y][3 * x + 1] / 255.0,
                            rows[y][3 * x + 2] / 255.0};
    return out;
}

void save_rgb(const RgbImage& img, const std::string& path) {
    PngWriteCtx ctx;
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(img.width) * img.height * 3);
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = raw.data() + static_cast<std::size_t>(y) * img.width * 3;
        for (int x = 0; x < img.width; ++x) {
            const RgbPixel& p = img.at(x, y);
            rows[y][3 * x] = to_byte(p.r);
            rows[y][3 * x + 1] = to_byte(p.g);
            rows[y][3 * x + 2] = to_byte(p.b);
        }
    }

    ctx.fp = std::fopen(path.c_str(), "wb");
    if (!ctx.fp)
        throw std::runtime_error("cannot write file: " + path);
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    ctx.info = ctx.png ? png_create_info_struct(ctx.png) : nullptr;
    if (!ctx.png || !ctx.info)
        throw std::runtime_error("libpng allocation failure writing " + path);
    if (setjmp(png_jmpbuf(ctx.png)))
        throw std::runtime_error("PNG encode failed: " + path);

    png_init_io(ctx.png, ctx.fp);
    png_set_IHDR(ctx.png, ctx.info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    png_write_image(ctx.png, rows.data());
    png_write_end(ctx.png, nullptr);
}

namespace {

void save_gray_impl(const GrayImage& img, const std::string& path, int bit_depth) {
    PngWriteCtx ctx;
    const std::size_t bpp = bit_depth / 8;
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(img.width) * img.height * bpp);
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = raw.data() + static_cast<std::size_t>(y) * img.width * bpp;
        if (bit_depth == 8) {
            for (int x = 0; x < img.width; ++x)
                rows[y][x] = to_byte(img.at(x, y));
        } else {
            auto* row16 = reinterpret_cast<std::uint16_t*>(rows[y]);
            for (int x = 0; x < img.width; ++x)
                row16[x] = to_u16(img.at(x, y));
        }
    }

    ctx.fp = std::fopen(path.c_str(), "wb");
    if (!ctx.fp)
        throw std::runtime_error("cannot write file: " + path);
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    ctx.info = ctx.png ? png_create_info_struct(ctx.png) : nullptr;
    if (!ctx.png || !ctx.info)
        throw std::runtime_error("libpng allocation failure writing " + path);
    if (setjmp(png_jmpbuf(ctx.png)))
        throw std::runtime_error("PNG encode failed: " + path);

    png_init_io(ctx.png, ctx.fp);
    png_set_IHDR(ctx.png, ctx.info, img.width, img.height, bit_depth, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    if (bit_depth == 16)
        png_set_swap(ctx.png);
    png_write_image(ctx.png, rows.data());
    png_write_end(ctx.png, nullptr);
}

} // namespace

void save_gray8(const GrayImage& img, const std::string& path) {
    save_gray_impl(img, path, 8);
}

void save_gray16(const GrayImage& img, const std::string& path) {
    save_gray_impl(img, path, 16);
}

} // namespace msas
