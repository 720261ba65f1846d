#include "mitensor/image_io.hpp"

#include "mitensor/errors.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include <jpeglib.h>
#include <png.h>

namespace mitensor {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

double luma(unsigned char r, unsigned char g, unsigned char b) {
    double v = kLumaR * r + kLumaG * g + kLumaB * b;
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    return v;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// ---------------------------------------------------------------- PNG

void png_error_fn(png_structp png, png_const_charp msg) {
    (void)msg;
    std::longjmp(*static_cast<std::jmp_buf*>(png_get_error_ptr(png)), 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

GrayImage decode_png(std::FILE* file, const std::string& name) {
    std::jmp_buf jump;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &jump, png_error_fn,
                                             png_warning_fn);
    if (!png) throw Error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("libpng init failed");
    }

    std::vector<png_byte> storage;
    std::vector<png_bytep> row_ptrs;
    if (setjmp(jump)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw CorruptImage("corrupt PNG: " + name);
    }

    png_init_io(png, file);
    png_read_info(png, info);

    // Normalize everything to 8-bit gray or 8-bit RGB.
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    const int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw CorruptImage("unexpected PNG channel count in " + name);
    }

    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    storage.resize(stride * height);
    row_ptrs.resize(height);
    for (png_uint_32 p = 0; p < height; ++p) row_ptrs[p] = storage.data() + p * stride;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage image(static_cast<int>(width), static_cast<int>(height));
    double* out = image.pixels.data();
    for (png_uint_32 p = 0; p < height; ++p) {
        const png_byte* row = storage.data() + p * stride;
        if (channels == 1) {
            for (png_uint_32 q = 0; q < width; ++q) *out++ = row[q];
        } else {
            for (png_uint_32 q = 0; q < width; ++q)
                *out++ = luma(row[3 * q], row[3 * q + 1], row[3 * q + 2]);
        }
    }
    return image;
}

// ---------------------------------------------------------------- JPEG

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    std::longjmp(reinterpret_cast<JpegErrorMgr*>(cinfo->err)->jump, 1);
}

// Counts corrupt-data warnings like the default handler but stays quiet.
void jpeg_emit_silent(j_common_ptr cinfo, int msg_level) {
    if (msg_level < 0) cinfo->err->num_warnings++;
}

GrayImage decode_jpeg(std::FILE* file, const std::string& name) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    err.pub.emit_message = jpeg_emit_silent;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw CorruptImage("corrupt JPEG: " + name);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, file);
    jpeg_read_header(&cinfo, TRUE);

    const bool gray_source = cinfo.jpeg_color_space == JCS_GRAYSCALE;
    cinfo.out_color_space = gray_source ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int width = static_cast<int>(cinfo.output_width);
    const int height = static_cast<int>(cinfo.output_height);
    const int channels = cinfo.output_components;
    if (channels != 1 && channels != 3) {
        jpeg_abort_decompress(&cinfo);
        jpeg_destroy_decompress(&cinfo);
        throw CorruptImage("unexpected JPEG channel count in " + name);
    }

    std::vector<unsigned char> row(static_cast<std::size_t>(width) * channels);
    GrayImage image(width, height);
    double* out = image.pixels.data();
    while (cinfo.output_scanline < cinfo.output_height) {
        unsigned char* rows[1] = {row.data()};
        jpeg_read_scanlines(&cinfo, rows, 1);
        if (channels == 1) {
            for (int q = 0; q < width; ++q) *out++ = row[q];
        } else {
            for (int q = 0; q < width; ++q)
                *out++ = luma(row[3 * q], row[3 * q + 1], row[3 * q + 2]);
        }
    }
    jpeg_finish_decompress(&cinfo);
    const long warnings = err.pub.num_warnings;
    jpeg_destroy_decompress(&cinfo);
    // libjpeg papers over truncated streams with a warning; treat as corrupt.
    if (warnings > 0) throw CorruptImage("corrupt JPEG: " + name);
    return image;
}

} // namespace

GrayImage load_image(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw FileNotReadable("cannot open image: " + path.string());

    unsigned char magic[8] = {};
    const std::size_t got = std::fread(magic, 1, sizeof magic, file.get());
    std::rewind(file.get());

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (got >= 8 && std::memcmp(magic, png_sig, 8) == 0)
        return decode_png(file.get(), path.string());
    if (got >= 2 && magic[0] == 0xFF && magic[1] == 0xD8)
        return decode_jpeg(file.get(), path.string());
    throw UnsupportedFormat("not a PNG or JPEG file: " + path.string());
}

void write_png_gray8(const std::filesystem::path& path, const GrayImage& image) {
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw FileNotReadable("cannot open for writing: " + path.string());

    std::jmp_buf jump;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &jump, png_error_fn,
                                              png_warning_fn);
    if (!png) throw Error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("libpng init failed");
    }
    if (setjmp(jump)) {
        png_destroy_write_struct(&png, &info);
        throw Error("PNG write failed: " + path.string());
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(image.width);
    for (int p = 0; p < image.height; ++p) {
        for (int q = 0; q < image.width; ++q) {
            double v = image.at(p, q);
            if (v < 0.0) v = 0.0;
            if (v > 255.0) v = 255.0;
            row[q] = static_cast<png_byte>(v + 0.5);
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

} // namespace mitensor
