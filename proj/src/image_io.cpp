#include "tsqrt/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "tsqrt/errors.hpp"

namespace tsqrt::imaging {

namespace {

std::uint8_t quantize(double v) {
    const double c = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

ImageTensor decode_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw Error("load_image: cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("load_image: png init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("load_image: png info init failed");
    }
    std::vector<png_bytep> row_ptrs;
    std::vector<png_byte> pixels;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error("load_image: failed to decode PNG " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const png_size_t rowbytes = png_get_rowbytes(png, info);
    const std::size_t channels = rowbytes / width;
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error("load_image: unsupported PNG layout in " + path);
    }
    pixels.resize(rowbytes * height);
    row_ptrs.resize(height);
    for (png_uint_32 r = 0; r < height; ++r) row_ptrs[r] = pixels.data() + r * rowbytes;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ImageTensor img(height, width, channels);
    for (std::size_t i = 0; i < height; ++i)
        for (std::size_t j = 0; j < width; ++j)
            for (std::size_t k = 0; k < channels; ++k)
                img.at(i, j, k) = pixels[i * rowbytes + j * channels + k] / 255.0;
    return img;
}

void encode_png(const ImageTensor& img, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw Error("save_image: cannot open " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("save_image: png init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("save_image: png info init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("save_image: failed to encode PNG " + path);
    }
    png_init_io(png, fp.get());
    const int color = img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, color, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(img.width * img.channels);
    for (std::size_t i = 0; i < img.height; ++i) {
        for (std::size_t j = 0; j < img.width; ++j)
            for (std::size_t k = 0; k < img.channels; ++k)
                row[j * img.channels + k] = quantize(img.at(i, j, k));
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

ImageTensor decode_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("load_image: cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P6" && magic != "P5") throw Error("load_image: unsupported PNM magic in " + path);
    const std::size_t channels = (magic == "P6") ? 3 : 1;

    auto next_token = [&in, &path]() {
        // skip whitespace and '#' comments
        for (;;) {
            const int c = in.peek();
            if (c == '#') {
                std::string line;
                std::getline(in, line);
            } else if (std::isspace(c)) {
                in.get();
            } else {
                break;
            }
            if (!in) throw Error("load_image: truncated PNM header in " + path);
        }
        std::size_t v = 0;
        in >> v;
        if (!in) throw Error("load_image: bad PNM header in " + path);
        return v;
    };
    const std::size_t width = next_token();
    const std::size_t height = next_token();
    const std::size_t maxval = next_token();
    if (maxval == 0 || maxval > 255) throw Error("load_image: unsupported PNM maxval in " + path);
    in.get();  // single whitespace before raster

    std::vector<unsigned char> raster(width * height * channels);
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (static_cast<std::size_t>(in.gcount()) != raster.size())
        throw Error("load_image: truncated PNM raster in " + path);

    ImageTensor img(height, width, channels);
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < height; ++i)
        for (std::size_t j = 0; j < width; ++j)
            for (std::size_t k = 0; k < channels; ++k)
                img.at(i, j, k) = raster[(i * width + j) * channels + k] * scale;
    return img;
}

void encode_pnm(const ImageTensor& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3)
        throw Error("save_image: PNM supports 1 or 3 channels");
    std::ostringstream out;
    out << (img.channels == 3 ? "P6" : "P5") << "\n"
        << img.width << " " << img.height << "\n255\n";
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j)
            for (std::size_t k = 0; k < img.channels; ++k)
                out.put(static_cast<char>(quantize(img.at(i, j, k))));
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("save_image: cannot open " + path);
    f << out.str();
}

std::string lower_ext(const std::string& path) {
    std::string ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

}  // namespace

ImageTensor load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw Error("load_image: cannot open " + path);
    unsigned char magic[2] = {0, 0};
    probe.read(reinterpret_cast<char*>(magic), 2);
    probe.close();
    if (magic[0] == 0x89 && magic[1] == 'P') return decode_png(path);
    if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) return decode_pnm(path);
    throw Error("load_image: unrecognized image format in " + path);
}

void save_image(const ImageTensor& img, const std::string& path) {
    const std::string tmp = path + ".tmp";
    const std::string ext = lower_ext(path);
    if (ext == ".png") {
        encode_png(img, tmp);
    } else if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
        encode_pnm(img, tmp);
    } else {
        throw Error("save_image: unsupported extension " + ext);
    }
    std::filesystem::rename(tmp, path);
}

void save_grayscale(const RealMatrix& img, const std::string& path) {
    ImageTensor g(img.rows(), img.cols(), 1);
    for (std::size_t i = 0; i < img.rows(); ++i)
        for (std::size_t j = 0; j < img.cols(); ++j) g.at(i, j, 0) = img(i, j);
    save_image(g, path);
}

}  // namespace tsqrt::imaging
