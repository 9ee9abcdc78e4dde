#include "gflbs/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

namespace gflbs {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("image '" + path.string() + "': " + what);
}

double luminance(int r, int g, int b) { return (0.299 * r + 0.587 * g + 0.114 * b) / 255.0; }

// Reads the next header token of a PNM file, skipping whitespace and '#'
// comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

unsigned parse_dim(std::istream& in, const std::filesystem::path& path, const char* name) {
    const std::string tok = next_token(in);
    if (tok.empty()) fail(path, std::string("truncated header, missing ") + name);
    try {
        const long v = std::stol(tok);
        if (v <= 0) fail(path, std::string("non-positive ") + name);
        return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
        fail(path, std::string("malformed ") + name + " '" + tok + "'");
    }
}

Image read_pnm(const std::filesystem::path& path, std::ifstream& in, char kind) {
    const bool is_bitmap = kind == '1' || kind == '4';
    const bool is_color = kind == '3' || kind == '6';
    const bool is_ascii = kind == '1' || kind == '2' || kind == '3';

    Image img;
    img.width = parse_dim(in, path, "width");
    img.height = parse_dim(in, path, "height");
    unsigned maxval = 1;
    if (!is_bitmap) {
        maxval = parse_dim(in, path, "maxval");
        if (maxval > 255) fail(path, "16-bit samples are not supported");
    }
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);

    const std::size_t npix = img.pixels.size();
    if (is_ascii) {
        const std::size_t nvals = is_color ? npix * 3 : npix;
        std::vector<int> vals(nvals);
        for (std::size_t i = 0; i < nvals; ++i) {
            const std::string tok = next_token(in);
            if (tok.empty()) fail(path, "truncated pixel data");
            vals[i] = std::stoi(tok);
            if (vals[i] < 0 || vals[i] > static_cast<int>(maxval))
                fail(path, "sample out of range");
        }
        for (std::size_t i = 0; i < npix; ++i) {
            if (is_bitmap)
                img.pixels[i] = vals[i] ? 1.0 : 0.0;
            else if (is_color)
                img.pixels[i] = luminance(vals[3 * i], vals[3 * i + 1], vals[3 * i + 2]) *
                                (255.0 / maxval);
            else
                img.pixels[i] = static_cast<double>(vals[i]) / maxval;
        }
        return img;
    }

    // Binary variants: exactly one whitespace byte separates header and data;
    // next_token has already consumed it.
    if (kind == '4') {
        const std::size_t row_bytes = (img.width + 7) / 8;
        std::vector<unsigned char> row(row_bytes);
        for (unsigned y = 0; y < img.height; ++y) {
            in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row_bytes));
            if (!in) fail(path, "truncated pixel data");
            for (unsigned x = 0; x < img.width; ++x)
                img.pixels[static_cast<std::size_t>(y) * img.width + x] =
                    (row[x / 8] >> (7 - x % 8)) & 1 ? 1.0 : 0.0;
        }
        return img;
    }
    const std::size_t nbytes = is_color ? npix * 3 : npix;
    std::vector<unsigned char> raw(nbytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(nbytes));
    if (!in) fail(path, "truncated pixel data");
    for (std::size_t i = 0; i < npix; ++i) {
        if (is_color)
            img.pixels[i] =
                luminance(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]) * (255.0 / maxval);
        else
            img.pixels[i] = static_cast<double>(raw[i]) / maxval;
    }
    return img;
}

Image read_png(const std::filesystem::path& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "rb"),
                                                       std::fclose);
    if (!fp) fail(path, "cannot open file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail(path, "libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(path, "libpng init failed");
    }
    std::vector<png_bytep> rows;
    std::vector<unsigned char> buf;
    Image img;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "corrupt PNG data");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_set_strip_16(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    img.width = png_get_image_width(png, info);
    img.height = png_get_image_height(png, info);
    const png_byte color = png_get_color_type(png, info);
    const bool is_color = color == PNG_COLOR_TYPE_RGB;
    if (!is_color && color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "unsupported PNG color type");
    }

    const std::size_t stride = static_cast<std::size_t>(img.width) * (is_color ? 3 : 1);
    buf.resize(stride * img.height);
    rows.resize(img.height);
    for (unsigned y = 0; y < img.height; ++y) rows[y] = buf.data() + y * stride;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);

    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        if (is_color)
            img.pixels[i] = luminance(buf[3 * i], buf[3 * i + 1], buf[3 * i + 2]);
        else
            img.pixels[i] = buf[i] / 255.0;
    }
    return img;
}

}  // namespace

Image read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in) fail(path, "file too short");
    if (magic[0] == 'P' && magic[1] >= '1' && magic[1] <= '6')
        return read_pnm(path, in, magic[1]);
    if (magic[0] == static_cast<char>(0x89) && magic[1] == 'P') {
        in.close();
        return read_png(path);
    }
    fail(path, "unsupported format (expected PGM/PPM/PBM/PNG)");
}

Image downscale(const Image& img, int factor) {
    if (factor < 1) throw std::invalid_argument("downscale: factor must be >= 1");
    if (factor == 1) return img;
    const unsigned f = static_cast<unsigned>(factor);
    const unsigned w = img.width / f;
    const unsigned h = img.height / f;
    if (w == 0 || h == 0) throw std::invalid_argument("downscale: factor exceeds image size");
    Image out{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
    const double inv = 1.0 / (static_cast<double>(f) * f);
    for (unsigned y = 0; y < h; ++y) {
        for (unsigned x = 0; x < w; ++x) {
            double s = 0.0;
            for (unsigned dy = 0; dy < f; ++dy)
                for (unsigned dx = 0; dx < f; ++dx)
                    s += img.pixels[static_cast<std::size_t>(y * f + dy) * img.width + x * f + dx];
            out.pixels[static_cast<std::size_t>(y) * w + x] = s * inv;
        }
    }
    return out;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> bytes(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double v = std::clamp(img.pixels[i], 0.0, 1.0);
        bytes[i] = static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(path, "write failed");
}

void write_pbm(const std::filesystem::path& path, std::span<const std::uint8_t> mask,
               std::uint32_t width, std::uint32_t height) {
    if (mask.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("write_pbm: mask size does not match geometry");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P4\n" << width << " " << height << "\n";
    const std::size_t row_bytes = (width + 7) / 8;
    std::vector<unsigned char> row(row_bytes);
    for (std::uint32_t y = 0; y < height; ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (std::uint32_t x = 0; x < width; ++x) {
            if (mask[static_cast<std::size_t>(y) * width + x])
                row[x / 8] |= static_cast<unsigned char>(0x80 >> (x % 8));
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row_bytes));
    }
    if (!out) fail(path, "write failed");
}

}  // namespace gflbs
