#include "xvcs/image.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "xvcs/gf2solve.hpp"

namespace xvcs {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Counter-style per-pixel stream: state depends only on (seed, x, y).
class PixelRng {
  public:
    PixelRng(std::uint64_t seed, int x, int y)
        : state_(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^
                                          static_cast<std::uint64_t>(y)))) {}

    std::uint64_t next() {
        state_ = splitmix(state_);
        return state_;
    }
    bool next_bit() {
        if (pool_bits_ == 0) {
            pool_ = next();
            pool_bits_ = 64;
        }
        bool b = pool_ & 1u;
        pool_ >>= 1;
        --pool_bits_;
        return b;
    }

  private:
    std::uint64_t state_;
    std::uint64_t pool_ = 0;
    int pool_bits_ = 0;
};

int pbm_next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) {
                return 1;
            }
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok.empty() ? 0 : 1;
}

}  // namespace

ShareImage read_pbm(std::istream& in) {
    std::string tok;
    if (!pbm_next_token(in, tok) || (tok != "P1" && tok != "P4")) {
        throw std::runtime_error("PBM: expected magic P1 or P4");
    }
    bool ascii = tok == "P1";
    if (!pbm_next_token(in, tok)) {
        throw std::runtime_error("PBM: missing width");
    }
    int w = std::stoi(tok);
    if (!pbm_next_token(in, tok)) {
        throw std::runtime_error("PBM: missing height");
    }
    int h = std::stoi(tok);
    if (w <= 0 || h <= 0) {
        throw std::runtime_error("PBM: invalid dimensions");
    }
    ShareImage img(w, h);
    if (ascii) {
        int x = 0, y = 0;
        int c;
        while (y < h && (c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {
                }
                continue;
            }
            if (c != '0' && c != '1') {
                continue;
            }
            img.set(x, y, c == '1');
            if (++x == w) {
                x = 0;
                ++y;
            }
        }
        if (y < h) {
            throw std::runtime_error("PBM: truncated pixel data");
        }
    } else {
        // single whitespace byte after the header, then packed rows
        int row_bytes = (w + 7) / 8;
        for (int y = 0; y < h; ++y) {
            for (int b = 0; b < row_bytes; ++b) {
                int c = in.get();
                if (c == EOF) {
                    throw std::runtime_error("PBM: truncated pixel data");
                }
                for (int bit = 0; bit < 8; ++bit) {
                    int x = b * 8 + bit;
                    if (x < w && ((c >> (7 - bit)) & 1)) {
                        img.set(x, y, true);
                    }
                }
            }
        }
    }
    return img;
}

ShareImage read_pbm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return read_pbm(in);
}

void write_pbm(std::ostream& out, const ShareImage& img, bool ascii) {
    if (ascii) {
        out << "P1\n" << img.width() << " " << img.height() << "\n";
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                out << (img.get(x, y) ? '1' : '0');
                out << (x + 1 == img.width() ? '\n' : ' ');
            }
        }
        return;
    }
    out << "P4\n" << img.width() << " " << img.height() << "\n";
    int row_bytes = (img.width() + 7) / 8;
    for (int y = 0; y < img.height(); ++y) {
        for (int b = 0; b < row_bytes; ++b) {
            unsigned char byte = 0;
            for (int bit = 0; bit < 8; ++bit) {
                int x = b * 8 + bit;
                if (x < img.width() && img.get(x, y)) {
                    byte |= static_cast<unsigned char>(1u << (7 - bit));
                }
            }
            out.put(static_cast<char>(byte));
        }
    }
}

void write_pbm(const std::filesystem::path& path, const ShareImage& img, bool ascii) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_pbm(out, img, ascii);
}

SubpixelLayout SubpixelLayout::block_for(int m) {
    SubpixelLayout l;
    l.mode = Mode::Block;
    l.block_rows = 1;
    for (int a = 1; a * a <= m; ++a) {
        if (m % a == 0) {
            l.block_rows = a;
        }
    }
    l.block_cols = m / l.block_rows;
    return l;
}

void SubpixelLayout::validate(int m) const {
    if (mode == Mode::Block && block_rows * block_cols != m) {
        throw std::invalid_argument("layout: block dimensions do not multiply to m");
    }
}

std::vector<ShareImage> encode(const ShareImage& secret, const LinearScheme& s,
                               const SubpixelLayout& layout, std::uint64_t seed) {
    if (!s.well_formed) {
        throw std::invalid_argument("encode: scheme is not well formed: " + s.defect);
    }
    if (secret.width() == 0 || secret.height() == 0) {
        throw std::invalid_argument("encode: empty secret image");
    }
    layout.validate(s.m);
    const int n = s.n();
    const int m = s.m;
    const int sx = layout.width_scale(m);
    const int sy = layout.height_scale(m);

    std::vector<ShareImage> shares(static_cast<std::size_t>(n),
                                   ShareImage(secret.width() * sx, secret.height() * sy));
    for (int y = 0; y < secret.height(); ++y) {
        for (int x = 0; x < secret.width(); ++x) {
            PixelRng rng(seed, x, y);
            int j = s.k > 1 ? static_cast<int>(rng.next() % static_cast<std::uint64_t>(s.k)) : 0;
            const SolveResult& system =
                secret.get(x, y) ? s.black[static_cast<std::size_t>(j)]
                                 : s.white[static_cast<std::size_t>(j)];
            BitMatrix share_rows =
                solution_from_bits(system, [&rng]() { return rng.next_bit(); });
            for (int i = 0; i < n; ++i) {
                for (int c = 0; c < m; ++c) {
                    if (share_rows.get(i, c)) {
                        shares[static_cast<std::size_t>(i)].set(x * sx + layout.x_off(c, m),
                                                                y * sy + layout.y_off(c, m), true);
                    }
                }
            }
        }
    }
    return shares;
}

ShareImage stack_images(const std::vector<ShareImage>& shares) {
    if (shares.empty()) {
        throw std::invalid_argument("stack: no shares given");
    }
    ShareImage out = shares.front();
    for (std::size_t i = 1; i < shares.size(); ++i) {
        if (shares[i].width() != out.width() || shares[i].height() != out.height()) {
            throw std::invalid_argument("stack: share dimensions differ");
        }
        out.raster ^= shares[i].raster;
    }
    return out;
}

namespace {

BitMatrix block_at(const ShareImage& img, int x, int y, int m, const SubpixelLayout& layout) {
    BitMatrix row(1, m);
    int sx = layout.width_scale(m);
    int sy = layout.height_scale(m);
    for (int c = 0; c < m; ++c) {
        if (img.get(x * sx + layout.x_off(c, m), y * sy + layout.y_off(c, m))) {
            row.set(0, c, true);
        }
    }
    return row;
}

}  // namespace

NoiseReport measure_noise(const ShareImage& reconstructed, const ShareImage& secret,
                          const LinearScheme& s, const Subset& q, const SubpixelLayout& layout) {
    layout.validate(s.m);
    StackResult st = stack_result(s, q);  // throws when undetermined
    const BitMatrix& ref_white = st.e0.front();
    const BitMatrix& ref_black = st.e1.front();
    if (reconstructed.width() != secret.width() * layout.width_scale(s.m) ||
        reconstructed.height() != secret.height() * layout.height_scale(s.m)) {
        throw std::invalid_argument("measure_noise: reconstructed dimensions do not match layout");
    }
    std::int64_t total = 0, bad = 0;
    std::int64_t white_total = 0, white_bad = 0;
    std::int64_t black_total = 0, black_bad = 0;
    for (int y = 0; y < secret.height(); ++y) {
        for (int x = 0; x < secret.width(); ++x) {
            BitMatrix block = block_at(reconstructed, x, y, s.m, layout);
            bool is_black = secret.get(x, y);
            bool mismatch = block != (is_black ? ref_black : ref_white);
            ++total;
            bad += mismatch;
            if (is_black) {
                ++black_total;
                black_bad += mismatch;
            } else {
                ++white_total;
                white_bad += mismatch;
            }
        }
    }
    NoiseReport rep;
    rep.overall = Rational(bad, total);
    rep.white = white_total ? Rational(white_bad, white_total) : Rational(0);
    rep.black = black_total ? Rational(black_bad, black_total) : Rational(0);
    return rep;
}

ShareImage decode_by_template(const ShareImage& reconstructed, const LinearScheme& s,
                              const Subset& q, const SubpixelLayout& layout) {
    layout.validate(s.m);
    StackResult st = stack_result(s, q);
    const BitMatrix& ref_white = st.e0.front();
    if (reconstructed.width() % layout.width_scale(s.m) != 0 ||
        reconstructed.height() % layout.height_scale(s.m) != 0) {
        throw std::invalid_argument("decode: image dimensions do not match the layout");
    }
    const int w = reconstructed.width() / layout.width_scale(s.m);
    const int h = reconstructed.height() / layout.height_scale(s.m);
    ShareImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (block_at(reconstructed, x, y, s.m, layout) != ref_white) {
                out.set(x, y, true);
            }
        }
    }
    return out;
}

}  // namespace xvcs
