#include "pyjama/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace pyjama {

namespace {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

double approx(const Rat& r) { return static_cast<double>(r); }

}  // namespace

std::string render_svg(const std::vector<SvgLayer>& layers, const std::string& caption) {
    const int size = 540, pad = 20;
    std::ostringstream svg, exact;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\""
        << size + 2 * pad + 24 << "\" viewBox=\"0 0 " << size + 2 * pad << " "
        << size + 2 * pad + 24 << "\">\n";
    svg << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << size << "\" height=\""
        << size << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (const SvgLayer& layer : layers) {
        for (const ConvexPoly& piece : layer.set->pieces()) {
            svg << "<polygon fill=\"" << layer.fill << "\" fill-opacity=\"0.6\" stroke=\""
                << layer.fill << "\" stroke-width=\"0.5\" points=\"";
            for (const RatPoint2& v : piece.vertices()) {
                double x = pad + approx(v.x) * size;
                double y = pad + (1.0 - approx(v.y)) * size;  // y axis points up
                svg << x << "," << y << " ";
                exact << rat_to_string(v.x) << "," << rat_to_string(v.y) << ";";
            }
            svg << "\"/>\n";
        }
    }
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(exact.str())));
    svg << "<text x=\"" << pad << "\" y=\"" << size + 2 * pad + 16
        << "\" font-size=\"12\" font-family=\"monospace\">" << caption << " [data " << hash
        << "]</text>\n</svg>\n";
    return svg.str();
}

namespace {

struct Pt {
    double x, y;
};

// Float halfplane clip (a x + b y <= c); for figures only.
std::vector<Pt> clip_f(const std::vector<Pt>& poly, double a, double b, double c) {
    std::vector<Pt> out;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& u = poly[i];
        const Pt& v = poly[(i + 1) % n];
        double su = c - a * u.x - b * u.y, sv = c - a * v.x - b * v.y;
        if (su >= 0) out.push_back(u);
        if ((su > 0 && sv < 0) || (su < 0 && sv > 0)) {
            double t = su / (su - sv);
            out.push_back({u.x + t * (v.x - u.x), u.y + t * (v.y - u.y)});
        }
    }
    return out;
}

const char* kPalette[] = {"#3465a4", "#f57900", "#4e9a06", "#a40000", "#75507b",
                          "#c4a000", "#06989a", "#ce5c00", "#5c3566"};

}  // namespace

std::string render_plane_strips(const Configuration& cfg, const PeriodBasis& pb, const Rat& eps) {
    double v0x = pb.v0[0].approx(), v0y = pb.v0[1].approx();
    double v1x = pb.v1[0].approx(), v1y = pb.v1[1].approx();
    std::vector<Pt> fundamental = {{0, 0}, {v0x, v0y}, {v0x + v1x, v0y + v1y}, {v1x, v1y}};
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (const Pt& p : fundamental) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    double span = std::max(max_x - min_x, max_y - min_y);
    if (span <= 0) span = 1;
    const int size = 540, pad = 20;
    auto px = [&](double x) { return pad + (x - min_x) / span * size; };
    auto py = [&](double y) { return pad + (1.0 - (y - min_y) / span) * size; };

    std::vector<Pt> window = {{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad
        << "\" height=\"" << size + 2 * pad + 24 << "\">\n";
    double e = static_cast<double>(eps);
    for (int j = 0; j < cfg.size(); ++j) {
        double c = cfg.vectors[j].cos.approx(), s = cfg.vectors[j].sin.approx();
        double lo = 1e18, hi = -1e18;
        for (const Pt& p : window) {
            double v = c * p.x + s * p.y;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const char* color = kPalette[j % (sizeof kPalette / sizeof *kPalette)];
        for (long long k = static_cast<long long>(std::floor(lo)) - 1;
             k <= static_cast<long long>(std::ceil(hi)) + 1; ++k) {
            auto band = clip_f(window, c, s, k + e);
            band = clip_f(band, -c, -s, -(k - e));
            if (band.size() < 3) continue;
            svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.25\" points=\"";
            for (const Pt& p : band) svg << px(p.x) << "," << py(p.y) << " ";
            svg << "\"/>\n";
        }
    }
    svg << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (const Pt& p : fundamental) svg << px(p.x) << "," << py(p.y) << " ";
    svg << "\"/>\n<text x=\"" << pad << "\" y=\"" << size + 2 * pad + 16
        << "\" font-size=\"12\" font-family=\"monospace\">" << cfg.label
        << " strips (eps=" << rat_to_string(eps) << ") over one period cell</text>\n</svg>\n";
    return svg.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

}  // namespace pyjama
