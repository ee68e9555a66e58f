#include "combopred/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace combopred {

namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

struct Scale {
    double y_min, y_max;
    double x(double index) const {
        return kMarginLeft + index * (kWidth - kMarginLeft - kMarginRight);
    }
    double y(double value) const {
        const double f = (value - y_min) / (y_max - y_min);
        return kHeight - kMarginBottom - f * (kHeight - kMarginTop - kMarginBottom);
    }
};

void polyline(std::ostringstream& out, const Scale& sc,
              const std::vector<double>& index, const std::vector<double>& values,
              const char* color, const char* dash) {
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
    if (dash[0] != '\0') out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (std::size_t i = 0; i < index.size(); ++i) {
        out << sc.x(index[i]) << ',' << sc.y(values[i]);
        if (i + 1 < index.size()) out << ' ';
    }
    out << "\"/>\n";
}

} // namespace

std::string waterfall_svg(const PredictedBand& band, const std::string& title) {
    double lo = -100.0, hi = 20.0;
    for (double v : band.predicted) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : band.upper) hi = std::max(hi, v);
    Scale sc{std::floor(lo / 20.0) * 20.0, std::ceil(hi / 20.0) * 20.0};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // horizontal grid lines every 20 units
    for (double v = sc.y_min; v <= sc.y_max + 1e-9; v += 20.0) {
        const double y = sc.y(v);
        out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << y << "\" x2=\""
            << kWidth - kMarginRight << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << v << "</text>\n";
    }
    for (double f = 0.0; f <= 1.0 + 1e-9; f += 0.25) {
        const double x = sc.x(f);
        out << "  <text x=\"" << x << "\" y=\"" << kHeight - kMarginBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << f << "</text>\n";
    }
    out << "  <text x=\"" << (kMarginLeft + kWidth - kMarginRight) / 2 << "\" y=\""
        << kHeight - 14 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">patient fraction</text>\n";
    out << "  <text x=\"18\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << kHeight / 2 << ")\">best % change from baseline</text>\n";

    if (band.has_band()) {
        polyline(out, sc, band.index, band.lower, "#9ecae1", "4,3");
        polyline(out, sc, band.index, band.upper, "#9ecae1", "4,3");
    }
    polyline(out, sc, band.index, band.predicted, "#08519c", "");
    out << "</svg>\n";
    return out.str();
}

} // namespace combopred
