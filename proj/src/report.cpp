#include "qcod/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcod::report {

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

std::string widths_csv(const WidthProfile& profile) {
    std::ostringstream out;
    out << "k,d_k\n";
    for (std::size_t k = 0; k < profile.d.size(); ++k) {
        out << k << "," << fmt6(profile.d[k]) << "\n";
    }
    return out.str();
}

std::string power_curve_csv(const PowerCurve& curve) {
    std::ostringstream out;
    out << "norm,power,stderr\n";
    for (std::size_t i = 0; i < curve.norms.size(); ++i) {
        out << fmt6(curve.norms[i]) << "," << fmt6(curve.powers[i]) << ","
            << fmt6(curve.stderrs[i]) << "\n";
    }
    return out.str();
}

std::string power_curve_svg(const PowerCurve& curve, const std::string& title) {
    const double width = 640, height = 480;
    const double ml = 60, mr = 20, mt = 40, mb = 50; // margins
    const double pw = width - ml - mr, ph = height - mt - mb;
    const double x_max = curve.norms.empty() ? 1.0 : curve.norms.back();

    auto px = [&](double x) { return ml + (x_max > 0 ? x / x_max : 0.0) * pw; };
    auto py = [&](double y) { return mt + (1.0 - y) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           "font-size=\"14\">" << title << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_max * i / 5.0;
        const double fy = i / 5.0;
        out << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\""
            << px(fx) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt6(fx)
            << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml
            << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 10 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt6(fy)
            << "</text>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.norms.size(); ++i) {
        out << px(curve.norms[i]) << "," << py(curve.powers[i]) << " ";
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << contents;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace qcod::report
