#include "nhknot/io.hpp"

#include "nhknot/errors.hpp"
#include "nhknot/linalg2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nhknot {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path() && !target.parent_path().empty() &&
        !fs::exists(target.parent_path()))
        throw io_error("cannot write '" + path + "': directory does not exist");
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw io_error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw io_error("cannot rename temp file onto '" + path + "'");
    }
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw domain_error("config '" + path + "' line " + std::to_string(lineno) +
                               ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::string spectrum_csv(const BlochModel& m, int nk) {
    std::ostringstream out;
    out << "k,s_minus,s_plus\n";
    for (int j = 0; j < nk; ++j) {
        const double k = two_pi * (j + 0.5) / nk;
        const HermEig e = herm_eig(bloch_h(m, k));
        out << format_double(k) << ',' << format_double(std::sqrt(std::max(0.0, e.e1)))
            << ',' << format_double(std::sqrt(std::max(0.0, e.e2))) << '\n';
    }
    return out.str();
}

std::string braid_csv(const BraidData& braid, int nu) {
    std::ostringstream out;
    out << "k,re_1,im_1,re_2,im_2\n";
    for (std::size_t j = 0; j < braid.k_samples.size(); ++j) {
        out << format_double(braid.k_samples[j]) << ','
            << format_double(braid.tracks[0][j].real()) << ','
            << format_double(braid.tracks[0][j].imag()) << ','
            << format_double(braid.tracks[1][j].real()) << ','
            << format_double(braid.tracks[1][j].imag()) << '\n';
    }
    out << "# permutation="
        << (braid.permutation == BraidPermutation::swap ? "swap" : "identity")
        << " nu=" << nu << '\n';
    return out.str();
}

std::string scan_csv(const std::vector<std::pair<double, KnotPhase>>& rows) {
    std::ostringstream out;
    out << "omega,nu,knot\n";
    for (const auto& [omega, phase] : rows)
        out << format_double(omega) << ',' << phase.nu << ',' << knot_label(phase.nu) << '\n';
    return out.str();
}

std::string chain_csv(const std::vector<cx>& spectrum, const std::string& boundary,
                      int length) {
    std::ostringstream out;
    out << "index,re,im,boundary,length\n";
    for (std::size_t j = 0; j < spectrum.size(); ++j)
        out << j << ',' << format_double(spectrum[j].real()) << ','
            << format_double(spectrum[j].imag()) << ',' << boundary << ',' << length << '\n';
    return out.str();
}

namespace {

struct Series {
    std::vector<double> x, y;
};

// 800x600 canvas, panels drawn side by side with a fixed margin
std::string render_panels(const std::vector<std::vector<Series>>& panels,
                          const std::vector<std::string>& colors) {
    constexpr int width = 800, height = 600, margin = 50;
    const int panel_w = (width - (static_cast<int>(panels.size()) + 1) * margin) /
                        std::max<std::size_t>(1, panels.size());

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n"
        << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const int x0 = margin + static_cast<int>(p) * (panel_w + margin);
        const int y0 = margin, h = height - 2 * margin;
        double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
        for (const auto& s : panels[p]) {
            for (double v : s.x) { lo_x = std::min(lo_x, v); hi_x = std::max(hi_x, v); }
            for (double v : s.y) { lo_y = std::min(lo_y, v); hi_y = std::max(hi_y, v); }
        }
        if (hi_x <= lo_x) hi_x = lo_x + 1.0;
        if (hi_y <= lo_y) hi_y = lo_y + 1.0;
        const double pad_x = 0.05 * (hi_x - lo_x), pad_y = 0.05 * (hi_y - lo_y);
        lo_x -= pad_x; hi_x += pad_x; lo_y -= pad_y; hi_y += pad_y;

        svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel_w
            << "\" height=\"" << h << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (std::size_t s = 0; s < panels[p].size(); ++s) {
            svg << "<polyline fill=\"none\" stroke=\"" << colors[s % colors.size()]
                << "\" stroke-width=\"1\" points=\"";
            const auto& ser = panels[p][s];
            char pt[64];
            for (std::size_t i = 0; i < ser.x.size(); ++i) {
                const double px = x0 + (ser.x[i] - lo_x) / (hi_x - lo_x) * panel_w;
                const double py = y0 + h - (ser.y[i] - lo_y) / (hi_y - lo_y) * h;
                std::snprintf(pt, sizeof(pt), "%.2f,%.2f ", px, py);
                svg << pt;
            }
            svg << "\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string svg_spectrum(const BlochModel& m, int nk) {
    Series lo, hi;
    for (int j = 0; j < nk; ++j) {
        const double k = two_pi * (j + 0.5) / nk;
        const HermEig e = herm_eig(bloch_h(m, k));
        lo.x.push_back(k);
        lo.y.push_back(std::sqrt(std::max(0.0, e.e1)));
        hi.x.push_back(k);
        hi.y.push_back(std::sqrt(std::max(0.0, e.e2)));
    }
    return render_panels({{lo, hi}}, {"#1f77b4", "#d62728"});
}

std::string svg_braid(const BraidData& braid) {
    Series locus1, locus2, re1, re2, im1, im2;
    for (std::size_t j = 0; j < braid.k_samples.size(); ++j) {
        const double k = braid.k_samples[j];
        locus1.x.push_back(braid.tracks[0][j].real());
        locus1.y.push_back(braid.tracks[0][j].imag());
        locus2.x.push_back(braid.tracks[1][j].real());
        locus2.y.push_back(braid.tracks[1][j].imag());
        re1.x.push_back(k); re1.y.push_back(braid.tracks[0][j].real());
        re2.x.push_back(k); re2.y.push_back(braid.tracks[1][j].real());
        im1.x.push_back(k); im1.y.push_back(braid.tracks[0][j].imag());
        im2.x.push_back(k); im2.y.push_back(braid.tracks[1][j].imag());
    }
    return render_panels({{locus1, locus2}, {re1, re2, im1, im2}},
                         {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"});
}

std::string svg_from_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string header;
    if (!std::getline(in, header)) throw domain_error("render: empty CSV");

    auto parse_row = [](const std::string& line) {
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
        return vals;
    };

    std::string line;
    if (header == "k,re_1,im_1,re_2,im_2") {
        BraidData braid;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto v = parse_row(line);
            if (v.size() != 5) throw domain_error("render: malformed braid CSV row");
            braid.k_samples.push_back(v[0]);
            braid.tracks[0].emplace_back(v[1], v[2]);
            braid.tracks[1].emplace_back(v[3], v[4]);
        }
        return svg_braid(braid);
    }
    if (header == "k,s_minus,s_plus") {
        Series lo, hi;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto v = parse_row(line);
            if (v.size() != 3) throw domain_error("render: malformed spectrum CSV row");
            lo.x.push_back(v[0]); lo.y.push_back(v[1]);
            hi.x.push_back(v[0]); hi.y.push_back(v[2]);
        }
        return render_panels({{lo, hi}}, {"#1f77b4", "#d62728"});
    }
    throw domain_error("render: unrecognized CSV header '" + header + "'");
}

}  // namespace nhknot
