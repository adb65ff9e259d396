#ifndef NHKNOT_IO_HPP
#define NHKNOT_IO_HPP

#include "nhknot/bloch.hpp"
#include "nhknot/knot.hpp"

#include <map>
#include <string>
#include <vector>

namespace nhknot {

/// Shortest decimal rendering that round-trips the double bit pattern.
std::string format_double(double v);

/// Writes content to path via a temp file + rename. Throws io_error.
void atomic_write_file(const std::string& path, const std::string& content);

/// Flat key=value config file ('#' starts a comment, blank lines ignored).
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// CSV: k, s_minus, s_plus over nk midpoint samples (singular values of A,
/// i.e. sqrt of the band energies of H).
std::string spectrum_csv(const BlochModel& m, int nk);

/// CSV: k, re_1, im_1, re_2, im_2 plus the trailing metadata line
/// `# permutation=identity|swap nu=<int>`.
std::string braid_csv(const BraidData& braid, int nu);

/// CSV: omega, nu, knot.
std::string scan_csv(const std::vector<std::pair<double, KnotPhase>>& rows);

/// CSV: index, re, im, boundary, length.
std::string chain_csv(const std::vector<cx>& spectrum, const std::string& boundary,
                      int length);

/// Fixed-size 800x600 SVG plots (eyeball comparison only, never parsed).
std::string svg_spectrum(const BlochModel& m, int nk);
std::string svg_braid(const BraidData& braid);

/// Re-renders a braid or spectrum CSV (schema detected from the header).
std::string svg_from_csv(const std::string& csv_text);

}  // namespace nhknot

#endif
