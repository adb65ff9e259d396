// nhknot: build H(k) = A A^dag factorizations for SSH-family models and
// characterize the complex-eigenvalue knot topology of A.

#include "nhknot/bloch.hpp"
#include "nhknot/effective.hpp"
#include "nhknot/errors.hpp"
#include "nhknot/io.hpp"
#include "nhknot/knot.hpp"
#include "nhknot/svd_gauge.hpp"
#include "nhknot/transition.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

namespace {

using json = nlohmann::ordered_json;
using namespace nhknot;

struct Options {
    std::string config;
    std::string model = "model-i";
    std::string gauge = "sigma-x";
    double omega = std::numeric_limits<double>::quiet_NaN();
    std::string omega_range;
    std::string k_range;
    int nk = 0;
    std::string out;
    std::string in;
    std::string format = "csv";
    long seed = 42;
    std::string side = "plus";
    int length = 64;
    std::string boundary = "periodic";
    int steps = 21;

    std::map<std::string, std::string> file_values;

    void load_config() {
        if (!config.empty()) file_values = parse_config_file(config);
    }
    // command line wins over config file, config over built-in default
    void merge_str(const CLI::Option* opt, const char* key, std::string& target) const {
        auto it = file_values.find(key);
        if (opt->count() == 0 && it != file_values.end()) target = it->second;
    }
    void merge_num(const CLI::Option* opt, const char* key, double& target) const {
        auto it = file_values.find(key);
        if (opt->count() == 0 && it != file_values.end()) target = std::stod(it->second);
    }
    void merge_int(const CLI::Option* opt, const char* key, int& target) const {
        auto it = file_values.find(key);
        if (opt->count() == 0 && it != file_values.end()) target = std::stoi(it->second);
    }
    double config_num(const char* key) const {
        auto it = file_values.find(key);
        if (it == file_values.end())
            throw domain_error(std::string("custom model: config key '") + key + "' missing");
        return std::stod(it->second);
    }
};

struct OptionRefs {
    CLI::Option *model = nullptr, *gauge = nullptr, *omega = nullptr, *omega_range = nullptr,
                *k_range = nullptr, *nk = nullptr, *out = nullptr, *format = nullptr,
                *seed = nullptr, *side = nullptr, *length = nullptr, *boundary = nullptr,
                *steps = nullptr, *in = nullptr;
};

OptionRefs add_shared(CLI::App* cmd, Options& o) {
    OptionRefs r;
    cmd->add_option("--config", o.config, "flat key=value config file (flags override)");
    r.model = cmd->add_option("--model", o.model, "model-i | model-ii | custom");
    r.gauge = cmd->add_option("--gauge", o.gauge,
                              "sigma-x | sigma-y | i-sigma-z | k-dependent | "
                              "general:phi,alpha,beta,theta0,theta1");
    r.omega = cmd->add_option("--omega", o.omega, "model parameter omega > 0");
    r.omega_range = cmd->add_option("--omega-range", o.omega_range, "lo:hi");
    r.k_range = cmd->add_option("--k-range", o.k_range, "lo:hi (default full zone)");
    r.nk = cmd->add_option("--nk", o.nk, "momentum samples");
    r.out = cmd->add_option("--out", o.out, "output path");
    r.format = cmd->add_option("--format", o.format, "csv | svg | json");
    r.seed = cmd->add_option("--seed", o.seed, "seed for randomized suites");
    return r;
}

void merge_shared(const OptionRefs& r, Options& o) {
    o.load_config();
    o.merge_str(r.model, "model", o.model);
    o.merge_str(r.gauge, "gauge", o.gauge);
    o.merge_num(r.omega, "omega", o.omega);
    o.merge_str(r.omega_range, "omega-range", o.omega_range);
    if (r.k_range) o.merge_str(r.k_range, "k-range", o.k_range);
    o.merge_int(r.nk, "nk", o.nk);
    o.merge_str(r.out, "out", o.out);
    o.merge_str(r.format, "format", o.format);
    if (r.side) o.merge_str(r.side, "side", o.side);
    if (r.length) o.merge_int(r.length, "length", o.length);
    if (r.boundary) o.merge_str(r.boundary, "boundary", o.boundary);
    if (r.steps) o.merge_int(r.steps, "steps", o.steps);
}

ModelName family_of(const std::string& name) {
    if (name == "model-i") return ModelName::model_i;
    if (name == "model-ii") return ModelName::model_ii;
    throw domain_error("this command needs a preset model family (model-i or model-ii), got '" +
                       name + "'");
}

BlochModel resolve_model(const Options& o) {
    if (o.model == "custom")
        return make_model(o.config_num("t1"), o.config_num("t2"), o.config_num("t3"),
                          o.config_num("t4"), o.config_num("mu"));
    if (!std::isfinite(o.omega)) throw domain_error("--omega is required for preset models");
    return preset(family_of(o.model), o.omega);
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw domain_error(std::string(what) + ": expected lo:hi, got '" + text + "'");
    try {
        const double lo = std::stod(text.substr(0, colon));
        const double hi = std::stod(text.substr(colon + 1));
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
            throw domain_error(std::string(what) + ": need finite lo < hi");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw domain_error(std::string(what) + ": bad number in '" + text + "'");
    }
}

void emit(const Options& o, const std::string& content) {
    if (o.out.empty()) std::cout << content;
    else atomic_write_file(o.out, content);
}

int positive_nk(const Options& o, int fallback) {
    const int nk = o.nk > 0 ? o.nk : fallback;
    if (nk <= 0) throw domain_error("--nk must be positive");
    return nk;
}

json jump_json(const std::array<cx, 2>& jump) {
    json arr = json::array();
    for (const cx& j : jump)
        arr.push_back({{"re", j.real()}, {"im", j.imag()}, {"abs", std::abs(j)}});
    return arr;
}

int run(int argc, char** argv) {
    CLI::App app{"non-Hermitian knot factory for SSH-family Bloch Hamiltonians"};
    app.require_subcommand(1);

    Options o;

    auto* spectrum = app.add_subcommand("spectrum", "singular-value spectrum of H(k)");
    auto r_spectrum = add_shared(spectrum, o);
    auto* braid = app.add_subcommand("braid", "eigenvalue braid of A(k) over one period");
    auto r_braid = add_shared(braid, o);
    auto* winding = app.add_subcommand("winding", "NH and Hermitian winding numbers (JSON)");
    auto r_winding = add_shared(winding, o);
    auto* scan = app.add_subcommand("scan", "knot phase over an omega grid");
    auto r_scan = add_shared(scan, o);
    r_scan.steps = scan->add_option("--steps", o.steps, "grid points (default 21)");
    auto* epfind = app.add_subcommand("ep-find", "exceptional points in an (omega, k) window");
    auto r_ep = add_shared(epfind, o);
    auto* classify = app.add_subcommand("classify", "classify the transition inside omega range");
    auto r_classify = add_shared(classify, o);
    auto* effective = app.add_subcommand("effective", "linearized lattice model near the transition");
    auto r_eff = add_shared(effective, o);
    r_eff.side = effective->add_option("--side", o.side, "plus | minus");
    r_eff.length = effective->add_option("--length", o.length, "unit cells (>= 2)");
    r_eff.boundary = effective->add_option("--boundary", o.boundary, "open | periodic");
    auto* render = app.add_subcommand("render", "re-render a CSV as a fixed-size SVG");
    render->add_option("--in", o.in, "input CSV path")->required();
    render->add_option("--out", o.out, "output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : 2;
    }

    if (spectrum->parsed()) {
        merge_shared(r_spectrum, o);
        const BlochModel m = resolve_model(o);
        const int nk = positive_nk(o, 512);
        emit(o, o.format == "svg" ? svg_spectrum(m, nk) : spectrum_csv(m, nk));
        return 0;
    }

    if (braid->parsed()) {
        merge_shared(r_braid, o);
        const BlochModel m = resolve_model(o);
        const GaugeChoice g = parse_gauge(o.gauge);
        const int nk = positive_nk(o, 1024);
        const auto family = make_a_family(m, g);
        const BraidData b = extract_braid(family, nk);
        const KnotPhase phase = nh_winding(family, std::max(128, nk));
        emit(o, o.format == "svg" ? svg_braid(b) : braid_csv(b, phase.nu));
        return 0;
    }

    if (winding->parsed()) {
        merge_shared(r_winding, o);
        const BlochModel m = resolve_model(o);
        const GaugeChoice g = parse_gauge(o.gauge);
        const int nk = positive_nk(o, 4096);
        const KnotPhase phase = nh_winding(make_a_family(m, g), nk);
        json doc;
        doc["nu"] = phase.nu;
        doc["nu_residual"] = phase.residual;
        try {
            doc["nu_h"] = hermitian_winding(m, nk).nu_h;
        } catch (const gapless_error& e) {
            doc["nu_h"] = nullptr;
            doc["nu_h_reason"] = e.what();
        }
        doc["knot"] = knot_label(phase.nu);
        std::cout << doc.dump(2) << '\n';
        return 0;
    }

    if (scan->parsed()) {
        merge_shared(r_scan, o);
        const ModelName family = family_of(o.model);
        const GaugeChoice g = parse_gauge(o.gauge);
        const auto [lo, hi] = parse_range(o.omega_range, "--omega-range");
        if (o.steps < 2) throw domain_error("--steps must be >= 2");
        std::vector<double> grid(o.steps);
        for (int i = 0; i < o.steps; ++i) grid[i] = lo + (hi - lo) * i / (o.steps - 1.0);
        emit(o, scan_csv(scan_omega(family, g, grid, positive_nk(o, 512))));
        return 0;
    }

    if (epfind->parsed()) {
        merge_shared(r_ep, o);
        const ModelName family = family_of(o.model);
        const GaugeChoice g = parse_gauge(o.gauge);
        const auto [lo, hi] = parse_range(o.omega_range, "--omega-range");
        double k_lo = 0.0, k_hi = two_pi;
        if (!o.k_range.empty()) std::tie(k_lo, k_hi) = parse_range(o.k_range, "--k-range");
        json arr = json::array();
        for (const EPCandidate& c : find_ep(family, g, lo, hi, k_lo, k_hi)) {
            arr.push_back({{"omega", c.omega},
                           {"k", c.k},
                           {"discriminant_abs", c.discriminant_abs},
                           {"defectiveness", c.defectiveness},
                           {"normality", c.normality}});
        }
        emit(o, arr.dump(2) + "\n");
        return 0;
    }

    if (classify->parsed()) {
        merge_shared(r_classify, o);
        const ModelName family = family_of(o.model);
        const GaugeChoice g = parse_gauge(o.gauge);
        const auto [lo, hi] = parse_range(o.omega_range, "--omega-range");
        const TransitionReport rep = classify_transition(family, g, lo, hi, positive_nk(o, 4096));
        json doc;
        doc["omega_star"] = rep.omega_star;
        doc["kind"] = rep.kind == TransitionKind::first_order ? "first_order" : "ep_mediated";
        doc["nu_below"] = rep.nu_below;
        doc["nu_above"] = rep.nu_above;
        doc["jump"] = jump_json(rep.jump);
        json eps = json::array();
        for (const EPCandidate& c : rep.ep_points)
            eps.push_back({{"omega", c.omega}, {"k", c.k}, {"residual", c.discriminant_abs}});
        doc["ep_points"] = eps;
        doc["herm_coincident"] = rep.herm_coincident;
        emit(o, doc.dump(2) + "\n");
        return 0;
    }

    if (effective->parsed()) {
        merge_shared(r_eff, o);
        Branch side;
        if (o.side == "plus") side = Branch::plus;
        else if (o.side == "minus") side = Branch::minus;
        else throw domain_error("--side must be plus or minus");
        Boundary boundary;
        if (o.boundary == "open") boundary = Boundary::open;
        else if (o.boundary == "periodic") boundary = Boundary::periodic;
        else throw domain_error("--boundary must be open or periodic");

        const EffectiveModel model = effective_model(side);
        const ChainOperator chain = realspace_chain(model, o.length, boundary);
        emit(o, chain_csv(chain_spectrum(chain), o.boundary, o.length));

        // linearization-error ladder on the chosen side of pi
        std::cout << "dk,k,error,ratio\n";
        double prev = 0.0;
        for (double dk : {0.02, 0.01, 0.005, 0.0025}) {
            const double k = side == Branch::plus ? pi + dk : pi - dk;
            const double err = linearization_error(k);
            std::cout << format_double(dk) << ',' << format_double(k) << ','
                      << format_double(err) << ',';
            if (prev > 0.0) std::cout << format_double(prev / err);
            std::cout << '\n';
            prev = err;
        }
        return 0;
    }

    if (render->parsed()) {
        std::ifstream in(o.in);
        if (!in) throw io_error("render: cannot open '" + o.in + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        emit(o, svg_from_csv(buf.str()));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nhknot::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nhknot::invalid_input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nhknot::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nhknot::error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
