#include "bdsg/scenarios.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bdsg {

int Scenario::cells() const {
    return static_cast<int>(std::llround(1.0 / epsilon));
}

int Scenario::points_per_cell() const {
    // dx = 2*pi/(L*R) = pi/denominator  =>  L*R = 2*denominator
    const int total = 2 * dx_denominator;
    const int L = cells();
    if (total % L != 0)
        throw ScenarioError("dx = pi/" + std::to_string(dx_denominator) +
                            " is incompatible with " + std::to_string(L) + " lattice cells");
    return total / L;
}

GridPtr Scenario::build_grid() const { return make_grid(epsilon, points_per_cell()); }

GridPtr Scenario::build_grid(int denominator) const {
    const int total = 2 * denominator;
    const int L = cells();
    if (total % L != 0)
        throw ScenarioError("dx = pi/" + std::to_string(denominator) +
                            " is incompatible with " + std::to_string(L) + " lattice cells");
    return make_grid(epsilon, total / L);
}

RunSpec Scenario::to_runspec() const {
    RunSpec spec;
    spec.grid = build_grid();
    spec.lattice_potential = lattice_potential();
    spec.random_potential = random_potential();
    spec.final_time = final_time;
    spec.dt = dt;
    spec.gpc_order = gpc_order;
    spec.bands = bands;
    spec.quad_nodes = quad_nodes;
    spec.snapshot_stride = snapshot_stride;
    if (splitting == "strang")
        spec.splitting = Splitting::Strang;
    else if (splitting == "first_order")
        spec.splitting = Splitting::LatticeThenPotential;
    else
        throw ScenarioError("unknown splitting: " + splitting);
    return spec;
}

namespace {

const std::set<std::string> kExpectKeys = {
    "dt_levels",     "dx_levels",     "q_levels",      "k_levels",
    "n_levels",      "sigma_levels",  "delta_mean",    "delta_den",
    "mc_delta_mean", "mc_delta_den",  "sc_delta_mean", "sc_delta_den",
    "bdsg_delta_mean", "bdsg_delta_den",
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_scalar(const std::string& raw, const std::string& key) {
    const std::string s = trim(raw);
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            const double num = std::stod(s.substr(0, slash));
            const double den = std::stod(s.substr(slash + 1));
            if (den == 0.0) throw ScenarioError(key + ": division by zero");
            return num / den;
        }
        return std::stod(s);
    } catch (const std::exception&) {
        throw ScenarioError("cannot parse number '" + s + "' for key " + key);
    }
}

int parse_int(const std::string& raw, const std::string& key) {
    const double v = parse_scalar(raw, key);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-12) throw ScenarioError(key + " must be an integer, got " + raw);
    return i;
}

int parse_dx(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.rfind("pi/", 0) != 0)
        throw ScenarioError("dx must have the form pi/<integer>, got '" + s + "'");
    return parse_int(s.substr(3), "dx");
}

std::vector<std::string> split_list(const std::string& raw) {
    std::vector<std::string> items;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<double> parse_list(const std::string& raw, const std::string& key) {
    std::vector<double> values;
    for (const auto& item : split_list(raw)) values.push_back(parse_scalar(item, key));
    return values;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_g17(values[i]);
    }
    return out;
}

std::string join(const std::vector<std::string>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += values[i];
    }
    return out;
}

} // namespace

std::string format_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "name = " << sc.name << "\n\n";
    out << "[grid]\n";
    out << "epsilon = " << format_g17(sc.epsilon) << "\n";
    out << "dx = pi/" << sc.dx_denominator << "\n\n";
    out << "[potentials]\n";
    out << "lattice = " << to_name(sc.lattice) << "\n";
    out << "random = " << to_name(sc.random) << "\n";
    out << "sigma = " << format_g17(sc.sigma) << "\n\n";
    out << "[time]\n";
    out << "T = " << format_g17(sc.final_time) << "\n";
    out << "dt = " << format_g17(sc.dt) << "\n";
    out << "snapshot_stride = " << sc.snapshot_stride << "\n\n";
    out << "[gpc]\n";
    out << "order = " << sc.gpc_order << "\n";
    out << "quad_nodes = " << sc.quad_nodes << "\n";
    out << "bands = " << sc.bands << "\n";
    out << "splitting = " << sc.splitting << "\n\n";
    out << "[methods]\n";
    out << "use = " << join(sc.methods) << "\n";
    out << "mc_realizations = " << sc.mc_realizations << "\n";
    out << "mc_seed = " << sc.mc_seed << "\n";
    out << "sc_nodes = " << sc.sc_nodes << "\n";
    out << "sc_dt = " << format_g17(sc.sc_dt) << "\n";
    out << "sc_dx = " << sc.sc_dx_denominator << "\n\n";
    out << "[expect]\n";
    for (const auto& [key, values] : sc.expect)
        out << key << " = " << format_list(values) << "\n";
    return out.str();
}

Scenario parse_scenario(const std::string& text, const std::string& fallback_name) {
    Scenario sc;
    sc.name = fallback_name;
    sc.expect.clear();

    std::string section; // empty = prolog
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ScenarioError("line " + std::to_string(line_no) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "potentials" && section != "time" &&
                section != "gpc" && section != "methods" && section != "expect")
                throw ScenarioError("unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section.empty()) {
            if (key == "name") sc.name = value;
            else throw ScenarioError("unknown key before sections: " + key);
        } else if (section == "grid") {
            if (key == "epsilon") sc.epsilon = parse_scalar(value, key);
            else if (key == "dx") sc.dx_denominator = parse_dx(value);
            else throw ScenarioError("unknown key in [grid]: " + key);
        } else if (section == "potentials") {
            if (key == "lattice") sc.lattice = lattice_form_from_name(value);
            else if (key == "random") sc.random = random_form_from_name(value);
            else if (key == "sigma") sc.sigma = parse_scalar(value, key);
            else throw ScenarioError("unknown key in [potentials]: " + key);
        } else if (section == "time") {
            if (key == "T") sc.final_time = parse_scalar(value, key);
            else if (key == "dt") sc.dt = parse_scalar(value, key);
            else if (key == "snapshot_stride") sc.snapshot_stride = parse_int(value, key);
            else throw ScenarioError("unknown key in [time]: " + key);
        } else if (section == "gpc") {
            if (key == "order") sc.gpc_order = parse_int(value, key);
            else if (key == "quad_nodes") sc.quad_nodes = parse_int(value, key);
            else if (key == "bands") sc.bands = parse_int(value, key);
            else if (key == "splitting") sc.splitting = value;
            else throw ScenarioError("unknown key in [gpc]: " + key);
        } else if (section == "methods") {
            if (key == "use") sc.methods = split_list(value);
            else if (key == "mc_realizations") sc.mc_realizations = parse_int(value, key);
            else if (key == "mc_seed") sc.mc_seed = std::stoull(value);
            else if (key == "sc_nodes") sc.sc_nodes = parse_int(value, key);
            else if (key == "sc_dt") sc.sc_dt = parse_scalar(value, key);
            else if (key == "sc_dx") sc.sc_dx_denominator = parse_int(value, key);
            else throw ScenarioError("unknown key in [methods]: " + key);
        } else { // expect
            if (!kExpectKeys.contains(key))
                throw ScenarioError("unknown key in [expect]: " + key);
            sc.expect[key] = parse_list(value, key);
        }
    }
    if (sc.splitting != "strang" && sc.splitting != "first_order")
        throw ScenarioError("splitting must be strang or first_order");
    for (const auto& m : sc.methods)
        if (m != "bdsg" && m != "ts-mc" && m != "ts-sc")
            throw ScenarioError("unknown method: " + m);
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.stem().string());
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << format_scenario(scenario);
}

namespace {

std::vector<double> iota_levels(int from, int to) {
    std::vector<double> v;
    for (int q = from; q <= to; ++q) v.push_back(q);
    return v;
}

std::vector<Scenario> make_builtins() {
    std::vector<Scenario> all;

    { // temporal sweep, smooth lattice, eps = 1/4
        Scenario sc;
        sc.name = "t1a";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 0.25;
        sc.dx_denominator = 128;
        sc.final_time = 1.0;
        sc.dt = 0.125;
        sc.gpc_order = 4;
        sc.expect["dt_levels"] = {0.5, 0.25, 0.125, 0.0625, 0.03125};
        sc.expect["delta_mean"] = {1.36e-1, 3.14e-2, 7.70e-3, 1.91e-3, 4.78e-4};
        sc.expect["delta_den"] = {1.16e-1, 2.63e-2, 6.42e-3, 1.60e-3, 3.99e-4};
        all.push_back(sc);
    }
    { // temporal sweep, smooth lattice, eps = 1/64
        Scenario sc;
        sc.name = "t1b";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 1.0 / 64;
        sc.dx_denominator = 512;
        sc.final_time = 0.2;
        sc.dt = 0.025;
        sc.gpc_order = 8;
        sc.expect["dt_levels"] = {0.1, 0.05, 0.025, 0.0125, 0.00625};
        sc.expect["delta_mean"] = {1.26e-1, 1.53e-3, 2.50e-4, 6.22e-5, 1.55e-5};
        sc.expect["delta_den"] = {2.22e-2, 1.97e-3, 3.79e-4, 9.40e-5, 2.33e-5};
        all.push_back(sc);
    }
    { // temporal sweep, smooth lattice, eps = 1/512 (heavy)
        Scenario sc;
        sc.name = "t1c";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 1.0 / 512;
        sc.dx_denominator = 16384;
        sc.final_time = 0.02;
        sc.dt = 0.005;
        sc.gpc_order = 8;
        sc.expect["dt_levels"] = {0.02, 0.01, 0.005, 0.0025, 0.00125};
        sc.expect["delta_mean"] = {3.30e-3, 1.03e-3, 1.44e-4, 3.13e-5, 7.76e-6};
        sc.expect["delta_den"] = {8.13e-3, 2.65e-3, 2.34e-4, 5.68e-5, 1.40e-5};
        all.push_back(sc);
    }
    { // temporal sweep, square-barrier lattice, eps = 1/4
        Scenario sc;
        sc.name = "t2a";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 0.25;
        sc.dx_denominator = 256;
        sc.final_time = 1.0;
        sc.dt = 0.25;
        sc.gpc_order = 8;
        sc.expect["dt_levels"] = {1.0, 0.5, 0.25, 0.125, 0.0625};
        sc.expect["delta_mean"] = {5.72e-1, 1.05e-1, 2.58e-2, 6.32e-3, 1.74e-3};
        sc.expect["delta_den"] = {3.42e-1, 6.88e-2, 1.65e-2, 4.06e-3, 1.03e-3};
        all.push_back(sc);
    }
    { // temporal sweep, square-barrier lattice, eps = 1/16
        Scenario sc;
        sc.name = "t2b";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 1.0 / 16;
        sc.dx_denominator = 512;
        sc.final_time = 0.5;
        sc.dt = 0.125;
        sc.gpc_order = 8;
        sc.expect["dt_levels"] = {0.5, 0.25, 0.125, 0.0625, 0.03125};
        sc.expect["delta_mean"] = {1.21e-1, 3.08e-2, 7.02e-3, 1.96e-3, 5.79e-4};
        sc.expect["delta_den"] = {1.54e-1, 3.27e-2, 6.90e-3, 1.72e-3, 4.51e-4};
        all.push_back(sc);
    }
    { // spatial sweep, smooth lattice (heavy)
        Scenario sc;
        sc.name = "t3a";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::StepDecay;
        sc.epsilon = 1.0 / 512;
        sc.dx_denominator = 4096;
        sc.final_time = 0.02;
        sc.dt = 0.002;
        sc.gpc_order = 8;
        sc.expect["dx_levels"] = {512, 1024, 2048, 4096};
        sc.expect["delta_mean"] = {2.45e1, 4.21e-1, 4.72e-3, 3.29e-6};
        sc.expect["delta_den"] = {1.28e2, 1.99e0, 1.95e-2, 9.51e-6};
        all.push_back(sc);
    }
    { // spatial sweep, smooth lattice (heavy)
        Scenario sc;
        sc.name = "t3b";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::StepDecay;
        sc.epsilon = 1.0 / 1024;
        sc.dx_denominator = 8192;
        sc.final_time = 0.01;
        sc.dt = 0.001;
        sc.gpc_order = 8;
        sc.expect["dx_levels"] = {1024, 2048, 4096, 8192};
        sc.expect["delta_mean"] = {2.45e1, 4.12e-1, 4.83e-3, 4.24e-6};
        sc.expect["delta_den"] = {1.28e2, 2.01e0, 2.00e-2, 5.58e-6};
        all.push_back(sc);
    }
    { // spatial sweep, square-barrier lattice, eps = 1/64; the pi/64 level
      // would leave two points per cell and is below the grid minimum
        Scenario sc;
        sc.name = "t4a";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::StepDecay;
        sc.epsilon = 1.0 / 64;
        sc.dx_denominator = 512;
        sc.final_time = 0.05;
        sc.dt = 0.005;
        sc.gpc_order = 8;
        sc.expect["dx_levels"] = {128, 256, 512};
        sc.expect["delta_mean"] = {4.71e0, 3.57e-1, 1.82e-2};
        sc.expect["delta_den"] = {6.56e0, 6.17e-1, 3.67e-2};
        all.push_back(sc);
    }
    { // spatial sweep, square-barrier lattice (heavy)
        Scenario sc;
        sc.name = "t4b";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::StepDecay;
        sc.epsilon = 1.0 / 1024;
        sc.dx_denominator = 8192;
        sc.final_time = 0.01;
        sc.dt = 1.0 / 600;
        sc.gpc_order = 8;
        sc.expect["dx_levels"] = {1024, 2048, 4096, 8192};
        sc.expect["delta_mean"] = {6.07e-1, 4.80e-1, 5.81e-2, 1.98e-3};
        sc.expect["delta_den"] = {3.00e0, 1.90e0, 1.88e-1, 5.49e-3};
        all.push_back(sc);
    }
    { // gPC-order sweep, smooth lattice, eps = 1/4
        Scenario sc;
        sc.name = "f1a";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 0.25;
        sc.dx_denominator = 128;
        sc.final_time = 1.0;
        sc.dt = 0.01;
        sc.gpc_order = 8;
        sc.expect["q_levels"] = iota_levels(1, 8);
        all.push_back(sc);
    }
    { // gPC-order sweep, smooth lattice, eps = 1/256
        Scenario sc;
        sc.name = "f1b";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 1.0 / 256;
        sc.dx_denominator = 4096;
        sc.final_time = 0.05;
        sc.dt = 0.0005;
        sc.gpc_order = 8;
        sc.expect["q_levels"] = iota_levels(1, 8);
        all.push_back(sc);
    }
    { // gPC-order sweep, square-barrier lattice, eps = 1/4
        Scenario sc;
        sc.name = "f2a";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 0.25;
        sc.dx_denominator = 256;
        sc.final_time = 1.0;
        sc.dt = 0.1;
        sc.gpc_order = 8;
        sc.expect["q_levels"] = iota_levels(1, 8);
        all.push_back(sc);
    }
    { // gPC-order sweep, square-barrier lattice, eps = 1/64; T = 0.22 kept
      // verbatim from the source experiment
        Scenario sc;
        sc.name = "f2b";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 1.0 / 64;
        sc.dx_denominator = 4096;
        sc.final_time = 0.22;
        sc.dt = 0.0025;
        sc.gpc_order = 8;
        sc.expect["q_levels"] = iota_levels(1, 8);
        all.push_back(sc);
    }
    { // Monte Carlo comparison
        Scenario sc;
        sc.name = "t5";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::LinearForce;
        sc.epsilon = 0.25;
        sc.dx_denominator = 128;
        sc.final_time = 1.0;
        sc.dt = 0.01;
        sc.gpc_order = 4;
        sc.methods = {"bdsg", "ts-mc"};
        sc.mc_realizations = 1000;
        sc.expect["k_levels"] = {10, 100, 1000};
        sc.expect["mc_delta_mean"] = {1.36e-1, 4.61e-2, 1.14e-2};
        sc.expect["mc_delta_den"] = {5.87e-3, 2.93e-3, 2.84e-3};
        sc.expect["bdsg_delta_mean"] = {4.25e-3};
        sc.expect["bdsg_delta_den"] = {2.88e-3};
        all.push_back(sc);
    }
    { // collocation comparison, smooth lattice
        Scenario sc;
        sc.name = "t6";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 0.25;
        sc.dx_denominator = 128;
        sc.final_time = 1.0;
        sc.dt = 0.01;
        sc.gpc_order = 4;
        sc.methods = {"bdsg", "ts-sc"};
        sc.sc_nodes = 5;
        sc.expect["n_levels"] = {1, 3, 5, 7, 9};
        sc.expect["bdsg_delta_mean"] = {4.90e-5};
        sc.expect["bdsg_delta_den"] = {4.08e-5};
        sc.expect["sc_delta_mean"] = {1.82e-4};
        sc.expect["sc_delta_den"] = {8.80e-5};
        all.push_back(sc);
    }
    { // collocation comparison, smooth lattice (heavy)
        Scenario sc;
        sc.name = "t6b";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::HarmonicNoise;
        sc.epsilon = 1.0 / 1024;
        sc.dx_denominator = 8192;
        sc.final_time = 0.01;
        sc.dt = 0.001;
        sc.gpc_order = 4;
        sc.methods = {"bdsg", "ts-sc"};
        sc.sc_nodes = 5;
        sc.sc_dt = 0.000004;
        sc.sc_dx_denominator = 8192;
        sc.expect["bdsg_delta_mean"] = {1.96e-3};
        sc.expect["bdsg_delta_den"] = {1.83e-5};
        sc.expect["sc_delta_mean"] = {1.96e-3};
        sc.expect["sc_delta_den"] = {4.40e-5};
        all.push_back(sc);
    }
    { // collocation comparison, square-barrier lattice
        Scenario sc;
        sc.name = "t7";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::LinearForce;
        sc.epsilon = 0.25;
        sc.dx_denominator = 128;
        sc.final_time = 1.0;
        sc.dt = 0.1;
        sc.gpc_order = 4;
        sc.methods = {"bdsg", "ts-sc"};
        sc.sc_nodes = 5;
        sc.sc_dt = 0.001;
        sc.sc_dx_denominator = 256;
        sc.expect["bdsg_delta_mean"] = {1.35e-2};
        sc.expect["bdsg_delta_den"] = {9.03e-3};
        sc.expect["sc_delta_mean"] = {2.83e-2};
        sc.expect["sc_delta_den"] = {1.17e-2};
        all.push_back(sc);
    }
    { // collocation comparison, square-barrier lattice (heavy)
        Scenario sc;
        sc.name = "t7b";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::LinearForce;
        sc.epsilon = 1.0 / 1024;
        sc.dx_denominator = 8192;
        sc.final_time = 0.01;
        sc.dt = 0.001;
        sc.gpc_order = 4;
        sc.methods = {"bdsg", "ts-sc"};
        sc.sc_nodes = 5;
        sc.sc_dt = 0.00005;
        sc.sc_dx_denominator = 32768;
        sc.expect["bdsg_delta_mean"] = {3.44e-3};
        sc.expect["bdsg_delta_den"] = {1.74e-2};
        sc.expect["sc_delta_mean"] = {3.69e-3};
        sc.expect["sc_delta_den"] = {2.20e-2};
        all.push_back(sc);
    }
    { // conservation run, smooth lattice
        Scenario sc;
        sc.name = "f6";
        sc.lattice = LatticeForm::Mathieu;
        sc.random = RandomForm::StepDecay;
        sc.epsilon = 0.25;
        sc.dx_denominator = 128;
        sc.final_time = 2.0;
        sc.dt = 0.0078125; // 256 steps
        sc.gpc_order = 4;
        all.push_back(sc);
    }
    { // conservation run, square-barrier lattice (heavy)
        Scenario sc;
        sc.name = "f7";
        sc.lattice = LatticeForm::KronigPenney;
        sc.random = RandomForm::LinearForce;
        sc.epsilon = 1.0 / 1024;
        sc.dx_denominator = 8192;
        sc.final_time = 0.02;
        sc.dt = 0.0001; // 200 steps
        sc.gpc_order = 4;
        all.push_back(sc);
    }
    { // wave spreading vs. disorder strength
        Scenario sc;
        sc.name = "anderson";
        sc.lattice = LatticeForm::WeakMathieu;
        sc.random = RandomForm::AndersonCosine;
        sc.sigma = 5.0;
        sc.epsilon = 0.25;
        sc.dx_denominator = 128;
        sc.final_time = 1.5;
        sc.dt = 0.01;
        sc.gpc_order = 8;
        sc.expect["sigma_levels"] = {0.0, 3.0, 5.0};
        all.push_back(sc);
    }
    return all;
}

} // namespace

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> scenarios = make_builtins();
    return scenarios;
}

const Scenario& builtin_scenario(const std::string& name) {
    for (const auto& sc : builtin_scenarios())
        if (sc.name == name) return sc;
    throw ScenarioError("no bundled scenario named '" + name + "'");
}

Scenario resolve_scenario(const std::string& path_or_name) {
    if (std::filesystem::exists(path_or_name)) return load_scenario(path_or_name);
    return builtin_scenario(path_or_name);
}

} // namespace bdsg
