#include "hsjump/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hsjump/charconst.hpp"

namespace hsjump {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

bool Config::has(const std::string& sec, const std::string& key) const {
    auto it = sections.find(sec);
    return it != sections.end() && it->second.count(key);
}

std::string Config::get(const std::string& sec, const std::string& key) const {
    if (!has(sec, key)) throw std::out_of_range("missing config key [" + sec + "] " + key);
    return sections.at(sec).at(key);
}

std::string Config::get_or(const std::string& sec, const std::string& key,
                           const std::string& dflt) const {
    return has(sec, key) ? get(sec, key) : dflt;
}

double Config::get_num(const std::string& sec, const std::string& key) const {
    return std::stod(get(sec, key));
}

double Config::get_num_or(const std::string& sec, const std::string& key, double dflt) const {
    return has(sec, key) ? get_num(sec, key) : dflt;
}

long Config::get_int_or(const std::string& sec, const std::string& key, long dflt) const {
    return has(sec, key) ? std::stol(get(sec, key)) : dflt;
}

void Config::set(const std::string& sec, const std::string& key, const std::string& v) {
    sections[sec][key] = v;
}

void Config::set_num(const std::string& sec, const std::string& key, double v) {
    set(sec, key, fmt_num(v));
}

Config Config::parse(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line, sec = "global";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": bad section header");
            sec = trim(line.substr(1, line.size() - 2));
            c.sections[sec];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        c.sections[sec][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Config::canonical() const {
    std::ostringstream os;
    for (const auto& [sec, kv] : sections) {
        if (kv.empty()) continue;
        os << "[" << sec << "]\n";
        for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
    }
    return os.str();
}

void Config::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file " + path);
    out << canonical();
}

uint64_t config_hash(const Config& c) {
    const std::string s = c.canonical();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

KernelSpec kernel_from_config(const Config& c) {
    const int d = (int)c.get_num_or("kernel", "d", 1);
    const double alpha = c.get_num("kernel", "alpha");
    const double kappa = c.get_num_or("kernel", "kappa", 0.0);
    const std::string model = c.get_or("kernel", "b_model", "unit");

    auto scaling_from = [&](const std::string& prefix) {
        std::map<std::string, std::string> kv;
        for (const auto& [k, v] : c.sections.at("kernel"))
            if (k.rfind(prefix + "_", 0) == 0) kv[k.substr(prefix.size() + 1)] = v;
        return ScalingFunction::from_config(kv);
    };

    BModel b;
    if (model == "unit") {
        b = BModel::unit();
    } else if (model == "product") {
        b = BModel::product(scaling_from("phi"));
    } else if (model == "product_power") {
        b = BModel::product_power(c.get_num("kernel", "beta"), alpha);
    } else if (model == "resurrection") {
        QuadOpts q;
        q.rel_tol = c.get_num_or("quadrature", "rel_tol", 1e-7);
        b = BModel::resurrection(
            std::make_shared<ReturnKernelSpec>(d, alpha, scaling_from("psi"), q));
    } else {
        throw std::invalid_argument("unknown b_model: " + model);
    }
    KernelSpec s = make_kernel_spec(d, alpha, kappa, std::move(b));
    // p is always derived; kappa = 0 hits the exact left endpoint
    if (kappa == 0.0) {
        s.p = std::max(alpha - 1.0, 0.0);
    } else {
        s.p = solve_p(s, kappa).p;
    }
    return s;
}

Config kernel_to_config(const KernelSpec& s) {
    Config c;
    c.set_num("kernel", "d", s.d);
    c.set_num("kernel", "alpha", s.alpha);
    c.set_num("kernel", "kappa", s.kappa);
    auto put_scaling = [&c](const std::string& prefix, const ScalingFunction& f) {
        for (const auto& [k, v] : f.to_config()) c.set("kernel", prefix + "_" + k, v);
    };
    switch (s.b.kind) {
        case BModel::Kind::Unit:
            c.set("kernel", "b_model", "unit");
            break;
        case BModel::Kind::Product:
            c.set("kernel", "b_model", "product");
            put_scaling("phi", *s.b.phi);
            break;
        case BModel::Kind::ProductPower:
            c.set("kernel", "b_model", "product_power");
            c.set_num("kernel", "beta", s.b.beta);
            break;
        case BModel::Kind::ResurrectionInduced:
            c.set("kernel", "b_model", "resurrection");
            put_scaling("psi", s.b.rk->psi());
            break;
    }
    return c;
}

} // namespace hsjump
